"""The epimorphism theta: M -> A = K * D.

theta is the identity on K and sends the generators of K_i onto the cyclic
factor Z_{k_i} of D: x_{j,i} -> 1 for 0 <= j <= 2l_i - 2 and
x_{2l_i-1,i} -> 2.
"""

from __future__ import annotations

from collections import Counter

from .free_product import FreeProduct, Word, format_word, power, product
from .graph import SpokeParams
from .kernel import CheckResult, XCache, decompose, x_element


class ThetaCheckError(AssertionError):
    pass


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


class ThetaAssignment:
    """Base values of theta; ``base_override`` maps (i, j) -> value (test hook)."""

    def __init__(self, params: SpokeParams, base_override: dict[tuple[int, int], int] | None = None):
        bad = [k for k in params.k if not is_prime(k)]
        if bad:
            raise ValueError(f"theta needs reduced labels (all k_i prime), got {params.k}")
        self.params = params
        self.override = dict(base_override or {})
        self.A = FreeProduct.A(params)
        self._d_index = {i: pos for pos, (i, _) in enumerate(self.A.d_orders)}

    def base(self, i: int, j: int) -> int:
        l, k = self.params.l_of(i), self.params.k_of(i)
        if not 0 <= j < 2 * l:
            raise ValueError(f"x_{{{j},{i}}} is not a generator of K_{i}")
        if (i, j) in self.override:
            return self.override[(i, j)] % k
        return (2 if j == 2 * l - 1 else 1) % k

    def d_vector(self, i: int, value: int) -> tuple[int, ...]:
        vec = [0] * len(self._d_index)
        vec[self._d_index[i]] = value % self.params.k_of(i)
        return tuple(vec)

    def on_factor_word(self, w: Word, i: int) -> int:
        """theta of a K_i word, as an exponent of x_i in Z_{k_i}."""
        return sum(self.base(i, f[2]) * v for f, v in w.syllables) % self.params.k_of(i)


def corrupted(params: SpokeParams) -> ThetaAssignment:
    """theta with the last base value of every spoke changed from 2 to 1."""
    override = {(i, 2 * params.l_of(i) - 1): 1 for i in range(2, params.n + 1)}
    return ThetaAssignment(params, override)


def theta_of_word(t: ThetaAssignment, w: Word) -> Word:
    syl = []
    for f, v in w.syllables:
        if f[0] == "y":
            syl.append((f, v))
        elif f[0] == "x":
            syl.append((("d",), t.d_vector(f[1], t.base(f[1], f[2]) * v)))
        else:
            raise ValueError(f"theta is not defined on {f}")
    return product(t.A, [Word(t.A, tuple(syl))])


def theta_closed_form(l: int, j: int, k: int) -> int:
    """theta(xtilde_{j,i}) read off the periodic table of period 4l + 2."""
    r = j % (4 * l + 2)
    if r <= 2 * l - 2:
        value = 1
    elif r == 2 * l - 1:
        value = 2
    elif r == 2 * l:
        value = 1
    elif r <= 4 * l - 1:
        value = -1
    elif r == 4 * l:
        value = -2
    else:
        value = -1
    return value % k


def theta_by_recurrence(t: ThetaAssignment, i: int, j: int) -> int:
    """theta(xtilde_j) from the alternating-sum recurrence and the base values."""
    l, k = t.params.l_of(i), t.params.k_of(i)
    memo = {r: t.base(i, r) for r in range(2 * l)}
    if j >= 2 * l:
        for r in range(2 * l, j + 1):
            memo[r] = sum((-1) ** (s + 1) * memo[r - 2 * l + s] for s in range(2 * l)) % k
    else:
        for r in range(-1, j - 1, -1):
            # solve the same relation for its lowest term
            memo[r] = (sum((-1) ** (s + 1) * memo[r + s] for s in range(1, 2 * l)) - memo[r + 2 * l]) % k
    return memo[j]


def theta_xtilde(t: ThetaAssignment, cache: XCache, j: int) -> int:
    """theta(xtilde_{j,i}) computed from the word and from the recurrence; both must agree."""
    xt, _ = decompose(cache, j)
    from_word = t.on_factor_word(xt, cache.i)
    from_rec = theta_by_recurrence(t, cache.i, j)
    if from_word != from_rec:
        raise ThetaCheckError(f"theta(xtilde_{j},{cache.i}): word gives {from_word}, recurrence gives {from_rec}")
    return from_word


def is_special(k: int, l: int, j: int) -> bool:
    """Where theta(xtilde_{j,i}) is predicted to vanish: k_i = 2, j = -2 mod 2l_i + 1."""
    return k == 2 and (j + 2) % (2 * l + 1) == 0


def theta_value_check(t: ThetaAssignment, cache: XCache, j_range=None) -> list[CheckResult]:
    """Compare theta(xtilde_j) against the closed-form table and the vanishing rule."""
    out = []
    k, l, i = cache.k, cache.l, cache.i
    js = j_range if j_range is not None else range(cache.jmin, cache.jmax + 1)
    for j in js:
        try:
            got = theta_xtilde(t, cache, j)
        except ThetaCheckError as exc:
            out.append(CheckResult(j, i, "theta_two_routes", False, str(exc)))
            continue
        want = theta_closed_form(l, j, k)
        out.append(CheckResult(j, i, "theta_table", got == want, f"got {got}, table {want}"))
        ok = (got == 0) == is_special(k, l, j)
        out.append(CheckResult(j, i, "theta_vanishing", ok, f"value {got}"))
    return out


def periodicity_check(t: ThetaAssignment, cache: XCache, j_range=None) -> list[CheckResult]:
    period = 4 * cache.l + 2
    js = j_range if j_range is not None else range(cache.jmin, cache.jmax + 1 - period)
    out = []
    for j in js:
        a, b = theta_xtilde(t, cache, j), theta_xtilde(t, cache, j + period)
        out.append(CheckResult(j, cache.i, "periodicity", a == b, f"{a} vs {b}"))
    return out


def relation_image(t: ThetaAssignment, cache: XCache, j: int) -> CheckResult:
    """theta(x_j)^k expanded as a product of conjugates of theta(v_j).

    With d = theta(xtilde_j) and w = theta(v_j), (d w)^k equals
    w^{d^(k-1)} ... w^d w.  The exponents a*t (t = 0..k-1, a the
    exponent of d) must run over all of Z_k, except in the special case
    where d is trivial and the relation collapses to theta(x_j)^2 =
    theta(v_j)^2.
    """
    i, k, l = cache.i, cache.k, cache.l
    A = t.A
    xt, v = decompose(cache, j)
    a = t.on_factor_word(xt, i)
    d = A.d(t.d_vector(i, a))
    w = theta_of_word(t, v)
    lhs = power(theta_of_word(t, x_element(cache, j)), k)
    pieces = []
    for s in range(k - 1, -1, -1):
        ds = power(d, s)
        pieces.extend([power(ds, -1), w, ds])
    rhs = product(A, pieces)
    problems = []
    if lhs != rhs:
        problems.append(f"expansion mismatch: {format_word(lhs)[:60]} vs {format_word(rhs)[:60]}")
    special = is_special(k, l, j)
    if (a == 0) != special:
        problems.append(f"theta(xtilde) = {a} but special case predicted = {special}")
    if a == 0:
        if lhs != power(w, 2) or k != 2:
            problems.append("degenerate case does not reduce to theta(x)^2 = theta(v)^2")
    else:
        exps = Counter((a * s) % k for s in range(k))
        if exps != Counter(range(k)):
            problems.append(f"conjugating exponents {sorted(exps.elements())} are not a permutation of Z_{k}")
    return CheckResult(j, i, "relation_image", not problems, "; ".join(problems))
