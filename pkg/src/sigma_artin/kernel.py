"""The elements x_{j,i} of M_i = K * K_i for all integers j.

Conjugation is on the right throughout: ``a^g = g^-1 a g``, so that
``x_{j,i} = u^-j (u u_i) u^j``.  With this convention the odd-label relation
u_1 u_i u_1 ... = u_i u_1 u_i ... becomes the forward recurrence

    x_j = y_{j-1}^-1 x_{j-2}^-1 ... y_{j-2l+1}^-1 x_{j-2l}^-1
          y_{j-2l} x_{j-2l+1} y_{j-2l+2} ... x_{j-1} y_j

and, solved for its lowest term, the backward recurrence

    x_j = y_j x_{j+1} y_{j+2} ... x_{j+2l-1} y_{j+2l}
          x_{j+2l}^-1 y_{j+2l-1}^-1 ... x_{j+2}^-1 y_{j+1}^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .free_product import (
    FreeProduct,
    NotInKernelError,
    Word,
    conjugate,
    format_word,
    invert,
    kurosh_letters,
    product,
    project_to_factor,
)
from .graph import SpokeParams


@dataclass
class CheckResult:
    j: int
    i: int
    check: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"j": self.j, "i": self.i, "check": self.check, "pass": self.passed, "detail": self.detail}


def default_window(l: int) -> tuple[int, int]:
    """Window covering one full theta period on both sides of the base range."""
    return -(2 * l + 2), 6 * l + 4


def forward_terms(j: int, l: int) -> list[tuple[str, int, int]]:
    """Factors of the forward recurrence for x_j as (kind, index, sign)."""
    terms = []
    for t in range(l):
        terms.append(("y", j - 1 - 2 * t, -1))
        terms.append(("x", j - 2 - 2 * t, -1))
    terms.append(("y", j - 2 * l, 1))
    for t in range(l):
        terms.append(("x", j - 2 * l + 1 + 2 * t, 1))
        terms.append(("y", j - 2 * l + 2 + 2 * t, 1))
    return terms


def backward_terms(j: int, l: int) -> list[tuple[str, int, int]]:
    """Factors of the backward recurrence for x_j."""
    terms = [("y", j, 1)]
    for t in range(l):
        terms.append(("x", j + 1 + 2 * t, 1))
        terms.append(("y", j + 2 + 2 * t, 1))
    for t in range(l):
        terms.append(("x", j + 2 * l - 2 * t, -1))
        terms.append(("y", j + 2 * l - 1 - 2 * t, -1))
    return terms


class XCache:
    """Memoized words x_{j,i} in M_i over a window jmin <= j <= jmax."""

    def __init__(self, params: SpokeParams, i: int, jmin: int | None = None, jmax: int | None = None):
        if not 2 <= i <= params.n:
            raise ValueError(f"spoke index {i} outside 2..{params.n}")
        self.params = params
        self.i = i
        self.k1 = params.k_of(1)
        self.k = params.k_of(i)
        self.l = params.l_of(i)
        lo, hi = default_window(self.l)
        self.jmin = lo if jmin is None else min(jmin, 0)
        self.jmax = hi if jmax is None else max(jmax, 2 * self.l - 1)
        self.ambient = FreeProduct.M_i(self.k1, i, self.k, self.l)
        self.factor_ambient = FreeProduct.K_i(i, self.k, self.l)
        self.memo: dict[int, Word] = {j: self.ambient.x(j, i) for j in range(2 * self.l)}
        self._decomp: dict[int, tuple[Word, Word]] = {}

    def y(self, j: int, e: int = 1) -> Word:
        return self.ambient.y(j, e)

    def expand(self, terms) -> Word:
        """Multiply out a list of recurrence terms using memoized x-values."""
        words = []
        for kind, idx, sign in terms:
            if kind == "y":
                words.append(self.y(idx, sign))
            else:
                w = x_element(self, idx)
                words.append(w if sign > 0 else invert(w))
        return product(self.ambient, words)

    def in_window(self, j: int) -> bool:
        return self.jmin <= j <= self.jmax

    def fill(self) -> "XCache":
        for j in range(self.jmin, self.jmax + 1):
            x_element(self, j)
        return self


def x_element(cache: XCache, j: int) -> Word:
    if j in cache.memo:
        return cache.memo[j]
    if not cache.in_window(j):
        raise ValueError(f"j={j} outside the cache window [{cache.jmin}, {cache.jmax}]")
    l = cache.l
    if j >= 2 * l:
        # build upward so recursion depth stays bounded
        for t in range(2 * l, j + 1):
            if t not in cache.memo:
                cache.memo[t] = cache.expand(forward_terms(t, l))
    else:
        for t in range(-1, j - 1, -1):
            if t not in cache.memo:
                cache.memo[t] = cache.expand(backward_terms(t, l))
    return cache.memo[j]


def decompose(cache: XCache, j: int) -> tuple[Word, Word]:
    """Split x_{j,i} = xtilde * v with xtilde in K_i and v in the normal closure of K."""
    if j not in cache._decomp:
        x = x_element(cache, j)
        xt = project_to_factor(x, cache.i)
        v = product(cache.ambient, (invert(xt.lift(cache.ambient)), x))
        cache._decomp[j] = (xt, v)
    return cache._decomp[j]


def xtilde(cache: XCache, j: int) -> Word:
    return decompose(cache, j)[0]


def _xt_product(cache: XCache, terms) -> Word:
    words = []
    for _, idx, sign in terms:
        w = xtilde(cache, idx)
        words.append(w if sign > 0 else invert(w))
    return product(cache.factor_ambient, words)


def xtilde_forward(cache: XCache, j: int) -> Word:
    """Right side of the projected forward recurrence (y-terms dropped)."""
    return _xt_product(cache, [t for t in forward_terms(j, cache.l) if t[0] == "x"])


def xtilde_backward(cache: XCache, j: int) -> Word:
    return _xt_product(cache, [t for t in backward_terms(j, cache.l) if t[0] == "x"])


def _window_range(cache: XCache, j_range):
    if j_range is None:
        return range(cache.jmin, cache.jmax + 1)
    return j_range


def xtilde_recurrence_check(cache: XCache, j_range=None) -> list[CheckResult]:
    """Check both projected recurrences wherever every referenced index is in the window."""
    out = []
    l = cache.l
    for j in _window_range(cache, j_range):
        if cache.in_window(j - 2 * l) and cache.in_window(j):
            lhs, rhs = xtilde(cache, j), xtilde_forward(cache, j)
            out.append(CheckResult(j, cache.i, "xtilde_forward", lhs == rhs,
                                   "" if lhs == rhs else f"{format_word(lhs)} != {format_word(rhs)}"))
        if cache.in_window(j + 2 * l) and cache.in_window(j):
            lhs, rhs = xtilde(cache, j), xtilde_backward(cache, j)
            out.append(CheckResult(j, cache.i, "xtilde_backward", lhs == rhs,
                                   "" if lhs == rhs else f"{format_word(lhs)} != {format_word(rhs)}"))
    return out


def recurrence_consistency_check(cache: XCache, j_range=None) -> list[CheckResult]:
    """Each memoized x_j satisfies both recurrences, not only the one that built it."""
    out = []
    l = cache.l
    for j in _window_range(cache, j_range):
        if cache.in_window(j - 2 * l) and cache.in_window(j):
            ok = x_element(cache, j) == cache.expand(forward_terms(j, l))
            out.append(CheckResult(j, cache.i, "forward_relation", ok))
        if cache.in_window(j + 2 * l) and cache.in_window(j):
            ok = x_element(cache, j) == cache.expand(backward_terms(j, l))
            out.append(CheckResult(j, cache.i, "backward_relation", ok))
    return out


def decomposition_check(cache: XCache, j: int) -> CheckResult:
    """xtilde lies in K_i, v lies in the kernel, and they multiply back to x_j."""
    xt, v = decompose(cache, j)
    x = x_element(cache, j)
    problems = []
    if any(f[0] != "x" for f, _ in xt.syllables):
        problems.append("xtilde has letters outside K_i")
    if not project_to_factor(v, cache.i).is_identity():
        problems.append("v is not in the kernel")
    if product(cache.ambient, (xt.lift(cache.ambient), v)) != x:
        problems.append("xtilde * v != x")
    if 0 <= j < 2 * cache.l and not (v.is_identity() and xt.syllables == x.syllables):
        problems.append("base element should have trivial v")
    return CheckResult(j, cache.i, "decomposition", not problems, "; ".join(problems))


def membership_check(cache: XCache, j: int) -> CheckResult:
    """Index confinement of the kernel part v_{j,i}.

    For j >= 2l: v_j y_j^-1 only involves conjugates of y_k with 0 <= k < j.
    For j < 0:   v_j^-1 y_j^{xtilde_j} only involves y_k with j < k < 2l.
    """
    l = cache.l
    if 0 <= j < 2 * l:
        raise ValueError(f"j={j} is in the base range; the claim is vacuous there")
    xt, v = decompose(cache, j)
    amb = cache.ambient
    if j >= 2 * l:
        target = product(amb, (v, cache.y(j, -1)))
        lo, hi, check = 0, j - 1, "membership_forward"
    else:
        target = product(amb, (invert(v), conjugate(cache.y(j), xt.lift(amb))))
        lo, hi, check = j + 1, 2 * l - 1, "membership_backward"
    try:
        letters = kurosh_letters(target, cache.i)
    except NotInKernelError as exc:
        return CheckResult(j, cache.i, check, False, str(exc))
    bad = [lt for lt in letters if not lo <= lt.index <= hi]
    detail = f"letter {bad[0]!r} outside [{lo}, {hi}]" if bad else f"{len(letters)} letters in [{lo}, {hi}]"
    return CheckResult(j, cache.i, check, not bad, detail)
