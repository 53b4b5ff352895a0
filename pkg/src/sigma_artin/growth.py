"""Label reduction, the sum condition, and the dimension sequence dim E_s.

After reduction every k_i is prime and the spokes with k_i = 2 come first
(i = 2..m+1).  Coefficients live in Z_{k_1}.  The ring R is

    Z_{k_1}[x_{m+2}, ..., x_n] / (p_{k_i}(x_i)),   p_k(a) = 1 + a + ... + a^(k-1),

with x_i acting as -1 for i <= m+1.  Vectors of the module (+)_j e_j R are
finitely supported maps (j, monomial) -> Z_{k_1}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .free_product import kurosh_letters
from .graph import SpokeParams
from .kernel import XCache, decompose
from .linalg import rank_mod_p, rank_mod_p_transposed
from .theta import ThetaAssignment


class HypothesisError(ValueError):
    def __init__(self, total: Fraction):
        super().__init__(f"sum over power-of-two spokes of 1/(2l_i+1) is {total}, not < 1")
        self.total = total


def is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def smallest_odd_prime_factor(k: int) -> int:
    while k % 2 == 0:
        k //= 2
    p = 3
    while p * p <= k:
        if k % p == 0:
            return p
        p += 2
    return k


def reduced_label(k: int) -> int:
    """2 for powers of two, otherwise the smallest odd prime factor."""
    return 2 if is_power_of_two(k) else smallest_odd_prime_factor(k)


def hypothesis_check(p: SpokeParams) -> tuple[bool, Fraction]:
    total = sum(
        (Fraction(1, 2 * p.l_of(i) + 1) for i in range(2, p.n + 1) if is_power_of_two(p.k_of(i))),
        Fraction(0),
    )
    return total < 1, total


@dataclass(frozen=True)
class ReducedParams:
    params: SpokeParams          # reduced and sorted
    original: SpokeParams
    m: int                       # spokes 2..m+1 have k_i = 2
    perm: tuple[int, ...]        # perm[new_i - 2] = original spoke index
    reductions: tuple[tuple[int, int, int], ...]  # (original index, k before, k after)

    def to_json(self) -> dict:
        d = self.params.to_json()
        d.update(m=self.m, spoke_order=[1] + list(self.perm))
        return d


def reduce_labels(p: SpokeParams) -> ReducedParams:
    ks = [reduced_label(k) for k in p.k]
    order = sorted(range(2, p.n + 1), key=lambda i: ks[i - 1] != 2)
    new = SpokeParams((ks[0],) + tuple(ks[i - 1] for i in order), tuple(p.l_of(i) for i in order))
    m = sum(1 for i in order if ks[i - 1] == 2)
    log = tuple((i, p.k_of(i), ks[i - 1]) for i in range(1, p.n + 1) if p.k_of(i) != ks[i - 1])
    return ReducedParams(new, p, m, tuple(order), log)


# -- the ring R --------------------------------------------------------------


class RingR:
    def __init__(self, rp: ReducedParams):
        self.rp = rp
        self.p = rp.params.k_of(1)
        self.variables = tuple(range(rp.m + 2, rp.params.n + 1))
        self.orders = tuple(rp.params.k_of(i) for i in self.variables)
        self.basis = tuple(itertools.product(*(range(k - 1) for k in self.orders)))
        self.delta = len(self.basis)
        self._pos = {i: n for n, i in enumerate(self.variables)}

    def one(self) -> dict:
        return {tuple(0 for _ in self.variables): 1}

    def _reduce_power(self, k: int, e: int) -> dict[int, int]:
        e %= k  # x^k = 1 since (x - 1) p_k(x) = x^k - 1
        if e < k - 1:
            return {e: 1}
        return {t: self.p - 1 for t in range(k - 1)}

    def x_power(self, i: int, e: int) -> dict:
        """x_i^e as an element of R."""
        if i not in self._pos:
            if not 2 <= i <= self.rp.m + 1:
                raise ValueError(f"no variable x_{i}")
            return {tuple(0 for _ in self.variables): (-1) ** (e % 2) % self.p}
        pos, k = self._pos[i], self.orders[self._pos[i]]
        out = {}
        for t, c in self._reduce_power(k, e).items():
            mono = [0] * len(self.variables)
            mono[pos] = t
            out[tuple(mono)] = c % self.p
        return out

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                terms = [{(): ca * cb % self.p}]
                for pos, k in enumerate(self.orders):
                    red = self._reduce_power(k, ma[pos] + mb[pos])
                    terms = [{m + (t,): c * ct % self.p for m, c in d.items()} for d in terms for t, ct in red.items()]
                for d in terms:
                    for m, c in d.items():
                        out[m] = (out.get(m, 0) + c) % self.p
        return {m: c for m, c in out.items() if c}

    def p_value(self, i: int) -> dict:
        """p_{k_i}(x_i) in R; the quotient is set up so that this vanishes."""
        k = self.rp.params.k_of(i)
        out: dict = {}
        for t in range(k):
            for m, c in self.x_power(i, t).items():
                out[m] = (out.get(m, 0) + c) % self.p
        return {m: c for m, c in out.items() if c}


@dataclass
class ModuleVector:
    """Finitely supported map (j, monomial) -> Z_p."""

    p: int
    coeffs: dict = field(default_factory=dict)

    def add_term(self, j: int, r: dict, scale: int = 1):
        for mono, c in r.items():
            key = (j, mono)
            v = (self.coeffs.get(key, 0) + scale * c) % self.p
            if v:
                self.coeffs[key] = v
            else:
                self.coeffs.pop(key, None)

    def times(self, ring: RingR, r: dict) -> "ModuleVector":
        out = ModuleVector(self.p)
        for j, part in self.components().items():
            out.add_term(j, ring.mul(part, r))
        return out

    def components(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for (j, mono), c in self.coeffs.items():
            out.setdefault(j, {})[mono] = c
        return out

    def indices(self) -> set[int]:
        return {j for j, _ in self.coeffs}

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.p == other.p and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self):
        return [[j, list(m), c] for (j, m), c in sorted(self.coeffs.items())]


# -- the vectors vhat_{j,i} --------------------------------------------------


def vhat_image(rp: ReducedParams, cache: XCache, j: int, theta: ThetaAssignment | None = None) -> ModuleVector:
    """Image of v_{j,i} in (+) e_k R, read from its Kurosh letters."""
    theta = theta or ThetaAssignment(rp.params)
    ring = RingR(rp)
    i = cache.i
    _, v = decompose(cache, j)
    out = ModuleVector(ring.p)
    for lt in kurosh_letters(v, i, weight=lambda f: theta.base(i, f[2])):
        out.add_term(lt.index, ring.x_power(i, lt.weight), lt.exponent)
    return out


class AbelianImages:
    """Images of x_{j,i} in the split extension (Z_{k_1}[Z_{k_i}]-module) x| Z_{k_i}.

    An element is a pair (a, V): a = theta(xtilde) in Z_{k_i}, and V maps
    (index, exponent of x_i) to Z_{k_1}.  Multiplication is
    (a1, V1)(a2, V2) = (a1 + a2, V1 x_i^a2 + V2).  The V-part of x_j is
    vhat_{j,i} before passing to R; no words are built, so far indices are cheap.
    """

    def __init__(self, rp: ReducedParams, i: int, theta: ThetaAssignment | None = None):
        self.rp, self.i = rp, i
        self.theta = theta or ThetaAssignment(rp.params)
        self.p = rp.params.k_of(1)
        self.k = rp.params.k_of(i)
        self.l = rp.params.l_of(i)
        self.memo = {j: (self.theta.base(i, j), {}) for j in range(2 * self.l)}

    def mul(self, x, y):
        (a1, v1), (a2, v2) = x, y
        out = {(idx, (t + a2) % self.k): c for (idx, t), c in v1.items()}
        for key, c in v2.items():
            s = (out.get(key, 0) + c) % self.p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return ((a1 + a2) % self.k, out)

    def inv(self, x):
        a, v = x
        return ((-a) % self.k, {(idx, (t - a) % self.k): (-c) % self.p for (idx, t), c in v.items()})

    def y(self, j: int):
        return (0, {(j, 0): 1})

    def _expand(self, terms):
        acc = (0, {})
        for kind, idx, sign in terms:
            g = self.y(idx) if kind == "y" else self.x(idx)
            acc = self.mul(acc, g if sign > 0 else self.inv(g))
        return acc

    def x(self, j: int):
        from .kernel import backward_terms, forward_terms

        if j in self.memo:
            return self.memo[j]
        if j >= 2 * self.l:
            for t in range(2 * self.l, j + 1):
                if t not in self.memo:
                    self.memo[t] = self._expand(forward_terms(t, self.l))
        else:
            for t in range(-1, j - 1, -1):
                if t not in self.memo:
                    self.memo[t] = self._expand(backward_terms(t, self.l))
        return self.memo[j]

    def vhat(self, j: int) -> ModuleVector:
        ring = RingR(self.rp)
        out = ModuleVector(self.p)
        for (idx, t), c in sorted(self.x(j)[1].items()):
            out.add_term(idx, ring.x_power(self.i, t), c)
        return out


# -- dim E_s -----------------------------------------------------------------


def period_lcm(rp: ReducedParams) -> int:
    """lcm of 2l_i + 1 over the k_i = 2 spokes (1 when there are none)."""
    return math.lcm(*(2 * rp.params.l_of(i) + 1 for i in range(2, rp.m + 2))) if rp.m else 1


@dataclass
class EsResult:
    s: int
    dim: int
    rank: int
    n_rows: int
    n_cols: int
    lower_bound: Fraction
    rank_check: int | None = None
    deficient: list = field(default_factory=list)  # generators whose span is < deltaR

    def to_json(self) -> dict:
        return {"s": self.s, "dim": self.dim, "lower_bound": str(self.lower_bound)}


class WitnessError(AssertionError):
    pass


def es_matrix(rp: ReducedParams, s: int, method: str = "abelian"):
    """Rows vhat_{j,i} * b over the relation indices of Lambda_s, and bookkeeping."""
    if s < 1:
        raise ValueError("s must be >= 1")
    ring = RingR(rp)
    for i in range(2, rp.params.n + 1):
        if ring.p_value(i):
            raise WitnessError(f"p_k(x_{i}) does not vanish in R")
    l = period_lcm(rp)
    size = s * l
    cols = {(j, mono): c for c, (j, mono) in enumerate((j, b) for j in range(size) for b in ring.basis)}
    rows, deficient = [], []
    theta = ThetaAssignment(rp.params)
    for i in range(2, rp.m + 2):
        li = rp.params.l_of(i)
        rel = [j for j in range(size) if (j + 2) % (2 * li + 1) == 0]
        if not rel:
            continue
        if method == "words":
            cache = XCache(rp.params, i, jmin=0, jmax=max(rel))
            vecs = {j: vhat_image(rp, cache, j, theta) for j in rel}
        elif method == "abelian":
            ab = AbelianImages(rp, i, theta)
            vecs = {j: ab.vhat(j) for j in rel}
        else:
            raise ValueError(f"unknown method {method!r}")
        for j, vh in vecs.items():
            if not vh.indices() <= set(range(size)):
                raise WitnessError(f"vhat_{j},{i} leaves Lambda_{s}: {sorted(vh.indices())}")
            block = []
            for b in ring.basis:
                row = [0] * len(cols)
                for key, c in vh.times(ring, {b: 1}).coeffs.items():
                    row[cols[key]] = c
                block.append(row)
            if rank_mod_p(block, ring.p) < ring.delta:
                deficient.append((j, i))
            rows.extend(block)
    return rows, len(cols), ring, l, deficient


def E_s_dimension(rp: ReducedParams, s: int, method: str = "abelian", cross_check: bool = False) -> EsResult:
    ok, total = hypothesis_check(rp.original)
    if not ok:
        raise HypothesisError(total)
    rows, ncols, ring, l, deficient = es_matrix(rp, s, method)
    rank = rank_mod_p(rows, ring.p) if rows else 0
    second = None
    if cross_check:
        second = rank_mod_p_transposed(rows, ring.p) if rows else 0
        if second != rank:
            raise WitnessError(f"rank methods disagree: {rank} vs {second}")
    sigma = sum((Fraction(1, 2 * rp.params.l_of(i) + 1) for i in range(2, rp.m + 2)), Fraction(0))
    bound = ring.delta * s * l * (1 - sigma)
    return EsResult(s, ring.delta * s * l - rank, rank, len(rows), ncols, bound, second, deficient)


VERDICT = "ker(chi) not finitely generated - certified by unbounded quotient dimension"


def witness_report(p: SpokeParams, s_max: int, method: str = "abelian") -> dict:
    ok, total = hypothesis_check(p)
    if not ok:
        raise HypothesisError(total)
    rp = reduce_labels(p)
    table = [E_s_dimension(rp, s, method, cross_check=True) for s in range(1, s_max + 1)]
    bound_ok = all(r.dim >= r.lower_bound for r in table)
    increasing = all(a.dim < b.dim for a, b in zip(table, table[1:]))
    degenerate = rp.m == 0
    report = {
        "params": p.to_json(),
        "reduced_params": rp.to_json(),
        "reductions": [{"spoke": i, "from": a, "to": b} for i, a, b in rp.reductions],
        "hypothesis_sum": str(total),
        "l": period_lcm(rp),
        "deltaR": RingR(rp).delta,
        "table": [r.to_json() for r in table],
        "bound_holds": bound_ok,
        "strictly_increasing": increasing,
        "span_deficient_generators": sorted({g for r in table for g in r.deficient}),
    }
    if bound_ok and increasing:
        report["verdict"] = VERDICT
    else:
        report["verdict"] = "witness failed"
    if degenerate:
        report["flag"] = "degenerate branch - no dead-relation generators"
    return report
