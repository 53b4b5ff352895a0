"""Normal forms in free products of finite cyclic groups.

Factors are keyed by tuples:

* ``("y", j)``     -- the generator y_j of K, order k_1, any integer j;
* ``("x", i, j)``  -- the generator x_{j,i} of K_i, order k_i, 0 <= j < 2 l_i;
* ``("d",)``       -- the abelian factor D = Z_{k_2} x ... x Z_{k_n} of A.

A word is a tuple of syllables ``(factor, value)``; ``value`` is an exponent
in 1..order-1 for cyclic factors and a non-zero exponent vector for D.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Factor = tuple
Syllable = tuple


class AmbientError(ValueError):
    pass


class NotInKernelError(ValueError):
    pass


class FreeProduct:
    """A free product of cyclic groups, optionally with the factor D."""

    def __init__(self, name: str, k1: int | None = None, spokes: Sequence[tuple[int, int, int]] = (),
                 d_orders: Sequence[tuple[int, int]] | None = None):
        self.name = name
        self.k1 = k1
        self.spokes = tuple(spokes)  # (i, k_i, l_i)
        self.d_orders = None if d_orders is None else tuple(d_orders)  # (i, k_i)
        self._x = {i: (k, l) for i, k, l in self.spokes}
        self._key = (name, k1, self.spokes, self.d_orders)

    def __eq__(self, other):
        return isinstance(other, FreeProduct) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FreeProduct({self.name})"

    # constructors for the groups that appear in the argument
    @classmethod
    def K(cls, k1: int) -> "FreeProduct":
        return cls("K", k1=k1)

    @classmethod
    def K_i(cls, i: int, k: int, l: int) -> "FreeProduct":
        return cls(f"K_{i}", spokes=[(i, k, l)])

    @classmethod
    def M_i(cls, k1: int, i: int, k: int, l: int) -> "FreeProduct":
        return cls(f"M_{i}", k1=k1, spokes=[(i, k, l)])

    @classmethod
    def M(cls, params) -> "FreeProduct":
        spokes = [(i, params.k_of(i), params.l_of(i)) for i in range(2, params.n + 1)]
        return cls("M", k1=params.k_of(1), spokes=spokes)

    @classmethod
    def A(cls, params) -> "FreeProduct":
        d = [(i, params.k_of(i)) for i in range(2, params.n + 1)]
        return cls("A", k1=params.k_of(1), d_orders=d)

    def contains(self, factor: Factor) -> bool:
        kind = factor[0]
        if kind == "y":
            return self.k1 is not None
        if kind == "x":
            spec = self._x.get(factor[1])
            return spec is not None and 0 <= factor[2] < 2 * spec[1]
        if kind == "d":
            return self.d_orders is not None
        return False

    def order(self, factor: Factor) -> int:
        if factor[0] == "y":
            return self.k1
        if factor[0] == "x":
            return self._x[factor[1]][0]
        raise AmbientError("D is not cyclic")

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, factor: Factor, exponent=1) -> "Word":
        """The word for a single generator power (or a D element)."""
        return normal_form(Word(self, ((factor, exponent),)))

    def y(self, j: int, e: int = 1) -> "Word":
        return self.gen(("y", j), e)

    def x(self, j: int, i: int, e: int = 1) -> "Word":
        return self.gen(("x", i, j), e)

    def d(self, vector: Sequence[int]) -> "Word":
        return self.gen(("d",), tuple(vector))


def _reduce(ambient: FreeProduct, syllables: Iterable[Syllable]) -> tuple:
    """Stack-based merge of adjacent same-factor syllables (one pass)."""
    out: list = []
    orders: dict = {}
    d_mods = tuple(k for _, k in ambient.d_orders) if ambient.d_orders else ()
    for f, v in syllables:
        if f[0] == "d":
            if out and out[-1][0] == f:
                v = tuple((a + b) % m for a, b, m in zip(out.pop()[1], v, d_mods))
            else:
                v = tuple(a % m for a, m in zip(v, d_mods))
            if any(v):
                out.append((f, v))
            continue
        m = orders.get(f)
        if m is None:
            m = orders[f] = ambient.order(f)
        if out and out[-1][0] == f:
            v = (out.pop()[1] + v) % m
        else:
            v %= m
        if v:
            out.append((f, v))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    ambient: FreeProduct
    syllables: tuple = ()

    def __len__(self):
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, e: int) -> "Word":
        return power(self, e)

    def inverse(self) -> "Word":
        return invert(self)

    def lift(self, ambient: FreeProduct) -> "Word":
        """Reinterpret in a larger ambient containing every factor used."""
        for f, _ in self.syllables:
            if not ambient.contains(f):
                raise AmbientError(f"{f} is not a factor of {ambient.name}")
        return Word(ambient, self.syllables)

    def __str__(self):
        return format_word(self)


def normal_form(w: Word) -> Word:
    amb = w.ambient
    for f, _ in w.syllables:
        if not amb.contains(f):
            raise AmbientError(f"generator {f} is not in {amb.name}")
    return Word(amb, _reduce(amb, w.syllables))


def _same(a: Word, b: Word):
    if a.ambient != b.ambient:
        raise AmbientError(f"ambient mismatch: {a.ambient.name} vs {b.ambient.name}")


def product(ambient: FreeProduct, words: Iterable[Word]) -> Word:
    """Multiply many words at once (one normalization pass)."""
    syl: list = []
    for w in words:
        if w.ambient != ambient:
            raise AmbientError(f"ambient mismatch: {w.ambient.name} vs {ambient.name}")
        syl.extend(w.syllables)
    return Word(ambient, _reduce(ambient, syl))


def multiply(a: Word, b: Word) -> Word:
    _same(a, b)
    return Word(a.ambient, _reduce(a.ambient, a.syllables + b.syllables))


def _neg(ambient: FreeProduct, f: Factor, v):
    if f[0] == "d":
        return tuple((-x) % k for x, (_, k) in zip(v, ambient.d_orders))
    return (-v) % ambient.order(f)


def invert(a: Word) -> Word:
    amb = a.ambient
    return Word(amb, tuple((f, _neg(amb, f, v)) for f, v in reversed(a.syllables)))


def conjugate(a: Word, g: Word) -> Word:
    """``g^-1 a g``."""
    _same(a, g)
    return product(a.ambient, (invert(g), a, g))


def power(a: Word, e: int) -> Word:
    if e < 0:
        a, e = invert(a), -e
    return product(a.ambient, [a] * e)


# -- the retraction onto K_i and the kernel basis ---------------------------


def project_to_factor(w: Word, i: int) -> Word:
    """Image under the retraction killing every factor except K_i."""
    amb = w.ambient
    spec = amb._x.get(i)
    if spec is None:
        raise AmbientError(f"K_{i} is not a factor of {amb.name}")
    target = FreeProduct.K_i(i, *spec)
    return Word(target, _reduce(target, (s for s in w.syllables if s[0][0] == "x" and s[0][1] == i)))


class _Node:
    """Persistent stack cell for the running K_i prefix."""

    __slots__ = ("factor", "value", "parent", "weight")

    def __init__(self, factor, value, parent, weight):
        self.factor = factor
        self.value = value
        self.parent = parent
        self.weight = weight


class KuroshLetter:
    """The kernel element ``c^-1 y_index^exponent c`` with ``c`` = conjugator."""

    __slots__ = ("index", "exponent", "node", "target")

    def __init__(self, index: int, exponent: int, node, target: FreeProduct):
        self.index = index
        self.exponent = exponent
        self.node = node
        self.target = target

    @property
    def conjugator(self) -> Word:
        # the conjugator is the inverse of the running prefix
        syl = []
        node = self.node
        while node is not None:
            syl.append((node.factor, (-node.value) % self.target.order(node.factor)))
            node = node.parent
        return Word(self.target, tuple(syl))

    @property
    def weight(self):
        """Weight of the conjugator under the additive map passed to the scan."""
        return -self.node.weight if self.node is not None else 0

    def key(self):
        return (self.index, self.conjugator.syllables, self.exponent)

    def __eq__(self, other):
        return isinstance(other, KuroshLetter) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"KuroshLetter({self.index}, {format_word(self.conjugator)}, {self.exponent})"

    def word(self, ambient: FreeProduct) -> Word:
        c = self.conjugator.lift(ambient)
        return conjugate(ambient.y(self.index, self.exponent), c)


def _scan(w: Word, i: int, weight=None) -> Iterator[KuroshLetter]:
    amb = w.ambient
    if i not in amb._x:
        raise AmbientError(f"K_{i} is not a factor of {amb.name}")
    k, l = amb._x[i]
    target = FreeProduct.K_i(i, k, l)
    top = None
    for f, v in w.syllables:
        if f[0] == "y":
            yield KuroshLetter(f[1], v, top, target)
            continue
        if f[0] != "x" or f[1] != i:
            raise AmbientError(f"{f} is not a factor of M_{i}")
        if top is not None and top.factor == f:
            v = (top.value + v) % k
            parent = top.parent
        else:
            v %= k
            parent = top
        if v == 0:
            top = parent
            continue
        acc = parent.weight if parent is not None else 0
        if weight is not None:
            acc += weight(f) * v
        top = _Node(f, v, parent, acc)
    if top is not None:
        raise NotInKernelError(f"word does not lie in the kernel of the retraction onto K_{i}")


def kurosh_letters(w: Word, i: int, weight=None) -> list[KuroshLetter]:
    """Write a kernel element of M_i -> K_i as a product of conjugated y-letters.

    ``weight`` is an optional additive function on K_i generators; each
    letter then carries the weight of its conjugator.
    """
    return list(_scan(w, i, weight))


def assemble(letters: Sequence[KuroshLetter], ambient: FreeProduct) -> Word:
    return product(ambient, (lt.word(ambient) for lt in letters))


# -- debug serialization ----------------------------------------------------

_TOKEN = re.compile(r"^(y)\[(-?\d+)\]\^(-?\d+)$|^(x)\[(-?\d+),(-?\d+)\]\^(-?\d+)$|^(d)\[(-?\d+)\]\^(-?\d+)$")


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    out = []
    for f, v in w.syllables:
        if f[0] == "y":
            out.append(f"y[{f[1]}]^{v}")
        elif f[0] == "x":
            out.append(f"x[{f[2]},{f[1]}]^{v}")
        else:
            for (i, _), e in zip(w.ambient.d_orders, v):
                if e:
                    out.append(f"d[{i}]^{e}")
    return " ".join(out)


def parse_word(text: str, ambient: FreeProduct) -> Word:
    syl = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad token {tok!r}")
        if m.group(1):
            syl.append((("y", int(m.group(2))), int(m.group(3))))
        elif m.group(4):
            syl.append((("x", int(m.group(6)), int(m.group(5))), int(m.group(7))))
        else:
            if ambient.d_orders is None:
                raise AmbientError(f"{ambient.name} has no D factor")
            idx = [i for i, _ in ambient.d_orders]
            i = int(m.group(9))
            if i not in idx:
                raise AmbientError(f"D has no coordinate {i}")
            vec = [0] * len(idx)
            vec[idx.index(i)] = int(m.group(10))
            syl.append((("d",), tuple(vec)))
    return normal_form(Word(ambient, tuple(syl)))
