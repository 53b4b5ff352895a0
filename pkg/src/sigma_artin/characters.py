"""Exact rational characters of Artin groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import ArtinGraph, components


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """A vertex assignment, stored as sorted (vertex, value) pairs."""

    items: tuple[tuple[str, Fraction], ...]

    @classmethod
    def from_map(cls, values: Mapping[str, object]) -> "Character":
        return cls(tuple(sorted((v, Fraction(x)) for v, x in values.items())))

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(self.items)

    def __getitem__(self, v: str) -> Fraction:
        return self.values[v]

    def scale(self, r) -> "Character":
        r = Fraction(r)
        return Character(tuple((v, x * r) for v, x in self.items))

    def __neg__(self) -> "Character":
        return self.scale(-1)

    def to_json(self) -> dict[str, str]:
        return {v: str(x) for v, x in self.items}


def validate_character(g: ArtinGraph, c: Mapping[str, object] | Character) -> Character:
    """Check that ``c`` defines a non-zero homomorphism from the Artin group of ``g``.

    Odd labels force equal values at the two endpoints; even labels impose
    nothing.
    """
    values = c.values if isinstance(c, Character) else {v: Fraction(x) for v, x in c.items()}
    missing = [v for v in g.vertices if v not in values]
    if missing:
        raise CharacterError(f"no value for vertices {missing}")
    extra = sorted(set(values) - set(g.vertices))
    if extra:
        raise CharacterError(f"values given for unknown vertices {extra}")
    if all(x == 0 for x in values.values()):
        raise CharacterError("character is identically zero")
    for a, b, label in g.edges:
        if label % 2 and values[a] != values[b]:
            raise CharacterError(
                f"odd edge {a}-{b} (label {label}) needs equal values, got {values[a]} and {values[b]}"
            )
    return Character.from_map(values)


def support(c: Character) -> set[str]:
    return {v for v, x in c.items if x != 0}


def normalize(c: Character) -> Character:
    """Canonical representative of the positive ray through ``c``.

    Divides by the absolute value of the first non-zero value, vertices
    taken in sorted order.
    """
    for _, x in c.items:
        if x != 0:
            return c.scale(1 / abs(x))
    raise CharacterError("cannot normalize the zero character")


def character_space_dimension(g: ArtinGraph) -> int:
    """Dimension of Hom(G, R): components of the odd-labeled subgraph."""
    odd = ArtinGraph(g.vertices, tuple(e for e in g.edges if e[2] % 2))
    return len(components(odd))


def parse_character(text: str) -> dict[str, Fraction]:
    """Parse ``chi <vertex> <rational>`` lines into a raw value map."""
    values: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "chi":
            raise CharacterError(f"line {lineno}: unrecognized line {line!r}")
        if parts[1] in values:
            raise CharacterError(f"line {lineno}: vertex {parts[1]!r} assigned twice")
        try:
            values[parts[1]] = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise CharacterError(f"line {lineno}: bad rational {parts[2]!r}") from None
    return values
