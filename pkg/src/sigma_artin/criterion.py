"""Dead edges, living subgraphs and the Sigma^1 verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .characters import Character, normalize, support, validate_character
from .graph import (
    ArtinGraph,
    GraphError,
    SpokeParams,
    induced_subgraph,
    is_connected,
    is_dominant,
    remove_edges,
    to_spoke_params,
)

CERT_POSITIVE = "MMW positive criterion"
CERT_NEGATIVE = "Proposition A"
CERT_NONE = "uncertified: criterion fails outside the certified family"


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class SigmaVerdict:
    criterion_holds: bool
    membership: Membership
    certificate: str
    living: ArtinGraph
    dead: tuple[tuple[str, str], ...]
    spoke: SpokeParams | None = None

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion_holds,
            "membership": self.membership.value,
            "living_subgraph": self.living.to_json(),
            "dead_edges": [list(e) for e in self.dead],
            "certificate": self.certificate,
        }


def dead_edges(g: ArtinGraph, c: Character) -> set[tuple[str, str]]:
    """Edges with even label > 2 whose endpoint values are exact negatives.

    Edges between two zero-valued vertices are excluded; they never reach
    the support subgraph.
    """
    vals = c.values
    return {
        (a, b)
        for a, b, label in g.edges
        if label % 2 == 0 and label > 2 and vals[a] != 0 and vals[a] == -vals[b]
    }


def living_subgraph(g: ArtinGraph, c: Character) -> ArtinGraph:
    full = induced_subgraph(g, support(c))
    dead = dead_edges(g, c) & full.edge_keys()
    return remove_edges(full, dead)


def classify(g: ArtinGraph, c: Character) -> SigmaVerdict:
    if not is_connected(g):
        raise GraphError("classification needs a connected graph")
    c = validate_character(g, c)
    living = living_subgraph(g, c)
    assert living.vertices, "non-zero character has non-empty support"
    holds = is_connected(living) and is_dominant(g, living)
    dead = tuple(sorted(dead_edges(g, c)))
    if holds:
        return SigmaVerdict(True, Membership.IN, CERT_POSITIVE, living, dead)

    from .growth import hypothesis_check

    found = to_spoke_params(g)
    if found is not None and hypothesis_check(found[0])[0]:
        return SigmaVerdict(False, Membership.OUT, CERT_NEGATIVE, living, dead, found[0])
    return SigmaVerdict(False, Membership.UNCERTIFIED, CERT_NONE, living, dead)


def exceptional_character(p: SpokeParams) -> dict[str, Fraction]:
    """The character u -> 1, u_i -> -1 on the canonical spoke vertices."""
    values = {"u": Fraction(1)}
    values.update({f"u{i}": Fraction(-1) for i in range(1, p.n + 1)})
    return values


def sphere_description(p: SpokeParams, roles: dict[str, str] | None = None) -> dict:
    """Describe Sigma^1 on the whole character sphere of a spoke group.

    ``roles`` optionally renames the canonical vertices u, u1..un.
    """
    from .growth import hypothesis_check

    ok, total = hypothesis_check(p)
    if not ok:
        raise ValueError(
            f"sum condition fails (sum = {total}); the classification is not certified"
        )
    roles = roles or {r: r for r in ["u"] + [f"u{i}" for i in range(1, p.n + 1)]}
    chi = exceptional_character(p)
    plus = {roles[r]: str(x) for r, x in chi.items()}
    minus = {roles[r]: str(-x) for r, x in chi.items()}
    return {
        "params": p.to_json(),
        "hypothesis_sum": str(total),
        "character_space": {
            "dimension": 2,
            "coordinates": [roles["u"], "=".join(roles[f"u{i}"] for i in range(1, p.n + 1))],
        },
        "complement": [plus, minus],
        "sigma1": "every other class [mu] lies in Sigma^1 (living subgraph connected and dominant)",
    }
