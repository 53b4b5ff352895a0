"""Labeled simplicial graphs underlying Artin groups.

A graph is a set of string vertices and a set of unordered edges, each
carrying an integer label >= 2.  Everything here is immutable; operations
return new graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graphs or invalid subgraph requests."""


def _key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ArtinGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]  # (a, b, label) with a < b, sorted

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, int]]) -> "ArtinGraph":
        """Build and validate a graph; vertex order is kept, edges are sorted."""
        vs = []
        seen = set()
        for v in vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
            vs.append(v)
        es = {}
        for a, b, label in edges:
            if a == b:
                raise GraphError(f"loop at vertex {a!r}")
            for v in (a, b):
                if v not in seen:
                    raise GraphError(f"edge {a}-{b} uses unknown vertex {v!r}")
            if not isinstance(label, int) or label < 2:
                raise GraphError(f"edge {a}-{b} has label {label!r} < 2")
            k = _key(a, b)
            if k in es:
                raise GraphError(f"duplicate edge {a}-{b}")
            es[k] = label
        return cls(tuple(vs), tuple(sorted((a, b, lab) for (a, b), lab in es.items())))

    @property
    def edge_map(self) -> dict[tuple[str, str], int]:
        return {(a, b): lab for a, b, lab in self.edges}

    def label(self, a: str, b: str) -> int | None:
        return self.edge_map.get(_key(a, b))

    def neighbors(self, v: str) -> set[str]:
        out = set()
        for a, b, _ in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def edge_keys(self) -> set[tuple[str, str]]:
        return {(a, b) for a, b, _ in self.edges}

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[a, b, lab] for a, b, lab in self.edges],
        }


def validate_graph(g: ArtinGraph) -> ArtinGraph:
    """Return ``g`` unchanged if it satisfies the graph invariants."""
    return ArtinGraph.build(g.vertices, g.edges)


def induced_subgraph(g: ArtinGraph, vs: Iterable[str]) -> ArtinGraph:
    vs = set(vs)
    unknown = vs - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    keep = tuple(v for v in g.vertices if v in vs)
    return ArtinGraph(keep, tuple(e for e in g.edges if e[0] in vs and e[1] in vs))


def remove_edges(g: ArtinGraph, es: Iterable[tuple[str, str]]) -> ArtinGraph:
    drop = {_key(a, b) for a, b in es}
    missing = drop - g.edge_keys()
    if missing:
        raise GraphError(f"edges not present: {sorted(missing)}")
    return ArtinGraph(g.vertices, tuple(e for e in g.edges if (e[0], e[1]) not in drop))


def is_subgraph(g: ArtinGraph, h: ArtinGraph) -> bool:
    return set(h.vertices) <= set(g.vertices) and set(h.edges) <= set(g.edges)


def components(g: ArtinGraph) -> list[set[str]]:
    adj = {v: set() for v in g.vertices}
    for a, b, _ in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen: set[str] = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: ArtinGraph) -> bool:
    # the empty graph counts as connected
    return len(components(g)) <= 1


def is_dominant(g: ArtinGraph, h: ArtinGraph) -> bool:
    """True iff every vertex of ``g`` outside ``h`` has a neighbor in ``h``."""
    if not is_subgraph(g, h):
        raise GraphError("h is not a subgraph of g")
    inside = set(h.vertices)
    return all(g.neighbors(v) & inside for v in g.vertices if v not in inside)


def circuit_rank(g: ArtinGraph) -> int:
    if not is_connected(g):
        raise GraphError("circuit rank requires a connected graph")
    if not g.vertices:
        return 0
    return len(g.edges) - len(g.vertices) + 1


# -- the spoke family -------------------------------------------------------


@dataclass(frozen=True)
class SpokeParams:
    """Parameters (k_1..k_n, l_2..l_n) of a spoke-family Artin group.

    Hub edges u--u_i carry the even label 2*k_i, and u_1--u_i (i >= 2)
    carries the odd label 2*l_i + 1.
    """

    k: tuple[int, ...]
    l: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if len(self.k) < 2:
            raise GraphError("spoke family needs n >= 2")
        if len(self.l) != len(self.k) - 1:
            raise GraphError(f"expected {len(self.k) - 1} values of l, got {len(self.l)}")
        if any(x < 2 for x in self.k):
            raise GraphError(f"every k_i must be > 1, got {self.k}")
        if any(x < 1 for x in self.l):
            raise GraphError(f"every l_i must be >= 1, got {self.l}")

    @property
    def n(self) -> int:
        return len(self.k)

    def k_of(self, i: int) -> int:
        """k_i with the 1-based spoke index used throughout."""
        return self.k[i - 1]

    def l_of(self, i: int) -> int:
        if i < 2:
            raise IndexError("l_i is defined for i >= 2")
        return self.l[i - 2]

    def to_json(self) -> dict:
        return {"n": self.n, "k": list(self.k), "l": list(self.l)}


def spoke_graph(p: SpokeParams) -> ArtinGraph:
    """The graph with hub ``u`` and spokes ``u1..un``."""
    vs = ["u"] + [f"u{i}" for i in range(1, p.n + 1)]
    es = [("u", f"u{i}", 2 * p.k_of(i)) for i in range(1, p.n + 1)]
    es += [("u1", f"u{i}", 2 * p.l_of(i) + 1) for i in range(2, p.n + 1)]
    return ArtinGraph.build(vs, es)


def _match_roles(g: ArtinGraph, hub: str, first: str) -> SpokeParams | None:
    labels = g.edge_map
    others = [v for v in g.vertices if v not in (hub, first)]
    n = len(others) + 1
    if n < 2 or len(g.edges) != 2 * n - 1:
        return None
    hub_label = labels.get(_key(hub, first))
    if hub_label is None or hub_label % 2 or hub_label < 4:
        return None
    k, l = [hub_label // 2], []
    for v in others:
        even = labels.get(_key(hub, v))
        odd = labels.get(_key(first, v))
        if even is None or even % 2 or even < 4:
            return None
        if odd is None or odd % 2 == 0:
            return None
        k.append(even // 2)
        l.append((odd - 1) // 2)
    return SpokeParams(tuple(k), tuple(l))


def to_spoke_params(g: ArtinGraph) -> tuple[SpokeParams, dict[str, str]] | None:
    """Recognize a spoke-family graph.

    Returns the parameters and a map from roles (``"u"``, ``"u1"``, ...)
    to vertices of ``g``, or ``None``.  Spokes u2..un follow the vertex
    order of ``g``.  When several role assignments fit (n = 2, where u1
    and u2 are interchangeable) one satisfying the sum condition is
    preferred, then the first in vertex order.
    """
    from .growth import hypothesis_check

    found = []
    for hub, first in permutations(g.vertices, 2):
        p = _match_roles(g, hub, first)
        if p is None:
            continue
        roles = {"u": hub, "u1": first}
        for idx, v in enumerate((v for v in g.vertices if v not in (hub, first)), start=2):
            roles[f"u{idx}"] = v
        found.append((p, roles))
    if not found:
        return None
    for p, roles in found:
        if hypothesis_check(p)[0]:
            return p, roles
    return found[0]


# -- text format ------------------------------------------------------------


def parse_graph(text: str) -> ArtinGraph:
    """Parse ``vertex <name>`` / ``edge <a> <b> <label>`` lines."""
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "vertex" and len(parts) == 2:
                vertices.append(parts[1])
            elif parts[0] == "edge" and len(parts) == 4:
                a, b, label = parts[1], parts[2], int(parts[3])
                if a == b:
                    raise GraphError(f"loop at vertex {a!r}")
                if label < 2:
                    raise GraphError(f"edge {a}-{b} has label {label} < 2")
                if any(_key(a, b) == _key(x, y) for x, y, _ in edges):
                    raise GraphError(f"duplicate edge {a}-{b}")
                edges.append((a, b, label))
            else:
                raise GraphError(f"unrecognized line {line!r}")
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    try:
        return ArtinGraph.build(vertices, edges)
    except GraphError as exc:
        raise GraphError(f"invalid graph: {exc}") from None


def format_graph(g: ArtinGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {a} {b} {lab}" for a, b, lab in g.edges]
    return "\n".join(lines) + "\n"
