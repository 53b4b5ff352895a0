import pytest
from hypothesis import given, strategies as st

from sigma_artin.graph import (
    ArtinGraph,
    GraphError,
    SpokeParams,
    circuit_rank,
    format_graph,
    induced_subgraph,
    is_connected,
    is_dominant,
    parse_graph,
    remove_edges,
    spoke_graph,
    to_spoke_params,
    validate_graph,
)

TRIANGLE = ArtinGraph.build(["u", "u1", "u2"], [("u", "u1", 4), ("u", "u2", 4), ("u1", "u2", 3)])


def test_validate_accepts_triangle():
    assert validate_graph(TRIANGLE) == TRIANGLE


@pytest.mark.parametrize("edges, message", [
    ([("u", "u", 3)], "loop"),
    ([("u", "v", 1)], "< 2"),
    ([("u", "v", 3), ("v", "u", 4)], "duplicate"),
    ([("u", "w", 3)], "unknown"),
])
def test_validate_rejects(edges, message):
    with pytest.raises(GraphError, match=message):
        ArtinGraph.build(["u", "v"], edges)


def test_induced_subgraph():
    h = induced_subgraph(TRIANGLE, {"u1", "u2"})
    assert h.vertices == ("u1", "u2") and h.edges == (("u1", "u2", 3),)
    assert induced_subgraph(TRIANGLE, TRIANGLE.vertices) == TRIANGLE
    assert induced_subgraph(TRIANGLE, set()) == ArtinGraph((), ())
    with pytest.raises(GraphError):
        induced_subgraph(TRIANGLE, {"zz"})


def test_remove_edges():
    path = remove_edges(TRIANGLE, [("u2", "u1")])
    assert len(path.edges) == 2 and is_connected(path)
    assert remove_edges(TRIANGLE, []) == TRIANGLE
    bare = remove_edges(TRIANGLE, [(a, b) for a, b, _ in TRIANGLE.edges])
    assert bare.edges == () and bare.vertices == TRIANGLE.vertices
    with pytest.raises(GraphError):
        remove_edges(bare, [("u", "u1")])


def test_connectivity():
    assert is_connected(spoke_graph(SpokeParams((2, 2), (1,))))
    assert not is_connected(ArtinGraph.build(["a", "b"], []))
    assert is_connected(ArtinGraph.build(["a"], []))
    assert is_connected(ArtinGraph((), ()))


def test_dominance():
    g = spoke_graph(SpokeParams((2, 2), (1,)))
    assert is_dominant(g, induced_subgraph(g, {"u1"}))
    assert is_dominant(g, g)
    path = ArtinGraph.build("abc", [("a", "b", 2), ("b", "c", 2)])
    assert not is_dominant(path, induced_subgraph(path, {"a"}))
    with pytest.raises(GraphError):
        is_dominant(path, ArtinGraph.build(["a", "z"], []))


@pytest.mark.parametrize("n", range(2, 9))
def test_circuit_rank_of_spoke_family(n):
    g = spoke_graph(SpokeParams((2,) * n, (1,) * (n - 1)))
    # edge and vertex counts: n hub edges + (n - 1) odd edges, n + 1 vertices
    assert len(g.edges) == 2 * n - 1 and len(g.vertices) == n + 1
    assert circuit_rank(g) == n - 1


def test_circuit_rank_small():
    assert circuit_rank(ArtinGraph.build("abc", [("a", "b", 2), ("b", "c", 5)])) == 0
    assert circuit_rank(TRIANGLE) == 1
    with pytest.raises(GraphError):
        circuit_rank(ArtinGraph.build("ab", []))


def test_recognize_triangle():
    p, roles = to_spoke_params(TRIANGLE)
    assert p == SpokeParams((2, 2), (1,))
    assert roles["u"] == "u"


def test_not_recognized():
    square = ArtinGraph.build("abcd", [("a", "b", 4), ("b", "c", 4), ("c", "d", 4), ("d", "a", 4)])
    assert to_spoke_params(square) is None
    odd_hub = ArtinGraph.build(["u", "u1", "u2"], [("u", "u1", 3), ("u", "u2", 4), ("u1", "u2", 3)])
    assert to_spoke_params(odd_hub) is None
    label_two = ArtinGraph.build(["u", "u1", "u2"], [("u", "u1", 2), ("u", "u2", 4), ("u1", "u2", 3)])
    assert to_spoke_params(label_two) is None


params_st = st.integers(2, 5).flatmap(
    lambda n: st.builds(
        SpokeParams,
        st.tuples(*[st.integers(2, 6)] * n),
        st.tuples(*[st.integers(1, 3)] * (n - 1)),
    )
)


@given(params_st, st.randoms(use_true_random=False))
def test_recognition_round_trip(p, rnd):
    g = spoke_graph(p)
    names = {v: f"v{idx}" for idx, v in enumerate(rnd.sample(g.vertices, len(g.vertices)))}
    renamed = ArtinGraph.build(sorted(names.values()), [(names[a], names[b], lab) for a, b, lab in g.edges])
    q, roles = to_spoke_params(renamed)
    rebuilt = spoke_graph(q)
    mapped = {tuple(sorted((roles[a], roles[b]))) + (lab,) for a, b, lab in rebuilt.edges}
    assert mapped == set(renamed.edges)
    assert sorted(q.k[1:]) == sorted(p.k[1:]) or p.n == 2


def test_parse_and_format_round_trip():
    assert parse_graph(format_graph(TRIANGLE)) == TRIANGLE
    text = "# spoke\nvertex u\nvertex u1  # hub neighbor\nvertex u2\nedge u u1 4\nedge u u2 4\nedge u1 u2 3\n"
    assert parse_graph(text) == TRIANGLE


@pytest.mark.parametrize("text, line", [
    ("vertex a\nvertex b\nedge a b x\n", 3),
    ("vertex a\nvertex b\nedge a b 1\n", 3),
    ("vertex a\nedge a a 3\n", 2),
    ("vertex a\nbogus\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphError, match=f"line {line}"):
        parse_graph(text)
