import pytest
from hypothesis import given, strategies as st

from dirhomology.graph_core import (
    BadMlpSpec,
    BadVertex,
    BadWeights,
    DuplicateArc,
    EdgeListParseError,
    MlpSpec,
    SelfLoopRejected,
    WeightedDigraph,
    connected_components,
    format_edge_list,
    from_edge_list,
    longest_path_length,
    mlp_digraph,
    parse_edge_list,
    to_decimal,
    underlying_undirected,
)
from decimal import Decimal

widths_st = st.lists(st.integers(1, 4), min_size=1, max_size=5)


def test_from_edge_list_examples():
    g = from_edge_list(3, [])
    assert g.vertex_count == 3 and g.n_arcs == 0
    g = from_edge_list(3, [(0, 1), (1, 2)])
    assert g.n_arcs == 2
    assert g.out_adjacency == ((1,), (2,), ())


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (2, [(0, 0)], SelfLoopRejected),
        (2, [(0, 2)], BadVertex),
        (2, [(-1, 0)], BadVertex),
        (2, [(0, 1), (0, 1)], DuplicateArc),
    ],
)
def test_from_edge_list_rejects(n, edges, exc):
    with pytest.raises(exc):
        from_edge_list(n, edges)


def test_reciprocal_arcs_accepted():
    g = from_edge_list(2, [(0, 1), (1, 0)])
    assert g.has_reciprocal_arcs()
    assert underlying_undirected(g).edges == frozenset({(0, 1)})


def test_adjacency_is_deterministic():
    a = from_edge_list(4, [(0, 3), (0, 1), (2, 1), (0, 2)])
    b = from_edge_list(4, [(0, 2), (2, 1), (0, 1), (0, 3)])
    assert a == b
    assert a.out_adjacency[0] == (1, 2, 3)


@pytest.mark.parametrize(
    "widths, n_v, n_e",
    [([2, 2], 4, 4), ([4, 10, 3], 17, 70), ([1], 1, 0)],
)
def test_mlp_digraph_sizes(widths, n_v, n_e):
    g = mlp_digraph(widths)
    assert (g.vertex_count, g.n_arcs) == (n_v, n_e)
    assert underlying_undirected(g).n_edges == n_e


def test_mlp_digraph_arcs_between_consecutive_layers_only():
    g = mlp_digraph([2, 2])
    assert g.arcs == {(0, 2), (0, 3), (1, 2), (1, 3)}


@pytest.mark.parametrize("widths", [[], [0, 2], [2, -1]])
def test_bad_mlp_spec(widths):
    with pytest.raises(BadMlpSpec):
        MlpSpec(tuple(widths))


def test_layer_ranges_partition():
    spec = MlpSpec((4, 10, 3))
    assert [list(r) for r in spec.layer_ranges()] == [
        list(range(0, 4)), list(range(4, 14)), list(range(14, 17))
    ]


def test_longest_path_length_examples(cyclic_triangle):
    assert longest_path_length(mlp_digraph([4, 10, 3])) == 2
    assert longest_path_length(cyclic_triangle) is None
    assert longest_path_length(from_edge_list(1, [])) == 0
    assert longest_path_length(from_edge_list(0, [])) == 0


def test_connected_components_examples():
    assert connected_components(underlying_undirected(from_edge_list(3, [])))[0] == 3
    count, labels = connected_components(underlying_undirected(from_edge_list(3, [(2, 1), (0, 1)])))
    assert count == 1 and labels == [0, 0, 0]
    assert connected_components(underlying_undirected(mlp_digraph([4, 10, 3])))[0] == 1


def test_component_labels_use_smallest_member():
    g = underlying_undirected(from_edge_list(5, [(4, 2), (3, 1)]))
    count, labels = connected_components(g)
    assert count == 3
    assert labels == [0, 1, 2, 1, 2]


@given(widths_st)
def test_mlp_invariants(widths):
    spec = MlpSpec(tuple(widths))
    g = mlp_digraph(spec)
    assert longest_path_length(g) == len(widths) - 1
    # a lone layer of width n is n isolated vertices
    expected = widths[0] if len(widths) == 1 else 1
    assert connected_components(underlying_undirected(g))[0] == expected
    assert not g.has_reciprocal_arcs()
    assert g.n_arcs == spec.n_arcs


# -- edge-list format ---------------------------------------------------------


def test_parse_unweighted_with_comments():
    g = parse_edge_list("# a comment\n3 2\n0 1\n\n# another\n1 2\n")
    assert g.arcs == {(0, 1), (1, 2)}


def test_parse_weighted_keeps_exact_decimals():
    wg = parse_edge_list("2 1\n0 1 -1.50\n")
    assert isinstance(wg, WeightedDigraph)
    assert wg.weight[(0, 1)] == Decimal("-1.5")


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("3\n", 1),
        ("2 1\n0 1 0.5\n", None),  # valid, sanity
        ("3 2\n0 1 0.5\n1 2\n", 3),
        ("2 1\n0 0\n", 2),
        ("2 1\n0 x\n", 2),
        ("2 2\n0 1\n0 1\n", 3),
        ("2 2\n0 1\n", 2),
        ("2 1\n0 1 abc\n", 2),
    ],
)
def test_parse_errors_report_line(text, line):
    if line is None:
        parse_edge_list(text)
        return
    with pytest.raises(EdgeListParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_format_roundtrip():
    g = mlp_digraph([2, 3])
    assert parse_edge_list(format_edge_list(g)) == g
    wg = WeightedDigraph(g, {a: Decimal(i) / 4 for i, a in enumerate(g.sorted_arcs())})
    back = parse_edge_list(format_edge_list(wg))
    assert back.digraph == g and back.weight == wg.weight


def test_weights_must_cover_arcs():
    g = from_edge_list(2, [(0, 1)])
    with pytest.raises(BadWeights):
        WeightedDigraph(g, {})
    with pytest.raises(BadWeights):
        to_decimal("inf")
    assert to_decimal(0.1) == Decimal("0.1")
    assert to_decimal("1e-3") == Decimal("0.001")
