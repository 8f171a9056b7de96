import pytest

from stratisolve.errors import (
    BlackDegreeError,
    DanglingEdgeError,
    DisconnectedError,
    DuplicateNameError,
    GraphSyntaxError,
    ZeroLabelError,
)
from stratisolve.graph_model import (
    black_partition,
    canonical_tree,
    normalize_orientations,
    parse_graph,
    serialize_graph,
)

Z3 = "white w1 genus 0\nblack b1\nedge e1 w1 b1 3\n"
BS = "white w1 genus 0\nblack b1\nedge e1 w1 b1 1\nedge e2 w1 b1 2\n"


def test_parse_counts():
    g = parse_graph(Z3)
    assert len(g.whites) == 1 and len(g.blacks) == 1 and len(g.edges) == 1
    assert g.white("w1").genus == 0
    assert g.edge("e1").label == 3


def test_parse_comments_and_blank_lines():
    g = parse_graph("# header\n\nwhite w1 genus -1  # projective plane\n")
    assert g.white("w1").genus == -1


def test_roundtrip():
    for text in (Z3, BS):
        g = parse_graph(text)
        assert parse_graph(serialize_graph(g)) == g


def test_syntax_error_carries_line():
    with pytest.raises(GraphSyntaxError) as exc:
        parse_graph("white w1 genus 0\nblack\n")
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize(
    "text,error",
    [
        ("white w genus 0\nwhite w genus 1\n", DuplicateNameError),
        ("white w genus 0\nblack b\nedge e w b 0\n", ZeroLabelError),
        ("white w genus 0\nblack b\nedge e w nope 3\n", DanglingEdgeError),
        ("white w genus 0\nblack b\nedge e w b 2\n", BlackDegreeError),
        ("white w genus 0\nwhite v genus 0\nblack b\nedge e w b 3\n",
         DisconnectedError),
    ],
)
def test_invalid_graphs_rejected(text, error):
    with pytest.raises(error):
        parse_graph(text)


def test_black_degree_counts_sheets_not_edges():
    # two edges with |labels| 1+2 = 3 sheets is legal
    parse_graph(BS)


def test_canonical_tree_deterministic():
    g = parse_graph(BS)
    t1, t2 = canonical_tree(g), canonical_tree(g)
    assert t1.basepoint == "w1"
    assert t1.tree_edges == t2.tree_edges == frozenset({"e1"})
    assert t1.path_from_basepoint("b1") == ("e1",)


def test_normalize_orientations_flips_tree_edges_only():
    g = parse_graph(
        "white w1 genus 0\nblack b1\nedge e1 w1 b1 -1\nedge e2 w1 b1 -2\n"
    )
    t = canonical_tree(g)
    g2, flips = normalize_orientations(g, t)
    assert flips == ("e1",)
    assert g2.edge("e1").label == 1
    assert g2.edge("e2").label == -2  # non-tree labels keep their sign


def test_black_partition_sorted_absolute():
    g = parse_graph(BS)
    assert black_partition(g, "b1") == (1, 2)
