import pytest

from stratisolve.errors import (
    TreeEdgeStableError,
    UnknownGeneratorError,
    WordSyntaxError,
)
from stratisolve.graph_model import canonical_tree, parse_graph
from stratisolve.presentation import (
    ab_element_order,
    ab_image,
    abelianization,
    format_word,
    genus_word,
    natural_presentation,
    parse_word,
    surface_gen_count,
)
from stratisolve.words import free_reduce


def pres_of(text):
    g = parse_graph(text)
    t = canonical_tree(g)
    return natural_presentation(g, t)


Z3 = "white w1 genus 0\nblack b1\nedge e1 w1 b1 3\n"
BS = "white w1 genus 0\nblack b1\nedge e1 w1 b1 1\nedge e2 w1 b1 2\n"


def test_surface_gen_count():
    assert surface_gen_count(2) == 4
    assert surface_gen_count(-3) == 3
    assert surface_gen_count(0) == 0


def test_genus_word_conventions():
    assert genus_word("w", 1) == (
        ("y.w.1", 1), ("y.w.2", 1), ("y.w.1", -1), ("y.w.2", -1)
    )
    assert genus_word("w", -2) == (("y.w.1", 2), ("y.w.2", 2))
    assert genus_word("w", 0) == ()


def test_disk_presentation():
    p = pres_of(Z3)
    assert p.generators == ("b.b1", "c.e1")
    assert p.relators == (
        (("c.e1", 1),),
        (("b.b1", 3), ("c.e1", -1)),
    )


def test_two_edge_presentation_has_stable_letter():
    p = pres_of(BS)
    assert p.generators == ("b.b1", "c.e1", "c.e2", "t.e2")
    assert (("t.e2", -1), ("c.e2", 1), ("t.e2", 1), ("b.b1", -2)) in p.relators


def test_generator_counts_match_graph(fixtures):
    for g in fixtures.values():
        t = canonical_tree(g)
        p = natural_presentation(g, t)
        n_boundary = sum(1 for x in p.generators if x.startswith("c."))
        n_stable = sum(1 for x in p.generators if x.startswith("t."))
        assert n_boundary == len(g.edges)
        assert n_stable == len(g.edges) - len(t.tree_edges)


def test_parse_and_format_roundtrip():
    p = pres_of(BS)
    for text in ("b.b1^2 * c.e1", "t.e2^-1 * c.e2 * t.e2 * b.b1^-2", "1"):
        w = parse_word(text, p)
        assert parse_word(format_word(w), p) == w


def test_parse_word_errors():
    p = pres_of(BS)
    with pytest.raises(WordSyntaxError):
        parse_word("b.b1^^2", p)
    with pytest.raises(UnknownGeneratorError):
        parse_word("b.nope", p)
    with pytest.raises(TreeEdgeStableError):
        parse_word("t.e1", p)  # e1 is the tree edge


def test_relators_have_zero_abelianized_image(fixtures):
    for g in fixtures.values():
        p = natural_presentation(g, canonical_tree(g))
        ab = abelianization(p)
        for r in p.relators:
            assert ab_image(r, ab).is_zero()


def test_abelianization_disk():
    p = pres_of(Z3)
    ab = abelianization(p)
    assert ab.torsion() == (3,)
    assert ab.free_rank() == 0
    assert not ab_image(parse_word("b.b1", p), ab).is_zero()
    assert ab_image(parse_word("b.b1^3", p), ab).is_zero()
    assert ab_element_order(parse_word("b.b1", p), ab) == 3


def test_abelianization_free_rank():
    p = pres_of(BS)
    ab = abelianization(p)
    assert ab.free_rank() == 1  # the stable letter survives rationally
    assert ab_element_order(parse_word("t.e2", p), ab) == 0


def test_ab_image_additive():
    p = pres_of(BS)
    ab = abelianization(p)
    w1 = parse_word("b.b1 * t.e2", p)
    w2 = parse_word("t.e2 * b.b1", p)
    assert ab_image(w1, ab).reduced == ab_image(w2, ab).reduced
    assert ab_image(free_reduce(w1 + tuple((n, -e) for n, e in reversed(w2))), ab).is_zero()
