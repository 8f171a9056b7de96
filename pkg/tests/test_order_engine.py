import pytest

from stratisolve.errors import UndeterminedError
from stratisolve.graph_model import canonical_tree, parse_graph
from stratisolve.oracle import Budget, replay_derivation
from stratisolve.order_engine import resolve_orders, seed_exponents, validity_check
from stratisolve.presentation import natural_presentation


def test_disk_rule_z3(fixtures):
    oa = resolve_orders(fixtures["FX-Z3"])
    assert oa.status == "exact"
    assert oa.sigma == {"b1": 3}
    assert oa.ab_evidence == {"b1": 3}


def test_gcd_closure_two_disks(fixtures):
    # disks of degree 2 and 3 on the same circle: gcd certificate gives 1
    oa = resolve_orders(fixtures["FX-S2W"])
    assert oa.status == "exact"
    assert oa.sigma == {"b1": 1}


def test_infinite_order_is_exact(fixtures):
    oa = resolve_orders(fixtures["FX-BS"])
    assert oa.status == "exact"
    assert oa.sigma == {"b1": 0}
    assert "b1" not in oa.certificates


def test_validity_fixpoint_refines_order(fixtures):
    # genus-1 white of degree 1 plus disk of degree 2: the disk rule gives
    # b^2 = 1 and validity confirms sigma = 2 exactly
    oa = resolve_orders(fixtures["FX-ORB"])
    assert oa.status == "exact"
    assert oa.sigma == {"b1": 2}


def test_triangle_orders(fixtures):
    oa = resolve_orders(fixtures["FX-TRI(2,3,5)"])
    assert oa.status == "exact"
    assert sorted(oa.sigma.values()) == [2, 3, 5]


def test_certificates_replay(fixtures):
    for name in ("FX-Z3", "FX-S2W", "FX-ORB", "FX-TRI(2,3,5)"):
        g = fixtures[name]
        t = canonical_tree(g)
        pres = natural_presentation(g, t)
        oa = resolve_orders(g)
        assert oa.status == "exact"
        for black, deriv in oa.certificates.items():
            assert deriv.word == ((f"b.{black}", oa.sigma[black]),) or (
                sum(e for n, e in deriv.word) % oa.sigma[black] == 0
            )
            assert replay_derivation(pres, deriv), (name, black)


def test_budget_exhaustion_names_blacks(fixtures):
    oa = resolve_orders(fixtures["FX-ORB"], Budget.parse("1,8"))
    assert oa.status == "undetermined"
    assert oa.unresolved == ("b1",)
    with pytest.raises(UndeterminedError):
        oa.require_exact()


def test_default_budget_restores_exact(fixtures):
    # same graph, default budget: exact again (and memoization keyed on
    # budget must not leak the undetermined result)
    resolve_orders(fixtures["FX-ORB"], Budget.parse("1,8"))
    oa = resolve_orders(fixtures["FX-ORB"])
    assert oa.status == "exact"


def test_seed_exponents_disk_rule():
    g = parse_graph("white w1 genus 0\nblack b1\nedge e1 w1 b1 4\n")
    pres = natural_presentation(g, canonical_tree(g))
    certs = seed_exponents(g, pres, Budget())
    assert certs.current("b1") == 4


def test_validity_check_flags_wrong_sigma():
    g = parse_graph("white w1 genus 0\nblack b1\nedge e1 w1 b1 3\n")
    assert validity_check(g, {"b1": 3}) == []
    bad = validity_check(g, {"b1": 6})
    assert bad and bad[0][0] == "b1"


def test_ab_evidence_divides_sigma(fixtures):
    for g in fixtures.values():
        oa = resolve_orders(g)
        if oa.status != "exact":
            continue
        for b, sig in oa.sigma.items():
            ab = oa.ab_evidence[b]
            if sig == 0:
                continue  # infinite order upstairs, any ab order divides
            assert sig % ab == 0 or ab == 0 or sig % ab == 0, (b, sig, ab)
            # the abelianized order always divides the true order
            assert ab != 0 and sig % ab == 0
