"""Resolution of singular-circle orders.

The downstream graph-of-groups construction needs, for every black vertex
b, the order sigma(b) of its ``b.`` generator in the fundamental group
(0 = infinite).  Only upper bounds certified by explicit relator
derivations are ever used:

* disk rule: a terminal genus-0 white attached to b by an edge of label m
  bounds a disk, so b^|m| = 1 — certified by a short derivation search;
* consequence rule: a budgeted search for further derivable powers b^n;
* gcd closure: certificates for b^e1 and b^e2 compose (via the extended
  gcd) into a certificate for b^gcd(e1,e2) with no extra search;
* validity fixpoint: build all white handles under the candidate sigma and
  compare each computed boundary-image order d with the required edge-group
  order k; a mismatch yields the true relation c^d = 1, hence b^{|m| d} = 1,
  which must itself be certified by derivation before it is folded in.

A candidate that passes validity with every finite sigma certified is
exact: each vertex group then embeds into the fundamental group of the
graph of groups, which is the stratifold group because every attached cell
follows a certified relation — so sigma equals the true orders.  When a
needed certificate is out of budget, the result is undetermined and names
the unresolved black vertices; callers must refuse to answer rather than
guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import UndeterminedError
from .gog import build_white_handle, edge_group_order
from .graph_model import StratifoldGraph, canonical_tree, normalize_orientations
from .oracle import (
    Budget,
    DEFAULT_BUDGET,
    Derivation,
    derivation_gcd,
    derive_trivial,
)
from .presentation import (
    Presentation,
    ab_element_order,
    abelianization,
    natural_presentation,
)


@dataclass(frozen=True)
class OrderAssignment:
    sigma: dict[str, int]
    status: str  # 'exact' | 'undetermined'
    unresolved: tuple[str, ...]
    certificates: dict[str, Derivation]
    #: order of each b in the abelianized group (0 = infinite); a cheap
    #: independently-computed divisor of the true order
    ab_evidence: dict[str, int] = field(default_factory=dict)

    def require_exact(self) -> None:
        if self.status != "exact":
            raise UndeterminedError(self.unresolved)


class _Certificates:
    """Per-black gcd-closed certified exponents."""

    def __init__(self, pres: Presentation, budget: Budget):
        self.pres = pres
        self.budget = budget
        self.best: dict[str, tuple[int, Derivation]] = {}

    def current(self, black: str) -> int:
        return self.best.get(black, (0, None))[0]

    def add(self, black: str, deriv: Derivation) -> None:
        exp = sum(e for n, e in deriv.word if n == f"b.{black}")
        exp = abs(exp)
        if exp == 0:
            return
        if black not in self.best:
            self.best[black] = (exp, deriv)
            return
        cur_exp, cur_deriv = self.best[black]
        if exp % cur_exp == 0:
            return
        g, combined = derivation_gcd(f"b.{black}", cur_deriv, deriv)
        self.best[black] = (abs(g), combined)

    def try_derive(self, black: str, exp: int) -> bool:
        """Search for a certificate of b^exp; fold it in when found."""
        word = ((f"b.{black}", exp),)
        d = derive_trivial(self.pres, word, self.budget)
        if d is None:
            return False
        self.add(black, d)
        return True

    def sigma(self) -> dict[str, int]:
        return {
            b: self.current(b) for b in self.pres.graph.black_names()
        }


def seed_exponents(
    g: StratifoldGraph, pres: Presentation, budget: Budget
) -> _Certificates:
    """Disk rule plus budgeted consequence search, gcd-closed."""
    certs = _Certificates(pres, budget)
    # disk rule: terminal genus-0 whites
    for w in g.white_names():
        edges = g.edges_at_white(w)
        if g.white(w).genus == 0 and len(edges) == 1:
            e = edges[0]
            certs.try_derive(e.black, abs(e.label))
    # consequence rule: search small powers for blacks with no disk bound;
    # refinements of already-bounded blacks come from the validity fixpoint
    for b in g.black_names():
        if certs.current(b) != 0:
            continue
        for n in range(1, 4):
            if certs.try_derive(b, n):
                break
    return certs


def validity_check(
    g: StratifoldGraph, sigma: dict[str, int]
) -> list[tuple[str, int]]:
    """Compare computed boundary-image orders with required edge-group
    orders under sigma.  Returns (black, exponent) pairs for each mismatch,
    the exponent being the newly implied power b^{|m| d} = 1."""
    violations: list[tuple[str, int]] = []
    for w in g.white_names():
        wh = build_white_handle(g, w, sigma)
        if not wh.computed_orders:
            continue  # amalgam/HNN/reflection orders are exact by theory
        for e in g.edges_at_white(w):
            k = edge_group_order(sigma[e.black], e.label)
            actual = wh.boundary_order(f"c.{e.name}")
            if actual == k:
                continue
            if actual == 0:
                # image of infinite order where a finite order is required:
                # no new finite relation follows; flag as unresolvable
                violations.append((e.black, 0))
            else:
                violations.append((e.black, abs(e.label) * actual))
    return violations


def resolve_orders(
    g: StratifoldGraph, budget: Budget | None = None
) -> OrderAssignment:
    """Memoized: resolution is deterministic in (graph, budget), and the
    certificate search dominates pipeline cost."""
    return _resolve_orders(g, budget or DEFAULT_BUDGET)


@lru_cache(maxsize=256)
def _resolve_orders(g: StratifoldGraph, budget: Budget) -> OrderAssignment:
    tree = canonical_tree(g)
    g, _ = normalize_orientations(g, tree)
    pres = natural_presentation(g, tree)
    certs = seed_exponents(g, pres, budget)
    unresolved: set[str] = set()
    # fixpoint: each accepted violation strictly shrinks some sigma by a
    # proper divisor, so iterations are bounded by sum(log2(sigma))
    for _ in range(64):
        sigma = certs.sigma()
        progress = False
        violations = validity_check(g, sigma)
        if not violations:
            break
        for black, exp in violations:
            if exp == 0:
                unresolved.add(black)
                continue
            cur = certs.current(black)
            if cur and gcd(cur, exp) == cur:
                continue  # already certified
            if certs.try_derive(black, exp):
                progress = True
            else:
                unresolved.add(black)
        if not progress:
            break
    sigma = certs.sigma()
    if not unresolved and validity_check(g, sigma):
        # violations persist without certificates: not exact
        unresolved.update(b for b, _ in validity_check(g, sigma))
    ab = abelianization(pres)
    evidence = {
        b: ab_element_order(((f"b.{b}", 1),), ab) for b in g.black_names()
    }
    status = "exact" if not unresolved else "undetermined"
    return OrderAssignment(
        sigma=sigma,
        status=status,
        unresolved=tuple(sorted(unresolved)),
        certificates={b: d for b, (_, d) in certs.best.items()},
        ab_evidence=evidence,
    )
