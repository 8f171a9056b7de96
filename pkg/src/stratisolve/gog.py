"""Graph of groups over a stratifold graph, and based loop words.

Vertex groups: a black vertex carries the cyclic group on its ``b.`` letter
of the resolved order sigma (0 = infinite); a white vertex carries the
classified handle from :mod:`fgroup_handles`.  The edge group of an edge
with label m into a black vertex of order sigma is cyclic of order

    k = sigma / gcd(sigma, |m|)     (k = 0 when sigma = 0)

with monomorphisms sending the edge generator to b^m on the black side and
to the white handle's image of the boundary curve on the white side.

Natural-presentation words embed as based loops r0 e1 r1 ... en rn along
maximal-tree paths; the loop keeps the tree scaffolding eagerly so the
reduction in :mod:`serre_solver` stays literal and auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    InjectivityError,
    UncertifiedOrdersError,
    UnknownGeneratorError,
)
from .fgroup_handles import WhiteGroupSpec, WhiteHandle, white_handle
from .graph_model import MaximalTree, StratifoldGraph
from .local_groups import FreeProductOfCyclics, solve_congruence
from .presentation import surface_gen_count
from .words import EMPTY, Word, concat, inverse, power


def edge_group_order(sigma: int, label: int) -> int:
    """Order of the edge group: sigma/gcd(sigma, |label|), 0 when sigma=0."""
    if sigma == 0:
        return 0
    return sigma // gcd(sigma, abs(label))


def build_white_handle(
    g: StratifoldGraph, w: str, sigma: dict[str, int]
) -> WhiteHandle:
    """Classify the white vertex group under the order assignment sigma."""
    edges = sorted(g.edges_at_white(w), key=lambda e: e.name)
    spec = WhiteGroupSpec(
        boundary_names=tuple(f"c.{e.name}" for e in edges),
        boundary_orders=tuple(
            edge_group_order(sigma[e.black], e.label) for e in edges
        ),
        genus=g.white(w).genus,
        surface_names=tuple(
            f"y.{w}.{i + 1}" for i in range(surface_gen_count(g.white(w).genus))
        ),
    )
    return white_handle(spec)


@dataclass(frozen=True)
class DirectedEdge:
    """An edge traversal; ``to_black`` True means white -> black."""

    edge: str
    to_black: bool

    def reverse(self) -> "DirectedEdge":
        return DirectedEdge(self.edge, not self.to_black)


@dataclass(frozen=True)
class LoopWord:
    """Based loop r0 e1 r1 ... en rn; vertex_words[i] lives in the handle of
    vertices[i]; vertices[0] = vertices[-1] = basepoint."""

    vertices: tuple[str, ...]
    vertex_words: tuple[Word, ...]
    edges: tuple[DirectedEdge, ...]

    @property
    def edge_length(self) -> int:
        return len(self.edges)


class GraphOfGroups:
    """Immutable bundle of graph, tree, orders, handles and edge data."""

    def __init__(self, graph: StratifoldGraph, tree: MaximalTree,
                 sigma: dict[str, int]):
        self.graph = graph
        self.tree = tree
        self.sigma = dict(sigma)
        self.basepoint = tree.basepoint
        self.black_handles = {
            b: FreeProductOfCyclics(((f"b.{b}", self.sigma[b]),))
            for b in graph.black_names()
        }
        self.white_handles = {
            w: build_white_handle(graph, w, self.sigma)
            for w in graph.white_names()
        }
        self.edge_order = {
            e.name: edge_group_order(self.sigma[e.black], e.label)
            for e in graph.edges
        }
        self._whites = set(graph.white_names())
        self._check_injectivity()

    # -- vertex/edge helpers -----------------------------------------------

    def is_white(self, v: str) -> bool:
        return v in self._whites

    def vertex_handle(self, v: str):
        if self.is_white(v):
            return self.white_handles[v].handle
        return self.black_handles[v]

    def white_image(self, edge_name: str) -> Word:
        """Image of the edge generator in the white handle's letters."""
        e = self.graph.edge(edge_name)
        return self.white_handles[e.white].boundary_images[f"c.{edge_name}"]

    def black_image(self, edge_name: str) -> Word:
        e = self.graph.edge(edge_name)
        return ((f"b.{e.black}", e.label),)

    def _check_injectivity(self) -> None:
        for e in self.graph.edges:
            k = self.edge_order[e.name]
            wh = self.white_handles[e.white]
            if wh.computed_orders:
                actual = wh.boundary_order(f"c.{e.name}")
                if actual != k:
                    raise InjectivityError(
                        f"edge {e.name!r}: boundary image has order {actual} "
                        f"but the edge group has order {k}"
                    )
            # black side: b^label has order sigma/gcd(sigma,|label|) = k
            # in Z/sigma by construction; nothing to compute.

    # -- edge-group membership with witness ---------------------------------

    def edge_membership(self, edge_name: str, end: str, r: Word):
        """Witness s with r = (edge-generator image)^s at the given end
        ('black' or 'white'), or None."""
        e = self.graph.edge(edge_name)
        if end == "black":
            letter = f"b.{e.black}"
            x = 0
            for name, exp in r:
                if name != letter:
                    raise UnknownGeneratorError(
                        f"{name!r} is not a letter at black vertex {e.black!r}"
                    )
                x += exp
            return solve_congruence(e.label, x, self.sigma[e.black])
        if end != "white":
            raise ValueError(f"end must be 'black' or 'white', got {end!r}")
        handle = self.white_handles[e.white].handle
        return handle.cyclic_membership(r, self.white_image(edge_name))

    def transport(self, edge_name: str, to_end: str, s: int) -> Word:
        """The edge-group element with witness exponent s, written at the
        requested end."""
        if to_end == "black":
            return power(self.black_image(edge_name), s)
        return power(self.white_image(edge_name), s)


def build_gog(g: StratifoldGraph, t: MaximalTree, orders) -> GraphOfGroups:
    """Build the graph of groups from a resolved order assignment.

    ``orders`` is either a plain black->sigma dict (trusted) or an
    OrderAssignment, which must have exact status.
    """
    if hasattr(orders, "status"):
        if orders.status != "exact":
            raise UncertifiedOrdersError(
                f"order assignment is not exact: {orders.status}"
            )
        sigma = orders.sigma
    else:
        sigma = orders
    return GraphOfGroups(g, t, sigma)


# -- loop-word translation ------------------------------------------------


class _LoopBuilder:
    def __init__(self, gog: GraphOfGroups):
        self.gog = gog
        self.vertices = [gog.basepoint]
        self.vertex_words: list[Word] = [EMPTY]
        self.edges: list[DirectedEdge] = []

    def add_word(self, w: Word) -> None:
        self.vertex_words[-1] = concat(self.vertex_words[-1], w)

    def add_edge(self, de: DirectedEdge) -> None:
        e = self.gog.graph.edge(de.edge)
        here, there = (e.white, e.black) if de.to_black else (e.black, e.white)
        assert self.vertices[-1] == here, "loop word lost its footing"
        self.edges.append(de)
        self.vertices.append(there)
        self.vertex_words.append(EMPTY)

    def walk_to(self, v: str) -> None:
        """Tree path basepoint -> v with trivial labels."""
        cur = self.gog.basepoint
        for ename in self.gog.tree.path_from_basepoint(v):
            e = self.gog.graph.edge(ename)
            self.add_edge(DirectedEdge(ename, to_black=(cur == e.white)))
            cur = e.black if cur == e.white else e.white

    def walk_back(self, v: str) -> None:
        """Tree path v -> basepoint."""
        path = self.gog.tree.path_from_basepoint(v)
        cur = v
        for ename in reversed(path):
            e = self.gog.graph.edge(ename)
            self.add_edge(DirectedEdge(ename, to_black=(cur == e.white)))
            cur = e.black if cur == e.white else e.white

    def loop(self) -> LoopWord:
        return LoopWord(
            tuple(self.vertices), tuple(self.vertex_words), tuple(self.edges)
        )


def to_loop_word(gog: GraphOfGroups, w: Word) -> LoopWord:
    """Embed a natural-presentation word as a based loop."""
    b = _LoopBuilder(gog)
    g = gog.graph
    for name, exp in w:
        if name.startswith("b."):
            v = name[2:]
            g.black(v)
            b.walk_to(v)
            b.add_word(((name, exp),))
            b.walk_back(v)
        elif name.startswith("c."):
            e = g.edge(name[2:])
            b.walk_to(e.white)
            b.add_word(power(gog.white_image(e.name), exp))
            b.walk_back(e.white)
        elif name.startswith("y."):
            v = name.split(".")[1]
            g.white(v)
            b.walk_to(v)
            b.add_word(((name, exp),))
            b.walk_back(v)
        elif name.startswith("t."):
            e = g.edge(name[2:])
            if e.name in gog.tree.tree_edges:
                raise UnknownGeneratorError(
                    f"{name!r} refers to a tree edge; no stable letter exists"
                )
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                if step > 0:
                    b.walk_to(e.white)
                    b.add_edge(DirectedEdge(e.name, to_black=True))
                    b.walk_back(e.black)
                else:
                    b.walk_to(e.black)
                    b.add_edge(DirectedEdge(e.name, to_black=False))
                    b.walk_back(e.white)
        else:
            raise UnknownGeneratorError(f"unknown generator {name!r}")
    return b.loop()


def check_loop(gog: GraphOfGroups, lw: LoopWord) -> None:
    """Assert structural validity of a loop word (used by tests/replays)."""
    assert len(lw.vertices) == len(lw.vertex_words) == len(lw.edges) + 1
    assert lw.vertices[0] == lw.vertices[-1] == gog.basepoint
    for i, de in enumerate(lw.edges):
        e = gog.graph.edge(de.edge)
        src, dst = (e.white, e.black) if de.to_black else (e.black, e.white)
        assert lw.vertices[i] == src and lw.vertices[i + 1] == dst
