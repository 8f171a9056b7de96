"""Natural presentation of the fundamental group of a 2-stratifold.

Generators are plain strings carrying a role prefix:

  ``b.<black>``      the singular circle of a black vertex
  ``c.<edge>``       the boundary curve corresponding to an edge
  ``y.<white>.<i>``  surface generator i of a white vertex (i >= 1)
  ``t.<edge>``       stable letter of a non-tree edge

Relators, one per white vertex, one per tree edge and one per non-tree edge:

  c_1 ... c_p . q          (boundary curves sorted by edge name; q is the
                            genus word of the white vertex)
  b^m . c^-1               for a tree edge with label m >= 1
  t^-1 . c . t . b^-m      for a non-tree edge with label m
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import TreeEdgeStableError, UnknownGeneratorError, WordSyntaxError
from .graph_model import MaximalTree, StratifoldGraph
from .snf import smith_normal_form
from .words import EMPTY, Word, concat, free_reduce, inverse, power


def surface_gen_count(genus: int) -> int:
    """Number of surface generators: 2g for genus g > 0, -g for g < 0."""
    if genus > 0:
        return 2 * genus
    return -genus


def genus_word(white: str, genus: int) -> Word:
    """The word q: commutator blocks for positive genus, squares for negative."""
    if genus > 0:
        parts = []
        for i in range(genus):
            a = f"y.{white}.{2 * i + 1}"
            b = f"y.{white}.{2 * i + 2}"
            parts.append(((a, 1), (b, 1), (a, -1), (b, -1)))
        return concat(*parts)
    if genus < 0:
        return tuple((f"y.{white}.{i + 1}", 2) for i in range(-genus))
    return EMPTY


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    graph: StratifoldGraph
    tree: MaximalTree

    def index(self, gen: str) -> int:
        try:
            return self.generators.index(gen)
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {gen!r}") from None


def natural_presentation(g: StratifoldGraph, t: MaximalTree) -> Presentation:
    gens: list[str] = [f"b.{b}" for b in sorted(g.black_names())]
    for w in sorted(g.white_names()):
        gens.extend(f"c.{e.name}" for e in sorted(g.edges_at_white(w), key=lambda e: e.name))
        gens.extend(
            f"y.{w}.{i + 1}" for i in range(surface_gen_count(g.white(w).genus))
        )
    non_tree = sorted(e.name for e in g.edges if e.name not in t.tree_edges)
    gens.extend(f"t.{e}" for e in non_tree)

    relators: list[Word] = []
    for w in sorted(g.white_names()):
        boundary = tuple(
            (f"c.{e.name}", 1)
            for e in sorted(g.edges_at_white(w), key=lambda e: e.name)
        )
        relators.append(concat(boundary, genus_word(w, g.white(w).genus)))
    for e in sorted(g.edges, key=lambda e: e.name):
        if e.name in t.tree_edges:
            relators.append(
                free_reduce(((f"b.{e.black}", e.label), (f"c.{e.name}", -1)))
            )
        else:
            te, ce, be = f"t.{e.name}", f"c.{e.name}", f"b.{e.black}"
            relators.append(
                free_reduce(((te, -1), (ce, 1), (te, 1), (be, -e.label)))
            )
    return Presentation(tuple(gens), tuple(relators), g, t)


# -- word grammar --------------------------------------------------------------

_ATOM = re.compile(
    r"^(b\.[^\s^*]+|c\.[^\s^*]+|t\.[^\s^*]+|y\.[^\s^*.]+\.\d+)(?:\^(-?\d+))?$"
)


def parse_word(text: str, p: Presentation) -> Word:
    """Parse ``atom[^int] (* atom[^int])*`` or the identity word "1"."""
    text = text.strip()
    if not text:
        raise WordSyntaxError("empty word text")
    if text == "1":
        return EMPTY
    pairs = []
    for factor in text.split("*"):
        factor = factor.strip()
        m = _ATOM.match(factor)
        if not m:
            raise WordSyntaxError(f"malformed factor {factor!r}")
        atom, exp = m.group(1), int(m.group(2)) if m.group(2) else 1
        if atom.startswith("t."):
            edge = atom[2:]
            if edge in p.tree.tree_edges:
                raise TreeEdgeStableError(
                    f"{atom!r} refers to a tree edge; stable letters exist "
                    "only for non-tree edges"
                )
        if atom not in p.generators:
            raise UnknownGeneratorError(f"unknown generator {atom!r}")
        pairs.append((atom, exp))
    return free_reduce(pairs)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " * ".join(
        name if exp == 1 else f"{name}^{exp}" for name, exp in w
    )


# -- abelianization -------------------------------------------------------------

@dataclass(frozen=True)
class Abelianization:
    presentation: Presentation
    diagonal: tuple[int, ...]
    colbasis: tuple[tuple[int, ...], ...]  # V, columns operated

    def free_rank(self) -> int:
        n = len(self.presentation.generators)
        nonzero = sum(1 for d in self.diagonal if d != 0)
        return n - nonzero

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


@dataclass(frozen=True)
class AbelianizedImage:
    vector: tuple[int, ...]
    reduced: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.reduced)


def abelianization(p: Presentation) -> Abelianization:
    n = len(p.generators)
    rows = []
    for rel in p.relators:
        row = [0] * n
        for name, exp in rel:
            row[p.index(name)] += exp
        rows.append(row)
    diag, v = smith_normal_form(rows, n)
    return Abelianization(p, tuple(diag), tuple(tuple(r) for r in v))


def ab_element_order(w: Word, ab: Abelianization) -> int:
    """Order of the image of w in the abelianized group (0 = infinite)."""
    from math import gcd, lcm

    img = ab_image(w, ab)
    order = 1
    for j, u in enumerate(img.reduced):
        d = ab.diagonal[j] if j < len(ab.diagonal) else 0
        if d > 0:
            order = lcm(order, d // gcd(d, u or d))
        elif u != 0:
            return 0
    return order


def ab_image(w: Word, ab: Abelianization) -> AbelianizedImage:
    p = ab.presentation
    n = len(p.generators)
    vec = [0] * n
    for name, exp in w:
        vec[p.index(name)] += exp
    # coordinates in the SNF column basis: u = vec . V
    u = [sum(vec[i] * ab.colbasis[i][j] for i in range(n)) for j in range(n)]
    reduced = []
    for j in range(n):
        d = ab.diagonal[j] if j < len(ab.diagonal) else 0
        reduced.append(u[j] % d if d > 0 else u[j])
    return AbelianizedImage(tuple(vec), tuple(reduced))
