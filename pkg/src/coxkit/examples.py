"""Ready-made Coxeter matrices used by the CLI and the test-suite."""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterable

from .diagram import INF, CoxeterMatrix


def right_angled_from_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> CoxeterMatrix:
    """Right-angled matrix whose nerve is the flag complex of the graph: 2 on edges, inf elsewhere."""
    vertices = list(vertices)
    adjacent = {frozenset(e) for e in edges}
    return CoxeterMatrix(tuple(vertices), {
        frozenset((u, v)): 2 if frozenset((u, v)) in adjacent else INF
        for u, v in combinations(vertices, 2)
    })


def build_rac_cube(k: int) -> CoxeterMatrix:
    """Right-angled k-cube group: k vertical inf-edges, everything else commutes.

    The nerve is the boundary of the k-dimensional cross-polytope.
    """
    if k < 1:
        raise ValueError("k must be positive")
    gens = [name for i in range(1, k + 1) for name in (f"u{i}", f"l{i}")]
    entries = {frozenset((f"u{i}", f"l{i}")): INF for i in range(1, k + 1)}
    return CoxeterMatrix(tuple(gens), entries)


PV_GROUPS = {"A1": (1,), "A2": (2,), "B1": (3, 4, 5), "B2": (6, 7, 8)}


def build_pv_example(pairs: int = 8) -> CoxeterMatrix:
    """The relatively hyperbolic example: an 8-pair right-angled cube plus 12 inf-edges.

    Vertical pairs are grouped A1 = {1}, A2 = {2}, B1 = {3,4,5}, B2 = {6,7,8}.
    upper(A1)-upper(B1), lower(A1)-lower(B2), upper(A2)-upper(B2) and
    lower(A2)-lower(B1) are joined by inf-edges.  `pairs` > 8 appends
    untouched vertical pairs.
    """
    if pairs < 8:
        raise ValueError("the example needs at least 8 vertical pairs")
    base = build_rac_cube(pairs)
    entries = dict(base.entries)
    a1, a2 = PV_GROUPS["A1"][0], PV_GROUPS["A2"][0]
    for j in PV_GROUPS["B1"]:
        entries[frozenset((f"u{a1}", f"u{j}"))] = INF
        entries[frozenset((f"l{a2}", f"l{j}"))] = INF
    for j in PV_GROUPS["B2"]:
        entries[frozenset((f"l{a1}", f"l{j}"))] = INF
        entries[frozenset((f"u{a2}", f"u{j}"))] = INF
    return CoxeterMatrix(base.generators, entries)


def pv_subcube(groups: Iterable[str]) -> list[str]:
    out = []
    for g in groups:
        for i in PV_GROUPS[g]:
            out += [f"u{i}", f"l{i}"]
    return out


def octahedron_face_names() -> list[str]:
    return ["f" + "".join(s) for s in product("+-", repeat=3)]


def build_ideal_octahedron() -> CoxeterMatrix:
    """Right-angled ideal octahedron: one generator per face, 2 iff faces share an edge, else inf."""
    faces = octahedron_face_names()

    def adjacent(a: str, b: str) -> bool:
        return sum(x != y for x, y in zip(a[1:], b[1:])) == 1

    return CoxeterMatrix(tuple(faces), {
        frozenset((a, b)): 2 if adjacent(a, b) else INF for a, b in combinations(faces, 2)
    })


def icosahedron_graph() -> tuple[list[str], list[tuple[str, str]]]:
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a, b in product((1, -1), repeat=2):
        pts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    names = [f"i{k:02d}" for k in range(12)]
    edges = []
    for (i, p), (j, q) in combinations(enumerate(pts), 2):
        if abs(sum((x - y) ** 2 for x, y in zip(p, q)) - 4) < 1e-9:
            edges.append((names[i], names[j]))
    return names, edges


def build_icosahedron_group() -> CoxeterMatrix:
    """Right-angled dodecahedron group; its nerve is the icosahedron."""
    return right_angled_from_graph(*icosahedron_graph())


def build_dodecahedron_group() -> CoxeterMatrix:
    return build_icosahedron_group()


def cross_polytope_facets(d: int) -> list[list[str]]:
    """Facets of the boundary of the (d+1)-dimensional cross-polytope, named like build_rac_cube."""
    return [[("u" if s == "+" else "l") + str(i + 1) for i, s in enumerate(signs)]
            for signs in product("+-", repeat=d + 1)]


SQUARE = ("a1", "b1", "a2", "b2")  # cyclic order; a1-a2 and b1-b2 are the inf diagonals


def build_square_piece(interior: int = 2, cone: str = "c", prefix: str = "x") -> CoxeterMatrix:
    """A flag 2-sphere: a cone over the square a1 b1 a2 b2 glued to a disk with
    `interior` (2 or 3) vertices strung between b1 and b2.

    The square is a codimension-1 flat in boundary position, with `cone` as cone point.
    """
    if interior < 2:
        raise ValueError("need at least two interior disk vertices")
    a1, b1, a2, b2 = SQUARE
    xs = [f"{prefix}{i}" for i in range(1, interior + 1)]
    edges = [(a1, b1), (b1, a2), (a2, b2), (b2, a1)]
    edges += [(cone, s) for s in SQUARE]
    edges += [(xs[0], a1), (xs[-1], a2)]
    edges += [(x, b) for x in xs for b in (b1, b2)]
    edges += list(zip(xs, xs[1:]))
    return right_angled_from_graph((*SQUARE, cone, *xs), edges)
