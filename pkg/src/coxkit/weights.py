"""Weights on dihedral angles of 3-faces, bad/good 3-faces, and the general dimension bound.

A 3-face F_T has |T| = n - 3.  Its 2-faces are the generators u with T + u
a face; a dihedral angle is a pair {u, v} of 2-faces with T + u + v an edge.
The angle diagram is the induced diagram on T + u + v with u, v marked.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import networkx as nx

from .classify import Kind, classify
from .diagram import INF, Diagram, all_distances, distance
from .polytope import PolytopeError, PolytopeModel
from .report import AuditReport

NEAR = 7       # marked vertices this close weigh 1
FAR = 15       # ... up to this distance weigh 1/3
EDGE_CONSTANT = Fraction(29, 3)  # 7 + 15/3
BOUND_SLOPE = 96
BOUND_OFFSET = 68


@dataclass(frozen=True)
class AngleDiagram:
    base: frozenset[str]
    marked: tuple[str, str]
    diagram: Diagram

    @property
    def marked_distance(self) -> float:
        return distance(self.diagram, *self.marked)


def weight_of_distance(d: float) -> Fraction:
    if d <= NEAR:
        return Fraction(1)
    if d <= FAR:
        return Fraction(1, 3)
    return Fraction(0)


def weight(a: AngleDiagram) -> Fraction:
    return weight_of_distance(a.marked_distance)


def general_bound(C) -> Fraction:
    C = Fraction(C)
    if C < 0:
        raise ValueError("C must be nonnegative")
    return BOUND_SLOPE * C + BOUND_OFFSET


# ---------------------------------------------------------------------------
# local structure of a 3-face

def _check_3face(p: PolytopeModel, T) -> frozenset[str]:
    T = frozenset(T)
    if p.faces.get(T) != 3:
        raise PolytopeError(f"{sorted(T)} is not a 3-face")
    return T


def two_faces(p: PolytopeModel, T) -> list[str]:
    T = _check_3face(p, T)
    return sorted(next(iter(S - T)) for S in p.supersets(T) if p.faces[S] == 2)


def dihedral_angles(p: PolytopeModel, T) -> list[tuple[str, str]]:
    T = _check_3face(p, T)
    return [(u, v) for u, v in combinations(two_faces(p, T), 2) if (T | {u, v}) in p.faces]


def intersection_kind(p: PolytopeModel, T, u: str, v: str) -> str:
    """How two 2-faces of F_T meet: 'edge', 'cusp', 'vertex' or 'empty'."""
    S = frozenset(T) | {u, v}
    if S in p.faces:
        return "edge"
    if p.cusps_on(S):
        return "cusp"
    if any(p.faces[F] == 0 for F in p.supersets(S)):
        return "vertex"
    return "empty"


def _common_vertex(p: PolytopeModel, S: frozenset[str]) -> bool:
    return bool(p.cusps_on(S)) or any(p.faces[F] == 0 for F in p.supersets(S))


def _face_poset_graph(p: PolytopeModel, T: frozenset[str]) -> nx.Graph:
    g = nx.Graph()
    finite = [S for S in p.supersets(T) if p.faces[S] == 0]
    cusps = p.cusps_on(T)
    faces2 = two_faces(p, T)
    for S in finite:
        g.add_node(("v", S), kind="finite")
    for c in cusps:
        g.add_node(("c", c.name), kind="cusp")
    for u, v in dihedral_angles(p, T):
        e = ("e", u, v)
        g.add_node(e, kind="edge")
        g.add_edge(e, ("f", u))
        g.add_edge(e, ("f", v))
        E = T | {u, v}
        for S in finite:
            if E <= S:
                g.add_edge(e, ("v", S))
        for c in cusps:
            if E <= c.generators:
                g.add_edge(e, ("c", c.name))
    for u in faces2:
        g.add_node(("f", u), kind="face")
    return g


def _template_graph(vertices: dict[str, str], faces: list[str]) -> nx.Graph:
    """Face poset from a polygon list; `faces` are vertex strings in cyclic order."""
    g = nx.Graph()
    for v, kind in vertices.items():
        g.add_node(("v", v), kind=kind)
    for f in faces:
        g.add_node(("f", f), kind="face")
        for a, b in zip(f, f[1:] + f[0]):
            e = ("e", "".join(sorted(a + b)))
            g.add_node(e, kind="edge")
            g.add_edge(e, ("f", f))
            g.add_edge(e, ("v", a))
            g.add_edge(e, ("v", b))
    return g


# Two finite apexes N, S over a triangle of cusps x, y, z.
BIPYRAMID = _template_graph(
    {"N": "finite", "S": "finite", "x": "cusp", "y": "cusp", "z": "cusp"},
    ["Nxy", "Nyz", "Nzx", "Sxy", "Syz", "Szx"],
)


def _same_poset(g: nx.Graph, h: nx.Graph) -> bool:
    return nx.is_isomorphic(g, h, node_match=lambda a, b: a["kind"] == b["kind"])


def is_bad_3face(p: PolytopeModel, T) -> bool:
    T = _check_3face(p, T)
    g = _face_poset_graph(p, T)
    kinds = [k for _, k in g.nodes(data="kind")]
    if (kinds.count("finite"), kinds.count("cusp"), kinds.count("edge"), kinds.count("face")) != (2, 3, 9, 6):
        return False
    return _same_poset(g, BIPYRAMID)


def three_faces(p: PolytopeModel) -> list[frozenset[str]]:
    return p.faces_of_dim(3)


@dataclass(frozen=True)
class BadFaceReport:
    total: int
    bad: int

    @property
    def good(self) -> int:
        return self.total - self.bad

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.bad, self.total) if self.total else Fraction(0)


def bad_ratio_bound(n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(3 * n + 6, 4 * (n - 3))
    return Fraction(3 * n + 9, 4 * (n - 2))


def check_bad_ratio(n: int, bad: int, total: int) -> AuditReport:
    if n < 8:
        raise ValueError("the bad-face ratio bound needs n >= 8")
    rep = BadFaceReport(total, bad)
    report = AuditReport(f"bad 3-face ratio (n = {n})")
    bound = bad_ratio_bound(n)
    report.add("bad / all 3-faces < bound", rep.ratio < bound, ratio=rep.ratio, bound=bound,
               bad=rep.bad, good=rep.good, total=rep.total)
    return report


def bad_ratio_audit(p: PolytopeModel) -> AuditReport:
    if p.dim < 8:
        raise ValueError("the bad-face ratio bound needs n >= 8")
    faces = three_faces(p)
    bad = sum(1 for T in faces if is_bad_3face(p, T))
    return check_bad_ratio(p.dim, bad, len(faces))


# ---------------------------------------------------------------------------
# angle diagrams and weight sums

def angle_diagram(p: PolytopeModel, T, u: str, v: str) -> AngleDiagram:
    T = _check_3face(p, T)
    for S in (T | {u}, T | {v}, T | {u, v}):
        if S not in p.faces or u in T or v in T or u == v:
            raise PolytopeError(f"({u}, {v}) is not a dihedral angle of face {sorted(T)}")
    d = p.nerve.matrix.subdiagram(T | {u, v})
    return AngleDiagram(T, tuple(sorted((u, v))), d)


def sigma_face(p: PolytopeModel, T) -> Fraction:
    return sum((weight(angle_diagram(p, T, u, v)) for u, v in dihedral_angles(p, T)), Fraction(0))


def sigma_face_by_edges(p: PolytopeModel, T) -> Fraction:
    """Independent route: walk the edges of F_T and weigh the two generators each edge adds."""
    T = _check_3face(p, T)
    m = p.nerve.matrix
    total = Fraction(0)
    for E in p.supersets(T):
        if p.faces[E] != 1:
            continue
        u, v = sorted(E - T)
        dist = all_distances(m.subdiagram(E))
        total += weight_of_distance(dist[u].get(v, INF))
    return total


@dataclass(frozen=True)
class EdgeSum:
    value: Fraction
    bound: Fraction
    ok: bool


def sigma_of_diagram(d: Diagram) -> Fraction:
    dist = all_distances(d)
    return sum((weight_of_distance(dist[u].get(v, INF)) for u, v in combinations(d.vertices, 2)), Fraction(0))


def sigma_edge(p: PolytopeModel | None, T, n: int | None = None) -> EdgeSum:
    """Weight at an edge: every pair of its n - 1 generators is one dihedral angle."""
    T = frozenset(T)
    if p is not None:
        n = p.dim if n is None else n
        if p.faces.get(T) != 1:
            raise PolytopeError(f"{sorted(T)} is not an edge")
        d = p.nerve.matrix.subdiagram(T)
    else:
        raise ValueError("use sigma_edge_diagram for a bare diagram")
    return sigma_edge_diagram(d, n)


def sigma_edge_diagram(d: Diagram, n: int | None = None) -> EdgeSum:
    n = len(d) + 1 if n is None else n
    value = sigma_of_diagram(d)
    bound = EDGE_CONSTANT * (n - 1)
    return EdgeSum(value, bound, value <= bound)


# ---------------------------------------------------------------------------
# K' types

def classify_Kprime(p: PolytopeModel, T, Kp: Iterable[str]) -> str | None:
    """Type1..Type4 by the intersection pattern of the chosen 2-faces, or None.

    Type1: four faces, every three share a vertex, all four do not.
    Type2: three faces meeting pairwise in edges, no common vertex.
    Type3: as Type2 but one pair meets only at a cusp.
    Type4: two pairs of disjoint (opposite) faces, no common vertex.
    """
    T = _check_3face(p, T)
    Kp = sorted(set(Kp))
    faces2 = set(two_faces(p, T))
    if not set(Kp) <= faces2:
        raise PolytopeError(f"{sorted(set(Kp) - faces2)} are not 2-faces of {sorted(T)}")
    kinds = {frozenset(pair): intersection_kind(p, T, *pair) for pair in combinations(Kp, 2)}
    shared = _common_vertex(p, T | set(Kp))
    values = list(kinds.values())
    if len(Kp) == 4 and not shared and all(_common_vertex(p, T | set(tr)) for tr in combinations(Kp, 3)):
        return "Type1"
    if len(Kp) == 3 and not shared:
        if all(k == "edge" for k in values):
            return "Type2"
        if sorted(values) == ["cusp", "edge", "edge"]:
            return "Type3"
    if len(Kp) == 4 and not shared:
        a = Kp[0]
        for b in Kp[1:]:
            c, d = [x for x in Kp if x not in (a, b)]
            if kinds[frozenset((a, b))] == "empty" and kinds[frozenset((c, d))] == "empty":
                return "Type4"
    return None


# Face shapes with at most six 2-faces, keyed by
# (2-faces, finite vertices, cusps, sorted 2-face sizes).  Reconstructed from
# the prose descriptions; the letters follow the case list a..h.
SHAPES = {
    (4, 4, 0, (3, 3, 3, 3)): "a: tetrahedron",
    (5, 6, 0, (3, 3, 4, 4, 4)): "b: triangular prism",
    (5, 4, 1, (3, 3, 3, 3, 4)): "c: square pyramid, cusp apex",
    (6, 8, 0, (4, 4, 4, 4, 4, 4)): "d: cube",
    (6, 8, 0, (3, 3, 4, 4, 5, 5)): "e: prism with a truncated vertex",
    (6, 6, 1, (3, 3, 4, 4, 4, 4)): "g: one cusp, seven vertices",
    (6, 4, 2, (3, 3, 3, 3, 4, 4)): "h: two cusps, six vertices",
    (6, 2, 3, (3, 3, 3, 3, 3, 3)): "bad: triangular bipyramid",
    (6, 5, 0, (3, 3, 3, 3, 3, 5)): "excluded: cone over a pentagon",
    (6, 5, 1, (3, 3, 3, 3, 3, 5)): "excluded: cone over a pentagon",
}


def face_signature(p: PolytopeModel, T) -> tuple:
    T = _check_3face(p, T)
    faces2 = two_faces(p, T)
    finite = [S for S in p.supersets(T) if p.faces[S] == 0]
    cusps = p.cusps_on(T)
    sizes = []
    for u in faces2:
        Q = T | {u}
        sizes.append(sum(1 for S in finite if Q <= S) + sum(1 for c in cusps if Q <= c.generators))
    return (len(faces2), len(finite), len(cusps), tuple(sorted(sizes)))


def face_shape(p: PolytopeModel, T) -> str:
    sig = face_signature(p, T)
    return SHAPES.get(sig, "f: other" if sig[0] == 6 else "unlisted")


def kprime_types(p: PolytopeModel, T) -> dict[str, list[list[str]]]:
    faces2 = two_faces(p, T)
    found: dict[str, list[list[str]]] = {}
    for size in (3, 4):
        for Kp in combinations(faces2, size):
            t = classify_Kprime(p, T, Kp)
            if t:
                found.setdefault(t, []).append(list(Kp))
    return found


def good_face_audit(p: PolytopeModel, n: int | None = None) -> AuditReport:
    """sigma(F) >= 7 - k on every good 3-face with k <= 6 two-faces."""
    n = p.dim if n is None else n
    report = AuditReport(f"weights on good 3-faces (n = {n})")
    rows = []
    bad_faces = 0
    for T in three_faces(p):
        if is_bad_3face(p, T):
            bad_faces += 1
            continue
        k = len(two_faces(p, T))
        if k > 6:
            continue
        s = sigma_face(p, T)
        rows.append({
            "face": sorted(T), "k": k, "sigma": s, "required": 7 - k, "ok": s >= 7 - k,
            "shape": face_shape(p, T), "types": sorted(kprime_types(p, T)),
        })
    failures = [r for r in rows if not r["ok"]]
    report.add("sigma(F) >= 7 - k", not failures, witness=failures[:10] or None,
               audited=len(rows), skipped_bad=bad_faces)
    report.data["faces"] = rows
    return report


def edge_weight_audit(p: PolytopeModel) -> AuditReport:
    report = AuditReport(f"weights at edges (n = {p.dim})")
    bad = []
    worst = Fraction(0)
    for E in p.faces_of_dim(1):
        s = sigma_edge(p, E)
        worst = max(worst, s.value)
        if not s.ok:
            bad.append({"edge": sorted(E), "sigma": s.value, "bound": s.bound})
    report.add("sigma(edge) <= 29(n-1)/3", not bad, witness=bad[:10] or None,
               edges=len(p.faces_of_dim(1)), max_sigma=worst, bound=EDGE_CONSTANT * (p.dim - 1))
    return report


def weight_report(p: PolytopeModel) -> dict:
    """Per 3-face sigma / k / good flag and per edge sigma with its bound."""
    faces = []
    for T in three_faces(p):
        faces.append({
            "face": sorted(T), "sigma": sigma_face(p, T), "k": len(two_faces(p, T)),
            "good": not is_bad_3face(p, T),
        })
    edges = []
    for E in p.faces_of_dim(1):
        s = sigma_edge(p, E)
        edges.append({"edge": sorted(E), "sigma": s.value, "bound": s.bound, "ok": s.ok})
    return {"dimension": p.dim, "three_faces": faces, "edges": edges}


def is_elliptic_rank(d: Diagram, r: int) -> bool:
    return len(d) == r and classify(d).kind is Kind.ELLIPTIC
