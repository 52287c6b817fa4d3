"""Nerves of Coxeter systems, affine (Euclidean) flats and their position."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import networkx as nx

from .classify import Kind, _classify_connected, classify, is_affine, is_elliptic
from .diagram import INF, CoxeterMatrix, connected_components, format_label, parse_label
from .homology import SimplicialComplex
from .report import AuditReport

DEFAULT_CAP = 500_000


class CapExceeded(RuntimeError):
    def __init__(self, what: str, cap: int, depth: int):
        super().__init__(f"{what}: cap of {cap} exceeded (reached depth {depth}); "
                         "raise it with --cap or COXKIT_CAP")
        self.cap = cap
        self.depth = depth


def resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("COXKIT_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class Nerve:
    complex: SimplicialComplex
    matrix: CoxeterMatrix
    cone_vertices: frozenset[str] = frozenset()

    @property
    def generators(self) -> tuple[str, ...]:
        return self.matrix.generators

    def is_simplex(self, subset: Iterable[str]) -> bool:
        subset = frozenset(subset)
        return not subset or subset in self.complex.simplices

    def with_cones(self, cones: Iterable[str]) -> "Nerve":
        return Nerve(self.complex, self.matrix, frozenset(cones))


@dataclass(frozen=True)
class AffineFlat:
    generators: tuple[str, ...]
    flat_dim: int
    maximal: bool = False
    families: tuple[str, ...] = ()

    @property
    def gens(self) -> frozenset[str]:
        return frozenset(self.generators)

    def to_dict(self) -> dict:
        return {"generators": list(self.generators), "flat_dim": self.flat_dim,
                "maximal": self.maximal, "families": list(self.families)}


def build_nerve(m: CoxeterMatrix, cap: int | None = None, cone_vertices: Iterable[str] = ()) -> Nerve:
    """All spherical subsets, grown level by level from spherical sets."""
    cap = resolve_cap(cap)
    gens = sorted(m.generators)
    index = {g: i for i, g in enumerate(gens)}
    finite = {g: {h for h in gens if h != g and m.label(g, h) != INF} for g in gens}
    level = [frozenset([g]) for g in gens]
    simplices: set[frozenset[str]] = set(level)
    depth = 1
    while level:
        nxt = []
        for t in level:
            top = max(index[x] for x in t)
            common = set.intersection(*(finite[x] for x in t))
            for v in gens[top + 1:]:
                if v not in common:
                    continue
                s = t | {v}
                if is_elliptic(m.subdiagram(s)):
                    nxt.append(s)
        depth += 1
        simplices.update(nxt)
        if len(simplices) > cap:
            raise CapExceeded("nerve enumeration", cap, depth)
        level = nxt
    return Nerve(SimplicialComplex(tuple(gens), frozenset(simplices)), m, frozenset(cone_vertices))


def is_flag(c: SimplicialComplex) -> bool:
    g = nx.Graph()
    g.add_nodes_from(c.vertices)
    g.add_edges_from(tuple(s) for s in c.simplices if len(s) == 2)
    return all(frozenset(clique) in c.simplices for clique in nx.find_cliques(g))


def _parabolic_pieces(m: CoxeterMatrix, cap: int) -> list[frozenset[str]]:
    """Connected generator subsets whose diagram is parabolic."""
    d = m.to_diagram()
    adj = d.adjacency()
    seen: set[frozenset[str]] = set()
    frontier = [frozenset([g]) for g in d.vertices]
    seen.update(frontier)
    pieces = []
    while frontier:
        nxt = []
        for s in frontier:
            for v in sorted({w for x in s for w in adj[x]} - s):
                t = s | {v}
                if t in seen:
                    continue
                seen.add(t)
                if len(seen) > cap:
                    raise CapExceeded("affine flat enumeration", cap, len(t))
                kind, _ = _classify_connected(m.subdiagram(t))
                if kind is Kind.INDEFINITE:
                    continue
                if kind is Kind.PARABOLIC:
                    pieces.append(t)
                else:
                    nxt.append(t)
        frontier = nxt
    return sorted(pieces, key=lambda p: sorted(p))


def enumerate_affine_flats(m: CoxeterMatrix, cap: int | None = None) -> list[AffineFlat]:
    """Generator subsets all of whose components are parabolic, with maximality flags."""
    cap = resolve_cap(cap)
    pieces = _parabolic_pieces(m, cap)

    def orthogonal(a: frozenset[str], b: frozenset[str]) -> bool:
        return not (a & b) and all(m.label(x, y) == 2 for x in a for y in b)

    compat = [[orthogonal(a, b) for b in pieces] for a in pieces]
    found: list[tuple[int, ...]] = []

    def extend(chosen: list[int], start: int):
        if chosen:
            found.append(tuple(chosen))
            if len(found) > cap:
                raise CapExceeded("affine flat enumeration", cap, len(chosen))
        for j in range(start, len(pieces)):
            if all(compat[i][j] for i in chosen):
                chosen.append(j)
                extend(chosen, j + 1)
                chosen.pop()

    extend([], 0)
    flats = []
    for combo in found:
        gens = frozenset().union(*(pieces[i] for i in combo))
        maximal = not any(all(compat[i][j] for i in combo) for j in range(len(pieces)) if j not in combo)
        fam = classify(m.subdiagram(gens)).families
        flats.append(AffineFlat(tuple(sorted(gens)), len(gens) - len(combo), maximal, fam))
    flats.sort(key=lambda f: (len(f.generators), f.generators))
    return flats


def maximal_flats(m: CoxeterMatrix, cap: int | None = None) -> list[AffineFlat]:
    return [f for f in enumerate_affine_flats(m, cap) if f.maximal]


def peripheral_flats(flats: list[AffineFlat], dim: int | None = None) -> list[AffineFlat]:
    """Maximal flats that count as flats: flat_dim >= 2 (rank >= 3 affine subgroups).

    Infinite dihedral pieces (flat_dim 1) are virtually cyclic and are only
    kept when the ambient dimension is 2, where they are the codimension-1 flats.
    """
    floor = 1 if dim is not None and dim <= 2 else 2
    return [f for f in flats if f.maximal and f.flat_dim >= floor]


def make_flat(m: CoxeterMatrix, generators: Iterable[str]) -> AffineFlat:
    """An AffineFlat for a given generator set; raises if the set is not affine."""
    gens = frozenset(generators)
    d = m.subdiagram(gens)
    comps = connected_components(d)
    if not is_affine(d):
        raise ValueError(f"{sorted(gens)} is not an affine generator set ({classify(d)})")
    t = classify(d)
    maximal = any(f.gens == gens for f in maximal_flats(m))
    return AffineFlat(tuple(sorted(gens)), len(gens) - len(comps), maximal, t.families)


def _as_matrix(n: Nerve | CoxeterMatrix) -> CoxeterMatrix:
    return n.matrix if isinstance(n, Nerve) else n


def check_codim1_flats(n: Nerve | CoxeterMatrix, dim: int, flats: list[AffineFlat] | None = None) -> AuditReport:
    flats = peripheral_flats(flats if flats is not None else maximal_flats(_as_matrix(n)), dim)
    report = AuditReport(f"maximal flats have codimension 1 (dim {dim})")
    bad = [f for f in flats if f.flat_dim != dim - 1]
    report.add("codimension 1", not bad,
               detail=f"every maximal affine flat of flat_dim >= 2 has flat_dim {dim - 1}",
               witness=[f.to_dict() for f in bad] or None,
               maximal_flats=len(flats))
    report.data["flats"] = [f.to_dict() for f in flats]
    return report


def check_flat_isolation(n: Nerve | CoxeterMatrix, flats: list[AffineFlat] | None = None,
                         dim: int | None = None) -> AuditReport:
    m = _as_matrix(n)
    flats = peripheral_flats(flats if flats is not None else maximal_flats(m), dim)
    report = AuditReport("isolated flats (necessary condition only)")
    report.notes.append("distinct maximal flats must meet in a spherical set; "
                        "this is a consequence of relative hyperbolicity, not a certificate of it")
    bad = []
    for f, g in combinations(flats, 2):
        common = f.gens & g.gens
        if not is_elliptic(m.subdiagram(common)):
            bad.append({"flats": [list(f.generators), list(g.generators)], "shared": sorted(common)})
    report.add("pairwise intersections elliptic", not bad, witness=bad or None, pairs=len(flats) * (len(flats) - 1) // 2)
    return report


@dataclass(frozen=True)
class FlatPosition:
    kind: str  # "Boundary", "Interior" or "NonSeparating"
    cone_vertex: str | None
    components: tuple[tuple[str, ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def __str__(self):
        if self.kind == "Boundary":
            return f"Boundary({self.cone_vertex})"
        if self.kind == "NonSeparating":
            return f"NonSeparating({self.count})"
        return "Interior"


def _components(c: SimplicialComplex, subset: Iterable[str]) -> list[tuple[str, ...]]:
    keep = set(subset)
    adj = c.one_skeleton()
    seen: set[str] = set()
    out = []
    for v in sorted(keep):
        if v in seen:
            continue
        stack, comp = [v], {v}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in keep and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return out


def is_cone_point(n: Nerve, v: str, flat: Iterable[str]) -> bool:
    """v cones the full subcomplex on the flat: sigma + v is a simplex for every sigma in it."""
    flat = frozenset(flat)
    sub = n.complex.full_subcomplex(flat)
    if not sub.simplices:
        return False
    return all(n.is_simplex(set(f) | {v}) for f in sub.facets())


def flat_boundary_position(n: Nerve, f: AffineFlat | Iterable[str]) -> FlatPosition:
    gens = f.gens if isinstance(f, AffineFlat) else frozenset(f)
    rest = [g for g in n.generators if g not in gens]
    comps = _components(n.complex, rest)
    cones = [c[0] for c in comps if len(c) == 1 and is_cone_point(n, c[0], gens)]
    if cones:
        marked = [v for v in cones if v in n.cone_vertices]
        return FlatPosition("Boundary", min(marked or cones), tuple(comps))
    if len(comps) == 2:
        return FlatPosition("Interior", None, tuple(comps))
    return FlatPosition("NonSeparating", None, tuple(comps))


# ---------------------------------------------------------------------------
# JSON export / import

def nerve_to_dict(n: Nerve, flats: list[AffineFlat] | None = None) -> dict:
    flats = flats if flats is not None else enumerate_affine_flats(n.matrix)
    m = n.matrix
    return {
        "format": "coxkit-nerve-v1",
        "vertices": list(n.complex.vertices),
        "generators": list(m.generators),
        "edges": [[*sorted(k), format_label(v)] for k, v in sorted(m.entries.items(), key=lambda kv: sorted(kv[0]))
                  if v != 2],
        "facets": [list(f) for f in n.complex.facets()],
        "cone_vertices": sorted(n.cone_vertices),
        "flats": [f.to_dict() for f in flats],
    }


def nerve_from_dict(data: dict) -> Nerve:
    m = CoxeterMatrix(tuple(data["generators"]),
                      {frozenset((u, v)): parse_label(lab) for u, v, lab in data["edges"]})
    n = build_nerve(m, cone_vertices=data.get("cone_vertices", ()))
    given = sorted(tuple(sorted(f)) for f in data.get("facets", []))
    if given and given != n.complex.facets():
        raise ValueError("facet list does not match the Coxeter matrix")
    return n


def nerve_to_json(n: Nerve) -> str:
    return json.dumps(nerve_to_dict(n), sort_keys=True, indent=2) + "\n"


def nerve_from_json(text: str) -> Nerve:
    return nerve_from_dict(json.loads(text))
