"""Cutting a nerve along a separating codimension-1 flat, and gluing back."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .classify import find_isomorphism
from .diagram import INF, CoxeterMatrix, Diagram
from .nerve import AffineFlat, Nerve, build_nerve, flat_boundary_position, maximal_flats, peripheral_flats


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class CutResult:
    pieces: tuple[Nerve, Nerve]
    cone_vertex_names: tuple[str, str]
    flat: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "flat": list(self.flat),
            "cone_vertices": list(self.cone_vertex_names),
            "pieces": [sorted(p.generators) for p in self.pieces],
        }


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def _flat_gens(f: AffineFlat | Iterable[str]) -> frozenset[str]:
    return f.gens if isinstance(f, AffineFlat) else frozenset(f)


def cut_along_flat(n: Nerve, f: AffineFlat | Iterable[str], cone_names: tuple[str, str] | None = None) -> CutResult:
    """Split n along an interior flat and cone the flat off in each half."""
    flat = _flat_gens(f)
    pos = flat_boundary_position(n, flat)
    if pos.kind == "Boundary":
        raise SurgeryError(f"flat already in boundary position (cone vertex {pos.cone_vertex})")
    if pos.kind != "Interior":
        raise SurgeryError(f"complement of the flat has {pos.count} component(s), expected 2")
    m = n.matrix
    taken = set(m.generators)
    if cone_names is None:
        first = _fresh("cone", taken)
        cone_names = (first, _fresh("cone", taken | {first}))
    pieces = []
    for comp, cone in zip(pos.components, cone_names):
        keep = set(comp) | flat
        gens = tuple(g for g in m.generators if g in keep) + (cone,)
        entries = {k: v for k, v in m.entries.items() if k <= keep}
        for g in keep:
            entries[frozenset((g, cone))] = 2 if g in flat else INF
        sub = CoxeterMatrix(gens, entries)
        cones = (n.cone_vertices & keep) | {cone}
        pieces.append(build_nerve(sub, cone_vertices=cones))
    return CutResult((pieces[0], pieces[1]), tuple(cone_names), tuple(sorted(flat)))


def _boundary_cone(n: Nerve, flat: frozenset[str]) -> str:
    pos = flat_boundary_position(n, flat)
    if pos.kind != "Boundary":
        raise SurgeryError(f"flat {sorted(flat)} is not in boundary position ({pos})")
    return pos.cone_vertex


def glue_along_flat(n1: Nerve, f1: AffineFlat | Iterable[str], n2: Nerve, f2: AffineFlat | Iterable[str],
                    match: Mapping[str, str]) -> Nerve:
    """Remove the cone vertices over f1 and f2 and identify the flats through `match` (f1 -> f2).

    Generators of the second piece keep their names unless they clash with
    the first piece, in which case a suffix is appended.
    """
    flat1, flat2 = _flat_gens(f1), _flat_gens(f2)
    if set(match) != set(flat1) or set(match.values()) != set(flat2) or len(set(match.values())) != len(match):
        raise SurgeryError("match must be a bijection between the two flats")
    m1, m2 = n1.matrix, n2.matrix
    for x, y in combinations(sorted(flat1), 2):
        if m1.label(x, y) != m2.label(match[x], match[y]):
            raise SurgeryError(f"match does not preserve labels on {x},{y}: "
                               f"{m1.label(x, y)} vs {m2.label(match[x], match[y])}")
    c1, c2 = _boundary_cone(n1, flat1), _boundary_cone(n2, flat2)

    inverse = {v: k for k, v in match.items()}
    rename: dict[str, str] = {}
    taken = set(m1.generators)
    for g in m2.generators:
        if g == c2:
            continue
        if g in inverse:
            rename[g] = inverse[g]
        else:
            rename[g] = _fresh(g, taken) if g in taken else g
            taken.add(rename[g])

    side1 = [g for g in m1.generators if g != c1 and g not in flat1]
    side2 = [rename[g] for g in m2.generators if g != c2 and g not in flat2]
    gens = tuple(g for g in m1.generators if g != c1) + tuple(side2)
    entries = {k: v for k, v in m1.entries.items() if c1 not in k}
    for k, v in m2.entries.items():
        if c2 in k:
            continue
        entries[frozenset(rename[x] for x in k)] = v
    for x in side1:
        for y in side2:
            entries[frozenset((x, y))] = INF
    cones = (n1.cone_vertices - {c1}) | {rename[g] for g in n2.cone_vertices if g != c2}
    return build_nerve(CoxeterMatrix(gens, entries), cone_vertices=cones)


def normalize_boundary(n: Nerve, dim: int) -> list[Nerve]:
    """Cut along interior codimension-1 flats until every one sits in the boundary."""
    initial = [f for f in peripheral_flats(maximal_flats(n.matrix), dim) if f.flat_dim == dim - 1]
    budget = len(initial)
    done: list[Nerve] = []
    todo = [n]
    cuts = 0
    while todo:
        piece = todo.pop(0)
        flats = [f for f in peripheral_flats(maximal_flats(piece.matrix), dim) if f.flat_dim == dim - 1]
        interior = next((f for f in flats if flat_boundary_position(piece, f).kind == "Interior"), None)
        if interior is None:
            done.append(piece)
            continue
        cuts += 1
        if cuts > budget:
            raise SurgeryError(f"normalization did not finish within {budget} cuts")
        todo.extend(cut_along_flat(piece, interior).pieces)
    return done


def nerves_isomorphic(a: Nerve, b: Nerve, respect_cones: bool = True) -> bool:
    """Label-preserving generator bijection, optionally sending cone vertices to cone vertices."""
    da, db = a.matrix.to_diagram(), b.matrix.to_diagram()
    if not respect_cones:
        return find_isomorphism(da, db) is not None
    # tag cone vertices with a pendant edge of an unused label so the matcher respects them
    tag = 997

    def tagged(d: Diagram, cones: frozenset[str]) -> Diagram:
        edges = dict(d.edges)
        verts = list(d.vertices)
        for c in sorted(cones):
            t = f"__tag_{c}"
            verts.append(t)
            edges[frozenset((c, t))] = tag
        return Diagram(tuple(verts), edges)

    return find_isomorphism(tagged(da, a.cone_vertices), tagged(db, b.cone_vertices)) is not None
