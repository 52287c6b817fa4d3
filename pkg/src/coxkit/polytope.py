"""Face poset of the polytope dual to a nerve, with cusps, and the face-count audits.

A face F_T is indexed by a spherical, cone-free generator set T and has
dimension n - |T|; T = {} is the whole polytope.  A cusp is a collapsed
codimension-1 flat; it lies on F_T iff T is contained in the cusp's
generator set.  Cusps are counted in c, never in a_0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .nerve import Nerve, check_codim1_flats, maximal_flats, peripheral_flats
from .report import AuditReport

Face = frozenset


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Cusp:
    name: str
    generators: frozenset[str]


@dataclass(frozen=True)
class FVector:
    a: tuple[int, ...]  # a[k] = number of k-faces; a[0] counts finite vertices only
    c: int

    def to_dict(self) -> dict:
        return {"a": list(self.a), "c": self.c}


@dataclass(frozen=True)
class FaceLocalCounts:
    face: tuple[str, ...]
    dim: int
    a: tuple[int, ...]  # a[i] for i < dim
    c: int

    @property
    def excess(self) -> int | None:
        return self.a[1] + self.c - 5 if self.dim == 2 else None


@dataclass
class PolytopeModel:
    dim: int
    nerve: Nerve
    faces: dict[frozenset[str], int]
    cusps: list[Cusp]
    _by_vertex: dict[str, set[frozenset[str]]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for f in self.faces:
            for v in f:
                self._by_vertex.setdefault(v, set()).add(f)

    def face_dim(self, T: Iterable[str]) -> int:
        return self.dim - len(frozenset(T))

    def is_face(self, T: Iterable[str]) -> bool:
        return frozenset(T) in self.faces

    def faces_of_dim(self, k: int) -> list[frozenset[str]]:
        return sorted((f for f, d in self.faces.items() if d == k), key=sorted)

    def supersets(self, T: Iterable[str]) -> list[frozenset[str]]:
        T = frozenset(T)
        if not T:
            return list(self.faces)
        sets = sorted((self._by_vertex.get(v, set()) for v in T), key=len)
        return [f for f in sets[0] if T <= f]

    def cusps_on(self, T: Iterable[str]) -> list[Cusp]:
        T = frozenset(T)
        return [c for c in self.cusps if T <= c.generators]

    def facets(self) -> list[str]:
        return sorted(next(iter(f)) for f, d in self.faces.items() if d == self.dim - 1)

    def f_vector(self) -> FVector:
        counts = [0] * self.dim
        for f, d in self.faces.items():
            if d < self.dim:
                counts[d] += 1
        return FVector(tuple(counts), len(self.cusps))


def derive_cusps(nerve: Nerve, dim: int) -> list[Cusp]:
    """Cone vertices first (their flat is the set of generators they commute with),
    then codimension-1 maximal flats not already coned."""
    m = nerve.matrix
    cones = sorted(nerve.cone_vertices)
    cusps = []
    seen = []
    for v in cones:
        gens = frozenset(u for u in m.generators if u != v and u not in nerve.cone_vertices and m.label(u, v) == 2)
        cusps.append(Cusp(v, gens))
        seen.append(gens)
    for f in peripheral_flats(maximal_flats(m), dim):
        if f.flat_dim != dim - 1 or f.gens & nerve.cone_vertices or f.gens in seen:
            continue
        cusps.append(Cusp("[" + ",".join(f.generators) + "]", f.gens))
    return cusps


def build_polytope(nerve: Nerve, dim: int, *, strict: bool = False,
                   cusps: list[Cusp] | None = None) -> PolytopeModel:
    """Model of the fundamental polytope P' of dimension `dim`.

    strict=True refuses inputs whose maximal flats are not all of codimension 1.
    """
    if dim < 1:
        raise PolytopeError("dimension must be positive")
    if strict:
        audit = check_codim1_flats(nerve, dim)
        if not audit.passed:
            raise PolytopeError(f"maximal flat of wrong dimension: {audit.failures()[0].witness}")
    cones = nerve.cone_vertices
    faces: dict[frozenset[str], int] = {frozenset(): dim}
    for s in nerve.complex.simplices:
        if s & cones or len(s) > dim:
            continue
        faces[s] = dim - len(s)
    if cusps is None:
        cusps = derive_cusps(nerve, dim)
    return PolytopeModel(dim, nerve, faces, list(cusps))


def face_local_counts(p: PolytopeModel, T: Iterable[str]) -> FaceLocalCounts:
    T = frozenset(T)
    if T not in p.faces:
        raise PolytopeError(f"{sorted(T)} is not a face")
    d = p.faces[T]
    counts = [0] * d
    for f in p.supersets(T):
        k = p.faces[f]
        if k < d:
            counts[k] += 1
    return FaceLocalCounts(tuple(sorted(T)), d, tuple(counts), len(p.cusps_on(T)))


# ---------------------------------------------------------------------------
# face-count inequalities

def _witness(T: frozenset[str], loc: FaceLocalCounts) -> dict:
    return {"face": sorted(T), "a": list(loc.a), "c": loc.c}


def audit_face_counts(p: PolytopeModel) -> AuditReport:
    """Face-count inequalities for faces of dimension 2..5 (including P itself when n <= 5)."""
    report = AuditReport(f"face-count inequalities (n = {p.dim})")
    top = min(5, p.dim)
    if p.dim < 2:
        report.notes.append("nothing to check below dimension 2")
        return report
    local = {T: face_local_counts(p, T) for T, d in p.faces.items() if 2 <= d <= top}

    def run(name: str, dim: int, predicate, extra=None):
        faces = sorted((T for T in local if p.faces[T] == dim), key=sorted)
        bad = []
        for T in faces:
            if not predicate(T, local[T]):
                w = _witness(T, local[T])
                if extra:
                    w.update(extra(T))
                bad.append(w)
        report.add(name, not bad, faces=len(faces), witness=bad[:10] or None,
                   failures=len(bad))

    def excess_sum(T):
        return sum(local[Q].excess for Q in local if p.faces[Q] == 2 and T < Q)

    run("2-faces: a1 + c >= 5", 2, lambda T, l: l.a[1] + l.c >= 5)
    if top >= 3:
        run("3-faces: a1 + c = 3 a2 - 6", 3, lambda T, l: l.a[1] + l.c == 3 * l.a[2] - 6)
        run("3-faces: a2 + 2c = 12 + sum of 2-face excesses", 3,
            lambda T, l: l.a[2] + 2 * l.c == 12 + excess_sum(T),
            extra=lambda T: {"excess_sum": excess_sum(T)})
        run("3-faces: a2 + 2c >= 12", 3, lambda T, l: l.a[2] + 2 * l.c >= 12)
        run("3-faces: a2 >= 6", 3, lambda T, l: l.a[2] >= 6)
        run("3-faces: a2 + c >= 9", 3, lambda T, l: l.a[2] + l.c >= 9)
        report.data["excess_sums"] = {
            ",".join(sorted(T)) or "P": excess_sum(T) for T in sorted(local, key=sorted) if p.faces[T] == 3
        }
    if top >= 4:
        run("4-faces: a3 >= 10", 4, lambda T, l: l.a[3] >= 10)
        run("4-faces: a3 + c >= 15", 4, lambda T, l: l.a[3] + l.c >= 15)
    if top >= 5:
        run("5-faces: a4 >= 16", 5, lambda T, l: l.a[4] >= 16)
    return report


def check_facet_configurations(p: PolytopeModel) -> AuditReport:
    """Adjacent / parallel facet configurations in the right-angled case."""
    if not p.nerve.matrix.is_right_angled():
        raise PolytopeError("facet-configuration check needs a right-angled Coxeter matrix")
    report = AuditReport("facet configurations (right-angled)")
    facets = p.facets()

    def adjacent(s, t):
        return frozenset((s, t)) in p.faces

    def common_cusp(gens):
        return any(frozenset(gens) <= c.generators for c in p.cusps)

    parallel = [(s, t) for s, t in combinations(facets, 2) if not adjacent(s, t) and common_cusp((s, t))]
    bad1 = [list(tr) for tr in combinations(facets, 3)
            if all(adjacent(x, y) for x, y in combinations(tr, 2)) and frozenset(tr) not in p.faces]
    report.add("pairwise adjacent facets meet in an (n-3)-face", not bad1, witness=bad1[:10] or None)
    bad2, bad3 = [], []
    for s, t in parallel:
        around = [u for u in facets if u not in (s, t) and adjacent(u, s) and adjacent(u, t)]
        bad2 += [[s, t, u] for u in around if not common_cusp((s, t, u))]
        bad3 += [[s, t, u, w] for u, w in combinations(around, 2) if not common_cusp((s, t, u, w))]
    report.add("parallel pair plus adjacent facet meet at a cusp", not bad2, witness=bad2[:10] or None,
               parallel_pairs=len(parallel))
    report.add("parallel pair plus two adjacent facets meet at a cusp", not bad3, witness=bad3[:10] or None)
    return report


# ---------------------------------------------------------------------------
# Nikulin / Khovanskii

def nikulin_bound(n: int, i: int, k: int) -> Fraction:
    """Upper bound on the average number of i-faces of a k-face, for i < k <= n // 2."""
    if not (0 <= i < k <= n // 2):
        raise ValueError(f"need 0 <= i < k <= n // 2, got n={n}, i={i}, k={k}")
    lo, hi = n // 2, (n + 1) // 2
    return Fraction(comb(n - i, n - k) * (comb(lo, i) + comb(hi, i)), comb(lo, k) + comb(hi, k))


def average_counts(p: PolytopeModel, i: int, k: int) -> Fraction:
    """Average number of i-faces over the k-faces of p, averaged face by face."""
    kfaces = p.faces_of_dim(k)
    if not kfaces:
        raise PolytopeError(f"no {k}-faces")
    total = sum(face_local_counts(p, T).a[i] for T in kfaces)
    return Fraction(total, len(kfaces))


def average_counts_by_incidence(p: PolytopeModel, i: int, k: int) -> Fraction:
    """Same quantity from the other side: each i-face counts the k-faces containing it."""
    kfaces = p.faces_of_dim(k)
    if not kfaces:
        raise PolytopeError(f"no {k}-faces")
    incidences = 0
    for S in p.faces_of_dim(i):
        incidences += sum(1 for T in kfaces if T <= S)
    return Fraction(incidences, len(kfaces))


def audit_nikulin(p: PolytopeModel, i: int, k: int) -> AuditReport:
    report = AuditReport(f"average i-faces of k-faces (n = {p.dim}, i = {i}, k = {k})")
    bound = nikulin_bound(p.dim, i, k)
    alpha = average_counts(p, i, k)
    report.add("alpha_k^(i) < bound", alpha < bound, alpha=alpha, bound=bound,
               k_faces=len(p.faces_of_dim(k)))
    if alpha == bound:
        report.notes.append("average equals the bound exactly; the strict inequality fails")
    return report


def rightangled_dimension_bound(limit: int = 200) -> int:
    """Largest n for which the 4-faces-of-5-faces bound still exceeds 16.

    The bound decreases in n within each parity, so the scan stops once two
    consecutive dimensions fall to 16 or below.
    """
    best = None
    for n in range(10, limit + 1):
        if nikulin_bound(n, 4, 5) > 16:
            best = n
        elif best is not None and n - best >= 2:
            break
    return best


audit_section4 = audit_face_counts
check_proposition4 = check_facet_configurations
