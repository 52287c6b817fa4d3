"""Simplicial complexes, integer homology via Smith normal form, GHS checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .report import AuditReport


class ComplexError(ValueError):
    pass


Simplex = frozenset


@dataclass(frozen=True)
class SimplicialComplex:
    """Subset-closed family of nonempty vertex sets.

    Built from any generating family (usually facets); stores the full
    closure so that membership tests are cheap.
    """

    vertices: tuple[str, ...]
    simplices: frozenset[frozenset[str]] = field(default_factory=frozenset)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[str]], vertices: Iterable[str] = ()):
        closure: set[frozenset[str]] = set()
        verts = set(vertices)
        for f in facets:
            f = frozenset(f)
            verts |= f
            if f in closure:
                continue
            items = sorted(f)
            for k in range(1, len(items) + 1):
                closure.update(frozenset(c) for c in combinations(items, k))
        closure.update(frozenset([v]) for v in verts)
        return cls(tuple(sorted(verts)), frozenset(closure))

    def __contains__(self, simplex) -> bool:
        return frozenset(simplex) in self.simplices

    def __len__(self):
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def faces(self, k: int) -> list[tuple[str, ...]]:
        """k-dimensional simplices as sorted tuples, in lexicographic order."""
        return sorted(tuple(sorted(s)) for s in self.simplices if len(s) == k + 1)

    def facets(self) -> list[tuple[str, ...]]:
        by_size = sorted(self.simplices, key=len, reverse=True)
        maximal: list[frozenset[str]] = []
        for s in by_size:
            if not any(s < m for m in maximal):
                maximal.append(s)
        return sorted(tuple(sorted(s)) for s in maximal)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.facets()}
        return len(sizes) <= 1

    def full_subcomplex(self, subset: Iterable[str]) -> "SimplicialComplex":
        keep = frozenset(subset)
        return SimplicialComplex(
            tuple(sorted(keep & set(self.vertices))),
            frozenset(s for s in self.simplices if s <= keep),
        )

    def one_skeleton(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for s in self.simplices:
            if len(s) == 2:
                u, v = s
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))


def link(c: SimplicialComplex, sigma: Iterable[str]) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if sigma and sigma not in c.simplices:
        raise ComplexError(f"{sorted(sigma)} is not a simplex")
    simplices = frozenset(t for t in c.simplices if not (t & sigma) and (t | sigma) in c.simplices)
    verts = sorted({v for t in simplices for v in t})
    return SimplicialComplex(tuple(verts), simplices)


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors d1 | d2 | ... | dr of an integer matrix, and its rank."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: p must divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if m[i][j] % p), None)
                if bad is None:
                    break
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, rows):
                if m[i][t] and abs(m[i][t]) < abs(m[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if m[t][j] and abs(m[t][j]) < abs(m[best[0]][best[1]]):
                    best = (t, j)
            bi, bj = best
            m[t], m[bi] = m[bi], m[t]
            for row in m:
                row[t], row[bj] = row[bj], row[t]
        factors.append(abs(m[t][t]))
        t += 1
    return factors, len(factors)


def _sparse_reduce(rows: list[dict[int, int]]) -> tuple[int, list[list[int]]]:
    """Eliminate unit pivots on a sparse matrix.

    Returns the number of unit pivots removed and the leftover dense block,
    whose Smith form supplies the remaining invariant factors.
    """
    rows = [dict(r) for r in rows if r]
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_index.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda k: len(rows[k])):
            if i not in alive:
                continue
            r = rows[i]
            j = next((c for c, v in r.items() if v in (1, -1)), None)
            if j is None:
                continue
            p = r[j]
            for k in list(col_index.get(j, ())):
                if k == i:
                    continue
                rk = rows[k]
                q = rk[j] * p  # p = +-1 so rk[j] / p == rk[j] * p
                for c, v in r.items():
                    nv = rk.get(c, 0) - q * v
                    if nv:
                        if c not in rk:
                            col_index.setdefault(c, set()).add(k)
                        rk[c] = nv
                    else:
                        rk.pop(c, None)
                        col_index[c].discard(k)
                if not rk:
                    alive.discard(k)
            for c in r:
                col_index[c].discard(i)
            alive.discard(i)
            units += 1
            progress = True
    leftover_rows = [rows[i] for i in sorted(alive) if rows[i]]
    cols = sorted({c for r in leftover_rows for c in r})
    dense = [[r.get(c, 0) for c in cols] for r in leftover_rows]
    return units, dense


def sparse_invariant_factors(rows: list[dict[int, int]]) -> list[int]:
    units, dense = _sparse_reduce(rows)
    rest, _ = smith_normal_form(dense) if dense else ([], 0)
    return sorted([1] * units + rest)


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologyGroups:
    """Reduced integral homology: betti numbers and torsion per dimension."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, k: int) -> tuple[int, tuple[int, ...]]:
        if k < 0 or k >= len(self.betti):
            return 0, ()
        return self.betti[k], self.torsion[k]

    def is_sphere(self, d: int) -> bool:
        for k in range(max(len(self.betti), d + 1)):
            b, t = self.group(k)
            if t or b != (1 if k == d else 0):
                return False
        return True

    def describe(self) -> dict[str, str]:
        out = {}
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            parts = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
            if parts:
                out[str(k)] = " + ".join(parts)
        return out


def boundary_rows(c: SimplicialComplex, k: int, index_lower: dict | None = None) -> list[dict[int, int]]:
    """Rows of the boundary map C_k -> C_{k-1}, one row per k-simplex.

    Orientation: vertices in lexicographic order; the i-th face gets (-1)^i.
    For k = 0 the augmentation to Z is used.
    """
    upper = c.faces(k)
    if k == 0:
        return [{0: 1} for _ in upper]
    lower = index_lower or {s: i for i, s in enumerate(c.faces(k - 1))}
    out = []
    for s in upper:
        row = {}
        for i in range(len(s)):
            row[lower[s[:i] + s[i + 1:]]] = (-1) ** i
        out.append(row)
    return out


def reduced_homology(c: SimplicialComplex) -> HomologyGroups:
    if not c.simplices:
        raise ComplexError("reduced homology of the empty complex is not handled")
    top = c.dimension
    counts = [len(c.faces(k)) for k in range(top + 1)]
    ranks = []
    torsions = []
    for k in range(top + 2):
        if k > top:
            ranks.append(0)
            torsions.append([])
            continue
        factors = sparse_invariant_factors(boundary_rows(c, k))
        ranks.append(len(factors))
        torsions.append([f for f in factors if f > 1])
    betti = []
    torsion = []
    for k in range(top + 1):
        betti.append(counts[k] - ranks[k] - ranks[k + 1])
        torsion.append(tuple(torsions[k + 1]))
    return HomologyGroups(tuple(betti), tuple(torsion))


def is_ghs(c: SimplicialComplex, d: int) -> AuditReport:
    """Generalized homology d-sphere: sphere homology plus sphere-like links."""
    report = AuditReport(f"generalized homology {d}-sphere")
    facets = c.facets()
    if not c.simplices or any(len(f) != d + 1 for f in facets):
        wrong = next((f for f in facets if len(f) != d + 1), None)
        report.add("pure", False, witness={"facet": list(wrong) if wrong else None},
                   detail=f"complex is not pure of dimension {d}")
        return report
    report.add("pure", True)
    h = reduced_homology(c)
    report.add("global homology", h.is_sphere(d), witness=None if h.is_sphere(d) else {
        "homology": h.describe()}, detail=f"expected reduced homology of S^{d}")
    bad_links = []
    for sigma in sorted(c.simplices, key=lambda s: (len(s), sorted(s))):
        k = len(sigma) - 1
        lk = link(c, sigma)
        target = d - k - 1
        if target == -1:
            ok = not lk.simplices
        elif not lk.simplices:
            ok = False
        else:
            ok = reduced_homology(lk).is_sphere(target)
        if not ok:
            bad_links.append(sorted(sigma))
    report.add("links", not bad_links,
               witness={"simplices": bad_links[:20], "count": len(bad_links)} if bad_links else None,
               detail="every simplex link has the homology of a sphere of the right dimension")
    return report
