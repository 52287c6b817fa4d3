"""Elliptic / parabolic / indefinite classification by template matching.

Connected elliptic and parabolic diagrams are generated family by family
for the requested vertex count and matched by labelled-graph isomorphism.
Anything that matches no template is indefinite.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations

from .diagram import (
    INF,
    Diagram,
    DiagramError,
    Label,
    all_distances,
    connected_components,
    induced_subdiagram,
    min_eigenvalue,
    parse_diagram,
)

ORACLE_TOL = 1e-9


class Kind(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class DiagramType:
    kind: Kind
    families: tuple[str, ...] = ()

    def __str__(self):
        if not self.families:
            return self.kind.value
        return f"{self.kind.value}({' + '.join(self.families)})"


@dataclass(frozen=True)
class Template:
    name: str
    kind: Kind
    diagram: Diagram

    @property
    def rank(self) -> int:
        return len(self.diagram)


# ---------------------------------------------------------------------------
# family builders

def _names(n: int) -> list[str]:
    return [f"v{i:02d}" for i in range(n)]


def _path(labels: list[Label]) -> Diagram:
    names = _names(len(labels) + 1)
    return Diagram.from_edges(names, [(names[i], names[i + 1], m) for i, m in enumerate(labels)])


def _cycle(n: int) -> Diagram:
    names = _names(n)
    return Diagram.from_edges(names, [(names[i], names[(i + 1) % n], 3) for i in range(n)])


def _tree(arms: tuple[int, ...]) -> Diagram:
    """Star-shaped tree: a centre with simple arms of the given lengths."""
    names = _names(1 + sum(arms))
    edges = []
    k = 1
    for length in arms:
        prev = names[0]
        for _ in range(length):
            edges.append((prev, names[k], 3))
            prev = names[k]
            k += 1
    return Diagram.from_edges(names, edges)


def _two_forks(n_vertices: int, right: str) -> Diagram:
    """Chain with a fork at the left end; right end a fork ('fork') or a 4-edge ('four')."""
    names = _names(n_vertices)
    a, b, *rest = names
    if right == "fork":
        *chain, e, f = rest
    else:
        *chain, e = rest
        f = None
    edges = [(a, chain[0], 3), (b, chain[0], 3)]
    edges += [(chain[i], chain[i + 1], 3) for i in range(len(chain) - 1)]
    if right == "fork":
        edges += [(chain[-1], e, 3), (chain[-1], f, 3)]
    else:
        edges.append((chain[-1], e, 4))
    return Diagram.from_edges(names, edges)


def dihedral_name(m: Label) -> str:
    return {3: "A2", 4: "B2", 6: "G2"}.get(m, "~A1" if m == INF else f"I2({m})")


def connected_templates(n: int, dihedral_labels: tuple[Label, ...] = ()) -> list[Template]:
    """All connected elliptic and parabolic templates with n vertices.

    Rank-2 dihedral templates I2(m) are produced only for the labels asked
    for, since that family is infinite.
    """
    E, P = Kind.ELLIPTIC, Kind.PARABOLIC
    out: list[Template] = []
    if n == 1:
        return [Template("A1", E, Diagram(("v00",)))]
    if n == 2:
        labels = sorted(set(dihedral_labels) | {3, 4, 6, INF})
        for m in labels:
            if m == 2:
                continue
            out.append(Template(dihedral_name(m), P if m == INF else E, _path([m])))
        return out
    out.append(Template(f"A{n}", E, _path([3] * (n - 1))))
    out.append(Template(f"B{n}", E, _path([3] * (n - 2) + [4])))
    if n >= 4:
        out.append(Template(f"D{n}", E, _tree((n - 3, 1, 1))))
    exceptional_e = {6: ("E6", (2, 2, 1)), 7: ("E7", (3, 2, 1)), 8: ("E8", (4, 2, 1))}
    if n in exceptional_e:
        name, arms = exceptional_e[n]
        out.append(Template(name, E, _tree(arms)))
    if n == 4:
        out.append(Template("F4", E, _path([3, 4, 3])))
        out.append(Template("H4", E, _path([5, 3, 3])))
    if n == 3:
        out.append(Template("H3", E, _path([5, 3])))

    r = n - 1  # affine rank
    out.append(Template(f"~A{r}", P, _cycle(n)))
    if r >= 2:
        out.append(Template(f"~C{r}", P, _path([4] + [3] * (r - 2) + [4])))
    if r >= 3:
        out.append(Template(f"~B{r}", P, _two_forks(n, "four")))
    if r >= 4:
        out.append(Template(f"~D{r}", P, _two_forks(n, "fork")))
    affine_e = {7: ("~E6", (2, 2, 2)), 8: ("~E7", (3, 3, 1)), 9: ("~E8", (5, 2, 1))}
    if n in affine_e:
        name, arms = affine_e[n]
        out.append(Template(name, P, _tree(arms)))
    if n == 5:
        out.append(Template("~F4", P, _path([3, 3, 4, 3])))
    if n == 3:
        out.append(Template("~G2", P, _path([6, 3])))
    return out


@lru_cache(maxsize=None)
def _cached_templates(n: int, dihedral: tuple) -> tuple[Template, ...]:
    return tuple(connected_templates(n, dihedral))


# ---------------------------------------------------------------------------
# labelled-graph isomorphism

def _signature(d: Diagram, v: str, adj) -> tuple:
    return (len(adj[v]), tuple(sorted(d.label(v, w) for w in adj[v])))


def find_isomorphism(d1: Diagram, d2: Diagram) -> dict[str, str] | None:
    """Label-preserving bijection d1 -> d2, or None.

    Backtracking with degree / incident-label pruning; fine for the small
    diagrams (<= ~24 vertices, sparse) that occur here.
    """
    if len(d1) != len(d2) or len(d1.edges) != len(d2.edges):
        return None
    if sorted(d1.edges.values()) != sorted(d2.edges.values()):
        return None
    adj1, adj2 = d1.adjacency(), d2.adjacency()
    sig1 = {v: _signature(d1, v, adj1) for v in d1.vertices}
    sig2 = {v: _signature(d2, v, adj2) for v in d2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None
    by_sig: dict[tuple, list[str]] = {}
    for v, s in sig2.items():
        by_sig.setdefault(s, []).append(v)

    # order d1 vertices so each one (after the first of its component) has
    # an already-mapped neighbour
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(d1.vertices, key=lambda v: (len(by_sig[sig1[v]]), v)):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop(0)
            order.append(x)
            for y in adj1[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in by_sig[sig1[x]]:
            if y in used:
                continue
            if any(d1.label(x, a) != d2.label(y, b) for a, b in mapping.items()):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return find_isomorphism(d1, d2) is not None


# ---------------------------------------------------------------------------
# classification

@lru_cache(maxsize=200_000)
def _classify_connected(d: Diagram) -> tuple[Kind, str | None]:
    n = len(d)
    if n == 1:
        return Kind.ELLIPTIC, "A1"
    # every connected template is a tree or a cycle
    if len(d.edges) > n:
        return Kind.INDEFINITE, None
    dihedral = tuple(sorted(set(d.edges.values()))) if n == 2 else ()
    templates = _cached_templates(n, dihedral)
    for kind in (Kind.ELLIPTIC, Kind.PARABOLIC):
        for t in templates:
            if t.kind is kind and is_isomorphic(d, t.diagram):
                return kind, t.name
    return Kind.INDEFINITE, None


def classify_connected(d: Diagram) -> DiagramType:
    if len(d) == 0:
        raise DiagramError("classify_connected needs a nonempty diagram")
    if len(connected_components(d)) != 1:
        raise DiagramError("classify_connected needs a connected diagram")
    kind, name = _classify_connected(d)
    return DiagramType(kind, (name,) if name else ())


@lru_cache(maxsize=200_000)
def classify(d: Diagram) -> DiagramType:
    """Componentwise classification; the empty diagram is elliptic."""
    families = []
    kinds = []
    for comp in connected_components(d):
        sub = induced_subdiagram(d, comp) if len(comp) != len(d) else d
        kind, name = _classify_connected(sub)
        kinds.append(kind)
        families.append(name)
    if Kind.INDEFINITE in kinds:
        return DiagramType(Kind.INDEFINITE)
    if Kind.PARABOLIC in kinds:
        return DiagramType(Kind.PARABOLIC, tuple(families))
    return DiagramType(Kind.ELLIPTIC, tuple(families))


def is_elliptic(d: Diagram) -> bool:
    return classify(d).kind is Kind.ELLIPTIC


def is_affine(d: Diagram) -> bool:
    """Every connected component is parabolic (a Euclidean special subgroup)."""
    if len(d) == 0:
        return False
    for comp in connected_components(d):
        sub = induced_subdiagram(d, comp) if len(comp) != len(d) else d
        if _classify_connected(sub)[0] is not Kind.PARABOLIC:
            return False
    return True


def numeric_kind(d: Diagram, tol: float = ORACLE_TOL) -> Kind:
    """Eigenvalue oracle on the cosine Gram matrix."""
    if len(d) == 0:
        return Kind.ELLIPTIC
    lam = min_eigenvalue(d)
    if lam > tol:
        return Kind.ELLIPTIC
    if lam >= -tol:
        return Kind.PARABOLIC
    return Kind.INDEFINITE


def is_quasi_lanner(d: Diagram) -> bool:
    if len(d) < 3:
        raise DiagramError("quasi-Lanner test needs at least 3 vertices")
    if len(connected_components(d)) != 1:
        raise DiagramError("quasi-Lanner test needs a connected diagram")
    if classify(d).kind is not Kind.INDEFINITE:
        return False
    for v in d.vertices:
        rest = induced_subdiagram(d, [w for w in d.vertices if w != v])
        if classify(rest).kind is Kind.INDEFINITE:
            return False
    return True


# ---------------------------------------------------------------------------
# distance-based checks

def diameter(d: Diagram) -> float:
    dist = all_distances(d)
    best = 0
    for u, v in combinations(d.vertices, 2):
        best = max(best, dist[u].get(v, INF))
    return best


def pairs_at_distance(d: Diagram, k: int) -> list[tuple[str, str]]:
    dist = all_distances(d)
    return [(u, v) for u, v in combinations(d.vertices, 2) if dist[u].get(v) == k]


@dataclass(frozen=True)
class PairCount:
    count: int
    bound: int
    ok: bool
    family: str


def pair_count_check(d: Diagram, C: int) -> PairCount:
    """Count vertex pairs within distance C and compare against C * (vertex count)."""
    if C < 1 or int(C) != C:
        raise ValueError("C must be a positive integer")
    if len(connected_components(d)) != 1:
        raise DiagramError("pair_count_check needs a connected diagram")
    t = classify_connected(d)
    if t.kind is Kind.INDEFINITE:
        raise DiagramError("pair_count_check needs an elliptic or parabolic diagram")
    dist = all_distances(d)
    count = sum(1 for u, v in combinations(d.vertices, 2) if dist[u].get(v, INF) <= C)
    bound = C * len(d)
    return PairCount(count, bound, count <= bound, f"{t.kind.value}:{t.families[0]}")


# ---------------------------------------------------------------------------
# template table

@dataclass
class TemplateTable:
    elliptic: list[Template] = field(default_factory=list)
    parabolic: list[Template] = field(default_factory=list)
    quasi_lanner: list[Template] = field(default_factory=list)

    def connected(self, max_rank: int | None = None) -> list[Template]:
        items = self.elliptic + self.parabolic
        return [t for t in items if max_rank is None or t.rank <= max_rank]


DIHEDRAL_SAMPLE = (5, 7, 8, 10, 12)


def load_quasi_lanner() -> list[Template]:
    base = resources.files("coxkit") / "data" / "quasi_lanner"
    manifest = json.loads((base / "manifest.json").read_text(encoding="utf-8"))
    out = []
    for entry in manifest["entries"]:
        matrix = parse_diagram((base / entry["file"]).read_text(encoding="utf-8"))
        out.append(Template(entry["name"], Kind(entry["type"]), matrix.to_diagram()))
    return out


@lru_cache(maxsize=None)
def template_table(max_rank: int = 11) -> TemplateTable:
    table = TemplateTable()
    for n in range(1, max_rank + 1):
        for t in connected_templates(n, DIHEDRAL_SAMPLE if n == 2 else ()):
            (table.elliptic if t.kind is Kind.ELLIPTIC else table.parabolic).append(t)
    table.quasi_lanner = load_quasi_lanner()
    return table


def quasi_lanner_diameter_report(table: TemplateTable | None = None) -> dict:
    table = table or template_table()
    rows = []
    for t in table.quasi_lanner:
        diam = diameter(t.diagram)
        at8 = pairs_at_distance(t.diagram, 8)
        rows.append({
            "name": t.name,
            "rank": t.rank,
            "diameter": diam,
            "pairs_at_8": [list(p) for p in at8],
        })
    attaining = [r["name"] for r in rows if r["pairs_at_8"]]
    return {
        "entries": rows,
        "all_diameters_le_8": all(r["diameter"] <= 8 for r in rows),
        "max_pairs_at_8_per_diagram": max((len(r["pairs_at_8"]) for r in rows), default=0),
        "at_most_one_pair_at_8_per_diagram": all(len(r["pairs_at_8"]) <= 1 for r in rows),
        "total_pairs_at_8": sum(len(r["pairs_at_8"]) for r in rows),
        "diagrams_attaining_8": attaining,
    }
