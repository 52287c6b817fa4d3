"""Coxeter matrices, Coxeter diagrams and the `.cox` text format."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import sympy

INF = math.inf

Label = int | float  # an integer m >= 2, or INF


class DiagramError(ValueError):
    """Raised for malformed diagram input or unknown vertices."""


def parse_label(token: str) -> Label:
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        value = int(token)
    except ValueError:
        raise DiagramError(f"bad edge label {token!r}") from None
    if value < 2:
        raise DiagramError(f"edge label must be >= 2 or inf, got {value}")
    return value


def format_label(label: Label) -> str:
    return "inf" if label == INF else str(int(label))


def _pair(u: str, v: str) -> frozenset[str]:
    return frozenset((u, v))


@dataclass(frozen=True)
class Diagram:
    """A Coxeter diagram: vertices plus edges labelled 3, 4, ... or INF.

    A missing edge means the two generators commute (label 2).
    """

    vertices: tuple[str, ...]
    edges: Mapping[frozenset[str], Label] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        edges = {}
        for key, label in dict(self.edges).items():
            key = frozenset(key)
            if len(key) != 2 or not key <= set(verts):
                raise DiagramError(f"edge {sorted(key)} has unknown endpoints")
            if label == 2:
                continue
            if not (label == INF or (int(label) == label and label >= 3)):
                raise DiagramError(f"illegal diagram label {label}")
            edges[key] = label
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, Label]] = ()):
        return cls(tuple(vertices), {_pair(u, v): m for u, v, m in edges})

    def __hash__(self):
        return hash((self.vertices, frozenset(self.edges.items())))

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __len__(self):
        return len(self.vertices)

    def label(self, u: str, v: str) -> Label:
        if u == v:
            return 1
        return self.edges.get(_pair(u, v), 2)

    def neighbors(self, u: str) -> list[str]:
        return sorted(w for w in self.vertices if w != u and _pair(u, w) in self.edges)

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for key in self.edges:
            u, v = sorted(key)
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, u: str) -> int:
        return sum(1 for key in self.edges if u in key)

    def to_matrix(self) -> "CoxeterMatrix":
        return CoxeterMatrix(self.vertices, {
            _pair(u, v): self.label(u, v) for u, v in combinations(self.vertices, 2)
        })

    def relabel(self, mapping: Mapping[str, str]) -> "Diagram":
        return Diagram(
            tuple(mapping[v] for v in self.vertices),
            {frozenset(mapping[x] for x in key): m for key, m in self.edges.items()},
        )

    def __repr__(self):
        body = ", ".join(
            f"{'-'.join(sorted(k))}:{format_label(m)}"
            for k, m in sorted(self.edges.items(), key=lambda kv: sorted(kv[0]))
        )
        return f"Diagram({' '.join(self.vertices)} | {body})"


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix over named generators.

    `generators` keeps declaration order; every unordered pair has a label.
    """

    generators: tuple[str, ...]
    entries: Mapping[frozenset[str], Label] = field(default_factory=dict)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise DiagramError("duplicate generator name")
        given = {frozenset(k): m for k, m in dict(self.entries).items()}
        entries = {}
        for u, v in combinations(gens, 2):
            m = given.pop(_pair(u, v), 2)
            if not (m == INF or (int(m) == m and m >= 2)):
                raise DiagramError(f"illegal Coxeter label {m} on {u},{v}")
            entries[_pair(u, v)] = m if m == INF else int(m)
        if given:
            raise DiagramError(f"entries mention unknown generators: {sorted(map(sorted, given))}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "entries", entries)

    def __hash__(self):
        return hash((self.generators, frozenset(self.entries.items())))

    def __eq__(self, other):
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        return self.generators == other.generators and self.entries == other.entries

    def __len__(self):
        return len(self.generators)

    def label(self, u: str, v: str) -> Label:
        if u == v:
            return 1
        try:
            return self.entries[_pair(u, v)]
        except KeyError:
            raise DiagramError(f"unknown generator in pair ({u}, {v})") from None

    def to_diagram(self) -> Diagram:
        return Diagram(self.generators, {k: m for k, m in self.entries.items() if m != 2})

    def restrict(self, subset: Iterable[str]) -> "CoxeterMatrix":
        keep = set(subset)
        unknown = keep - set(self.generators)
        if unknown:
            raise DiagramError(f"unknown generators {sorted(unknown)}")
        gens = tuple(g for g in self.generators if g in keep)
        return CoxeterMatrix(gens, {k: m for k, m in self.entries.items() if k <= keep})

    def subdiagram(self, subset: Iterable[str]) -> Diagram:
        keep = frozenset(subset)
        unknown = keep - set(self.generators)
        if unknown:
            raise DiagramError(f"unknown generators {sorted(unknown)}")
        edges = {}
        for u, v in combinations(sorted(keep), 2):
            m = self.entries[_pair(u, v)]
            if m != 2:
                edges[_pair(u, v)] = m
        return Diagram(tuple(keep), edges)

    def is_right_angled(self) -> bool:
        return all(m in (2, INF) for m in self.entries.values())

    def rename(self, mapping: Mapping[str, str]) -> "CoxeterMatrix":
        return CoxeterMatrix(
            tuple(mapping.get(g, g) for g in self.generators),
            {frozenset(mapping.get(x, x) for x in k): m for k, m in self.entries.items()},
        )


def to_matrix(d: Diagram) -> CoxeterMatrix:
    return d.to_matrix()


def to_diagram(m: CoxeterMatrix) -> Diagram:
    return m.to_diagram()


def parse_diagram(text: str) -> CoxeterMatrix:
    """Parse the line-oriented `.cox` format into a Coxeter matrix."""
    vertices: list[str] | None = None
    edges: dict[frozenset[str], Label] = {}
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if not saw_header:
            if words != ["coxeter", "v1"]:
                raise DiagramError(f"line {lineno}: expected header 'coxeter v1'")
            saw_header = True
            continue
        keyword = words[0]
        if keyword == "vertices":
            if vertices is not None:
                raise DiagramError(f"line {lineno}: second 'vertices' line")
            vertices = words[1:]
            if len(set(vertices)) != len(vertices):
                raise DiagramError(f"line {lineno}: repeated vertex name")
        elif keyword == "edge":
            if vertices is None:
                raise DiagramError(f"line {lineno}: 'edge' before 'vertices'")
            if len(words) != 4:
                raise DiagramError(f"line {lineno}: expected 'edge u v label'")
            u, v, token = words[1:]
            for name in (u, v):
                if name not in vertices:
                    raise DiagramError(f"line {lineno}: unknown vertex {name!r}")
            if u == v:
                raise DiagramError(f"line {lineno}: loop edge on {u!r}")
            key = _pair(u, v)
            if key in edges:
                raise DiagramError(f"line {lineno}: duplicate edge {u} {v}")
            edges[key] = parse_label(token)
        else:
            raise DiagramError(f"line {lineno}: unknown keyword {keyword!r}")
    if not saw_header:
        raise DiagramError("empty input: missing 'coxeter v1' header")
    if vertices is None:
        raise DiagramError("missing 'vertices' line")
    return CoxeterMatrix(tuple(vertices), edges)


def format_diagram(m: CoxeterMatrix, comment: str | None = None) -> str:
    lines = ["coxeter v1"]
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("vertices " + " ".join(m.generators))
    index = {g: i for i, g in enumerate(m.generators)}
    for key, label in sorted(m.entries.items(), key=lambda kv: sorted(index[x] for x in kv[0])):
        if label == 2:
            continue
        u, v = sorted(key, key=index.__getitem__)
        lines.append(f"edge {u} {v} {format_label(label)}")
    return "\n".join(lines) + "\n"


def distance(d: Diagram, u: str, v: str) -> float:
    """Number of edges on a shortest u-v path; INF when disconnected."""
    if u not in d.vertices or v not in d.vertices:
        raise DiagramError(f"unknown vertex among {u!r}, {v!r}")
    return bfs_distances(d, u).get(v, INF)


def bfs_distances(d: Diagram, source: str, adj: Mapping[str, list[str]] | None = None) -> dict[str, int]:
    adj = adj if adj is not None else d.adjacency()
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_distances(d: Diagram) -> dict[str, dict[str, int]]:
    adj = d.adjacency()
    return {v: bfs_distances(d, v, adj) for v in d.vertices}


def induced_subdiagram(d: Diagram, subset: Iterable[str]) -> Diagram:
    keep = frozenset(subset)
    unknown = keep - set(d.vertices)
    if unknown:
        raise DiagramError(f"unknown vertices {sorted(unknown)}")
    return Diagram(tuple(keep), {k: m for k, m in d.edges.items() if k <= keep})


def connected_components(d: Diagram) -> list[tuple[str, ...]]:
    adj = d.adjacency()
    seen: set[str] = set()
    comps = []
    for v in d.vertices:
        if v in seen:
            continue
        comp = bfs_distances(d, v, adj)
        seen.update(comp)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return comps


def is_connected(d: Diagram) -> bool:
    return len(connected_components(d)) <= 1


@dataclass(frozen=True)
class CosineGram:
    """Gram matrix with entries -cos(pi/m); exact where the label allows it."""

    vertices: tuple[str, ...]
    entries: tuple[tuple, ...]
    exact: bool

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.entries)

    def to_numpy(self):
        import numpy as np

        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)


_EXACT_COS = {
    2: sympy.Integer(0),
    3: -sympy.Rational(1, 2),
    4: -sympy.sqrt(2) / 2,
    6: -sympy.sqrt(3) / 2,
}


def cosine_entry(label: Label):
    """Return (value, is_exact) for the Gram entry of an edge label."""
    if label == 1:
        return sympy.Integer(1), True
    if label == INF:
        return sympy.Integer(-1), True
    if label in _EXACT_COS:
        return _EXACT_COS[label], True
    return -math.cos(math.pi / label), False


def cosine_gram(m: CoxeterMatrix | Diagram) -> CosineGram:
    verts = m.generators if isinstance(m, CoxeterMatrix) else m.vertices
    exact = True
    rows = []
    for u in verts:
        row = []
        for v in verts:
            value, ok = cosine_entry(m.label(u, v))
            exact &= ok
            row.append(value)
        rows.append(tuple(row))
    return CosineGram(tuple(verts), tuple(rows), exact)


def float_gram(m: CoxeterMatrix | Diagram):
    import numpy as np

    verts = m.generators if isinstance(m, CoxeterMatrix) else m.vertices
    gram = np.eye(len(verts))
    for i, j in combinations(range(len(verts)), 2):
        label = m.label(verts[i], verts[j])
        gram[i, j] = gram[j, i] = -1.0 if label == INF else -math.cos(math.pi / label)
    return gram


def min_eigenvalue(d: Diagram | CoxeterMatrix) -> float:
    import numpy as np

    if len(d) == 0:
        return INF
    return float(np.linalg.eigvalsh(float_gram(d)).min())
