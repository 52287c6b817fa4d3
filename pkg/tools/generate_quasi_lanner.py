"""Regenerate src/coxkit/data/quasi_lanner by exhaustive search.

Every connected quasi-Lanner diagram of rank r has a non-cut vertex whose
deletion leaves a connected elliptic or parabolic diagram of rank r - 1, so
growing each such template by one vertex finds all of them.  At rank >= 4
labels are limited to {3, 4, 5, 6}: an edge labelled inf or >= 7 inside a
connected 3-vertex subdiagram is already indefinite.

    python tools/generate_quasi_lanner.py [--max-rank 10] [--out DIR]
"""
import argparse
import json
from collections import deque
from pathlib import Path

from coxkit.classify import Kind, classify, connected_templates, find_isomorphism, is_quasi_lanner
from coxkit.diagram import INF, Diagram, format_diagram, induced_subdiagram

LABELS = (2, 3, 4, 5, 6, INF)


def bfs_order(d):
    adj = d.adjacency()
    start = d.vertices[0]
    seen, order, queue = {start}, [], deque([start])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


def grow(base: Diagram):
    order = bfs_order(base)
    x = "new"
    found = []

    def dfs(i, edges):
        decided = order[:i]
        d = Diagram(tuple(decided) + (x,), {**{k: m for k, m in base.edges.items() if k <= set(decided)}, **edges})
        if i < len(order):
            if i > 0 and classify(d).kind is Kind.INDEFINITE:
                return
            for m in LABELS:
                new = dict(edges)
                if m != 2:
                    new[frozenset((x, order[i]))] = m
                dfs(i + 1, new)
            return
        if edges and is_quasi_lanner(d):
            found.append(d)

    dfs(0, {})
    return found


def invariant(d):
    adj = d.adjacency()
    return (len(d), tuple(sorted(d.edges.values())),
            tuple(sorted((len(adj[v]), tuple(sorted(d.label(v, w) for w in adj[v]))) for v in d.vertices)))


def canonical_names(d):
    order = sorted(d.vertices, key=lambda v: (-len(d.adjacency()[v]), v))
    order = bfs_order(Diagram(d.vertices, d.edges))
    return d.relabel({v: f"s{i}" for i, v in enumerate(order)})


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=11)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src/coxkit/data/quasi_lanner")
    args = ap.parse_args()
    entries = []
    for rank in range(4, args.max_rank + 1):
        buckets = {}
        for t in connected_templates(rank - 1):
            for d in grow(t.diagram):
                key = invariant(d)
                if not any(find_isomorphism(d, e) for e in buckets.get(key, [])):
                    buckets.setdefault(key, []).append(d)
        diagrams = [canonical_names(d) for b in buckets.values() for d in b]
        diagrams.sort(key=lambda d: (sorted(d.edges.values()), repr(d)))
        lanner = sum(1 for d in diagrams if all(
            classify(induced_subdiagram(d, [w for w in d.vertices if w != v])).kind is Kind.ELLIPTIC
            for v in d.vertices))
        print(f"rank {rank}: {len(diagrams)} quasi-Lanner ({lanner} Lanner)", flush=True)
        for i, d in enumerate(diagrams, 1):
            entries.append((rank, i, d))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for old in args.out.glob("*.cox"):
            old.unlink()
        manifest = []
        for rank, i, d in entries:
            name = f"QL{rank}_{i:02d}"
            fname = f"{name}.cox"
            (args.out / fname).write_text(format_diagram(d.to_matrix(), comment=f"{name}: quasi-Lanner, rank {rank}"))
            manifest.append({"name": name, "file": fname, "rank": rank, "type": "Indefinite"})
        (args.out / "manifest.json").write_text(json.dumps({"entries": manifest}, indent=1) + "\n")


if __name__ == "__main__":
    main()
