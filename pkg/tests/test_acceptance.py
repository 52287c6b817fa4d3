"""Acceptance checks 1-10, each timed against its budget.

Run directly (`python3 tests/test_acceptance.py`) for a one-line-per-check
summary; under pytest the same lines are printed in the terminal summary.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxkit.classify import classify, is_quasi_lanner, pair_count_check, quasi_lanner_diameter_report, template_table
from coxkit.cli import main as cli_main
from coxkit.diagram import INF, Diagram, is_connected
from coxkit.examples import (build_icosahedron_group, build_ideal_octahedron, build_pv_example, build_rac_cube,
                             build_square_piece, cross_polytope_facets, pv_subcube)
from coxkit.homology import is_ghs, smith_normal_form
from coxkit.nerve import (build_nerve, check_codim1_flats, check_flat_isolation, flat_boundary_position,
                          maximal_flats)
from coxkit.polytope import (audit_face_counts, build_polytope, check_facet_configurations, nikulin_bound,
                             rightangled_dimension_bound)
from coxkit.surgery import cut_along_flat, glue_along_flat, nerves_isomorphic
from coxkit.weights import general_bound, is_bad_3face, sigma_edge_diagram, weight_of_distance

from conftest import bipyramid_group, model, tetrahedron_group
from oracles import eigen_kind, gcd_of_minors_factors, maximal_affine_subsets, spherical_subsets
from test_homology import RP2_6, TORUS7, cx, simplex_boundary

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, seconds: float, limit: float, detail: str) -> None:
    status = "PASS" if ok and seconds < limit else "FAIL"
    RESULTS[n] = f"criterion {n:2d}: {status}  ({seconds:.3f}s / {limit:g}s)  {detail}"
    print(RESULTS[n])


def timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


# --------------------------------------------------------------------------

def c1():
    out = []
    for argv in (["bound", "--right-angled"], ["bound", "--general"]):
        t0 = time.perf_counter()
        code = cli_main(argv)
        out.append((code, time.perf_counter() - t0))
    t0 = time.perf_counter()
    ra, gen = rightangled_dimension_bound(), general_bound(Fraction(29, 3))
    dt = time.perf_counter() - t0
    ok = ra == 14 and gen == 996 and all(code == 0 for code, _ in out) and dt < 1e-3
    return ok, f"right-angled {ra}, general {gen} (library time {dt * 1e3:.3f} ms)"


def c2():
    bad = []
    for n in range(10, 31):
        expected = Fraction(10 * (n - 4), n - 8) if n % 2 == 0 else Fraction(10 * (n - 3), n - 7)
        if nikulin_bound(n, 4, 5) != expected:
            bad.append(n)
    return not bad, f"n = 10..30, mismatches {bad}"


def c3():
    total = disagree = 0
    for n in range(1, 5):
        names = [f"v{i}" for i in range(n)]
        pairs = list(combinations(names, 2))
        for labels in product((2, 3, 4, 5, 6, INF), repeat=len(pairs)):
            d = Diagram.from_edges(names, [(u, v, m) for (u, v), m in zip(pairs, labels) if m != 2])
            if not is_connected(d):
                continue
            total += 1
            if classify(d).kind.value != eigen_kind(names, d.label):
                disagree += 1
    return disagree == 0, f"{total} connected diagrams, {disagree} disagreements"


def c4():
    table = template_table()
    not_ql = [t.name for t in table.quasi_lanner if not is_quasi_lanner(t.diagram)]
    rep = quasi_lanner_diameter_report(table)
    ok = not not_ql and rep["all_diameters_le_8"] and rep["at_most_one_pair_at_8_per_diagram"]
    return ok, (f"{len(table.quasi_lanner)} entries, max diameter "
                f"{max(r['diameter'] for r in rep['entries'])}, pairs at 8 per diagram <= "
                f"{rep['max_pairs_at_8_per_diagram']}, attained by {rep['diagrams_attaining_8']}")


def c5():
    templates = template_table().connected(10)
    bad = [(t.name, C) for t in templates for C in range(1, 16) if not pair_count_check(t.diagram, C).ok]
    return not bad, f"{len(templates)} templates x C = 1..15, violations {bad[:5]}"


def c6():
    checks = {}
    for d in range(1, 5):
        checks[f"simplex boundary d={d}"] = is_ghs(simplex_boundary(d), d).passed
    for d in range(2, 5):
        checks[f"cross-polytope d={d}"] = is_ghs(cx(cross_polytope_facets(d)), d).passed
    checks["icosahedron"] = is_ghs(build_nerve(build_icosahedron_group()).complex, 2).passed
    checks["torus rejected"] = not is_ghs(cx(TORUS7), 2).passed
    checks["projective plane rejected"] = not is_ghs(cx(RP2_6), 2).passed
    rng = random.Random(6)
    snf_bad = 0
    for _ in range(200):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        a = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        if smith_normal_form(a)[0] != gcd_of_minors_factors(a):
            snf_bad += 1
    checks["SNF vs gcd of minors (200)"] = snf_bad == 0
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"{len(checks)} checks, failed {failed}"


def c7():
    m = build_ideal_octahedron()
    p = build_polytope(build_nerve(m), 3)
    f = p.f_vector()
    # brute force: spherical sets by eigenvalues, cusps as maximal affine subsets of flat dimension 2
    sph = spherical_subsets(m)
    brute_a = tuple(sum(1 for s in sph if len(s) == 3 - k) for k in range(3))
    brute_c = sum(1 for d in maximal_affine_subsets(m).values() if d == 2)
    ok = (f.a == brute_a == (0, 12, 8) and f.c == brute_c == 6 and audit_face_counts(p).passed
          and check_facet_configurations(p).passed and check_codim1_flats(m, 3).passed
          and check_flat_isolation(m, dim=3).passed)
    return ok, f"a = {f.a}, c = {f.c} (brute force a = {brute_a}, c = {brute_c})"


def c8():
    sq = ["a1", "b1", "a2", "b2"]
    a = build_nerve(build_square_piece(3, "c", "x"), cone_vertices=["c"])
    b = build_nerve(build_square_piece(2, "d", "y"), cone_vertices=["d"])
    glued = glue_along_flat(a, sq, b, sq, dict(zip(sq, sq)))
    cut = cut_along_flat(glued, sq)
    big, small = sorted(cut.pieces, key=lambda n: -len(n.generators))
    iso = nerves_isomorphic(big, a) and nerves_isomorphic(small, b)
    ghs = all(is_ghs(n.complex, 2).passed for n in cut.pieces)
    pos = [flat_boundary_position(n, sq) for n in cut.pieces]
    boundary = all(p.kind == "Boundary" for p in pos)
    ok = iso and ghs and boundary and is_ghs(glued.complex, 2).passed
    return ok, f"isomorphic {iso}, GHS {ghs}, positions {[str(p) for p in pos]}"


def c9():
    m = build_pv_example()
    flats = {f.gens: f.flat_dim for f in maximal_flats(m)}
    a = frozenset(pv_subcube(["A1", "A2"]))
    b = frozenset(pv_subcube(["B1", "B2"]))
    got = {flats.get(a), flats.get(b)}
    return got == {2, 6}, (f"A1+A2 -> {flats.get(a)}, B1+B2 -> {flats.get(b)}; "
                           f"all maximal flat dims {sorted(set(flats.values()))}")


def c10():
    thresholds = [weight_of_distance(d) for d in (7, 8, 15, 16)] == [1, Fraction(1, 3), Fraction(1, 3), 0]
    ell = [t for t in template_table().elliptic if t.rank <= 9]
    edge_ok = all(sigma_edge_diagram(t.diagram, t.rank + 1).ok for t in ell)
    bip = is_bad_3face(model(bipyramid_group()), frozenset())
    cube = not is_bad_3face(model(build_rac_cube(3)), frozenset())
    tet = not is_bad_3face(model(tetrahedron_group()), frozenset())
    ok = thresholds and edge_ok and bip and cube and tet
    return ok, (f"thresholds {thresholds}, edge bound on {len(ell)} elliptic templates {edge_ok}, "
                f"bipyramid {bip}, cube/tetrahedron rejected {cube and tet}")


CRITERIA = [(1, c1, 5.0), (2, c2, 1.0), (3, c3, 30.0), (4, c4, 10.0), (5, c5, 10.0),
            (6, c6, 60.0), (7, c7, 5.0), (8, c8, 10.0), (9, c9, 5.0), (10, c10, 10.0)]
# criterion 1 has a 1 ms budget on the arithmetic itself; that is checked inside c1,
# the 5 s budget here only covers CLI startup.


@pytest.mark.parametrize("n, fn, limit", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, fn, limit, capsys):
    ok, detail, dt = timed(fn)
    capsys.readouterr()
    record(n, ok, dt, limit, detail)
    assert ok, detail
    assert dt < limit, f"took {dt:.2f}s, budget {limit}s"


if __name__ == "__main__":
    failures = 0
    for n, fn, limit in CRITERIA:
        ok, detail, dt = timed(fn)
        record(n, ok, dt, limit, detail)
        failures += not (ok and dt < limit)
    sys.exit(1 if failures else 0)
