from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxkit.diagram import INF, CoxeterMatrix  # noqa: E402
from coxkit.nerve import build_nerve  # noqa: E402
from coxkit.polytope import build_polytope  # noqa: E402


def matrix(gens, edges) -> CoxeterMatrix:
    """edges: {"a b": label}"""
    return CoxeterMatrix(tuple(gens), {frozenset(k.split()): v for k, v in edges.items()})


def tetrahedron_group() -> CoxeterMatrix:
    # compact [5,3,4]: every triple spherical, the whole set not
    return matrix("abcd", {"a b": 5, "b c": 3, "c d": 4})


def prism_group() -> CoxeterMatrix:
    # top t, bottom b, sides s1 s2 s3 meeting pairwise; the side triangle (3,3,4) is indefinite
    return matrix(["t", "b", "s1", "s2", "s3"], {"t b": INF, "s1 s2": 3, "s2 s3": 3, "s1 s3": 4})


def bipyramid_group() -> CoxeterMatrix:
    """Two finite apexes over three cusps: faces n_i (north) and s_i (south)."""
    north, south = ["n1", "n2", "n3"], ["s1", "s2", "s3"]
    edges = {f"{x} {y}": INF for x, y in combinations(north + south, 2)}
    for group in (north, south):
        for x, y in combinations(group, 2):
            edges[f"{x} {y}"] = 2
    for i in range(1, 4):
        edges[f"n{i} s{i}"] = 2
    return matrix(north + south, edges)


def model(m: CoxeterMatrix, dim: int = 3, **kw):
    return build_polytope(build_nerve(m), dim, **kw)


@pytest.fixture
def tet_model():
    return model(tetrahedron_group())


@pytest.fixture
def prism_model():
    return model(prism_group())


@pytest.fixture
def bipyramid_model():
    return model(bipyramid_group())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
