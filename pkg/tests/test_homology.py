import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxkit.examples import cross_polytope_facets
from coxkit.homology import SimplicialComplex, is_ghs, link, reduced_homology, smith_normal_form
from coxkit.nerve import build_nerve
from coxkit.examples import build_icosahedron_group

from oracles import gcd_of_minors_factors

TORUS7 = [sorted({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7)] + \
         [sorted({i % 7, (i + 2) % 7, (i + 3) % 7}) for i in range(7)]
RP2_6 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def cx(facets):
    return SimplicialComplex.from_facets([[str(v) for v in f] for f in facets])


def simplex_boundary(d):
    verts = list(range(d + 2))
    return cx([[v for v in verts if v != skip] for skip in verts])


OCTAHEDRON = cx(cross_polytope_facets(2))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form([[1, 0], [0, 0]]) == ([1], 1)
    assert smith_normal_form([[2, 4], [6, 8]])[0] == [2, 4]


def test_snf_matches_gcd_of_minors_oracle():
    rng = random.Random(20260101)
    for _ in range(200):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        a = [[rng.choice([0, 0, 0, 1, -1, 2, -2, 3, 4, -6]) for _ in range(c)] for _ in range(r)]
        factors, rank = smith_normal_form(a)
        assert factors == gcd_of_minors_factors(a), a
        assert rank == len(factors)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                   min_size=1, max_size=5)))
def test_snf_divisibility_chain(a):
    factors, rank = smith_normal_form(a)
    assert all(f > 0 for f in factors)
    assert all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1))


def test_homology_of_circle_and_sphere():
    h = reduced_homology(simplex_boundary(1))
    assert h.is_sphere(1)
    assert reduced_homology(OCTAHEDRON).is_sphere(2)


def test_projective_plane_torsion():
    h = reduced_homology(cx(RP2_6))
    assert h.group(1) == (0, (2,))
    assert h.group(2) == (0, ())
    assert h.group(0) == (0, ())


def test_torus():
    h = reduced_homology(cx(TORUS7))
    assert h.betti[:3] == (0, 2, 1)
    assert not is_ghs(cx(TORUS7), 2).passed


def test_links():
    l = link(OCTAHEDRON, ["u1"])
    assert len(l.faces(0)) == 4 and len(l.faces(1)) == 4
    tri = cx([["a", "b", "c"]])
    assert link(tri, ["a", "b"]).facets() == [("c",)]
    square = cx([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
    assert link(square, ["a"]).facets() == [("b",), ("d",)]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_simplex_boundaries_are_spheres(d):
    assert is_ghs(simplex_boundary(d), d).passed


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cross_polytopes_are_spheres(d):
    assert is_ghs(cx(cross_polytope_facets(d)), d).passed


def test_icosahedron():
    n = build_nerve(build_icosahedron_group())
    assert n.complex.f_vector() == [12, 30, 20]
    assert is_ghs(n.complex, 2).passed


def test_wrong_dimension_fails():
    assert not is_ghs(OCTAHEDRON, 3).passed
    assert not is_ghs(cx(RP2_6), 2).passed


def test_pinched_sphere_fails_on_links():
    # two octahedra sharing one vertex: homology of S2 v S2, and a bad vertex link
    a = cross_polytope_facets(2)
    b = [[("p" + v if v != "u1" else v) for v in f] for f in a]
    c = cx(a + b)
    assert not is_ghs(c, 2).passed


def test_euler_characteristic():
    assert OCTAHEDRON.euler_characteristic() == 2
    assert cx(TORUS7).euler_characteristic() == 0
