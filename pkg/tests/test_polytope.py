from fractions import Fraction

import pytest

from coxkit.examples import build_dodecahedron_group, build_ideal_octahedron, build_pv_example, build_rac_cube
from coxkit.nerve import build_nerve
from coxkit.polytope import (PolytopeError, audit_nikulin, audit_face_counts, average_counts,
                             average_counts_by_incidence, build_polytope, check_facet_configurations,
                             face_local_counts, nikulin_bound, rightangled_dimension_bound)

from conftest import model
from test_nerve import two_octahedra_sharing_a_diagonal


@pytest.fixture(scope="module")
def ideal_octahedron():
    return model(build_ideal_octahedron())


@pytest.fixture(scope="module")
def dodecahedron():
    return model(build_dodecahedron_group())


def test_cube(ideal_octahedron):
    p = model(build_rac_cube(3))
    f = p.f_vector()
    assert f.a == (8, 12, 6) and f.c == 0


def test_dodecahedron(dodecahedron):
    f = dodecahedron.f_vector()
    assert f.a == (20, 30, 12) and f.c == 0


def test_ideal_octahedron(ideal_octahedron):
    f = ideal_octahedron.f_vector()
    assert f.a == (0, 12, 8) and f.c == 6


def test_local_counts(ideal_octahedron, dodecahedron):
    for T in ideal_octahedron.faces_of_dim(2):
        loc = face_local_counts(ideal_octahedron, T)
        assert (loc.a[1], loc.c, loc.excess) == (3, 3, 1)
    for T in dodecahedron.faces_of_dim(2):
        loc = face_local_counts(dodecahedron, T)
        assert (loc.a[1], loc.c, loc.excess) == (5, 0, 0)
    whole = face_local_counts(ideal_octahedron, [])
    assert whole.a == ideal_octahedron.f_vector().a and whole.c == 6


def test_local_counts_reject_non_faces(ideal_octahedron):
    with pytest.raises(PolytopeError):
        face_local_counts(ideal_octahedron, ["f+++", "f---"])


def test_face_counts_ideal_octahedron(ideal_octahedron):
    rep = audit_face_counts(ideal_octahedron)
    assert rep.passed
    assert rep.data["excess_sums"] == {"P": 8}


def test_face_counts_forced_product_of_infinite_dihedrals():
    p = build_polytope(build_nerve(build_rac_cube(3), cone_vertices=["u3", "l3"]), 3)
    f = p.f_vector()
    assert f.a == (0, 4, 4) and f.c == 2
    rep = audit_face_counts(p)
    assert not rep.passed
    assert rep.failures()[0].name == "2-faces: a1 + c >= 5"
    assert all(w["a"][1] + w["c"] == 4 for w in rep.failures()[0].witness)


def test_face_counts_dodecahedron(dodecahedron):
    rep = audit_face_counts(dodecahedron)
    assert rep.passed and rep.data["excess_sums"] == {"P": 0}


def test_face_counts_cube_fails():
    assert not audit_face_counts(model(build_rac_cube(3))).passed


def test_facet_configurations(ideal_octahedron, dodecahedron):
    assert check_facet_configurations(ideal_octahedron).passed
    rep = check_facet_configurations(dodecahedron)
    assert rep.passed and rep.checks[1].values["parallel_pairs"] == 0


def test_facet_configurations_violation():
    rep = check_facet_configurations(model(two_octahedra_sharing_a_diagonal()))
    bad = [c.name for c in rep.failures()]
    assert bad == ["parallel pair plus two adjacent facets meet at a cusp"]
    assert rep.failures()[0].witness


def test_facet_configurations_needs_right_angles():
    from conftest import tetrahedron_group
    with pytest.raises(PolytopeError):
        check_facet_configurations(model(tetrahedron_group()))


def test_nikulin_values():
    assert nikulin_bound(14, 4, 5) == Fraction(50, 3)
    assert nikulin_bound(15, 4, 5) == 15
    assert nikulin_bound(16, 4, 5) == 15
    assert nikulin_bound(4, 0, 1) == 2
    with pytest.raises(ValueError):
        nikulin_bound(6, 2, 4)


@pytest.mark.parametrize("n", range(10, 31))
def test_nikulin_specialization(n):
    expected = Fraction(10 * (n - 4), n - 8) if n % 2 == 0 else Fraction(10 * (n - 3), n - 7)
    assert nikulin_bound(n, 4, 5) == expected


def test_four_cube_averages():
    p = model(build_rac_cube(4), 4)
    assert average_counts(p, 0, 1) == nikulin_bound(4, 0, 1) == 2
    rep = audit_nikulin(p, 1, 2)
    assert rep.passed
    assert rep.checks[0].values["alpha"] == 4 and rep.checks[0].values["bound"] == 6


def test_nikulin_edges_sit_on_the_bound(dodecahedron):
    # every edge has exactly two vertices and the bound is exactly 2: the strict inequality fails
    for p in (model(build_rac_cube(3)), dodecahedron):
        rep = audit_nikulin(p, 0, 1)
        assert rep.checks[0].values["alpha"] == 2 == rep.checks[0].values["bound"]
        assert not rep.passed and rep.notes


@pytest.mark.parametrize("build, dim", [(lambda: build_rac_cube(4), 4), (build_ideal_octahedron, 3),
                                        (build_dodecahedron_group, 3), (lambda: build_rac_cube(5), 5)])
def test_average_two_ways(build, dim):
    p = model(build(), dim)
    for k in range(1, dim):
        for i in range(k):
            if any(True for _ in p.faces_of_dim(k)):
                assert average_counts(p, i, k) == average_counts_by_incidence(p, i, k)


def test_dimension_bound():
    assert rightangled_dimension_bound() == 14
    assert nikulin_bound(14, 4, 5) > 16 >= nikulin_bound(16, 4, 5)


def test_strict_refuses_high_dimensional_flats():
    n = build_nerve(build_pv_example())
    with pytest.raises(PolytopeError):
        build_polytope(n, 16, strict=True)
    build_polytope(build_nerve(build_ideal_octahedron()), 3, strict=True)
