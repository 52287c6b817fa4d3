import pytest

from coxkit.classify import is_isomorphic
from coxkit.examples import build_ideal_octahedron, build_rac_cube, build_square_piece
from coxkit.homology import is_ghs
from coxkit.nerve import build_nerve, flat_boundary_position, is_flag
from coxkit.surgery import SurgeryError, cut_along_flat, glue_along_flat, nerves_isomorphic, normalize_boundary

from conftest import matrix

SQ = ["a1", "b1", "a2", "b2"]


def pieces():
    return (build_nerve(build_square_piece(3, "c", "x"), cone_vertices=["c"]),
            build_nerve(build_square_piece(2, "d", "y"), cone_vertices=["d"]))


def test_pieces_are_spheres_with_boundary_flat():
    for p in pieces():
        assert is_ghs(p.complex, 2).passed and is_flag(p.complex)
        assert flat_boundary_position(p, SQ).kind == "Boundary"


def test_glue_then_cut_roundtrip():
    a, b = pieces()
    g = glue_along_flat(a, SQ, b, SQ, dict(zip(SQ, SQ)))
    assert len(g.generators) == 9
    assert is_ghs(g.complex, 2).passed
    cut = cut_along_flat(g, SQ)
    sizes = sorted(len(p.generators) for p in cut.pieces)
    assert sizes == [7, 8]
    for piece in cut.pieces:
        assert is_ghs(piece.complex, 2).passed
        pos = flat_boundary_position(piece, SQ)
        assert pos.kind == "Boundary" and pos.cone_vertex in cut.cone_vertex_names
    big = max(cut.pieces, key=lambda p: len(p.generators))
    small = min(cut.pieces, key=lambda p: len(p.generators))
    assert nerves_isomorphic(big, a) and nerves_isomorphic(small, b)


def test_two_octahedra_glue_to_an_octahedron():
    oct1 = build_nerve(build_rac_cube(3), cone_vertices=["u3"])
    oct2 = build_nerve(build_rac_cube(3), cone_vertices=["u3"])
    flat = ["u1", "l1", "u2", "l2"]
    g = glue_along_flat(oct1, flat, oct2, flat, dict(zip(flat, flat)))
    assert is_isomorphic(g.matrix.to_diagram(), build_rac_cube(3).to_diagram())


def test_cut_refuses_boundary_flat():
    n = build_nerve(build_rac_cube(3))
    with pytest.raises(SurgeryError, match="boundary"):
        cut_along_flat(n, ["u1", "l1", "u2", "l2"])


def test_cut_refuses_non_separating_flat():
    n = build_nerve(build_ideal_octahedron())
    with pytest.raises(SurgeryError):
        cut_along_flat(n, ["f+++", "f++-", "f+-+", "f+--"])


def test_glue_rejects_label_mismatch():
    a = build_nerve(matrix(["p", "q", "c"], {"p q": 3}), cone_vertices=["c"])
    b = build_nerve(matrix(["p", "q", "d"], {"p q": 4}), cone_vertices=["d"])
    with pytest.raises(SurgeryError, match="labels"):
        glue_along_flat(a, ["p", "q"], b, ["p", "q"], {"p": "p", "q": "q"})


def test_glue_rejects_non_bijection():
    a, b = pieces()
    with pytest.raises(SurgeryError):
        glue_along_flat(a, SQ, b, SQ, {"a1": "a1", "b1": "a1", "a2": "a2", "b2": "b2"})


def test_glue_renames_clashing_generators():
    a, _ = pieces()
    g = glue_along_flat(a, SQ, a, SQ, dict(zip(SQ, SQ)))
    assert len(g.generators) == len(set(g.generators)) == 10
    assert is_ghs(g.complex, 2).passed


def test_normalize_boundary():
    a, b = pieces()
    g = glue_along_flat(a, SQ, b, SQ, dict(zip(SQ, SQ)))
    out = normalize_boundary(g, 3)
    assert len(out) >= 2
    for piece in out:
        assert is_ghs(piece.complex, 2).passed
        assert normalize_boundary(piece, 3) == [piece]
    assert normalize_boundary(b, 3) == [b]
    assert len(normalize_boundary(a, 3)) == 2  # {x1, a2, b1, b2} separates a1, c from x2, x3
