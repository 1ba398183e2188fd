import numpy as np
import pytest
from conftest import random_rotation
from hypothesis import given, settings
from hypothesis import strategies as st

from curvehull import (
    ChordSearchError,
    NonPlanarCurveError,
    OutsideHullError,
    PlanarCurveError,
    SampledCurve,
    VertexCountError,
    build_hull,
    classify_adjacent_pair,
    estimate_covering_multiplicity,
    gallery,
    hull_volume,
    planar_area_integral,
    sample_uniform,
    signed_distance,
    signed_tetra_volume,
    tetra_volume_matrix,
    triple_product,
)

finite_vec = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False), min_size=3, max_size=3
)


# ---------------------------------------------------------------- triple products


def test_triple_product_of_basis_is_one():
    assert triple_product([1, 0, 0], [0, 1, 0], [0, 0, 1]) == 1.0


@given(a=finite_vec, b=finite_vec, c=finite_vec)
@settings(max_examples=100, deadline=None)
def test_triple_product_antisymmetry(a, b, c):
    assert triple_product(a, b, c) == -triple_product(b, a, c)


@given(a=finite_vec, b=finite_vec, c=finite_vec)
@settings(max_examples=100, deadline=None)
def test_triple_product_cyclic_invariance(a, b, c):
    v1 = triple_product(a, b, c)
    v2 = triple_product(b, c, a)
    scale = max(abs(v1), abs(v2), 1.0)
    assert abs(v1 - v2) <= 1e-9 * scale


def test_corner_tetra_signed_volume_is_one_sixth():
    loop = SampledCurve.from_points(
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    )
    assert abs(signed_tetra_volume(loop, 0, 2) - 1.0 / 6.0) <= 1e-15


def test_both_tetra_forms_agree_on_curve_pairs(saddle_2000):
    rng = np.random.default_rng(3)
    for _ in range(200):
        i, j = rng.integers(0, saddle_2000.n, size=2)
        v1 = signed_tetra_volume(saddle_2000, int(i), int(j))
        v2 = signed_tetra_volume(saddle_2000, int(i), int(j), chord_form=True)
        assert v1 == pytest.approx(v2, abs=1e-15)


def test_matrix_matches_per_pair_values():
    sc = sample_uniform(gallery.get("saddle").curve, 40)
    mat = tetra_volume_matrix(sc)
    for i in range(40):
        for j in range(40):
            assert mat[i, j] == pytest.approx(
                signed_tetra_volume(sc, i, j), abs=1e-15
            )
    assert np.allclose(np.diag(mat), 0.0)


# ---------------------------------------------------------------- volume formula


def test_volume_formula_close_to_oracle(saddle_2000, saddle_oracle_volume):
    res = hull_volume(saddle_2000)
    gap = abs(res.volume - saddle_oracle_volume) / saddle_oracle_volume
    assert gap < 1e-4
    assert res.multiplicity == 4
    assert res.n == 2000


def test_volume_thread_count_does_not_change_bits(saddle_2000):
    v1 = hull_volume(saddle_2000, threads=1, force=True).volume
    v3 = hull_volume(saddle_2000, threads=3, force=True).volume
    v7 = hull_volume(saddle_2000, threads=7, force=True).volume
    assert v1 == v3 == v7


def test_volume_error_estimate_matches_half_resolution(saddle_curve):
    sc = sample_uniform(saddle_curve, 500)
    res = hull_volume(sc, with_error_estimate=True)
    half = SampledCurve.from_points(sc.points[::2])
    expected = abs(res.volume - hull_volume(half, force=True).volume)
    assert res.error_estimate == pytest.approx(expected, abs=1e-15)
    assert res.error_estimate > 0


def test_volume_rejects_planar_curves():
    sc = sample_uniform(gallery.get("ellipse").curve, 200)
    with pytest.raises(PlanarCurveError):
        hull_volume(sc)


def test_volume_gate_rejects_wrong_vertex_count():
    sc = sample_uniform(gallery.get("wobble:k=3").curve, 500)
    with pytest.raises(VertexCountError):
        hull_volume(sc)
    assert hull_volume(sc, force=True).volume > 0


def test_volume_accepts_precomputed_vertex_report(saddle_curve):
    from curvehull import count_vertices, frenet_profile

    sc = sample_uniform(saddle_curve, 300)
    rep = count_vertices(frenet_profile(saddle_curve, 1024))
    res = hull_volume(sc, vertex_report=rep)
    assert res.volume > 0


def test_volume_orientation_reversal_invariance(saddle_curve):
    sc = sample_uniform(saddle_curve, 400)
    rev = SampledCurve.from_points(sc.points[::-1])
    v_f = hull_volume(sc, force=True).volume
    v_r = hull_volume(rev, force=True).volume
    assert v_f == pytest.approx(v_r, rel=1e-12)


def test_volume_scaling_by_two_is_exact(saddle_curve):
    sc = sample_uniform(saddle_curve, 250)
    v = hull_volume(sc, force=True).volume
    v2 = hull_volume(sc.scaled(2.0), force=True).volume
    assert v2 == 8.0 * v  # powers of two scale every product exactly


def test_volume_rigid_motion_invariance(saddle_curve, rng):
    sc = sample_uniform(saddle_curve, 250)
    v = hull_volume(sc, force=True).volume
    moved = sc.transformed(rotation=random_rotation(rng), offset=[5.0, -2.0, 11.0])
    v2 = hull_volume(moved, force=True).volume
    assert v2 == pytest.approx(v, rel=1e-9)


# ---------------------------------------------------------------- classification


def test_adjacent_pair_labels_at_odd_resolution(saddle_curve):
    sc = sample_uniform(saddle_curve, 201)
    counts = {"interior": 0, "boundary": 0, "degenerate": 0}
    mesh = build_hull(sc.points)
    worst_boundary = 0.0
    for i in range(sc.n):
        for j in range(sc.n):
            if i == j:
                continue
            c = classify_adjacent_pair(sc, i, j)
            counts[c.label] += 1
            if c.label == "boundary":
                tri = sc.points[list(c.triangle)]
                sd = abs(signed_distance(mesh, tri.mean(axis=0)))
                worst_boundary = max(worst_boundary, sd)
            else:
                assert c.triangle is None
    # breaking the even-n symmetry exposes genuine boundary transitions
    assert counts == {"interior": 39006, "boundary": 197, "degenerate": 997}
    assert worst_boundary <= mesh.eps


def test_classification_flags_coplanar_flips_at_even_resolution(saddle_curve):
    # with n even the saddle is antipodally symmetric and every sign
    # transition involves an exactly coplanar quadruple
    sc = sample_uniform(saddle_curve, 200)
    boundary = sum(
        classify_adjacent_pair(sc, i, j).label == "boundary"
        for i in range(200)
        for j in range(200)
        if i != j
    )
    assert boundary == 0


# ---------------------------------------------------------------- multiplicity


def test_origin_is_covered_four_times(saddle_2000):
    mesh = build_hull(saddle_2000.points)
    assert estimate_covering_multiplicity(saddle_2000, (0, 0, 0), mesh=mesh) == 4


def test_multiplicity_rejects_outside_points(saddle_2000):
    mesh = build_hull(saddle_2000.points)
    with pytest.raises(OutsideHullError):
        estimate_covering_multiplicity(saddle_2000, (5, 5, 5), mesh=mesh)


def test_multiplicity_reports_failed_chord_search(saddle_2000):
    mesh = build_hull(saddle_2000.points)
    with pytest.raises(ChordSearchError):
        estimate_covering_multiplicity(
            saddle_2000, (0, 0, 0), mesh=mesh, delta=1e-15
        )


# ---------------------------------------------------------------- planar area


def test_unit_square_area_exact():
    sq = SampledCurve.from_points([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]])
    assert planar_area_integral(sq) == 1.0


def test_rotated_triangle_area(rng):
    tri = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    rot = random_rotation(rng)
    loop = SampledCurve.from_points(tri @ rot.T + np.array([2.0, -1.0, 0.5]))
    assert planar_area_integral(loop) == pytest.approx(0.5, abs=1e-12)


def test_circle_area_converges():
    sc = sample_uniform(gallery.get("ellipse:a=1,b=1").curve, 10_000)
    assert planar_area_integral(sc) == pytest.approx(np.pi, abs=1e-6)


def test_area_rejects_nonplanar_curves(saddle_2000):
    with pytest.raises(NonPlanarCurveError):
        planar_area_integral(saddle_2000)


def test_ellipse_area_formula():
    sc = sample_uniform(gallery.get("ellipse:a=2,b=1").curve, 5000)
    assert planar_area_integral(sc) == pytest.approx(2 * np.pi, rel=1e-6)
