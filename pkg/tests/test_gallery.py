import numpy as np
import pytest

from curvehull import count_vertices, frenet_profile, gallery, sample_uniform


def test_names_are_sorted_and_complete():
    assert gallery.names() == ["baseball", "ellipse", "saddle", "trefoil", "wobble"]


def test_spec_string_round_trip():
    entry = gallery.get("wobble:k=5")
    assert entry.params == {"k": 5}
    assert entry.spec_string == "wobble:k=5"
    assert gallery.get(entry.spec_string).params == entry.params


def test_parameter_parsing_and_defaults():
    base, params = gallery.parse_curve_spec("baseball")
    assert base == "baseball"
    assert params == {"a": 1.0, "b": 0.15, "c": 0.7}
    base, params = gallery.parse_curve_spec("baseball:b=0.2")
    assert params == {"a": 1.0, "b": 0.2, "c": 0.7}


def test_unknown_names_and_parameters_rejected():
    with pytest.raises(KeyError):
        gallery.get("moebius")
    with pytest.raises(KeyError):
        gallery.get("saddle:radius=2")
    with pytest.raises(KeyError):
        gallery.get("wobble:k")


def test_wobble_frequency_must_be_odd():
    with pytest.raises(ValueError):
        gallery.get("wobble:k=4")
    with pytest.raises(ValueError):
        gallery.get("wobble:k=1")


def test_saddle_promises_hold():
    entry = gallery.get("saddle")
    assert entry.expected_vertex_count == 4
    rep = count_vertices(frenet_profile(entry.curve, 2000))
    assert rep.vertex_count == 4
    assert gallery.verify_all_extreme(entry, n=500)


def test_baseball_default_promises_hold():
    # the one gallery entry whose behavior depends on tuned parameters:
    # this must fail loudly if the defaults ever drift
    entry = gallery.get("baseball")
    assert entry.expected_vertex_count == 4
    rep = count_vertices(frenet_profile(entry.curve, 2000))
    assert rep.vertex_count == 4
    assert not rep.is_planar
    assert gallery.verify_all_extreme(entry, n=500)


def test_baseball_sign_change_count_is_stable_in_b():
    # the four torsion zeros sit at odd multiples of pi/4 and stay put over a
    # wide band of seam amplitudes, so the default is not a knife edge
    for b in (0.1, 0.15, 0.2):
        rep = count_vertices(
            frenet_profile(gallery.get(f"baseball:b={b}").curve, 4096)
        )
        assert rep.vertex_count == 4
        expected = np.pi * np.array([0.25, 0.75, 1.25, 1.75])
        assert np.allclose(sorted(rep.vertex_params), expected, atol=1e-3)


def test_wobble_promises_hold():
    entry = gallery.get("wobble:k=3")
    assert entry.expected_vertex_count == 6
    rep = count_vertices(frenet_profile(entry.curve, 2048))
    assert rep.vertex_count == 6


def test_ellipse_is_planar():
    entry = gallery.get("ellipse")
    assert entry.planar
    sc = sample_uniform(entry.curve, 100)
    assert np.allclose(sc.points[:, 2], 0.0)


def test_trefoil_is_not_convex():
    entry = gallery.get("trefoil")
    assert not entry.expected_convex
    assert not gallery.verify_all_extreme("trefoil", n=500)


def test_exact_derivatives_match_positions():
    # finite-difference cross-check of every shipped derivative callback
    h = 1e-6
    t = np.linspace(0.3, 5.9, 23)
    for name in gallery.names():
        curve = gallery.get(name).curve
        fd1 = (curve(t + h) - curve(t - h)) / (2 * h)
        assert np.allclose(curve.d1(t), fd1, atol=1e-5), name
        fd2 = (curve.d1(t + h) - curve.d1(t - h)) / (2 * h)
        assert np.allclose(curve.d2(t), fd2, atol=1e-4), name
        fd3 = (curve.d2(t + h) - curve.d2(t - h)) / (2 * h)
        assert np.allclose(curve.d3(t), fd3, atol=1e-3), name
