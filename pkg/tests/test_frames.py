import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darbouxkit import (
    CURVE_FIXTURE_NAMES,
    CurvatureDegenerateError,
    SurfaceCurve,
    ToolkitError,
    acceleration,
    arc_length_reparam,
    catalog,
    curve_fixture,
    curve_from_series,
    darboux,
    dot,
    embed,
    frame_relation_check,
    frenet,
    s_grid,
    unit_speed_check,
    velocity,
)


def _orthonormality(M: np.ndarray) -> float:
    return float(np.max(np.abs(M @ M.T - np.eye(3))))


def test_helix_ground_truth(helix):
    curve, patch = helix
    for s in (-1.0, 0.0, 0.5, 2.0):
        fr = frenet(curve, patch, s)
        db = darboux(curve, patch, s)
        assert fr.kappa == pytest.approx(0.12, abs=1e-12)
        assert fr.tau == pytest.approx(0.16, abs=1e-11)
        assert db.k_g == pytest.approx(0.0, abs=1e-12)
        assert db.k_n == pytest.approx(-0.12, abs=1e-12)
        # position projections: gamma.N = -3, gamma.T = 16 s / 25, gamma.B = 12 s / 25
        g = embed(curve, patch, s)
        assert dot(g, fr.N) == pytest.approx(-3.0, abs=1e-12)
        assert dot(g, fr.T) == pytest.approx(16.0 * s / 25.0, abs=1e-12)
        assert dot(g, fr.B) == pytest.approx(12.0 * s / 25.0, abs=1e-12)


@pytest.mark.parametrize("name,params", [
    ("circle-plane", (2.0,)),
    ("great-circle-sphere", ()),
    ("helix-cylinder", (3.0, 4.0)),
])
def test_frames_orthonormal(name, params):
    curve, patch = curve_fixture(name, params)
    for s in s_grid(curve, 9, margin=0.05):
        s = float(s)
        fr = frenet(curve, patch, s)
        db = darboux(curve, patch, s)
        assert _orthonormality(np.stack([fr.T, fr.N, fr.B])) <= 1e-9
        assert _orthonormality(np.stack([db.T, db.P, db.U])) <= 1e-9
        rel = frame_relation_check(fr, db)
        assert rel.status == "pass"
        # curvature decomposition: kappa^2 = k_n^2 + k_g^2 and
        # gamma'' = k_n U + k_g P
        assert db.k_n ** 2 + db.k_g ** 2 == pytest.approx(fr.kappa ** 2, abs=1e-9)
        g2 = acceleration(curve, patch, s)
        assert np.max(np.abs(g2 - db.k_n * db.U - db.k_g * db.P)) <= 1e-9


def test_plane_circle_curvatures():
    curve, patch = curve_fixture("circle-plane", (2.0,))
    db = darboux(curve, patch, 1.0)
    assert abs(db.k_g) == pytest.approx(0.5, abs=1e-10)
    assert db.k_n == pytest.approx(0.0, abs=1e-10)


def test_great_circle_curvatures():
    curve, patch = curve_fixture("great-circle-sphere")
    db = darboux(curve, patch, 0.7)
    assert abs(db.k_n) == pytest.approx(1.0, abs=1e-10)
    assert db.k_g == pytest.approx(0.0, abs=1e-10)


def test_straight_line_degenerate():
    curve, patch = curve_fixture("line-plane", (0.0, 0.0, 1.0, 0.5))
    with pytest.raises(CurvatureDegenerateError):
        frenet(curve, patch, 0.3)


def test_arc_length_reparam():
    plane = catalog("plane")
    raw = SurfaceCurve(name="quadratic", u=lambda t: t, v=lambda t: 0.4 * t * t,
                       s_domain=(-1.5, 1.5),
                       du=lambda t: 1.0, dv=lambda t: 0.8 * t,
                       d2u=lambda t: 0.0, d2v=lambda t: 0.8)
    assert not unit_speed_check(raw, plane, 11).passed
    fixed = arc_length_reparam(raw, plane)
    rep = unit_speed_check(fixed, plane, 11)
    assert rep.passed and rep.max_dev <= 1e-9
    # same image: endpoints of the raw curve appear at arc-length endpoints
    p0 = embed(fixed, plane, 0.0)
    assert np.max(np.abs(p0 - np.array([-1.5, 0.9, 0.0]))) <= 1e-9
    # chain-rule derivatives stay consistent with stencils
    s = 0.5 * fixed.s_domain[1]
    g2_analytic = acceleration(fixed, plane, s)
    stripped = SurfaceCurve(name="fd", u=fixed.u, v=fixed.v,
                            s_domain=fixed.s_domain)
    g2_fd = acceleration(stripped, plane, s)
    assert np.max(np.abs(g2_analytic - g2_fd)) <= 1e-5


def test_non_unit_speed_rejected():
    plane = catalog("plane")
    fast = SurfaceCurve(name="fast", u=lambda t: 2.0 * t, v=lambda t: 0.0,
                        s_domain=(-1.0, 1.0), du=lambda t: 2.0,
                        dv=lambda t: 0.0, d2u=lambda t: 0.0, d2v=lambda t: 0.0)
    with pytest.raises(ToolkitError, match="unit-speed"):
        darboux(fast, plane, 0.0)


def test_fd_curve_matches_analytic(helix):
    curve, patch = helix
    stripped = SurfaceCurve(name="helix-fd", u=curve.u, v=curve.v,
                            s_domain=curve.s_domain)
    db_a = darboux(curve, patch, 0.9)
    db_f = darboux(stripped, patch, 0.9)
    assert db_f.k_n == pytest.approx(db_a.k_n, abs=1e-6)
    assert db_f.k_g == pytest.approx(db_a.k_g, abs=1e-6)
    fr_f = frenet(stripped, patch, 0.9)
    assert fr_f.kappa == pytest.approx(0.12, abs=1e-6)
    assert fr_f.tau == pytest.approx(0.16, abs=1e-4)


def test_torsion_accuracy(helix):
    curve, patch = helix
    assert frenet(curve, patch, 0.25).tau == pytest.approx(0.16, abs=1e-10)


def test_curve_from_series():
    plane = catalog("plane")
    curve = curve_from_series("series", [0.0, 0.6, 0.0, -0.1],
                              [0.0, 0.8, 0.05], (-1.0, 1.0))
    s = 0.3
    v1 = velocity(curve, plane, s)
    assert v1[0] == pytest.approx(0.6 - 0.3 * s * s, abs=1e-12)
    assert v1[1] == pytest.approx(0.8 + 0.1 * s, abs=1e-12)


def test_fixture_names():
    assert set(CURVE_FIXTURE_NAMES) == {"line-plane", "circle-plane",
                                        "great-circle-sphere", "helix-cylinder"}


@given(st.floats(min_value=0.5, max_value=3.0),
       st.floats(min_value=0.2, max_value=0.8))
@settings(max_examples=15, deadline=None)
def test_circle_curvature_property(radius, frac):
    curve, patch = curve_fixture("circle-plane", (radius,))
    s = frac * curve.s_domain[1]
    fr = frenet(curve, patch, float(s))
    assert fr.kappa == pytest.approx(1.0 / radius, rel=1e-9)
    assert abs(fr.tau) <= 1e-7
    db = darboux(curve, patch, float(s))
    assert abs(db.k_g) == pytest.approx(1.0 / radius, rel=1e-9)
