import numpy as np
import pytest

from darbouxkit import (
    PAIR_NAMES,
    NotIsometricError,
    PushforwardVector,
    canonical_transfer_curves,
    classify,
    darboux,
    geodesic_preservation_check,
    heatmap_rows,
    metric_deviation,
    pushforward,
    s_grid,
    transfer_curve,
    unit_speed_check,
)


def test_catalog_names(pairs):
    assert set(pairs) == set(PAIR_NAMES)


def test_plane_cylinder_metric(pairs, policy):
    md = metric_deviation(pairs["plane-cylinder"], 17, policy)
    assert md.isometric
    assert md.max_dev <= 1e-12


def test_helicoid_catenoid_metric(pairs, policy):
    md = metric_deviation(pairs["helicoid-catenoid"], 17, policy)
    assert md.isometric
    assert md.max_dev <= 1e-9


def test_cone_development_metric(pairs, policy):
    md = metric_deviation(pairs["cone-development"], 17, policy)
    assert md.isometric
    assert md.max_dev <= 1e-9


def test_plane_sphere_fails(pairs, policy):
    pair = pairs["plane-sphere"]
    assert not pair.expect_isometric
    md = metric_deviation(pair, 17, policy)
    assert not md.isometric
    assert md.max_dev > 0.1


def test_heatmap_rows(pairs, policy):
    rows = heatmap_rows(pairs["plane-cylinder"], 5, policy)
    assert len(rows) == 25
    assert max(r[2] for r in rows) <= 1e-12


def test_pushforward_roundtrip(pairs, policy):
    vec = PushforwardVector(a=0.6, b=-0.2, u=0.4, v=1.1)
    out = pushforward(pairs["helicoid-catenoid"], vec, policy)
    assert (out.a, out.b) == (vec.a, vec.b)


def test_pushforward_rejects_non_isometric(pairs, policy):
    # off the equator the sphere metric shrinks the u-direction
    vec = PushforwardVector(a=1.0, b=0.0, u=0.3, v=0.8)
    with pytest.raises(NotIsometricError):
        pushforward(pairs["plane-sphere"], vec, policy)


def test_transfer_preserves_unit_speed(pairs, policy):
    pair = pairs["plane-cylinder"]
    for curve in canonical_transfer_curves(pair):
        moved = transfer_curve(pair, curve, policy)
        rep = unit_speed_check(moved, pair.target, 9, policy)
        assert rep.passed


def test_transfer_rejects_non_isometric(pairs, policy):
    pair = pairs["plane-sphere"]
    curves = {c.name: c for c in canonical_transfer_curves(pair)}
    with pytest.raises(NotIsometricError):
        transfer_curve(pair, curves["chart-diagonal"], policy)


def test_geodesic_preservation_gate(pairs, policy):
    pair = pairs["plane-sphere"]
    curve = canonical_transfer_curves(pair)[0]
    with pytest.raises(NotIsometricError):
        geodesic_preservation_check(pair, curve, 9, policy)


def test_plane_line_becomes_helix(pairs, policy):
    pair = pairs["plane-cylinder"]
    curves = {c.name: c for c in canonical_transfer_curves(pair)}
    line = curves["chart-skew"]
    # a chart line in the flat strip has kappa = 0: degenerate as a space
    # curve, intrinsically straight
    cls = classify(line, pair.source, 9, policy)
    assert cls.tag == "degenerate" and cls.max_abs_k_g <= 1e-12
    rep = geodesic_preservation_check(pair, line, 17, policy)
    assert rep.preserved
    assert rep.max_kg_dev <= 1e-9
    # the image winds around the cylinder at constant pitch: a helix with
    # constant nonzero normal curvature
    moved = transfer_curve(pair, line, policy)
    kns = [darboux(moved, pair.target, float(s), policy).k_n
           for s in s_grid(moved, 9)]
    assert np.std(kns) <= 1e-9
    assert abs(kns[0]) > 0.05


def test_all_canonical_transfers_preserve_kg(pairs, policy):
    for name in ("plane-cylinder", "helicoid-catenoid", "cone-development"):
        pair = pairs[name]
        for curve in canonical_transfer_curves(pair):
            rep = geodesic_preservation_check(pair, curve, 13, policy)
            assert rep.preserved, (name, curve.name, rep.max_kg_dev)
            assert rep.max_kg_dev <= 1e-6
