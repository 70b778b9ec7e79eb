"""Acceptance gate: one criterion per test, one printed verdict line each.

Verdict lines go to the real stdout so they survive pytest capture; every
tolerance is pinned literally in the assert it guards.
"""
import sys

import numpy as np

from darbouxkit import (
    THEOREM_IDS,
    CurvatureDegenerateError,
    PushforwardVector,
    acceleration,
    canonical_transfer_curves,
    classify,
    component_chart,
    cross,
    curve_fixture,
    darboux,
    decompose,
    dot,
    embed,
    first_form,
    fixture_rectifying,
    frame_relation_check,
    frenet,
    geodesic_preservation_check,
    metric_deviation,
    pair_catalog,
    partials,
    pushforward,
    reconstruct,
    rectifying_summary,
    s_grid,
    transfer_curve,
    unit_normal,
)
from darbouxkit.cli import main


def _verdict(label: str, ok: bool, detail: str) -> bool:
    line = f"ACCEPTANCE {label}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, file=sys.__stdout__, flush=True)
    return ok


def _frame_fixtures():
    return [
        ("helix-cylinder", curve_fixture("helix-cylinder", (3.0, 4.0))),
        ("circle-plane", curve_fixture("circle-plane", (2.0,))),
        ("great-circle-sphere", curve_fixture("great-circle-sphere")),
        ("dilated-spherical", fixture_rectifying()),
    ]


def test_c1_frame_orthonormality():
    worst = 0.0
    for _, (curve, patch) in _frame_fixtures():
        for s in s_grid(curve, 200, margin=0.02):
            fr = frenet(curve, patch, float(s))
            db = darboux(curve, patch, float(s))
            for M in (np.stack([fr.T, fr.N, fr.B]),
                      np.stack([db.T, db.P, db.U])):
                worst = max(worst, float(np.max(np.abs(M @ M.T - np.eye(3)))))
    ok = _verdict("C1 frame-orthonormality", worst <= 1e-9,
                  f"max dev {worst:.3e}, tol 1e-9, 200 samples x 4 fixtures")
    assert ok


def test_c2_curvature_relations():
    worst_sq = worst_acc = worst_rot = 0.0
    for _, (curve, patch) in _frame_fixtures():
        for s in s_grid(curve, 200, margin=0.02):
            s = float(s)
            fr = frenet(curve, patch, s)
            db = darboux(curve, patch, s)
            worst_sq = max(worst_sq,
                           abs(db.k_n ** 2 + db.k_g ** 2 - fr.kappa ** 2))
            g2 = acceleration(curve, patch, s)
            worst_acc = max(worst_acc, float(np.max(np.abs(
                g2 - db.k_n * db.U - db.k_g * db.P))))
            rel = frame_relation_check(fr, db)
            worst_rot = max(worst_rot, rel.max_dev)
    worst = max(worst_sq, worst_acc, worst_rot)
    ok = _verdict("C2 curvature-relations", worst <= 1e-9,
                  f"kappa^2 split {worst_sq:.3e}, acceleration {worst_acc:.3e}, "
                  f"frame rotation {worst_rot:.3e}, tol 1e-9")
    assert ok


def test_c3_helix_ground_truth():
    curve, patch = curve_fixture("helix-cylinder", (3.0, 4.0))
    devs = []
    res_dev = 0.0
    for s in s_grid(curve, 40, margin=0.02):
        s = float(s)
        fr = frenet(curve, patch, s)
        db = darboux(curve, patch, s)
        dec = decompose(curve, patch, s)
        devs.append(max(abs(fr.kappa - 0.12), abs(fr.tau - 0.16),
                        abs(db.k_g)))
        res_dev = max(res_dev, abs(dec.residual - (-3.0)))
    worst = max(devs)
    ok = (worst <= 1e-9) and (res_dev <= 1e-6)
    ok = _verdict("C3 helix-ground-truth", ok,
                  f"kappa 0.12, tau 0.16, k_g 0 within {worst:.3e} (tol 1e-9); "
                  f"residual -3 within {res_dev:.3e} (tol 1e-6)")
    assert ok


def test_c4_rectifying_fixture():
    curve, patch = fixture_rectifying()
    summary = rectifying_summary(curve, patch, 64)
    cls = classify(curve, patch, 33)
    recon = 0.0
    for s in s_grid(curve, 33, margin=0.02):
        rebuilt = reconstruct(curve, patch, float(s), cls)
        recon = max(recon, float(np.max(np.abs(
            rebuilt - embed(curve, patch, float(s))))))
    rng = np.random.default_rng(2024)
    ident = 0.0
    ss = s_grid(curve, 5, margin=0.05)
    for _ in range(20):
        a, b = rng.uniform(-2.0, 2.0, size=2)
        if abs(a) + abs(b) < 0.3:
            a += 0.5
        for s in ss:
            s = float(s)
            g = embed(curve, patch, s)
            pu, pv = partials(patch, curve.u(s), curve.v(s))
            gu, gv = component_chart(curve, patch, s)
            ident = max(ident, abs(dot(g, a * pu + b * pv)
                                   - (a * gu + b * gv)))
            ff = first_form(patch, curve.u(s), curve.v(s))
            U = unit_normal(patch, curve.u(s), curve.v(s))
            closed = ((a * ff.E + b * ff.F) * gv
                      - (a * ff.F + b * ff.G) * gu) / np.sqrt(ff.det)
            ident = max(ident, abs(dot(g, cross(U, a * pu + b * pv)) - closed))
    ok = (summary.max_abs_residual <= 1e-5 and recon <= 1e-4
          and ident <= 1e-5)
    ok = _verdict("C4 rectifying-fixture", ok,
                  f"residual {summary.max_abs_residual:.3e} (tol 1e-5), "
                  f"reconstruction {recon:.3e} (tol 1e-4), "
                  f"identities {ident:.3e} over 20 draws (tol 1e-5)")
    assert ok


def test_c5_isometry_invariance():
    pairs = pair_catalog()
    md_pc = metric_deviation(pairs["plane-cylinder"], 17)
    md_hc = metric_deviation(pairs["helicoid-catenoid"], 17)
    worst_kg = 0.0
    n_curves = 0
    for name in ("plane-cylinder", "helicoid-catenoid", "cone-development"):
        pair = pairs[name]
        for curve in canonical_transfer_curves(pair):
            rep = geodesic_preservation_check(pair, curve, 13)
            worst_kg = max(worst_kg, rep.max_kg_dev)
            n_curves += 1
    pair = pairs["plane-cylinder"]
    line = {c.name: c for c in canonical_transfer_curves(pair)}["chart-skew"]
    rep = geodesic_preservation_check(pair, line, 17)
    moved = transfer_curve(pair, line)
    kn_img = darboux(moved, pair.target, 0.1).k_n
    # the chart line is intrinsically straight (kappa = 0, class degenerate);
    # its image must be a genuine helix: still geodesic, k_n bounded away from 0
    helix_ok = (rep.preserved and rep.source_class.max_abs_k_g <= 1e-12
                and rep.target_class.tag == "geodesic" and abs(kn_img) > 0.05)
    ok = (md_pc.max_dev <= 1e-12 and md_hc.max_dev <= 1e-9
          and worst_kg <= 1e-6 and n_curves == 15 and helix_ok)
    ok = _verdict("C5 isometry-invariance", ok,
                  f"plane-cylinder {md_pc.max_dev:.3e} (tol 1e-12), "
                  f"helicoid-catenoid {md_hc.max_dev:.3e} (tol 1e-9), "
                  f"k_g dev {worst_kg:.3e} over {n_curves} curves (tol 1e-6), "
                  f"plane line -> helix geodesic preserved: {helix_ok}")
    assert ok


def test_c6_theorem_suite(reports):
    n_fail = sum(1 for r in reports if r.verdict == "fail")
    coverage_ok = True
    for tid in THEOREM_IDS:
        verdicts = {r.verdict for r in reports if r.theorem_id == tid}
        if "pass" not in verdicts or "skipped" not in verdicts:
            coverage_ok = False
    worst = max((r.max_dev for r in reports if r.verdict == "pass"),
                default=float("inf"))
    ok = n_fail == 0 and coverage_ok and worst <= 1e-5
    ok = _verdict("C6 theorem-suite", ok,
                  f"{len(reports)} reports, {n_fail} fail, every checker has "
                  f"pass+skip: {coverage_ok}, max pass dev {worst:.3e} (tol 1e-5)")
    assert ok


def test_c7_negative_controls():
    helix, cyl = curve_fixture("helix-cylinder", (3.0, 4.0))
    summary = rectifying_summary(helix, cyl, 64)
    helix_ok = (not summary.rectifying) and summary.max_abs_residual > 1.0

    sphere_pair = pair_catalog()["plane-sphere"]
    md = metric_deviation(sphere_pair, 17)
    sphere_ok = not md.isometric
    pushforward_failed = False
    try:
        pushforward(sphere_pair, PushforwardVector(a=1.0, b=0.0, u=0.3, v=0.8))
    except Exception:
        pushforward_failed = True

    line, plane = curve_fixture("line-plane", (0.0, 0.0, 1.0, 0.0))
    try:
        frenet(line, plane, 0.2)
        line_ok = False
    except CurvatureDegenerateError:
        line_ok = True

    ok = helix_ok and sphere_ok and pushforward_failed and line_ok
    ok = _verdict("C7 negative-controls", ok,
                  f"helix residual {summary.max_abs_residual:.3g} not rectifying: "
                  f"{helix_ok}; plane-sphere metric dev {md.max_dev:.3g} rejected: "
                  f"{sphere_ok}; straight line raises degenerate-curvature: {line_ok}")
    assert ok


def test_c8_determinism(tmp_path):
    argv = ["theorem", "--fixture", "cone-cone", "--fixture", "rotated-generic"]
    d1, d2 = tmp_path / "a", tmp_path / "b"
    code1 = main(["--out", str(d1), *argv])
    code2 = main(["--out", str(d2), *argv])
    same = all(
        (d1 / name).read_bytes() == (d2 / name).read_bytes()
        for name in ("theorem_reports.json", "theorem_summary.csv"))
    ok = code1 == 0 and code2 == 0 and same
    ok = _verdict("C8 determinism", ok,
                  f"repeat runs byte-identical: {same}")
    assert ok
