"""Chart-matched isometric surface pairs: metric comparison, pushforwards,
curve transfer, and intrinsic-invariant checks.

A pair is stored as two patches over a shared parameter domain; the map
between the surfaces is "same chart coordinates". Isometry then means the
first fundamental forms agree pointwise on that domain.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import DEFAULT_POLICY, NotIsometricError, TolerancePolicy, norm, vec3
from .surfaces import SurfacePatch, catalog, first_form
from .frames import SurfaceCurve, darboux, s_grid, velocity
from .rectifying import CurveClass, classify


@dataclass(frozen=True)
class IsometryPair:
    name: str
    source: SurfacePatch
    target: SurfacePatch
    domain: tuple[tuple[float, float], tuple[float, float]]
    expect_isometric: bool = True


@dataclass(frozen=True)
class PushforwardVector:
    """Tangent vector a phi_u + b phi_v carried to the partner chart."""
    a: float
    b: float
    u: float
    v: float


@dataclass(frozen=True)
class MetricDeviation:
    pair_name: str
    max_dev: float
    arg_u: float
    arg_v: float
    tol: float
    isometric: bool
    grid_shape: tuple[int, int]


@dataclass(frozen=True)
class GeodesicPreservationReport:
    pair_name: str
    curve_name: str
    source_class: CurveClass
    target_class: CurveClass
    max_kg_dev: float
    preserved: bool


def _pair_grid(pair: IsometryPair, grid: int | tuple[Sequence[float], Sequence[float]]
               ) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(grid, int):
        (u0, u1), (v0, v1) = pair.domain
        margin = 1e-6
        us = np.linspace(u0 + margin * (u1 - u0), u1 - margin * (u1 - u0), grid)
        vs = np.linspace(v0 + margin * (v1 - v0), v1 - margin * (v1 - v0), grid)
        return us, vs
    return np.asarray(grid[0], dtype=float), np.asarray(grid[1], dtype=float)


def metric_deviation(pair: IsometryPair,
                     grid: int | tuple[Sequence[float], Sequence[float]] = 24,
                     policy: TolerancePolicy = DEFAULT_POLICY) -> MetricDeviation:
    """Max over the grid of max(|E - Ebar|, |F - Fbar|, |G - Gbar|)."""
    us, vs = _pair_grid(pair, grid)
    worst, arg = -1.0, (float(us[0]), float(vs[0]))
    for u in us:
        for v in vs:
            f0 = first_form(pair.source, float(u), float(v), policy)
            f1 = first_form(pair.target, float(u), float(v), policy)
            d = max(abs(f0.E - f1.E), abs(f0.F - f1.F), abs(f0.G - f1.G))
            if d > worst:
                worst, arg = d, (float(u), float(v))
    return MetricDeviation(pair_name=pair.name, max_dev=worst,
                           arg_u=arg[0], arg_v=arg[1], tol=policy.tol_iso,
                           isometric=bool(worst <= policy.tol_iso),
                           grid_shape=(len(us), len(vs)))


def heatmap_rows(pair: IsometryPair,
                 grid: int | tuple[Sequence[float], Sequence[float]] = 24,
                 policy: TolerancePolicy = DEFAULT_POLICY
                 ) -> list[tuple[float, float, float]]:
    """(u, v, deviation) rows for tabular or graphical output."""
    us, vs = _pair_grid(pair, grid)
    rows = []
    for u in us:
        for v in vs:
            f0 = first_form(pair.source, float(u), float(v), policy)
            f1 = first_form(pair.target, float(u), float(v), policy)
            d = max(abs(f0.E - f1.E), abs(f0.F - f1.F), abs(f0.G - f1.G))
            rows.append((float(u), float(v), float(d)))
    return rows


def pushforward(pair: IsometryPair, vec: PushforwardVector,
                policy: TolerancePolicy = DEFAULT_POLICY) -> PushforwardVector:
    """Carry a tangent vector across the pair: chart coefficients are reused
    verbatim; squared lengths under both metrics are compared as a guard."""
    f0 = first_form(pair.source, vec.u, vec.v, policy)
    f1 = first_form(pair.target, vec.u, vec.v, policy)
    a, b = vec.a, vec.b
    len0 = a * a * f0.E + 2 * a * b * f0.F + b * b * f0.G
    len1 = a * a * f1.E + 2 * a * b * f1.F + b * b * f1.G
    scale = 1.0 + abs(len0)
    if abs(len0 - len1) > policy.tol_iso * scale:
        raise NotIsometricError(
            f"pushforward on '{pair.name}' does not preserve length at "
            f"(u, v) = ({vec.u:.6g}, {vec.v:.6g}): "
            f"|{len0:.6g} - {len1:.6g}| > {policy.tol_iso * scale:.3g}")
    return PushforwardVector(a=a, b=b, u=vec.u, v=vec.v)


def transfer_curve(pair: IsometryPair, curve: SurfaceCurve,
                   policy: TolerancePolicy = DEFAULT_POLICY,
                   check_samples: int = 9) -> SurfaceCurve:
    """Reinterpret the chart curve on the partner patch.

    Coordinates are unchanged; unit speed is spot-checked on the target since
    an isometric partner must preserve it.
    """
    moved = SurfaceCurve(
        name=f"{curve.name}|{pair.target.name}",
        u=curve.u, v=curve.v, s_domain=curve.s_domain,
        du=curve.du, dv=curve.dv, d2u=curve.d2u, d2v=curve.d2v,
    )
    for s in s_grid(moved, check_samples):
        speed = norm(velocity(moved, pair.target, float(s), policy))
        if abs(speed - 1.0) > max(policy.tol_iso * 10.0, 1e-8):
            raise NotIsometricError(
                f"transferred curve '{moved.name}' is not unit speed at "
                f"s = {float(s):.6g}: |gamma'| = {speed:.9g}")
    return moved


def geodesic_preservation_check(pair: IsometryPair, curve: SurfaceCurve,
                                grid: int = 17,
                                policy: TolerancePolicy = DEFAULT_POLICY
                                ) -> GeodesicPreservationReport:
    """Verify the intrinsic invariance of geodesic curvature along a transfer.

    Requires the pair to pass metric_deviation first; reports the classes on
    both sides and max |k_g - k_g_bar| over the grid.
    """
    md = metric_deviation(pair, 12, policy)
    if not md.isometric:
        raise NotIsometricError(
            f"pair '{pair.name}' fails the metric check "
            f"(max deviation {md.max_dev:.3e} > {md.tol:g}); "
            "geodesic preservation is only meaningful for isometric pairs")
    moved = transfer_curve(pair, curve, policy)
    samples = s_grid(curve, grid)
    worst = 0.0
    for s in samples:
        k0 = darboux(curve, pair.source, float(s), policy).k_g
        k1 = darboux(moved, pair.target, float(s), policy).k_g
        worst = max(worst, abs(k0 - k1))
    cls0 = classify(curve, pair.source, samples, policy)
    cls1 = classify(moved, pair.target, samples, policy)
    preserved = worst <= policy.tol_kg and (
        cls0.tag != "geodesic" or cls1.tag in ("geodesic", "degenerate"))
    return GeodesicPreservationReport(
        pair_name=pair.name, curve_name=curve.name,
        source_class=cls0, target_class=cls1,
        max_kg_dev=worst, preserved=bool(preserved))


def _plane_strip(name: str, u_dom: tuple[float, float],
                 v_dom: tuple[float, float]) -> SurfacePatch:
    return SurfacePatch(
        name=name,
        eval=lambda u, v: vec3(u, v, 0.0),
        domain=(u_dom, v_dom),
        d_u=lambda u, v: vec3(1.0, 0.0, 0.0),
        d_v=lambda u, v: vec3(0.0, 1.0, 0.0),
        d_uu=lambda u, v: vec3(0.0, 0.0, 0.0),
        d_uv=lambda u, v: vec3(0.0, 0.0, 0.0),
        d_vv=lambda u, v: vec3(0.0, 0.0, 0.0),
    )


def _unrolled_cone(v_dom: tuple[float, float]) -> SurfacePatch:
    """Planar development of the circular cone (u, v) -> (v cos u, v sin u, v):
    polar-like chart with the angle compressed by 1/sqrt(2) so E, F, G match."""
    r2 = np.sqrt(2.0)

    def ev(u, v):
        return vec3(r2 * v * np.cos(u / r2), r2 * v * np.sin(u / r2), 0.0)

    def du(u, v):
        return vec3(-v * np.sin(u / r2), v * np.cos(u / r2), 0.0)

    def dv(u, v):
        return vec3(r2 * np.cos(u / r2), r2 * np.sin(u / r2), 0.0)

    def duu(u, v):
        return vec3(-v * np.cos(u / r2) / r2, -v * np.sin(u / r2) / r2, 0.0)

    def duv(u, v):
        return vec3(-np.sin(u / r2), np.cos(u / r2), 0.0)

    return SurfacePatch(name="cone-development", eval=ev,
                        domain=((-np.pi, np.pi), v_dom),
                        d_u=du, d_v=dv, d_uu=duu, d_uv=duv,
                        d_vv=lambda u, v: vec3(0.0, 0.0, 0.0))


def pair_catalog() -> dict[str, IsometryPair]:
    """Built-in chart-matched pairs. 'plane-sphere' is a deliberate negative
    control: no chart makes a sphere flat."""
    plane = catalog("plane")
    cylinder = catalog("cylinder")
    helicoid = catalog("helicoid")
    catenoid = catalog("catenoid")
    cone = catalog("cone")
    sphere = catalog("sphere")
    pairs = {
        "plane-cylinder": IsometryPair(
            name="plane-cylinder",
            source=_plane_strip("plane-strip", cylinder.domain[0], cylinder.domain[1]),
            target=cylinder,
            domain=cylinder.domain),
        "helicoid-catenoid": IsometryPair(
            name="helicoid-catenoid", source=helicoid, target=catenoid,
            domain=helicoid.domain),
        "cone-development": IsometryPair(
            name="cone-development", source=cone,
            target=_unrolled_cone(cone.domain[1]),
            domain=((-2.0, 2.0), cone.domain[1])),
        "plane-sphere": IsometryPair(
            name="plane-sphere",
            source=_plane_strip("plane-strip", sphere.domain[0], sphere.domain[1]),
            target=sphere, domain=sphere.domain,
            expect_isometric=False),
    }
    return pairs


PAIR_NAMES = ("plane-cylinder", "helicoid-catenoid", "cone-development", "plane-sphere")


def _line_curve(name: str, u0: float, v0: float, cu: float, cv: float,
                half: float, sc: float) -> SurfaceCurve:
    """Unit-speed straight chart line for a metric with constant coefficients
    along it (sc is the embedded speed per unit chart speed)."""
    return SurfaceCurve(
        name=name,
        u=lambda s: u0 + cu * s / sc,
        v=lambda s: v0 + cv * s / sc,
        s_domain=(-half, half),
        du=lambda s: cu / sc,
        dv=lambda s: cv / sc,
        d2u=lambda s: 0.0,
        d2v=lambda s: 0.0,
    )


def canonical_transfer_curves(pair: IsometryPair) -> list[SurfaceCurve]:
    """Five unit-speed probe curves per pair, built for the source metric."""
    if pair.name in ("plane-cylinder", "plane-sphere"):
        # source is a flat strip: chart speed is Euclidean speed
        (u0, u1), (v0, v1) = pair.domain
        um, vm = 0.5 * (u0 + u1), 0.5 * (v0 + v1)
        hw = 0.35 * min(u1 - u0, v1 - v0)
        c = np.sqrt(0.5)
        R = 0.8 * hw
        curves = [
            _line_curve("chart-line-u", um, vm, 1.0, 0.0, hw, 1.0),
            _line_curve("chart-line-v", um, vm, 0.0, 1.0, hw, 1.0),
            _line_curve("chart-diagonal", um, vm, c, c, hw, 1.0),
            SurfaceCurve(
                name="chart-circle",
                u=lambda s, R=R: um + R * np.cos(s / R),
                v=lambda s, R=R: vm + R * np.sin(s / R),
                s_domain=(0.0, 2.0 * np.pi * R - 1e-9),
                du=lambda s, R=R: -np.sin(s / R),
                dv=lambda s, R=R: np.cos(s / R),
                d2u=lambda s, R=R: -np.cos(s / R) / R,
                d2v=lambda s, R=R: -np.sin(s / R) / R),
            _line_curve("chart-skew", um + 0.2 * hw, vm - 0.2 * hw, 0.6, 0.8,
                        0.7 * hw, 1.0),
        ]
        return curves
    if pair.name == "helicoid-catenoid":
        # E = G = cosh^2 v, F = 0
        v0 = 0.4
        half = 1.2
        curves = [
            _line_curve("helix-level", 0.0, v0, 1.0, 0.0, half, float(np.cosh(v0))),
            _line_curve("helix-level-2", 0.5, -0.3, 1.0, 0.0, half,
                        float(np.cosh(-0.3))),
            SurfaceCurve(  # ruling u = u0: v' = 1/cosh v, arc length s = sinh v
                name="ruling",
                u=lambda s: 0.3,
                v=lambda s: float(np.arcsinh(s)),
                s_domain=(-1.2, 1.2),
                du=lambda s: 0.0,
                dv=lambda s: 1.0 / np.sqrt(1.0 + s * s),
                d2u=lambda s: 0.0,
                d2v=lambda s: -s / (1.0 + s * s) ** 1.5),
            SurfaceCurve(
                name="ruling-2",
                u=lambda s: -0.8,
                v=lambda s: float(np.arcsinh(s + 0.4)),
                s_domain=(-1.2, 1.0),
                du=lambda s: 0.0,
                dv=lambda s: 1.0 / np.sqrt(1.0 + (s + 0.4) ** 2),
                d2u=lambda s: 0.0,
                d2v=lambda s: -(s + 0.4) / (1.0 + (s + 0.4) ** 2) ** 1.5),
            _line_curve("helix-level-3", -0.5, 0.8, 1.0, 0.0, half,
                        float(np.cosh(0.8))),
        ]
        return curves
    if pair.name == "cone-development":
        # E = v^2, F = 0, G = 2 on the circular cone chart
        v0 = 1.6
        half = 0.8
        r2 = np.sqrt(2.0)
        curves = [
            _line_curve("cone-circle", 0.0, v0, 1.0, 0.0, half, v0),
            _line_curve("cone-circle-2", 0.5, 2.1, 1.0, 0.0, half, 2.1),
            SurfaceCurve(
                name="cone-ray",
                u=lambda s: 0.2,
                v=lambda s: v0 + s / r2,
                s_domain=(-0.7, 0.9),
                du=lambda s: 0.0,
                dv=lambda s: 1.0 / r2,
                d2u=lambda s: 0.0,
                d2v=lambda s: 0.0),
            SurfaceCurve(
                name="cone-ray-2",
                u=lambda s: -0.9,
                v=lambda s: 1.2 + s / r2,
                s_domain=(-0.5, 1.2),
                du=lambda s: 0.0,
                dv=lambda s: 1.0 / r2,
                d2u=lambda s: 0.0,
                d2v=lambda s: 0.0),
            _line_curve("cone-circle-3", -0.4, 1.1, 1.0, 0.0, half, 1.1),
        ]
        return curves
    raise KeyError(f"no canonical curves for pair '{pair.name}'")
