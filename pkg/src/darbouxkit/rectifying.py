"""Detection, decomposition, classification, and chart-component identities for
rectifying curves (position vector confined to the tangent-binormal plane).

Conventions used throughout (fixed by construction and verified in tests):
with theta = atan2(k_n, k_g), the position of a rectifying curve expands as
gamma = lambda T + (mu k_g / kappa) U - (mu k_n / kappa) P.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .numerics import (
    DEFAULT_POLICY,
    ClassMismatchError,
    CurvatureDegenerateError,
    FixtureError,
    IdentityDeviationError,
    NonRectifyingError,
    TolerancePolicy,
    Vec3,
    cross,
    dot,
    norm,
    vec3,
)
from .surfaces import SurfacePatch, first_form, partials, unit_normal
from .frames import (
    SurfaceCurve,
    arc_length_reparam,
    curve_derivatives,
    darboux,
    embed,
    frenet,
    s_grid,
)


@dataclass(frozen=True)
class RectifyingDecomposition:
    """Frenet-basis components of the position vector at one sample."""
    s: float
    lam: float       # component along T
    mu: float        # component along B
    residual: float  # component along N; zero exactly on rectifying curves
    split_dev: float


@dataclass(frozen=True)
class CurveClass:
    tag: str  # geodesic | asymptotic | generic | degenerate
    max_abs_k_g: float
    max_abs_k_n: float


def decompose(curve: SurfaceCurve, patch: SurfacePatch, s: float,
              policy: TolerancePolicy = DEFAULT_POLICY) -> RectifyingDecomposition:
    """Project gamma(s) on the Frenet frame and cross-check the Darboux split.

    lambda = gamma.T, mu = gamma.B, residual = gamma.N. The Darboux-basis split
    gamma.P = residual cos(theta) - mu sin(theta),
    gamma.U = residual sin(theta) + mu cos(theta)
    is verified against direct dot products before returning.
    """
    fr = frenet(curve, patch, s, policy)
    db = darboux(curve, patch, s, policy)
    g = embed(curve, patch, s)
    lam, mu, residual = dot(g, fr.T), dot(g, fr.B), dot(g, fr.N)
    th = db.theta if db.theta is not None else 0.0
    dev_p = abs(dot(g, db.P) - (residual * np.cos(th) - mu * np.sin(th)))
    dev_u = abs(dot(g, db.U) - (residual * np.sin(th) + mu * np.cos(th)))
    split_dev = max(dev_p, dev_u)
    scale = 1.0 + norm(g)
    tol = (policy.tol_alg if _analytic(curve, patch) else policy.tol_fd) * scale
    if split_dev > tol:
        raise IdentityDeviationError(
            f"Darboux split of the position vector off by {split_dev:.3e} "
            f"at s = {s:.6g} on '{curve.name}'")
    return RectifyingDecomposition(s=s, lam=lam, mu=mu, residual=residual,
                                   split_dev=split_dev)


def _analytic(curve: SurfaceCurve, patch: SurfacePatch) -> bool:
    return curve.has_analytic_derivatives and patch.has_analytic_partials


@dataclass(frozen=True)
class RectifyingSummary:
    curve_name: str
    max_abs_residual: float
    arg_s: float
    tol_rect: float
    rectifying: bool


def rectifying_summary(curve: SurfaceCurve, patch: SurfacePatch,
                       grid: int | Sequence[float] = 33,
                       policy: TolerancePolicy = DEFAULT_POLICY) -> RectifyingSummary:
    samples = s_grid(curve, grid) if isinstance(grid, int) else np.asarray(grid, dtype=float)
    worst, arg = -1.0, float(samples[0])
    for s in samples:
        r = abs(decompose(curve, patch, float(s), policy).residual)
        if r > worst:
            worst, arg = r, float(s)
    return RectifyingSummary(curve_name=curve.name, max_abs_residual=worst, arg_s=arg,
                             tol_rect=policy.tol_rect,
                             rectifying=bool(worst <= policy.tol_rect))


def classify(curve: SurfaceCurve, patch: SurfacePatch,
             grid: int | Sequence[float] = 33,
             policy: TolerancePolicy = DEFAULT_POLICY) -> CurveClass:
    """Tag by curvature evidence over the grid.

    geodesic: max|k_g| <= tol_class; asymptotic: max|k_n| <= tol_class;
    generic: both exceed tol_class; degenerate: kappa < kappa_min somewhere.
    """
    samples = s_grid(curve, grid) if isinstance(grid, int) else np.asarray(grid, dtype=float)
    max_kg = max_kn = 0.0
    degenerate = False
    for s in samples:
        db = darboux(curve, patch, float(s), policy)
        max_kg = max(max_kg, abs(db.k_g))
        max_kn = max(max_kn, abs(db.k_n))
        if np.hypot(db.k_n, db.k_g) < policy.kappa_min:
            degenerate = True
    if degenerate:
        tag = "degenerate"
    elif max_kg <= policy.tol_class:
        tag = "geodesic"
    elif max_kn <= policy.tol_class:
        tag = "asymptotic"
    else:
        tag = "generic"
    return CurveClass(tag=tag, max_abs_k_g=max_kg, max_abs_k_n=max_kn)


def _class_consistent_at(tag: str, k_n: float, k_g: float,
                         policy: TolerancePolicy) -> bool:
    if tag == "geodesic":
        return abs(k_g) <= policy.tol_class
    if tag == "asymptotic":
        return abs(k_n) <= policy.tol_class
    if tag == "generic":
        return abs(k_g) > policy.tol_class and abs(k_n) > policy.tol_class
    return False


def _require_rectifying(dec: RectifyingDecomposition, policy: TolerancePolicy,
                        curve_name: str) -> None:
    if abs(dec.residual) > policy.tol_rect:
        raise NonRectifyingError(
            f"'{curve_name}' is not rectifying at s = {dec.s:.6g}: "
            f"|gamma.N| = {abs(dec.residual):.3e} > {policy.tol_rect:g}")


def reconstruct(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                cls: CurveClass, policy: TolerancePolicy = DEFAULT_POLICY) -> Vec3:
    """Rebuild gamma(s) from chart data via the rectifying position expansion.

    generic:    lambda T + (mu k_g/kappa) U - (mu k_n/kappa) P
    geodesic:   the U term is provably zero and is dropped
    asymptotic: the P term is provably zero and is dropped
    """
    dec = decompose(curve, patch, s, policy)
    _require_rectifying(dec, policy, curve.name)
    db = darboux(curve, patch, s, policy)
    kappa = float(np.hypot(db.k_n, db.k_g))
    if kappa < policy.kappa_min:
        raise CurvatureDegenerateError(f"kappa degenerate at s = {s:.6g}")
    if not _class_consistent_at(cls.tag, db.k_n, db.k_g, policy):
        raise ClassMismatchError(
            f"class tag '{cls.tag}' inconsistent with curvatures at s = {s:.6g}: "
            f"k_n = {db.k_n:.3e}, k_g = {db.k_g:.3e}")
    if cls.tag == "geodesic":
        return dec.lam * db.T - (dec.mu * db.k_n / kappa) * db.P
    if cls.tag == "asymptotic":
        return dec.lam * db.T + (dec.mu * db.k_g / kappa) * db.U
    return (dec.lam * db.T + (dec.mu * db.k_g / kappa) * db.U
            - (dec.mu * db.k_n / kappa) * db.P)


def chart_components_closed_form(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                                 policy: TolerancePolicy = DEFAULT_POLICY
                                 ) -> tuple[float, float]:
    """Closed forms of (gamma.phi_u, gamma.phi_v) for a rectifying sample:

    gamma.phi_u = lambda (u'E + v'F) + (mu k_n/kappa) sqrt(EG-F^2) v'
    gamma.phi_v = lambda (u'F + v'G) - (mu k_n/kappa) sqrt(EG-F^2) u'
    """
    dec = decompose(curve, patch, s, policy)
    db = darboux(curve, patch, s, policy)
    kappa = float(np.hypot(db.k_n, db.k_g))
    if kappa < policy.kappa_min:
        raise CurvatureDegenerateError(f"kappa degenerate at s = {s:.6g}")
    u, v = curve.u(s), curve.v(s)
    ff = first_form(patch, u, v, policy)
    up, vp, _, _ = curve_derivatives(curve, s, policy)
    w = np.sqrt(ff.det)
    mk = dec.mu * db.k_n / kappa
    cf_u = dec.lam * (up * ff.E + vp * ff.F) + mk * w * vp
    cf_v = dec.lam * (up * ff.F + vp * ff.G) - mk * w * up
    return float(cf_u), float(cf_v)


def component_chart(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                    policy: TolerancePolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """(gamma.phi_u, gamma.phi_v) by direct dot products, verified against the
    closed forms above. Requires a rectifying sample."""
    dec = decompose(curve, patch, s, policy)
    _require_rectifying(dec, policy, curve.name)
    g = embed(curve, patch, s)
    pu, pv = partials(patch, curve.u(s), curve.v(s), policy)
    direct = (dot(g, pu), dot(g, pv))
    cf = chart_components_closed_form(curve, patch, s, policy)
    dev = max(abs(direct[0] - cf[0]), abs(direct[1] - cf[1]))
    if dev > policy.tol_rect * (1.0 + norm(g)):
        raise IdentityDeviationError(
            f"chart-component closed forms off by {dev:.3e} at s = {s:.6g}")
    return direct


def component_tangent(curve: SurfaceCurve, patch: SurfacePatch,
                      a: float, b: float, s: float,
                      policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """gamma.(a phi_u + b phi_v) = a (gamma.phi_u) + b (gamma.phi_v)."""
    if a == 0.0 and b == 0.0:
        raise ValueError("tangent coefficients (a, b) must not both vanish")
    gu, gv = component_chart(curve, patch, s, policy)
    return a * gu + b * gv


def component_P(curve: SurfaceCurve, patch: SurfacePatch,
                a: float, b: float, s: float,
                policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """gamma.(U x (a phi_u + b phi_v)) via the metric closed form

    [(aE + bF)(gamma.phi_v) - (aF + bG)(gamma.phi_u)] / sqrt(EG - F^2),

    cross-checked against the direct dot product. This is an exact bilinear
    identity: no rectifying hypothesis is needed.
    """
    if a == 0.0 and b == 0.0:
        raise ValueError("tangent coefficients (a, b) must not both vanish")
    u, v = curve.u(s), curve.v(s)
    g = embed(curve, patch, s)
    pu, pv = partials(patch, u, v, policy)
    ff = first_form(patch, u, v, policy)
    U = unit_normal(patch, u, v, policy)
    closed = ((a * ff.E + b * ff.F) * dot(g, pv)
              - (a * ff.F + b * ff.G) * dot(g, pu)) / np.sqrt(ff.det)
    direct = dot(g, cross(U, a * pu + b * pv))
    scale = (1.0 + norm(g)) * (1.0 + abs(a) + abs(b)) * (1.0 + max(ff.E, ff.G))
    if abs(closed - direct) > policy.tol_alg * scale:
        raise IdentityDeviationError(
            f"conormal closed form off by {abs(closed - direct):.3e} at s = {s:.6g}")
    return float(direct)


def component_normal(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                     policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """gamma.U, verified equal to mu k_g / kappa on rectifying samples."""
    dec = decompose(curve, patch, s, policy)
    _require_rectifying(dec, policy, curve.name)
    db = darboux(curve, patch, s, policy)
    kappa = float(np.hypot(db.k_n, db.k_g))
    if kappa < policy.kappa_min:
        raise CurvatureDegenerateError(f"kappa degenerate at s = {s:.6g}")
    g = embed(curve, patch, s)
    direct = dot(g, db.U)
    predicted = dec.mu * db.k_g / kappa
    if abs(direct - predicted) > policy.tol_rect * (1.0 + norm(g)):
        raise IdentityDeviationError(
            f"gamma.U deviates from mu k_g/kappa by {abs(direct - predicted):.3e} "
            f"at s = {s:.6g}")
    return float(direct)


def fixture_rectifying(params: Optional[Mapping] = None
                       ) -> tuple[SurfaceCurve, SurfacePatch]:
    """Rectifying fixture: secant-dilated circle on the cone it rules.

    A unit-speed circle y(t) at height sin(latitude) on the unit sphere is
    dilated by a / cos(t); the image lies on the cone phi(u, w) = w y(u) and
    its position vector stays in the tangent-binormal plane. The returned
    curve is reparametrized to unit speed by arc_length_reparam.

    params keys (all optional): a > 0 dilation scale, latitude (not a great
    circle), phase, s_span half-width of the arc-length window,
    dilation: "secant" (default; "constant" is rejected as non-rectifying).
    """
    p = dict(params or {})
    a = float(p.get("a", 1.0))
    latitude = float(p.get("latitude", 0.9))
    phase = float(p.get("phase", 0.0))
    s_span = float(p.get("s_span", 1.5))
    dilation = str(p.get("dilation", "secant"))
    if a <= 0.0:
        raise FixtureError("dilation scale a must be positive")
    if dilation == "constant":
        raise FixtureError(
            "constant dilation keeps the curve on the sphere scaled by a: "
            "its residual |gamma.N| = a cos(latitude) is bounded away from zero, "
            "so the fixture would not be rectifying")
    if dilation != "secant":
        raise FixtureError(f"unknown dilation profile '{dilation}'")
    z0, rho = float(np.sin(latitude)), float(np.cos(latitude))
    if abs(z0) < 0.05:
        raise FixtureError(
            "great circle (latitude ~ 0): the dilated image is a straight line "
            "with kappa = 0; pick a nonzero latitude")
    if rho < 0.05:
        raise FixtureError("latitude too close to the pole: the base circle degenerates")

    def y(t: float) -> Vec3:
        arg = t / rho + phase
        return vec3(rho * np.cos(arg), -rho * np.sin(arg), z0)

    def yp(t: float) -> Vec3:
        arg = t / rho + phase
        return vec3(-np.sin(arg), -np.cos(arg), 0.0)

    def ypp(t: float) -> Vec3:
        arg = t / rho + phase
        return vec3(-np.cos(arg) / rho, np.sin(arg) / rho, 0.0)

    t_max = float(np.arctan(s_span / a))
    r_max = float(np.hypot(a, s_span))
    patch = SurfacePatch(
        name=f"cone-over-circle(lat={latitude:g})",
        eval=lambda u, w: w * y(u),
        domain=((-t_max - 0.15, t_max + 0.15), (0.5 * a, r_max + 0.5)),
        d_u=lambda u, w: w * yp(u),
        d_v=lambda u, w: y(u),
        d_uu=lambda u, w: w * ypp(u),
        d_uv=lambda u, w: yp(u),
        d_vv=lambda u, w: vec3(0.0, 0.0, 0.0),
    )
    raw = SurfaceCurve(
        name=f"dilated-spherical(a={a:g},lat={latitude:g})",
        u=lambda t: t,
        v=lambda t: a / np.cos(t),
        s_domain=(-t_max, t_max),
        du=lambda t: 1.0,
        dv=lambda t: a * np.tan(t) / np.cos(t),
        d2u=lambda t: 0.0,
        d2v=lambda t: a * (np.tan(t) ** 2 / np.cos(t) + 1.0 / np.cos(t) ** 3),
    )
    curve = arc_length_reparam(raw, patch)
    return curve, patch
