"""Curves on surfaces, arc-length handling, Frenet and Darboux frames.

All frame operations assume unit-speed input; arc_length_reparam is the
sanctioned path to obtain it. Derivatives ride analytic data when the curve
and patch provide it and fall back to centered stencils otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .numerics import (
    DEFAULT_POLICY,
    CurvatureDegenerateError,
    DomainError,
    IdentityDeviationError,
    TolerancePolicy,
    ToolkitError,
    Vec3,
    cross,
    diff,
    dot,
    norm,
    vec3,
)
from .surfaces import SurfacePatch, check_domain, first_form, partials, second_partials, unit_normal


@dataclass(frozen=True)
class SurfaceCurve:
    """Chart coordinates (u(s), v(s)) of a curve inside a patch domain."""
    name: str
    u: Callable[[float], float]
    v: Callable[[float], float]
    s_domain: tuple[float, float]
    du: Optional[Callable[[float], float]] = None
    dv: Optional[Callable[[float], float]] = None
    d2u: Optional[Callable[[float], float]] = None
    d2v: Optional[Callable[[float], float]] = None

    @property
    def has_analytic_derivatives(self) -> bool:
        return (self.du is not None and self.dv is not None
                and self.d2u is not None and self.d2v is not None)


@dataclass(frozen=True)
class FrenetFrame:
    s: float
    T: Vec3
    N: Vec3
    B: Vec3
    kappa: float
    tau: float


@dataclass(frozen=True)
class DarbouxFrame:
    s: float
    T: Vec3
    P: Vec3
    U: Vec3
    k_n: float
    k_g: float
    theta: Optional[float]  # None when kappa < kappa_min


@dataclass(frozen=True)
class UnitSpeedReport:
    curve_name: str
    max_dev: float
    arg_s: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class FrameRelationReport:
    s: float
    status: str  # pass | fail | skipped
    max_dev: float
    tol: float


def _check_s(curve: SurfaceCurve, s: float, slack: float = 1e-9) -> None:
    s0, s1 = curve.s_domain
    if not (s0 - slack <= s <= s1 + slack):
        raise DomainError(f"s = {s} outside domain [{s0}, {s1}] of curve '{curve.name}'")


def embed(curve: SurfaceCurve, patch: SurfacePatch, s: float) -> Vec3:
    """gamma(s) = phi(u(s), v(s))."""
    _check_s(curve, s)
    u, v = curve.u(s), curve.v(s)
    check_domain(patch, u, v)
    return patch.eval(u, v)


def curve_derivatives(curve: SurfaceCurve, s: float,
                      policy: TolerancePolicy = DEFAULT_POLICY
                      ) -> tuple[float, float, float, float]:
    """(u', v', u'', v''), analytic when provided else centered stencils."""
    if curve.has_analytic_derivatives:
        return curve.du(s), curve.dv(s), curve.d2u(s), curve.d2v(s)
    h = policy.h_fd

    def uv(t: float) -> Vec3:
        return vec3(curve.u(t), curve.v(t), 0.0)

    d1 = diff(uv, s, 1, h)
    d2 = diff(uv, s, 2, h)
    return float(d1[0]), float(d1[1]), float(d2[0]), float(d2[1])


def velocity(curve: SurfaceCurve, patch: SurfacePatch, s: float,
             policy: TolerancePolicy = DEFAULT_POLICY) -> Vec3:
    """gamma'(s) by the chain rule on analytic data, else a stencil on embed."""
    if curve.has_analytic_derivatives and patch.has_analytic_partials:
        u, v = curve.u(s), curve.v(s)
        pu, pv = partials(patch, u, v, policy)
        return curve.du(s) * pu + curve.dv(s) * pv
    return diff(lambda t: embed(curve, patch, t), s, 1, policy.h_fd)


def acceleration(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                 policy: TolerancePolicy = DEFAULT_POLICY) -> Vec3:
    """gamma''(s) = u''phi_u + v''phi_v + u'^2 phi_uu + 2u'v' phi_uv + v'^2 phi_vv."""
    if curve.has_analytic_derivatives and patch.has_analytic_partials:
        u, v = curve.u(s), curve.v(s)
        pu, pv = partials(patch, u, v, policy)
        puu, puv, pvv = second_partials(patch, u, v, policy)
        up, vp, upp, vpp = curve_derivatives(curve, s, policy)
        return (upp * pu + vpp * pv
                + up * up * puu + 2 * up * vp * puv + vp * vp * pvv)
    return diff(lambda t: embed(curve, patch, t), s, 2, max(policy.h_fd, 1.5e-3))


def _analytic_path(curve: SurfaceCurve, patch: SurfacePatch) -> bool:
    return curve.has_analytic_derivatives and patch.has_analytic_partials


def s_grid(curve: SurfaceCurve, n: int, margin: float = 0.0) -> np.ndarray:
    s0, s1 = curve.s_domain
    pad = margin * (s1 - s0)
    return np.linspace(s0 + pad, s1 - pad, n)


def unit_speed_check(curve: SurfaceCurve, patch: SurfacePatch,
                     grid: int | Sequence[float] = 33,
                     policy: TolerancePolicy = DEFAULT_POLICY,
                     tol: Optional[float] = None) -> UnitSpeedReport:
    """max | |gamma'(s)| - 1 | over the grid; pass iff within tolerance."""
    samples = s_grid(curve, grid) if isinstance(grid, int) else np.asarray(grid, dtype=float)
    if tol is None:
        tol = policy.tol_alg * 100 if _analytic_path(curve, patch) else policy.tol_fd
    worst, arg = -1.0, float(samples[0])
    for s in samples:
        dev = abs(norm(velocity(curve, patch, float(s), policy)) - 1.0)
        if dev > worst:
            worst, arg = dev, float(s)
    return UnitSpeedReport(curve_name=curve.name, max_dev=worst, arg_s=arg,
                           tol=tol, passed=bool(worst <= tol))


def arc_length_reparam(curve: SurfaceCurve, patch: SurfacePatch,
                       policy: TolerancePolicy = DEFAULT_POLICY,
                       speed_floor: float = 1e-8) -> SurfaceCurve:
    """Reparametrize by arc length.

    Accumulates s(t) = integral of |gamma_t| with an adaptive Runge-Kutta
    integrator and inverts it by bracketed root finding. When the input carries
    analytic derivatives the output does too, via the chain rule.
    """
    t0, t1 = curve.s_domain

    def sigma(t: float) -> float:
        return norm(velocity(curve, patch, t, policy))

    for t in np.linspace(t0, t1, 65):
        if sigma(float(t)) < speed_floor:
            raise ToolkitError(
                f"singular parametrization of '{curve.name}' near t = {t:.6g}: "
                f"|gamma_t| < {speed_floor:g}")

    sol = solve_ivp(lambda t, y: [sigma(t)], (t0, t1), [0.0], method="RK45",
                    rtol=1e-12, atol=1e-14, dense_output=True)
    if not sol.success:
        raise ToolkitError(f"arc-length accumulation failed: {sol.message}")
    total = float(sol.sol(t1)[0])

    def t_of_s(s: float) -> float:
        s = min(max(s, 0.0), total)
        if s <= 0.0:
            return t0
        if s >= total:
            return t1
        return brentq(lambda t: float(sol.sol(t)[0]) - s, t0, t1, xtol=1e-13)

    analytic = _analytic_path(curve, patch)

    def u_new(s: float) -> float:
        return curve.u(t_of_s(s))

    def v_new(s: float) -> float:
        return curve.v(t_of_s(s))

    du_new = dv_new = d2u_new = d2v_new = None
    if analytic:
        def chain(s: float) -> tuple[float, float, float, float]:
            t = t_of_s(s)
            up, vp, upp, vpp = curve_derivatives(curve, t, policy)
            g1 = velocity(curve, patch, t, policy)
            g2 = acceleration(curve, patch, t, policy)
            sg = norm(g1)
            sg_dot = dot(g1, g2) / sg
            # d/ds = (1/sigma) d/dt; second derivative by the quotient rule
            return (up / sg, vp / sg,
                    (upp * sg - up * sg_dot) / sg ** 3,
                    (vpp * sg - vp * sg_dot) / sg ** 3)

        du_new = lambda s: chain(s)[0]
        dv_new = lambda s: chain(s)[1]
        d2u_new = lambda s: chain(s)[2]
        d2v_new = lambda s: chain(s)[3]

    return SurfaceCurve(
        name=f"{curve.name}|arclen",
        u=u_new, v=v_new,
        s_domain=(0.0, total),
        du=du_new, dv=dv_new, d2u=d2u_new, d2v=d2v_new,
    )


def _require_unit_speed(curve: SurfaceCurve, patch: SurfacePatch, s: float,
                        g1: Vec3) -> None:
    dev = abs(norm(g1) - 1.0)
    if dev > 1e-3:
        raise ToolkitError(
            f"curve '{curve.name}' is not unit-speed at s = {s:.6g} "
            f"(| |gamma'| - 1 | = {dev:.3e}); run arc_length_reparam first")


def frenet(curve: SurfaceCurve, patch: SurfacePatch, s: float,
           policy: TolerancePolicy = DEFAULT_POLICY) -> FrenetFrame:
    """T = gamma', N = gamma''/kappa, B = T x N, tau = -B'. N."""
    _check_s(curve, s)
    g1 = velocity(curve, patch, s, policy)
    _require_unit_speed(curve, patch, s, g1)
    g2 = acceleration(curve, patch, s, policy)
    kappa = norm(g2)
    if kappa < policy.kappa_min:
        raise CurvatureDegenerateError(
            f"kappa = {kappa:.3e} < kappa_min at s = {s:.6g} on '{curve.name}': "
            "Frenet frame undefined")
    T = g1 / norm(g1)
    N = g2 / kappa
    B = cross(T, N)

    def binormal(t: float) -> Vec3:
        v1 = velocity(curve, patch, t, policy)
        v2 = acceleration(curve, patch, t, policy)
        k = norm(v2)
        if k < policy.kappa_min:
            raise CurvatureDegenerateError(
                f"kappa degenerate inside torsion stencil at s = {t:.6g}")
        return cross(v1 / norm(v1), v2 / k)

    # larger step for the outer stencil when the inner data is itself FD
    h_tau = 2e-3 if _analytic_path(curve, patch) else 1e-2
    tau = -dot(diff(binormal, s, 1, h_tau), N)
    return FrenetFrame(s=s, T=T, N=N, B=B, kappa=kappa, tau=tau)


def _conormal_chart(up: float, vp: float, pu: Vec3, pv: Vec3,
                    E: float, F: float, G: float) -> Vec3:
    w2 = E * G - F * F
    return ((up * E + vp * F) * pv - (up * F + vp * G) * pu) / np.sqrt(w2)


def darboux(curve: SurfaceCurve, patch: SurfacePatch, s: float,
            policy: TolerancePolicy = DEFAULT_POLICY) -> DarbouxFrame:
    """Darboux frame (T, P, U) with k_n = gamma''.U, k_g = gamma''.P.

    T comes from the chart tangent, U from the never-flipped normalized
    phi_u x phi_v, and P from its chart expression, cross-checked against
    U x T before being returned.
    """
    _check_s(curve, s)
    u, v = curve.u(s), curve.v(s)
    pu, pv = partials(patch, u, v, policy)
    up, vp, _, _ = curve_derivatives(curve, s, policy)
    T = up * pu + vp * pv
    _require_unit_speed(curve, patch, s, T)
    U = unit_normal(patch, u, v, policy)
    ff = first_form(patch, u, v, policy)
    P = _conormal_chart(up, vp, pu, pv, ff.E, ff.F, ff.G)
    P_cross = cross(U, T)
    if float(np.max(np.abs(P - P_cross))) > 1e-6:
        raise IdentityDeviationError(
            f"chart conormal disagrees with U x T at s = {s:.6g} on '{curve.name}'")
    g2 = acceleration(curve, patch, s, policy)
    k_n = dot(g2, U)
    k_g = dot(g2, P)
    kappa = float(np.hypot(k_n, k_g))
    theta = float(np.arctan2(k_n, k_g)) if kappa >= policy.kappa_min else None
    return DarbouxFrame(s=s, T=T, P=P, U=U, k_n=k_n, k_g=k_g, theta=theta)


def frame_relation_check(fr: Optional[FrenetFrame], db: DarbouxFrame,
                         policy: TolerancePolicy = DEFAULT_POLICY,
                         tol: Optional[float] = None) -> FrameRelationReport:
    """Verify the rotation between the frames at one sample.

    With theta = atan2(k_n, k_g) the conormal and normal satisfy
    P = cos(theta) N - sin(theta) B and U = sin(theta) N + cos(theta) B.
    Skipped when the Frenet frame is undefined.
    """
    if tol is None:
        tol = policy.tol_fd
    if fr is None or fr.kappa < policy.kappa_min or db.theta is None:
        return FrameRelationReport(s=db.s, status="skipped", max_dev=float("nan"), tol=tol)
    th = db.theta
    dev_p = np.max(np.abs(db.P - (np.cos(th) * fr.N - np.sin(th) * fr.B)))
    dev_u = np.max(np.abs(db.U - (np.sin(th) * fr.N + np.cos(th) * fr.B)))
    worst = float(max(dev_p, dev_u))
    return FrameRelationReport(s=db.s, status="pass" if worst <= tol else "fail",
                               max_dev=worst, tol=tol)


def curve_from_series(name: str, u_coeffs: Sequence[float], v_coeffs: Sequence[float],
                      s_domain: tuple[float, float]) -> SurfaceCurve:
    """Coordinate functions as truncated power series sum c_k s^k."""
    uc = [float(c) for c in u_coeffs]
    vc = [float(c) for c in v_coeffs]

    def series(c: list[float], order: int) -> Callable[[float], float]:
        def f(s: float) -> float:
            out = 0.0
            for k, ck in enumerate(c):
                if k >= order:
                    fac = 1.0
                    for j in range(order):
                        fac *= (k - j)
                    out += fac * ck * s ** (k - order)
            return out
        return f

    return SurfaceCurve(
        name=name,
        u=series(uc, 0), v=series(vc, 0),
        s_domain=(float(s_domain[0]), float(s_domain[1])),
        du=series(uc, 1), dv=series(vc, 1),
        d2u=series(uc, 2), d2v=series(vc, 2),
    )


def curve_fixture(name: str, params: Sequence = ()) -> tuple[SurfaceCurve, SurfacePatch]:
    """Named curve-on-surface fixtures addressable from the CLI.

    line-plane [u0, v0, cu, cv]   straight line, curvature-degenerate control
    circle-plane [R]              unit-speed circle of radius R
    great-circle-sphere []        equator of the unit sphere
    helix-cylinder [r, h]         unit-speed helix on the radius-r cylinder
    """
    from .surfaces import catalog

    params = list(params)
    if name == "line-plane":
        defaults = [0.0, 0.0, 1.0, 0.0]
        u0, v0, cu, cv = (list(params) + defaults[len(params):])[:4]
        speed = float(np.hypot(cu, cv))
        if speed == 0.0:
            raise ValueError("line direction must be nonzero")
        cu, cv = cu / speed, cv / speed
        curve = SurfaceCurve(
            name="line-plane",
            u=lambda s: u0 + cu * s, v=lambda s: v0 + cv * s,
            s_domain=(-4.0, 4.0),
            du=lambda s: cu, dv=lambda s: cv,
            d2u=lambda s: 0.0, d2v=lambda s: 0.0,
        )
        return curve, catalog("plane")
    if name == "circle-plane":
        R = float(params[0]) if params else 1.0
        if R <= 0.0:
            raise ValueError("circle radius must be positive")
        curve = SurfaceCurve(
            name=f"circle-plane(R={R:g})",
            u=lambda s: R * np.cos(s / R), v=lambda s: R * np.sin(s / R),
            s_domain=(0.0, 2 * np.pi * R),
            du=lambda s: -np.sin(s / R), dv=lambda s: np.cos(s / R),
            d2u=lambda s: -np.cos(s / R) / R, d2v=lambda s: -np.sin(s / R) / R,
        )
        return curve, catalog("plane")
    if name == "great-circle-sphere":
        curve = SurfaceCurve(
            name="great-circle-sphere",
            u=lambda s: s, v=lambda s: 0.0,
            s_domain=(-3.0, 3.0),
            du=lambda s: 1.0, dv=lambda s: 0.0,
            d2u=lambda s: 0.0, d2v=lambda s: 0.0,
        )
        return curve, catalog("sphere")
    if name == "helix-cylinder":
        r = float(params[0]) if len(params) > 0 else 3.0
        h = float(params[1]) if len(params) > 1 else 4.0
        if r <= 0.0:
            raise ValueError("helix radius must be positive")
        c = float(np.hypot(r, h))
        # keep the chart coordinates strictly inside the cylinder patch domain
        s_max = 0.9 * c * min(np.pi, 6.0 / h if h > 0 else np.pi)
        curve = SurfaceCurve(
            name=f"helix-cylinder(r={r:g},h={h:g})",
            u=lambda s: s / c, v=lambda s: h * s / c,
            s_domain=(-s_max, s_max),
            du=lambda s: 1.0 / c, dv=lambda s: h / c,
            d2u=lambda s: 0.0, d2v=lambda s: 0.0,
        )
        return curve, catalog("cylinder", [r])
    raise ValueError(f"unknown curve fixture '{name}'")


CURVE_FIXTURE_NAMES = ("line-plane", "circle-plane", "great-circle-sphere", "helix-cylinder")
