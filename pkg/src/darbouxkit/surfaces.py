"""Parametric surface patches, first fundamental form, unit normal, regularity,
and the classical surface catalog.

A patch holds an evaluation callable plus optional analytic partials; every
operation falls back to centered stencils when a partial is missing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .numerics import (
    DEFAULT_POLICY,
    DegeneratePatchError,
    DomainError,
    TolerancePolicy,
    Vec3,
    cross,
    diff,
    dot,
    vec3,
)

Domain = tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class SurfacePatch:
    """Chart (u,v) -> point of 3-space on a rectangular parameter domain."""
    name: str
    eval: Callable[[float, float], Vec3]
    domain: Domain
    d_u: Optional[Callable[[float, float], Vec3]] = None
    d_v: Optional[Callable[[float, float], Vec3]] = None
    d_uu: Optional[Callable[[float, float], Vec3]] = None
    d_uv: Optional[Callable[[float, float], Vec3]] = None
    d_vv: Optional[Callable[[float, float], Vec3]] = None

    @property
    def has_analytic_partials(self) -> bool:
        return self.d_u is not None and self.d_v is not None


@dataclass(frozen=True)
class FundamentalForm:
    E: float
    F: float
    G: float

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F


@dataclass(frozen=True)
class RegularityReport:
    patch_name: str
    min_det: float
    argmin: tuple[float, float]
    n_samples: int
    reg_min: float
    passed: bool


def check_domain(patch: SurfacePatch, u: float, v: float, slack: float = 1e-9) -> None:
    (u0, u1), (v0, v1) = patch.domain
    if not (u0 - slack <= u <= u1 + slack and v0 - slack <= v <= v1 + slack):
        raise DomainError(
            f"({u}, {v}) outside domain of patch '{patch.name}' "
            f"[{u0}, {u1}] x [{v0}, {v1}]"
        )


def _fd_stencil_in_domain(patch: SurfacePatch, u: float, v: float, h: float) -> None:
    # numeric partials sample u +- 2h and v +- 2h
    check_domain(patch, u - 2 * h, v)
    check_domain(patch, u + 2 * h, v)
    check_domain(patch, u, v - 2 * h)
    check_domain(patch, u, v + 2 * h)


def partials(patch: SurfacePatch, u: float, v: float,
             policy: TolerancePolicy = DEFAULT_POLICY) -> tuple[Vec3, Vec3]:
    """(phi_u, phi_v), analytic when the patch provides them else 5-point stencils."""
    check_domain(patch, u, v)
    if patch.has_analytic_partials:
        return patch.d_u(u, v), patch.d_v(u, v)
    h = policy.h_fd
    _fd_stencil_in_domain(patch, u, v, h)
    pu = diff(lambda t: patch.eval(t, v), u, 1, h)
    pv = diff(lambda t: patch.eval(u, t), v, 1, h)
    return pu, pv


def second_partials(patch: SurfacePatch, u: float, v: float,
                    policy: TolerancePolicy = DEFAULT_POLICY) -> tuple[Vec3, Vec3, Vec3]:
    """(phi_uu, phi_uv, phi_vv) with the same analytic-else-stencil policy."""
    check_domain(patch, u, v)
    if patch.d_uu is not None and patch.d_uv is not None and patch.d_vv is not None:
        return patch.d_uu(u, v), patch.d_uv(u, v), patch.d_vv(u, v)
    h = policy.h_fd
    _fd_stencil_in_domain(patch, u, v, h)
    if patch.has_analytic_partials:
        # first-order stencils on analytic first partials keep O(h^4) accuracy
        puu = diff(lambda t: patch.d_u(t, v), u, 1, h)
        puv = diff(lambda t: patch.d_u(u, t), v, 1, h)
        pvv = diff(lambda t: patch.d_v(u, t), v, 1, h)
        return puu, puv, pvv
    puu = diff(lambda t: patch.eval(t, v), u, 2, h)
    pvv = diff(lambda t: patch.eval(u, t), v, 2, h)
    puv = (patch.eval(u + h, v + h) - patch.eval(u + h, v - h)
           - patch.eval(u - h, v + h) + patch.eval(u - h, v - h)) / (4 * h * h)
    return puu, puv, pvv


def first_form(patch: SurfacePatch, u: float, v: float,
               policy: TolerancePolicy = DEFAULT_POLICY) -> FundamentalForm:
    pu, pv = partials(patch, u, v, policy)
    return FundamentalForm(E=dot(pu, pu), F=dot(pu, pv), G=dot(pv, pv))


def unit_normal(patch: SurfacePatch, u: float, v: float,
                policy: TolerancePolicy = DEFAULT_POLICY) -> Vec3:
    """phi_u x phi_v normalized; orientation is never flipped."""
    pu, pv = partials(patch, u, v, policy)
    n = cross(pu, pv)
    w2 = dot(n, n)  # equals EG - F^2 by the Lagrange identity
    if w2 < policy.reg_min:
        raise DegeneratePatchError(
            f"patch '{patch.name}' degenerate at ({u}, {v}): EG - F^2 = {w2:.3e}"
        )
    return n / np.sqrt(w2)


def uniform_grid(domain: Domain, n_u: int, n_v: Optional[int] = None
                 ) -> tuple[np.ndarray, np.ndarray]:
    (u0, u1), (v0, v1) = domain
    if n_v is None:
        n_v = n_u
    return np.linspace(u0, u1, n_u), np.linspace(v0, v1, n_v)


def regularity_report(patch: SurfacePatch, grid: int | tuple[np.ndarray, np.ndarray] = 33,
                      policy: TolerancePolicy = DEFAULT_POLICY) -> RegularityReport:
    """Minimum of EG - F^2 over a tensor grid, with the minimizer's location."""
    us, vs = uniform_grid(patch.domain, grid) if isinstance(grid, int) else grid
    best = np.inf
    arg = (float(us[0]), float(vs[0]))
    for u in us:
        for v in vs:
            d = first_form(patch, float(u), float(v), policy).det
            if d < best:
                best, arg = d, (float(u), float(v))
    return RegularityReport(
        patch_name=patch.name,
        min_det=float(best),
        argmin=arg,
        n_samples=len(us) * len(vs),
        reg_min=policy.reg_min,
        passed=bool(best >= policy.reg_min),
    )


def _polynomial_surface(coeffs: Sequence[Sequence[float]]):
    """Graph-height polynomial f(u,v) = sum c[i][j] u^i v^j with partials."""
    c = [list(map(float, row)) for row in coeffs]

    def f(u: float, v: float) -> float:
        return sum(cij * u ** i * v ** j for i, row in enumerate(c) for j, cij in enumerate(row))

    def fu(u: float, v: float) -> float:
        return sum(i * cij * u ** (i - 1) * v ** j
                   for i, row in enumerate(c) for j, cij in enumerate(row) if i > 0)

    def fv(u: float, v: float) -> float:
        return sum(j * cij * u ** i * v ** (j - 1)
                   for i, row in enumerate(c) for j, cij in enumerate(row) if j > 0)

    def fuu(u: float, v: float) -> float:
        return sum(i * (i - 1) * cij * u ** (i - 2) * v ** j
                   for i, row in enumerate(c) for j, cij in enumerate(row) if i > 1)

    def fuv(u: float, v: float) -> float:
        return sum(i * j * cij * u ** (i - 1) * v ** (j - 1)
                   for i, row in enumerate(c) for j, cij in enumerate(row) if i > 0 and j > 0)

    def fvv(u: float, v: float) -> float:
        return sum(j * (j - 1) * cij * u ** i * v ** (j - 2)
                   for i, row in enumerate(c) for j, cij in enumerate(row) if j > 1)

    return f, fu, fv, fuu, fuv, fvv


def catalog(name: str, params: Sequence = ()) -> SurfacePatch:
    """Named classical patches with analytic partials and documented domains.

    plane []                 (u, v, 0)
    cylinder [r]             (r cos u, r sin u, v), r > 0
    cone [v_min, v_max]      (v cos u, v sin u, v); default domain excludes the apex
    sphere [r]               (r cos u cos v, r sin u cos v, r sin v), poles excluded
    helicoid []              (sinh v cos u, sinh v sin u, u)
    catenoid []              (cosh v cos u, cosh v sin u, v)
    monge [coeffs]           (u, v, f(u,v)) for a polynomial coefficient table
    """
    params = list(params)
    if name == "plane":
        return SurfacePatch(
            name="plane",
            eval=lambda u, v: vec3(u, v, 0.0),
            domain=((-6.0, 6.0), (-6.0, 6.0)),
            d_u=lambda u, v: vec3(1.0, 0.0, 0.0),
            d_v=lambda u, v: vec3(0.0, 1.0, 0.0),
            d_uu=lambda u, v: vec3(0.0, 0.0, 0.0),
            d_uv=lambda u, v: vec3(0.0, 0.0, 0.0),
            d_vv=lambda u, v: vec3(0.0, 0.0, 0.0),
        )
    if name == "cylinder":
        r = float(params[0]) if params else 1.0
        if r <= 0.0:
            raise ValueError("cylinder radius must be positive")
        return SurfacePatch(
            name=f"cylinder(r={r:g})",
            eval=lambda u, v: vec3(r * np.cos(u), r * np.sin(u), v),
            domain=((-np.pi, np.pi), (-6.0, 6.0)),
            d_u=lambda u, v: vec3(-r * np.sin(u), r * np.cos(u), 0.0),
            d_v=lambda u, v: vec3(0.0, 0.0, 1.0),
            d_uu=lambda u, v: vec3(-r * np.cos(u), -r * np.sin(u), 0.0),
            d_uv=lambda u, v: vec3(0.0, 0.0, 0.0),
            d_vv=lambda u, v: vec3(0.0, 0.0, 0.0),
        )
    if name == "cone":
        v_min = float(params[0]) if len(params) > 0 else 0.1
        v_max = float(params[1]) if len(params) > 1 else 3.0
        if v_max <= v_min:
            raise ValueError("cone requires v_min < v_max")
        return SurfacePatch(
            name="cone",
            eval=lambda u, v: vec3(v * np.cos(u), v * np.sin(u), v),
            domain=((-np.pi, np.pi), (v_min, v_max)),
            d_u=lambda u, v: vec3(-v * np.sin(u), v * np.cos(u), 0.0),
            d_v=lambda u, v: vec3(np.cos(u), np.sin(u), 1.0),
            d_uu=lambda u, v: vec3(-v * np.cos(u), -v * np.sin(u), 0.0),
            d_uv=lambda u, v: vec3(-np.sin(u), np.cos(u), 0.0),
            d_vv=lambda u, v: vec3(0.0, 0.0, 0.0),
        )
    if name == "sphere":
        r = float(params[0]) if params else 1.0
        if r <= 0.0:
            raise ValueError("sphere radius must be positive")
        return SurfacePatch(
            name=f"sphere(r={r:g})",
            eval=lambda u, v: vec3(r * np.cos(u) * np.cos(v),
                                   r * np.sin(u) * np.cos(v),
                                   r * np.sin(v)),
            domain=((-np.pi, np.pi), (-1.2, 1.2)),
            d_u=lambda u, v: vec3(-r * np.sin(u) * np.cos(v),
                                  r * np.cos(u) * np.cos(v), 0.0),
            d_v=lambda u, v: vec3(-r * np.cos(u) * np.sin(v),
                                  -r * np.sin(u) * np.sin(v),
                                  r * np.cos(v)),
            d_uu=lambda u, v: vec3(-r * np.cos(u) * np.cos(v),
                                   -r * np.sin(u) * np.cos(v), 0.0),
            d_uv=lambda u, v: vec3(r * np.sin(u) * np.sin(v),
                                   -r * np.cos(u) * np.sin(v), 0.0),
            d_vv=lambda u, v: vec3(-r * np.cos(u) * np.cos(v),
                                   -r * np.sin(u) * np.cos(v),
                                   -r * np.sin(v)),
        )
    if name == "helicoid":
        return SurfacePatch(
            name="helicoid",
            eval=lambda u, v: vec3(np.sinh(v) * np.cos(u), np.sinh(v) * np.sin(u), u),
            domain=((-3.0, 3.0), (-2.0, 2.0)),
            d_u=lambda u, v: vec3(-np.sinh(v) * np.sin(u), np.sinh(v) * np.cos(u), 1.0),
            d_v=lambda u, v: vec3(np.cosh(v) * np.cos(u), np.cosh(v) * np.sin(u), 0.0),
            d_uu=lambda u, v: vec3(-np.sinh(v) * np.cos(u), -np.sinh(v) * np.sin(u), 0.0),
            d_uv=lambda u, v: vec3(-np.cosh(v) * np.sin(u), np.cosh(v) * np.cos(u), 0.0),
            d_vv=lambda u, v: vec3(np.sinh(v) * np.cos(u), np.sinh(v) * np.sin(u), 0.0),
        )
    if name == "catenoid":
        return SurfacePatch(
            name="catenoid",
            eval=lambda u, v: vec3(np.cosh(v) * np.cos(u), np.cosh(v) * np.sin(u), v),
            domain=((-np.pi, np.pi), (-2.0, 2.0)),
            d_u=lambda u, v: vec3(-np.cosh(v) * np.sin(u), np.cosh(v) * np.cos(u), 0.0),
            d_v=lambda u, v: vec3(np.sinh(v) * np.cos(u), np.sinh(v) * np.sin(u), 1.0),
            d_uu=lambda u, v: vec3(-np.cosh(v) * np.cos(u), -np.cosh(v) * np.sin(u), 0.0),
            d_uv=lambda u, v: vec3(-np.sinh(v) * np.sin(u), np.sinh(v) * np.cos(u), 0.0),
            d_vv=lambda u, v: vec3(np.cosh(v) * np.cos(u), np.cosh(v) * np.sin(u), 0.0),
        )
    if name == "monge":
        if not params:
            raise ValueError("monge requires a height function or coefficient table")
        height = params[0]
        if callable(height):
            f = height
            return SurfacePatch(
                name="monge",
                eval=lambda u, v: vec3(u, v, f(u, v)),
                domain=((-2.0, 2.0), (-2.0, 2.0)),
            )
        f, fu, fv, fuu, fuv, fvv = _polynomial_surface(height)
        return SurfacePatch(
            name="monge",
            eval=lambda u, v: vec3(u, v, f(u, v)),
            domain=((-2.0, 2.0), (-2.0, 2.0)),
            d_u=lambda u, v: vec3(1.0, 0.0, fu(u, v)),
            d_v=lambda u, v: vec3(0.0, 1.0, fv(u, v)),
            d_uu=lambda u, v: vec3(0.0, 0.0, fuu(u, v)),
            d_uv=lambda u, v: vec3(0.0, 0.0, fuv(u, v)),
            d_vv=lambda u, v: vec3(0.0, 0.0, fvv(u, v)),
        )
    raise ValueError(f"unknown catalog surface '{name}'")


CATALOG_NAMES = ("plane", "cylinder", "cone", "sphere", "helicoid", "catenoid", "monge")
