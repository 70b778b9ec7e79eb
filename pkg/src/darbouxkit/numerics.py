"""Scalar/vector primitives, derivative stencils, and the global tolerance policy.

Vectors are numpy arrays of shape (3,), dtype float64. All operations here are
pure; geometric modules build on them without holding shared state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

Vec3 = np.ndarray


class ToolkitError(Exception):
    """Base class for structured toolkit errors."""


class DomainError(ToolkitError):
    """Evaluation outside a declared parameter domain (point or stencil)."""


class DegeneratePatchError(ToolkitError):
    """EG - F^2 below reg_min: the chart is not regular at this point."""


class CurvatureDegenerateError(ToolkitError):
    """kappa below kappa_min: the Frenet frame is undefined here."""


class NonRectifyingError(ToolkitError):
    """A closed form that presumes a rectifying sample was fed a non-rectifying one."""


class ClassMismatchError(ToolkitError):
    """Requested curve-class branch disagrees with the curvatures at the sample."""


class NotIsometricError(ToolkitError):
    """Operation requires a metric-preserving pair and the gate failed."""


class IdentityDeviationError(ToolkitError):
    """Cross-checked closed form deviated from the direct computation."""


class FixtureError(ToolkitError):
    """Fixture generator rejected its parameters (degenerate construction)."""


class ConfigError(ToolkitError):
    """Invalid run configuration."""


def vec3(x: float, y: float, z: float) -> Vec3:
    return np.array([x, y, z], dtype=float)


def dot(a: Vec3, b: Vec3) -> float:
    return float(np.dot(a, b))


def cross(a: Vec3, b: Vec3) -> Vec3:
    return np.cross(a, b)


def norm(a: Vec3) -> float:
    return float(np.linalg.norm(a))


def normalize(a: Vec3) -> Vec3:
    n = np.linalg.norm(a)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return a / n


def diff(f: Callable[[float], Vec3], s: float, order: int, h: float) -> Vec3:
    """Central-stencil derivative estimate of a curve R -> R^3.

    Orders 1 and 2 use 5-point stencils (error O(h^4)); order 3 uses the
    4-point antisymmetric stencil (error O(h^2)). The stencil spans
    [s - 2h, s + 2h]; if f raises on any node the DomainError propagates,
    signalling the caller to shrink h or clip the sample grid.
    """
    if h <= 0.0:
        raise ValueError("stencil step h must be positive")
    if order == 1:
        return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h)
    if order == 2:
        return (-f(s + 2 * h) + 16 * f(s + h) - 30 * f(s)
                + 16 * f(s - h) - f(s - 2 * h)) / (12 * h * h)
    if order == 3:
        return (f(s + 2 * h) - 2 * f(s + h) + 2 * f(s - h) - f(s - 2 * h)) / (2 * h ** 3)
    raise ValueError(f"unsupported derivative order {order}")


@dataclass(frozen=True)
class TolerancePolicy:
    """Tolerances shared by all geometric modules.

    tol_alg bounds algebraic identities on the analytic path, tol_fd the
    finite-difference path. Rectifying/isometry/theorem thresholds separate
    fixture-level truncation error from roundoff.
    """
    tol_alg: float = 1e-9
    tol_fd: float = 1e-5
    h_fd: float = 1e-4
    kappa_min: float = 1e-8
    reg_min: float = 1e-10
    tol_rect: float = 1e-5
    tol_iso: float = 1e-9
    tol_kg: float = 1e-6
    tol_thm: float = 1e-5
    tol_thm_fd: float = 1e-3
    tol_class: float = 1e-6

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            if getattr(self, name) <= 0.0:
                raise ValueError(f"TolerancePolicy.{name} must be strictly positive")
        if self.tol_alg > self.tol_fd:
            raise ValueError("tol_alg must not exceed tol_fd")


DEFAULT_POLICY = TolerancePolicy()
