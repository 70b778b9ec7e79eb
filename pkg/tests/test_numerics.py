import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darbouxkit import (
    TolerancePolicy,
    ToolkitError,
    ConfigError,
    CurvatureDegenerateError,
    DomainError,
    cross,
    diff,
    dot,
    norm,
    normalize,
    vec3,
)

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


def test_vec3_shape_and_ops():
    a = vec3(1.0, 2.0, 3.0)
    b = vec3(-1.0, 0.5, 2.0)
    assert a.shape == (3,)
    assert dot(a, b) == pytest.approx(1.0 - 1.0 + 6.0 + 0.0, abs=1e-15)
    assert norm(normalize(a)) == pytest.approx(1.0, abs=1e-15)


@given(st.tuples(finite, finite, finite), st.tuples(finite, finite, finite))
@settings(max_examples=30, deadline=None)
def test_cross_orthogonality_and_lagrange(ta, tb):
    a, b = vec3(*ta), vec3(*tb)
    c = cross(a, b)
    assert abs(dot(a, c)) <= 1e-12 * (1 + norm(a) ** 2 * norm(b))
    lhs = dot(c, c)
    rhs = dot(a, a) * dot(b, b) - dot(a, b) ** 2
    assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))


def test_diff_first_order_on_cubic():
    f = lambda s: vec3(s ** 3, np.sin(s), 1.0)
    d = diff(f, 0.4, 1, 1e-4)
    assert d[0] == pytest.approx(3 * 0.4 ** 2, abs=1e-10)
    assert d[1] == pytest.approx(np.cos(0.4), abs=1e-10)
    assert d[2] == pytest.approx(0.0, abs=1e-12)


def test_diff_second_and_third_order():
    f = lambda s: vec3(np.exp(s), 0.0, 0.0)
    assert diff(f, 0.2, 2, 1.5e-3)[0] == pytest.approx(np.exp(0.2), abs=1e-8)
    # the third-order stencil is O(h^2): truncation ~ h^2 f^(5) / 4
    assert diff(f, 0.2, 3, 1e-2)[0] == pytest.approx(np.exp(0.2), abs=1e-4)


def test_diff_rejects_unknown_order():
    with pytest.raises(ValueError):
        diff(lambda s: vec3(s, 0, 0), 0.0, 4, 1e-4)


@given(st.integers(min_value=0, max_value=3),
       st.lists(finite, min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_diff_exact_on_low_degree_polynomials(order, coeffs):
    # the stencils are exact (up to roundoff) on polynomials within their order
    if order == 0:
        return
    c0, c1, c2, c3 = coeffs

    def f(s):
        return vec3(c0 + c1 * s + c2 * s * s + c3 * s ** 3, 0.0, 0.0)

    truth = {1: c1, 2: 2 * c2, 3: 6 * c3}[order]
    if order == 1:
        truth = c1  # derivative at 0
    got = diff(f, 0.0, order, {1: 1e-4, 2: 1.5e-3, 3: 1e-2}[order])[0]
    scale = 1.0 + sum(abs(c) for c in coeffs)
    assert abs(got - truth) <= {1: 1e-8, 2: 1e-6, 3: 1e-5}[order] * scale


def test_policy_validation():
    with pytest.raises(ValueError):
        TolerancePolicy(tol_alg=-1.0)
    with pytest.raises(ValueError):
        TolerancePolicy(tol_alg=1e-3, tol_fd=1e-6)
    p = TolerancePolicy(tol_thm=1e-7)
    assert p.tol_thm == 1e-7


def test_error_hierarchy():
    assert issubclass(DomainError, ToolkitError)
    assert issubclass(CurvatureDegenerateError, ToolkitError)
    assert issubclass(ConfigError, ToolkitError)
