import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darbouxkit import (
    CATALOG_NAMES,
    DegeneratePatchError,
    DomainError,
    SurfacePatch,
    catalog,
    check_domain,
    dot,
    first_form,
    norm,
    partials,
    regularity_report,
    second_partials,
    uniform_grid,
    unit_normal,
    vec3,
)


def test_catalog_names_complete():
    assert set(CATALOG_NAMES) == {"plane", "cylinder", "cone", "sphere",
                                  "helicoid", "catenoid", "monge"}


@pytest.mark.parametrize("name", ["plane", "cylinder", "cone", "sphere",
                                  "helicoid", "catenoid"])
def test_first_form_positive_definite(name):
    patch = catalog(name)
    us, vs = uniform_grid(patch.domain, 7)
    for u in us:
        for v in vs:
            ff = first_form(patch, float(u), float(v))
            assert ff.E > 0 and ff.G > 0
            assert ff.det > 0


@pytest.mark.parametrize("name", ["cylinder", "cone", "sphere", "helicoid"])
def test_unit_normal_properties(name):
    patch = catalog(name)
    us, vs = uniform_grid(patch.domain, 5)
    for u in us:
        for v in vs:
            u, v = float(u), float(v)
            U = unit_normal(patch, u, v)
            pu, pv = partials(patch, u, v)
            assert norm(U) == pytest.approx(1.0, abs=1e-12)
            assert abs(dot(U, pu)) <= 1e-9 * (1 + norm(pu))
            assert abs(dot(U, pv)) <= 1e-9 * (1 + norm(pv))


def test_fd_partials_match_analytic():
    analytic = catalog("sphere")
    stripped = SurfacePatch(name="sphere-fd", eval=analytic.eval,
                            domain=analytic.domain)
    assert not stripped.has_analytic_partials
    for u, v in ((0.3, 0.4), (-1.0, 0.9), (2.0, -0.7)):
        pu_a, pv_a = partials(analytic, u, v)
        pu_f, pv_f = partials(stripped, u, v)
        assert np.max(np.abs(pu_a - pu_f)) <= 1e-8
        assert np.max(np.abs(pv_a - pv_f)) <= 1e-8
        for da, df in zip(second_partials(analytic, u, v),
                          second_partials(stripped, u, v)):
            assert np.max(np.abs(da - df)) <= 1e-5


def test_monge_polynomial_partials():
    # z = u^2 - 1.5 u v + 0.5 v^3, as a coefficient table c[i][j] u^i v^j
    coeffs = [[0.0, 0.0, 0.0, 0.5],
              [0.0, -1.5, 0.0, 0.0],
              [1.0, 0.0, 0.0, 0.0]]
    patch = catalog("monge", [coeffs])
    u, v = 0.7, -0.4
    pu, pv = partials(patch, u, v)
    assert pu[2] == pytest.approx(2 * u - 1.5 * v, abs=1e-12)
    assert pv[2] == pytest.approx(-1.5 * u + 1.5 * v * v, abs=1e-12)
    puu, puv, pvv = second_partials(patch, u, v)
    assert puu[2] == pytest.approx(2.0, abs=1e-12)
    assert puv[2] == pytest.approx(-1.5, abs=1e-12)
    assert pvv[2] == pytest.approx(3.0 * v, abs=1e-12)


def test_check_domain_raises():
    patch = catalog("cone")
    with pytest.raises(DomainError):
        check_domain(patch, 0.0, 100.0)
    with pytest.raises(DomainError):
        partials(patch, 10.0, 1.0)


def test_degenerate_patch_detected():
    flat = SurfacePatch(name="collapsed",
                        eval=lambda u, v: vec3(u + v, u + v, 0.0),
                        domain=((-1.0, 1.0), (-1.0, 1.0)))
    with pytest.raises(DegeneratePatchError):
        unit_normal(flat, 0.1, 0.2)


def test_regularity_report():
    rep = regularity_report(catalog("sphere"), 9)
    assert rep.passed
    assert rep.min_det > 0
    collapsed = SurfacePatch(name="collapsed",
                             eval=lambda u, v: vec3(u + v, u + v, 0.0),
                             domain=((-1.0, 1.0), (-1.0, 1.0)))
    # interior grid: the numeric-partial stencil needs room inside the domain
    inner = (np.linspace(-0.9, 0.9, 5), np.linspace(-0.9, 0.9, 5))
    rep2 = regularity_report(collapsed, inner)
    assert not rep2.passed


@given(st.floats(min_value=-2.5, max_value=2.5),
       st.floats(min_value=-1.0, max_value=1.0))
@settings(max_examples=25, deadline=None)
def test_sphere_first_form_closed_form(u, v):
    ff = first_form(catalog("sphere"), u, v)
    assert ff.E == pytest.approx(np.cos(v) ** 2, abs=1e-12)
    assert ff.F == pytest.approx(0.0, abs=1e-12)
    assert ff.G == pytest.approx(1.0, abs=1e-12)


def test_unknown_catalog_name():
    with pytest.raises(ValueError):
        catalog("torus")
