"""Point-interaction model: Weyl function, trace maps, closed forms."""

import cmath
import math

import numpy as np
import pytest

import kreinext as kx
from kreinext.pointint import sqrt_upper

R_PLUS = -0.042893218813452476
R_MINUS = -1.4571067811865475


def test_m_free_reference_values():
    assert abs(kx.m_free(-1.0) + 2.0) < 1e-15
    assert abs(kx.m_free(-0.25) + 1.0) < 1e-15
    expect = complex(-math.sqrt(2), math.sqrt(2))
    assert abs(kx.m_free(1j) - expect) < 1e-15


def test_m_free_branch():
    rng = np.random.default_rng(83)
    for _ in range(400):
        mu = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if mu.imag == 0:
            continue
        tau = sqrt_upper(mu)
        assert tau.imag > 0
        assert abs(tau * tau - mu) < 1e-12 * (1 + abs(mu))


def test_m_free_nevanlinna_sampled():
    # 20x20 grid on the upper half-plane
    for re in np.linspace(-10, 10, 20):
        for im in np.linspace(0.05, 10, 20):
            mu = complex(re, im)
            m = kx.m_free(mu)
            assert m.imag > 0
            assert abs(kx.m_free(mu.conjugate()) - m.conjugate()) < 1e-13


def test_weyl_interface():
    weyl = kx.PointInteractionWeyl()
    assert weyl.real_intervals == ((-math.inf, 0.0),)
    assert weyl.contains_real(-3.0)
    assert not weyl.contains_real(1.0)
    assert abs(weyl.boundary_eval(-4.0) + 4.0) < 1e-15
    with pytest.raises(kx.DomainError):
        weyl.boundary_eval(0.0)
    with pytest.raises(kx.DomainError):
        weyl.boundary_eval(2.5)
    # closed-form inverse round trip on the left half-plane
    rng = np.random.default_rng(89)
    for _ in range(100):
        val = complex(rng.uniform(-10, -0.01), rng.uniform(-10, 10))
        mu = weyl.invert(val)
        assert abs(weyl.eval(mu) - val) < 1e-10 * (1 + abs(val))
    assert weyl.invert(complex(0.5, 1.0)) is None


def test_gamma_maps_reference():
    # even data: f(+0) = f(-0) = c, f'(+0) = -f'(-0) = d
    g0, g1 = kx.gamma_maps(kx.BoundaryData(2.0, 2.0, 3.0, -3.0))
    assert np.allclose(g0, [2.0, 0.0])
    assert np.allclose(g1, [6.0, 0.0])
    # odd data
    g0, g1 = kx.gamma_maps(kx.BoundaryData(2.0, -2.0, 3.0, 3.0))
    assert np.allclose(g0, [0.0, 2.0])
    assert np.allclose(g1, [0.0, 6.0])
    # Dirichlet traces
    g0, _ = kx.gamma_maps(kx.BoundaryData(0.0, 0.0, 1.0, 2.0))
    assert np.allclose(g0, [0.0, 0.0])


def test_gamma_matrices_invertible():
    g0, g1 = kx.gamma_matrices()
    stacked = np.vstack([g0, g1])
    assert stacked.shape == (4, 4)
    assert abs(abs(np.linalg.det(stacked)) - 1.0) < 1e-14
    # linearity: matrix application equals direct evaluation
    rng = np.random.default_rng(97)
    vec = rng.normal(size=4) + 1j * rng.normal(size=4)
    bd = kx.BoundaryData(*vec)
    a0, a1 = kx.gamma_maps(bd)
    assert np.allclose(np.concatenate([a0, a1]), stacked @ vec)


def test_boundary_data_validates():
    with pytest.raises(ValueError):
        kx.BoundaryData(math.nan, 0, 0, 0)


def test_closed_form_reference_points():
    rep = kx.closed_form_eigenvalues(kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0))
    rs = [h.r for h in rep.eigenvalues]
    assert abs(rs[0] - R_MINUS) < 1e-12 and abs(rs[1] - R_PLUS) < 1e-12
    assert rep.method == "closed_form"

    rep = kx.closed_form_eigenvalues(kx.ExtParams(0.0, math.pi / 2, 0.0, 0.0))
    assert len(rep.eigenvalues) == 1
    assert rep.eigenvalues[0].multiplicity == 2
    assert abs(rep.eigenvalues[0].r + 0.25) < 1e-10

    rep = kx.closed_form_eigenvalues(kx.ExtParams(0.0, math.pi / 2, math.pi / 2, 0.0))
    assert rep.eigenvalues == ()

    with pytest.raises(kx.StabilityError):
        kx.closed_form_eigenvalues(kx.ExtParams(1.0, math.pi / 3, 0.0, 0.0))


def test_closed_form_eigenvalues_negative_and_residuals():
    rng = np.random.default_rng(101)
    weyl = kx.PointInteractionWeyl()
    count = 0
    while count < 200:
        z = rng.uniform(-2, 2)
        ph = rng.uniform(0, math.pi)
        if not abs(math.tanh(z)) < 0.99 * abs(math.cos(ph)):
            continue
        count += 1
        p = kx.ExtParams(z, ph, rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        rep = kx.closed_form_eigenvalues(p)
        for h in rep.eigenvalues:
            assert h.r < 0
            assert h.residual < 1e-10
            assert h.multiplicity in (1, 2)
        # agreement with the scanning solver
        scan = kx.find_discrete_spectrum(
            weyl, p, kx.SolverOptions(interval=(-200.0, -1e-10))
        )
        in_window = [h for h in rep.eigenvalues if -200.0 <= h.r <= -1e-10]
        assert len(in_window) == len(scan.eigenvalues)
        for a, b in zip(in_window, scan.eigenvalues):
            assert abs(a.r - b.r) < 1e-10
            assert a.multiplicity == b.multiplicity


def test_closed_form_channel_tags_match_condition():
    p = kx.ExtParams(0.3, 0.2, 0.9, 2.0)
    plus, minus = kx.channel_conditions(p)
    rep = kx.closed_form_eigenvalues(p)
    weyl = kx.PointInteractionWeyl()
    for h in rep.eigenvalues:
        cond = {"plus": plus, "minus": minus}.get(h.channel)
        if cond is None:  # 'both'
            continue
        assert cond.residual(weyl.boundary_eval(h.r)) < 1e-12
