"""Weyl interface, channel conditions, determinant criterion, kernel."""

import math

import numpy as np
import pytest

import kreinext as kx

TAN8 = math.tan(math.pi / 8)  # 0.41421356...
R_PLUS = -0.042893218813452476
R_MINUS = -1.4571067811865475

# nonreal spectrum of the unstable probe point (1, pi/3, 0, 0)
PROBE_MU = complex(-0.029982894409350713, 0.24819553993341162)


def _stable_params(rng, n):
    out = []
    while len(out) < n:
        z = rng.uniform(-2, 2)
        ph = rng.uniform(0, math.pi)
        if abs(math.tanh(z)) < 0.99 * abs(math.cos(ph)):
            out.append(kx.ExtParams(z, ph, rng.uniform(0, 2 * math.pi),
                                    rng.uniform(0, 2 * math.pi)))
    return out


def test_channel_conditions_reference():
    plus, minus = kx.channel_conditions(kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0))
    assert abs(plus.a / plus.b - TAN8) < 1e-14
    assert abs(minus.a / minus.b - (1.0 / TAN8)) < 1e-12  # encodes m(r) = cot(-pi/8)
    assert abs(math.hypot(plus.a, plus.b) - 1.0) < 1e-14
    assert not plus.coincides(minus)

    # Upsilon: both channels carry the same condition
    plus, minus = kx.channel_conditions(kx.ExtParams(0.0, math.pi / 2, 0.0, 0.0))
    assert plus.coincides(minus)
    assert abs(plus.a / plus.b - 1.0) < 1e-12  # tan(pi/4)

    # reference extension: pole position, b = 0 within tolerance
    plus, minus = kx.channel_conditions(
        kx.ExtParams(0.0, math.pi / 2, math.pi / 2, 0.0)
    )
    assert abs(plus.b) < 1e-12 and abs(plus.a) > 0.99


def test_channel_conditions_require_stability():
    with pytest.raises(kx.StabilityError):
        kx.channel_conditions(kx.ExtParams(1.0, math.pi / 3, 0.0, 0.0))


def test_channel_sign_normalization():
    rng = np.random.default_rng(67)
    for p in _stable_params(rng, 100):
        for cond in kx.channel_conditions(p):
            assert abs(math.hypot(cond.a, cond.b) - 1.0) < 1e-12
            if abs(cond.a) > 1e-12:
                assert cond.a > 0
            else:
                assert cond.b > 0


def test_find_discrete_spectrum_model_reference():
    weyl = kx.PointInteractionWeyl()
    rep = kx.find_discrete_spectrum(
        weyl, kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0),
        kx.SolverOptions(interval=(-10.0, -1e-6)),
    )
    assert [h.channel for h in rep.eigenvalues] == ["minus", "plus"]
    assert abs(rep.eigenvalues[0].r - R_MINUS) < 1e-10
    assert abs(rep.eigenvalues[1].r - R_PLUS) < 1e-10
    assert all(h.residual < 1e-10 for h in rep.eigenvalues)
    assert rep.method == "bisection"

    rep = kx.find_discrete_spectrum(
        weyl, kx.ExtParams(0.0, math.pi / 2, 0.0, 0.0),
        kx.SolverOptions(interval=(-10.0, -1e-6)),
    )
    assert len(rep.eigenvalues) == 1
    assert rep.eigenvalues[0].multiplicity == 2
    assert rep.eigenvalues[0].channel == "both"
    assert abs(rep.eigenvalues[0].r + 0.25) < 1e-10

    rep = kx.find_discrete_spectrum(
        weyl, kx.ExtParams(0.0, math.pi / 2, math.pi / 2, 0.0),
        kx.SolverOptions(interval=(-10.0, -1e-6)),
    )
    assert rep.eigenvalues == ()


def test_find_discrete_spectrum_validates():
    weyl = kx.PointInteractionWeyl()
    with pytest.raises(kx.StabilityError):
        kx.find_discrete_spectrum(weyl, kx.ExtParams(1.0, math.pi / 3, 0, 0))
    with pytest.raises(kx.DomainError):
        kx.find_discrete_spectrum(
            weyl, kx.ExtParams(0.0, math.pi / 4, 0, 0),
            kx.SolverOptions(interval=(-1.0, 1.0)),  # crosses into [0, inf)
        )


def test_spectrum_independent_of_omega():
    weyl = kx.PointInteractionWeyl()
    reports = [
        kx.find_discrete_spectrum(
            weyl, kx.ExtParams(0.4, 1.0, 0.9, om),
            kx.SolverOptions(interval=(-10.0, -1e-9)),
        )
        for om in (0.0, math.pi / 3, math.pi, 5.0)
    ]
    ref = reports[0]
    assert len(ref.eigenvalues) > 0
    for rep in reports[1:]:
        assert len(rep.eigenvalues) == len(ref.eigenvalues)
        for a, b in zip(rep.eigenvalues, ref.eigenvalues):
            assert abs(a.r - b.r) < 1e-10
            assert a.multiplicity == b.multiplicity


def test_adjoint_parameters_share_spectrum():
    weyl = kx.PointInteractionWeyl()
    rng = np.random.default_rng(71)
    for p in _stable_params(rng, 20):
        a = kx.find_discrete_spectrum(weyl, p, kx.SolverOptions(interval=(-30.0, -1e-9)))
        b = kx.find_discrete_spectrum(
            weyl, kx.adjoint_params(p), kx.SolverOptions(interval=(-30.0, -1e-9))
        )
        assert len(a.eigenvalues) == len(b.eigenvalues)
        for x, y in zip(a.eigenvalues, b.eigenvalues):
            assert abs(x.r - y.r) < 1e-10


def test_det_condition_reference():
    weyl = kx.PointInteractionWeyl()
    p = kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0)
    rp = kx.cayley_to_relation(kx.build_k(p))
    assert abs(kx.det_condition(weyl, rp, R_PLUS)) < 1e-8
    assert abs(kx.det_condition(weyl, rp, R_MINUS)) < 1e-8
    assert abs(kx.det_condition(weyl, rp, complex(1.0, 1.0))) > 1e-3

    # K = -I gives the zero relation: graph normalizes to (I, 0), det = m^2
    rp0 = kx.cayley_to_relation(-np.eye(2, dtype=complex))
    val = kx.det_condition(weyl, rp0, -0.25)
    m = weyl.boundary_eval(-0.25)
    assert abs(abs(val) - abs(m) ** 2) < 1e-12

    with pytest.raises(kx.DomainError):
        kx.det_condition(weyl, rp, 2.0)  # on the essential spectrum


def test_root_set_equivalence_random():
    weyl = kx.PointInteractionWeyl()
    rng = np.random.default_rng(73)
    for p in _stable_params(rng, 15):
        rep = kx.find_discrete_spectrum(
            weyl, p, kx.SolverOptions(interval=(-50.0, -1e-9))
        )
        rp = kx.cayley_to_relation(kx.build_k(p))
        for h in rep.eigenvalues:
            assert abs(kx.det_condition(weyl, rp, h.r)) < 1e-8


def test_nonreal_probe_unstable():
    weyl = kx.PointInteractionWeyl()
    p = kx.ExtParams(1.0, math.pi / 3, 0.0, 0.0)
    rp = kx.cayley_to_relation(kx.build_k(p))
    roots = kx.nonreal_spectrum_probe(weyl, p, rp, im_floor=1e-6)
    assert len(roots) == 2
    assert {round(z.imag, 6) > 0 for z in roots} == {True, False}  # conjugate pair
    for z in roots:
        assert min(abs(z - PROBE_MU), abs(z - PROBE_MU.conjugate())) < 1e-12
        assert abs(kx.det_condition(weyl, rp, z)) < 1e-10


def test_nonreal_probe_stable_and_upsilon_empty():
    weyl = kx.PointInteractionWeyl()
    for p in (
        kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0),
        kx.ExtParams(0.0, math.pi / 2, 0.0, 0.0),
    ):
        rp = kx.cayley_to_relation(kx.build_k(p))
        assert kx.nonreal_spectrum_probe(weyl, p, rp) == []


def test_nonreal_probe_grid_fallback():
    # expression model has no closed-form inverse: exercise the grid search
    weyl = kx.parse_weyl_expression("2*i*sqrt(mu)")
    p = kx.ExtParams(1.0, math.pi / 3, 0.0, 0.0)
    rp = kx.cayley_to_relation(kx.build_k(p))
    roots = kx.nonreal_spectrum_probe(
        weyl, p, rp,
        grid=kx.ProbeGrid(re_range=(-0.5, 0.5), im_range=(-0.5, 0.5), n_re=41, n_im=41),
        im_floor=1e-6,
    )
    assert len(roots) == 2
    for z in roots:
        assert min(abs(z - PROBE_MU), abs(z - PROBE_MU.conjugate())) < 1e-8


def test_kernel_gram_reference():
    weyl = kx.PointInteractionWeyl()
    g, w0 = kx.kernel_gram(weyl, [1j])
    assert abs(g[0, 0] - math.sqrt(2)) < 1e-12
    assert abs(w0 - math.sqrt(2)) < 1e-12

    g, w0 = kx.kernel_gram(weyl, [1j, 2j])
    assert g.shape == (2, 2)
    assert w0 >= -1e-10


def test_kernel_gram_psd_random():
    weyl = kx.PointInteractionWeyl()
    rng = np.random.default_rng(79)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        pts = [complex(rng.uniform(-5, 5), rng.uniform(0.05, 5)) for _ in range(n)]
        _, w0 = kx.kernel_gram(weyl, pts)
        assert w0 >= -1e-10


def test_kernel_gram_validates():
    weyl = kx.PointInteractionWeyl()
    with pytest.raises(kx.DomainError):
        kx.kernel_gram(weyl, [1.0])  # real point
    with pytest.raises(kx.DomainError):
        kx.kernel_gram(weyl, [1 + 1j, 1 - 1j])  # coincident conjugate pair
    with pytest.raises(ValueError):
        kx.kernel_gram(weyl, [])


def test_report_json_shape():
    weyl = kx.PointInteractionWeyl()
    rep = kx.find_discrete_spectrum(
        weyl, kx.ExtParams(0.0, math.pi / 4, 0.0, 0.0),
        kx.SolverOptions(interval=(-10.0, -1e-6)),
    )
    d = rep.to_json_dict()
    assert set(d) == {"eigenvalues", "interval", "method"}
    assert d["method"] == "bisection"
    assert set(d["eigenvalues"][0]) == {"r", "mult", "channel", "residual"}
