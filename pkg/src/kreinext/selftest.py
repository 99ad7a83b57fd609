"""Runnable invariant suite (the CLI ``selftest`` command).

Each check is a standalone function returning a :class:`CheckResult`;
``run_all`` executes them in order.  The first nine are the acceptance
gates of the toolkit (fixed sample sizes, tolerances, and runtime
budgets); the remainder exercise per-module invariants at desk scale.
All randomness is seeded, so results are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .core import (
    SIGMA3,
    CsymParams,
    build_csym,
    build_r_omega,
    cayley_theta,
    factor_exponent,
    limit_transition,
    opnorm2,
    transition_from_csym,
    csym_from_transition,
)
from .extensions import (
    ExtParams,
    adjoint_params,
    build_k,
    cayley_to_relation,
    classify,
    csym_of_extension,
)
from .oracle import OracleConfig, scan_spectrum
from .pointint import PointInteractionWeyl, closed_form_eigenvalues, m_free
from .spectral import (
    SolverOptions,
    det_condition,
    find_discrete_spectrum,
    kernel_gram,
    nonreal_spectrum_probe,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float
    budget_s: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget_s is None or self.elapsed_s <= self.budget_s

    def line(self) -> str:
        status = "PASS" if (self.passed and self.within_budget) else "FAIL"
        budget = "" if self.budget_s is None else f" [{self.elapsed_s:.2f}s/{self.budget_s:.0f}s]"
        return f"{status}  {self.name}: {self.detail}{budget}"


# ---------------------------------------------------------------------------
# vectorized helpers


def _opnorm_batch(a: np.ndarray) -> np.ndarray:
    """Operator 2-norm over a (..., 2, 2) stack."""
    f2 = np.sum(np.abs(a) ** 2, axis=(-2, -1))
    det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    disc = np.maximum(f2 * f2 - 4.0 * np.abs(det) ** 2, 0.0)
    return np.sqrt(0.5 * (f2 + np.sqrt(disc)))


def _csym_batch(chi: np.ndarray, omega: np.ndarray) -> np.ndarray:
    ch, sh = np.cosh(chi), np.sinh(chi)
    out = np.empty(chi.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = ch
    out[..., 0, 1] = sh * np.exp(-1j * omega)
    out[..., 1, 0] = -sh * np.exp(1j * omega)
    out[..., 1, 1] = -ch
    return out


def _k_batch(zeta, phi, xi, omega) -> np.ndarray:
    ch, sh = np.cosh(zeta), np.sinh(zeta)
    phase = np.exp(-1j * xi)
    out = np.empty(np.broadcast(zeta, phi, xi, omega).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = -np.exp(-1j * phi) * ch
    out[..., 0, 1] = np.exp(-1j * omega) * sh
    out[..., 1, 0] = -np.exp(1j * omega) * sh
    out[..., 1, 1] = np.exp(1j * phi) * ch
    return phase[..., None, None] * out


def _random_stable(rng: np.random.Generator, n: int, slack: float = 0.99) -> list[ExtParams]:
    """Stable draws kept away from the stability boundary (bounded chi)."""
    out: list[ExtParams] = []
    while len(out) < n:
        z = rng.uniform(-2.0, 2.0)
        ph = rng.uniform(0.0, math.pi)
        if abs(math.tanh(z)) < slack * abs(math.cos(ph)):
            out.append(ExtParams(z, ph, rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI)))
    return out


def _random_unstable(
    rng: np.random.Generator, n: int, margin: float = 1e-3, phi_gap: float = 0.05
) -> list[ExtParams]:
    """Unstable draws with phi bounded away from pi/2."""
    out: list[ExtParams] = []
    while len(out) < n:
        z = rng.uniform(-2.5, 2.5)
        ph = rng.uniform(0.0, math.pi)
        if abs(ph - 0.5 * math.pi) <= phi_gap:
            continue
        if abs(math.tanh(z)) > abs(math.cos(ph)) + margin:
            out.append(ExtParams(z, ph, rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI)))
    return out


# ---------------------------------------------------------------------------
# acceptance checks 1-9


def check_algebraic_certificates() -> CheckResult:
    """1000 random draws: involution/positivity and sigma3-unitarity laws."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    n = 1000
    eye = np.eye(2, dtype=complex)

    chi = rng.uniform(-5.0, 5.0, n)
    om = rng.uniform(0.0, TWO_PI, n)
    c = _csym_batch(chi, om)
    res_inv = _opnorm_batch(c @ c - eye)
    jc = SIGMA3[None, :, :] @ c
    herm = _opnorm_batch(jc - np.conj(np.swapaxes(jc, -1, -2)))
    tr = np.real(jc[:, 0, 0] + jc[:, 1, 1])
    det = np.real(jc[:, 0, 0] * jc[:, 1, 1] - jc[:, 0, 1] * jc[:, 1, 0])
    min_eig = 0.5 * tr - np.sqrt(np.maximum(0.25 * tr * tr - det, 0.0))

    r = np.stack([build_r_omega(w) for w in om[:200]])
    anti = _opnorm_batch(SIGMA3[None] @ r + r @ SIGMA3[None])
    r_sq = _opnorm_batch(r @ r - eye)

    z = rng.uniform(-3.0, 3.0, n)
    ph = rng.uniform(0.0, math.pi, n)
    xi = rng.uniform(0.0, TWO_PI, n)
    om2 = rng.uniform(0.0, TWO_PI, n)
    k = _k_batch(z, ph, xi, om2)
    kh = np.conj(np.swapaxes(k, -1, -2))
    res_unit = _opnorm_batch(kh @ SIGMA3[None] @ k - SIGMA3[None])
    det_k = k[:, 0, 0] * k[:, 1, 1] - k[:, 0, 1] * k[:, 1, 0]
    res_det = np.abs(det_k + np.exp(-2j * xi))
    k_neg = _k_batch(-z, ph, xi, om2)
    res_adj = _opnorm_batch(SIGMA3[None] @ k @ SIGMA3[None] - k_neg)

    worst = max(
        res_inv.max(), herm.max(), anti.max(), r_sq.max(),
        res_unit.max(), res_det.max(), res_adj.max(),
    )
    ok = worst < 1e-10 and bool(np.all(min_eig > 0.0))
    return CheckResult(
        "algebraic certificates",
        ok,
        f"worst residual {worst:.2e}, min JC eigenvalue {min_eig.min():.3e} over {n} draws",
        time.perf_counter() - t0,
        budget_s=5.0,
    )


def check_stability_dichotomy() -> CheckResult:
    """80x80 (zeta, phi) grid: unimodular numeric eigenvalues iff stable."""
    t0 = time.perf_counter()
    zg = np.linspace(-2.0, 2.0, 80)
    pg = np.linspace(0.0, math.pi, 80)
    zg[np.argmin(np.abs(zg))] = 0.0  # make sure the Upsilon corner is on the grid
    pg[np.argmin(np.abs(pg - 0.5 * math.pi))] = 0.5 * math.pi
    xi, om = 0.7, 1.3
    disagreements = 0
    zz, pp = np.meshgrid(zg, pg, indexing="ij")
    k = _k_batch(zz, pp, np.full_like(zz, xi), np.full_like(zz, om))
    eigs = np.linalg.eigvals(k.reshape(-1, 2, 2))
    uni = np.all(np.abs(np.abs(eigs) - 1.0) < 1e-8, axis=1).reshape(zz.shape)
    for i in range(80):
        for j in range(80):
            stable = classify(ExtParams(zg[i], pg[j], xi, om)).is_stable
            if stable != bool(uni[i, j]):
                disagreements += 1
    return CheckResult(
        "stability dichotomy",
        disagreements == 0,
        f"{disagreements} disagreements on the 80x80 grid (Upsilon corner included)",
        time.perf_counter() - t0,
        budget_s=5.0,
    )


def check_commutant() -> CheckResult:
    """Stable p commute with their involution; unstable p with none."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(303)
    worst_stable = 0.0
    for p in _random_stable(rng, 200):
        k = build_k(p)
        c = csym_of_extension(p)
        worst_stable = max(worst_stable, opnorm2(k @ c - c @ k))

    chi_grid = np.linspace(-25.0, 25.0, 2001)
    best_unstable = math.inf
    for p in _random_unstable(rng, 200):
        k = build_k(p)
        c = _csym_batch(chi_grid, np.full_like(chi_grid, p.omega))
        comm = k[None] @ c - c @ k[None]
        best_unstable = min(best_unstable, float(_opnorm_batch(comm).min()))
    ok = worst_stable < 1e-10 and best_unstable > 1e-6
    return CheckResult(
        "commutant",
        ok,
        f"stable worst {worst_stable:.2e} (<1e-10); unstable best over dense chi scan "
        f"{best_unstable:.2e} (>1e-6)",
        time.perf_counter() - t0,
        budget_s=10.0,
    )


# reference eigenvalues of the point-interaction model
_REF_PLUS = -0.25 * math.tan(math.pi / 8.0) ** 2   # -0.042893218813452476
_REF_MINUS = -0.25 / math.tan(math.pi / 8.0) ** 2  # -1.4571067811865475


def check_model_eigenvalues() -> CheckResult:
    """Closed forms at the three reference points; scan path agrees."""
    t0 = time.perf_counter()
    weyl = PointInteractionWeyl()
    issues = []

    p = ExtParams(0.0, math.pi / 4.0, 0.0, 0.0)
    cf = closed_form_eigenvalues(p)
    got = [h.r for h in cf.eigenvalues]
    if not (
        len(got) == 2
        and abs(got[0] - _REF_MINUS) < 1e-10
        and abs(got[1] - _REF_PLUS) < 1e-10
    ):
        issues.append(f"pi/4 closed form {got}")
    scan = find_discrete_spectrum(weyl, p, SolverOptions(interval=(-10.0, -1e-6)))
    diffs = [abs(a.r - b.r) for a, b in zip(cf.eigenvalues, scan.eigenvalues)]
    if len(scan.eigenvalues) != 2 or max(diffs) > 1e-10:
        issues.append(f"pi/4 scan mismatch {diffs}")

    pu = ExtParams(0.0, math.pi / 2.0, 0.0, 0.0)
    cfu = closed_form_eigenvalues(pu)
    if not (
        len(cfu.eigenvalues) == 1
        and cfu.eigenvalues[0].multiplicity == 2
        and abs(cfu.eigenvalues[0].r + 0.25) < 1e-10
    ):
        issues.append(f"upsilon {[(h.r, h.multiplicity) for h in cfu.eigenvalues]}")
    scanu = find_discrete_spectrum(weyl, pu, SolverOptions(interval=(-10.0, -1e-6)))
    if not (
        len(scanu.eigenvalues) == 1
        and scanu.eigenvalues[0].multiplicity == 2
        and abs(scanu.eigenvalues[0].r - cfu.eigenvalues[0].r) < 1e-10
    ):
        issues.append("upsilon scan mismatch")

    p0 = ExtParams(0.0, math.pi / 2.0, math.pi / 2.0, 0.0)
    if closed_form_eigenvalues(p0).eigenvalues:
        issues.append("reference extension gained eigenvalues")
    if find_discrete_spectrum(weyl, p0, SolverOptions(interval=(-10.0, -1e-6))).eigenvalues:
        issues.append("reference extension scan gained eigenvalues")

    return CheckResult(
        "model eigenvalues",
        not issues,
        "; ".join(issues) if issues else
        f"{{{_REF_MINUS:.7f}, {_REF_PLUS:.7f}}}, {{-0.25 x2}}, {{}} all reproduced",
        time.perf_counter() - t0,
        budget_s=1.0,
    )


def check_oracle_agreement() -> CheckResult:
    """FD oracle reproduces the closed forms with O(h^2) convergence."""
    t0 = time.perf_counter()
    p = ExtParams(0.0, math.pi / 4.0, 0.0, 0.0)
    exact = [_REF_MINUS, _REF_PLUS]
    errs = {}
    rel_err_4000 = None
    issues = []
    for n in (1000, 2000, 4000):
        rep = scan_spectrum(p, OracleConfig(L=20.0, N=n))
        if len(rep.roots) != 2:
            issues.append(f"N={n}: found {len(rep.roots)} roots")
            continue
        errs[n] = [abs(r - e) for r, e in zip(rep.roots, exact)]
        if n == 4000:
            rel_err_4000 = max(abs(r - e) / abs(e) for r, e in zip(rep.roots, exact))
    if not issues:
        for n in (1000, 2000):
            for idx in (0, 1):
                ratio = errs[n][idx] / errs[2 * n][idx]
                if not (3.0 <= ratio <= 5.0):
                    issues.append(f"convergence ratio N={n}->{2*n} root{idx}: {ratio:.2f}")
        if rel_err_4000 is None or rel_err_4000 >= 1e-3:
            issues.append(f"relative error at N=4000: {rel_err_4000}")
    return CheckResult(
        "oracle agreement",
        not issues,
        "; ".join(issues) if issues else
        f"max relative error {rel_err_4000:.2e} at L=20, N=4000; "
        f"doubling ratios {errs[1000][0]/errs[2000][0]:.2f}, {errs[2000][0]/errs[4000][0]:.2f} "
        f"(deep) and {errs[1000][1]/errs[2000][1]:.2f}, {errs[2000][1]/errs[4000][1]:.2f} (shallow)",
        time.perf_counter() - t0,
        budget_s=30.0,
    )


def check_reality_dichotomy() -> CheckResult:
    """No nonreal spectrum for stable p; nonreal pair for the unstable probe."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(606)
    weyl = PointInteractionWeyl()
    issues = []

    res = np.linspace(-5.0, 5.0, 40)
    ims = np.linspace(0.05, 5.0, 40)
    mus = res[None, :] + 1j * ims[:, None]
    mvals = 2j * np.sqrt(mus)  # Im sqrt > 0 already holds on the upper half-plane
    min_det = math.inf
    for p in _random_stable(rng, 20):
        phi, psi = cayley_to_relation(build_k(p)).graph
        det = (psi[0, 0] - mvals * phi[0, 0]) * (psi[1, 1] - mvals * phi[1, 1]) - (
            psi[0, 1] - mvals * phi[0, 1]
        ) * (psi[1, 0] - mvals * phi[1, 0])
        min_det = min(min_det, float(np.min(np.abs(det))))
    if not (min_det > 1e-8):
        issues.append(f"stable |det| got as small as {min_det:.2e}")

    pu = ExtParams(1.0, math.pi / 3.0, 0.0, 0.0)
    rp = cayley_to_relation(build_k(pu))
    roots = nonreal_spectrum_probe(weyl, pu, rp, im_floor=1e-6)
    if len(roots) != 2 or any(abs(z.imag) <= 1e-6 for z in roots):
        issues.append(f"unstable probe returned {roots}")
    else:
        # independent path: numeric eigenvalues of K -> Cayley -> pullback
        ks = np.linalg.eigvals(build_k(pu))
        expected = [
            -0.25 * (1j * (1 + k) / (1 - k)) ** 2 for k in ks
            if (1j * (1 + k) / (1 - k)).real < 0
        ]
        if len(expected) != len(roots):
            issues.append("probe/eigendecomposition cardinality mismatch")
        else:
            worst = max(min(abs(a - b) for b in expected) for a in roots)
            if worst > 1e-10:
                issues.append(f"probe/eigendecomposition mismatch {worst:.2e}")
        resid = max(abs(det_condition(weyl, rp, z)) for z in roots)
        if resid > 1e-10:
            issues.append(f"probe residual {resid:.2e}")
    return CheckResult(
        "reality dichotomy",
        not issues,
        "; ".join(issues) if issues else
        f"stable min |det| {min_det:.2e} on 40x40 upper grid x20 draws; "
        f"unstable probe roots {roots[0]:.6f} / {roots[1]:.6f}",
        time.perf_counter() - t0,
        budget_s=10.0,
    )


def check_omega_invariance() -> CheckResult:
    """Spectrum reports and oracle roots do not depend on omega."""
    t0 = time.perf_counter()
    weyl = PointInteractionWeyl()
    base = (0.3, math.pi / 5.0, 0.7)
    reports = []
    oracle_roots = []
    for om in (0.0, 1.0, math.pi):
        p = ExtParams(base[0], base[1], base[2], om)
        reports.append(find_discrete_spectrum(weyl, p, SolverOptions(interval=(-10.0, -1e-6))))
        oracle_roots.append(scan_spectrum(p, OracleConfig(L=20.0, N=2000)).roots)
    issues = []
    ref = reports[0]
    for rep in reports[1:]:
        if len(rep.eigenvalues) != len(ref.eigenvalues):
            issues.append("report cardinality changed with omega")
            break
        if any(
            abs(a.r - b.r) > 1e-10 or a.multiplicity != b.multiplicity
            for a, b in zip(rep.eigenvalues, ref.eigenvalues)
        ):
            issues.append("report values changed with omega")
    for roots in oracle_roots[1:]:
        if len(roots) != len(oracle_roots[0]) or any(
            abs(a - b) > 1e-4 for a, b in zip(roots, oracle_roots[0])
        ):
            issues.append("oracle roots changed with omega")
    return CheckResult(
        "omega invariance",
        not issues,
        "; ".join(issues) if issues else
        f"reports and oracle roots identical for omega in {{0, 1, pi}} "
        f"({len(ref.eigenvalues)} eigenvalue(s))",
        time.perf_counter() - t0,
        budget_s=10.0,
    )


def check_kernel_psd_and_cayley() -> CheckResult:
    """Difference-quotient kernel PSD; Cayley image in disk/circle."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(808)
    weyl = PointInteractionWeyl()
    min_eig = math.inf
    for _ in range(100):
        npts = int(rng.integers(1, 7))
        pts = [complex(rng.uniform(-5, 5), rng.uniform(0.05, 5)) for _ in range(npts)]
        _, w0 = kernel_gram(weyl, pts)
        min_eig = min(min_eig, w0)
    worst_disk = 0.0
    for re in np.linspace(-5, 5, 15):
        for im in np.linspace(0.05, 5, 15):
            worst_disk = max(worst_disk, abs(cayley_theta(m_free(complex(re, im)))))
    worst_circle = 0.0
    for r in np.linspace(-50.0, -1e-3, 200):
        worst_circle = max(worst_circle, abs(abs(cayley_theta(weyl.boundary_eval(r))) - 1.0))
    ok = min_eig >= -1e-10 and worst_disk < 1.0 and worst_circle < 1e-12
    return CheckResult(
        "kernel PSD and Cayley image",
        ok,
        f"min Gram eigenvalue {min_eig:.2e} (>= -1e-10); sup |theta| on C+ {worst_disk:.6f} (<1); "
        f"max ||theta|-1| on reals {worst_circle:.2e}",
        time.perf_counter() - t0,
        budget_s=10.0,
    )


def check_limit_property() -> CheckResult:
    """Transition-operator limit: ||T + R|| <= 2 e^{-chi}, tiny at chi=20."""
    t0 = time.perf_counter()
    vals = [limit_transition(0.7, float(chi)) for chi in range(1, 21)]
    bound_ok = all(v <= 2.0 * math.exp(-chi) for chi, v in zip(range(1, 21), vals))
    final_ok = vals[-1] < 1e-8
    return CheckResult(
        "limit property",
        bound_ok and final_ok,
        f"||T+R|| <= 2e^-chi for chi=1..20; value at chi=20 is {vals[-1]:.2e} (<1e-8)",
        time.perf_counter() - t0,
        budget_s=5.0,
    )


# ---------------------------------------------------------------------------
# module invariants beyond the acceptance gates


def check_core_roundtrips() -> CheckResult:
    """Exponent factorization and transition-operator round trips."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(111)
    worst_y = 0.0
    worst_rt = 0.0
    for _ in range(100):
        p = CsymParams(rng.uniform(-5, 5), rng.uniform(0, TWO_PI))
        c = build_csym(p)
        y = factor_exponent(c)
        worst_y = max(worst_y, opnorm2(y - p.chi * build_r_omega(p.omega)))
        worst_rt = max(worst_rt, opnorm2(csym_from_transition(transition_from_csym(c)) - c))
    ok = worst_y < 1e-8 and worst_rt < 1e-8
    return CheckResult(
        "core round trips",
        ok,
        f"exponent recovery {worst_y:.2e}; transition round trip {worst_rt:.2e}",
        time.perf_counter() - t0,
    )


def check_krein_symmetry_of_relations() -> CheckResult:
    """Graph pairs satisfy the Krein symmetry for random parameters."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(222)
    worst = 0.0
    for _ in range(100):
        p = ExtParams(
            rng.uniform(-2, 2), rng.uniform(0, math.pi),
            rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI),
        )
        phi, psi = cayley_to_relation(build_k(p)).graph
        sym = phi.conj().T @ SIGMA3 @ psi
        worst = max(worst, opnorm2(sym - sym.conj().T))
        stack = np.vstack([phi, psi])
        if np.linalg.matrix_rank(stack, tol=1e-10) != 2:
            return CheckResult(
                "relation Krein symmetry", False, "graph rank dropped below 2",
                time.perf_counter() - t0,
            )
    return CheckResult(
        "relation Krein symmetry",
        worst < 1e-10,
        f"worst Hermiticity defect of Phi* s3 Psi: {worst:.2e}",
        time.perf_counter() - t0,
    )


def check_root_set_equivalence() -> CheckResult:
    """Channel roots equal determinant-criterion roots on the real axis."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(333)
    weyl = PointInteractionWeyl()
    worst = 0.0
    for p in _random_stable(rng, 10):
        rep = find_discrete_spectrum(weyl, p, SolverOptions(interval=(-50.0, -1e-9)))
        rp = cayley_to_relation(build_k(p))
        grid = np.linspace(-50.0, -1e-9, 20001)
        vals = np.array([det_condition(weyl, rp, float(r)) for r in grid])
        # the graph normalization leaves a constant phase on the determinant
        anchor = vals[int(np.argmax(np.abs(vals)))]
        phase = anchor / abs(anchor)
        signed = (vals / phase).real
        sgn = np.sign(signed)
        crossings = []
        for k in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            crossings.append(
                brentq(
                    lambda r: (det_condition(weyl, rp, float(r)) / phase).real,
                    grid[k], grid[k + 1], xtol=1e-14,
                )
            )
        # a double root does not cross; compare simple roots only
        simple = [h.r for h in rep.eigenvalues if h.multiplicity == 1]
        if len(simple) != len(crossings):
            return CheckResult(
                "root-set equivalence", False,
                f"{len(simple)} channel roots vs {len(crossings)} determinant crossings",
                time.perf_counter() - t0,
            )
        for a, b in zip(sorted(simple), sorted(crossings)):
            worst = max(worst, abs(a - b))
    return CheckResult(
        "root-set equivalence",
        worst < 1e-8,
        f"worst gap between channel and determinant roots: {worst:.2e}",
        time.perf_counter() - t0,
    )


def check_adjoint_spectrum_symmetry() -> CheckResult:
    """An extension and its adjoint share the real spectrum."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(444)
    worst = 0.0
    for p in _random_stable(rng, 25):
        a = closed_form_eigenvalues(p).eigenvalues
        b = closed_form_eigenvalues(adjoint_params(p)).eigenvalues
        if len(a) != len(b):
            return CheckResult(
                "adjoint spectrum symmetry", False, "cardinality mismatch",
                time.perf_counter() - t0,
            )
        for x, y in zip(a, b):
            worst = max(worst, abs(x.r - y.r))
    return CheckResult(
        "adjoint spectrum symmetry",
        worst < 1e-10,
        f"worst eigenvalue gap under the adjoint map: {worst:.2e}",
        time.perf_counter() - t0,
    )


def check_oracle_L_independence() -> CheckResult:
    """Decay-mode roots are insensitive to L at matched step size."""
    t0 = time.perf_counter()
    p = ExtParams(0.0, math.pi / 4.0, 0.0, 0.0)
    r20 = scan_spectrum(p, OracleConfig(L=20.0, N=2000)).roots
    r30 = scan_spectrum(p, OracleConfig(L=30.0, N=3000)).roots
    if len(r20) != 2 or len(r30) != 2:
        return CheckResult(
            "oracle L-independence", False, "root count changed with L",
            time.perf_counter() - t0,
        )
    worst = max(abs(a - b) for a, b in zip(r20, r30))
    return CheckResult(
        "oracle L-independence",
        worst < 1e-6,
        f"max root shift L=20 -> L=30 at h=0.01: {worst:.2e}",
        time.perf_counter() - t0,
    )


ACCEPTANCE_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("1", check_algebraic_certificates),
    ("2", check_stability_dichotomy),
    ("3", check_commutant),
    ("4", check_model_eigenvalues),
    ("5", check_oracle_agreement),
    ("6", check_reality_dichotomy),
    ("7", check_omega_invariance),
    ("8", check_kernel_psd_and_cayley),
    ("9", check_limit_property),
)

MODULE_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("core", check_core_roundtrips),
    ("relations", check_krein_symmetry_of_relations),
    ("spectral", check_root_set_equivalence),
    ("adjoint", check_adjoint_spectrum_symmetry),
    ("oracle", check_oracle_L_independence),
)


def run_all(write=print) -> bool:
    """Run acceptance and module checks; True when everything passes."""
    ok = True
    for label, fn in ACCEPTANCE_CHECKS:
        result = fn()
        write(f"[acceptance {label}] {result.line()}")
        ok = ok and result.passed and result.within_budget
    for label, fn in MODULE_CHECKS:
        result = fn()
        write(f"[invariant {label}] {result.line()}")
        ok = ok and result.passed and result.within_budget
    return ok
