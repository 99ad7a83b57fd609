"""Complex 2x2 linear algebra for Krein-space computations.

Everything in this module works on plain ``(2, 2)`` complex ndarrays
("CMat2" in the docs).  It provides the Pauli basis, the one-parameter
reflection family ``R(omega)``, the two-parameter involution family
``C(chi, omega)`` together with its exponential factorization and
transition-operator form, and the scalar/matrix Cayley machinery used by
the spectral layer.

All functions are pure; tolerances default to :func:`default_tol` and can
be overridden per call or globally through the ``KREIN_CSYM_TOL``
environment variable.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import PositivityError, SingularTransformError

TWO_PI = 2.0 * math.pi

# Pauli matrices; sigma3 doubles as the fundamental symmetry J and sigma1
# as the anticommuting reflection R throughout the toolkit.
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
for _m in (SIGMA1, SIGMA2, SIGMA3):
    _m.setflags(write=False)

IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY2.setflags(write=False)


def default_tol() -> float:
    """Default tolerance for algebraic identity checks (env-overridable)."""
    return float(os.environ.get("KREIN_CSYM_TOL", "1e-10"))


def pauli_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return fresh copies of (sigma1, sigma2, sigma3)."""
    return SIGMA1.copy(), SIGMA2.copy(), SIGMA3.copy()


def as_cmat2(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite (2, 2) complex array, rejecting NaN/Inf."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"{name} must be 2x2, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def opnorm2(m) -> float:
    """Operator 2-norm of a 2x2 matrix via the closed-form singular value."""
    a = np.asarray(m, dtype=complex)
    f2 = float(np.sum(np.abs(a) ** 2))
    d = abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    disc = max(f2 * f2 - 4.0 * d * d, 0.0)
    return math.sqrt(0.5 * (f2 + math.sqrt(disc)))


def eigh2(h) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    column eigenvectors ``v``; input asymmetry is discarded by averaging.
    """
    a = float(np.real(h[0, 0]))
    d = float(np.real(h[1, 1]))
    b = complex(0.5 * (h[0, 1] + np.conj(h[1, 0])))
    half_tr = 0.5 * (a + d)
    rad = math.hypot(0.5 * (a - d), abs(b))
    lo, hi = half_tr - rad, half_tr + rad
    if abs(b) <= 1e-300:
        if a <= d:
            v = np.eye(2, dtype=complex)
        else:
            v = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        return np.array([lo, hi]), v
    # eigenvector of lambda: (b, lambda - a), orthogonal pair for the other
    v_lo = np.array([b, lo - a], dtype=complex)
    v_lo /= math.sqrt(abs(b) ** 2 + (lo - a) ** 2)
    v_hi = np.array([-np.conj(v_lo[1]), np.conj(v_lo[0])], dtype=complex)
    v = np.column_stack([v_lo, v_hi])
    return np.array([lo, hi]), v


def hermitian_deviation(m) -> float:
    """Norm of the anti-Hermitian part, ``||M - M*||``."""
    a = np.asarray(m, dtype=complex)
    return opnorm2(a - a.conj().T)


def _check_fundamental_symmetry(j: np.ndarray, tol: float) -> None:
    if hermitian_deviation(j) > tol or opnorm2(j @ j - IDENTITY2) > tol:
        raise ValueError("J is not a fundamental symmetry (need J=J*, J^2=I)")


@dataclass(frozen=True)
class CsymParams:
    """Index (chi, omega) of the involution family; omega lands in [0, 2pi)."""

    chi: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.chi) and math.isfinite(self.omega)):
            raise ValueError("chi and omega must be finite")
        object.__setattr__(self, "omega", self.omega % TWO_PI)


@dataclass(frozen=True)
class PositivityReport:
    """Outcome of the involution / positivity certificate for a candidate C."""

    is_involution: bool
    involution_residual: float
    min_eig_JC: float
    is_positive: bool


def build_r_omega(omega: float) -> np.ndarray:
    """Reflection ``R(omega) = sigma1 * exp(i*omega*sigma3)``.

    The result is unitary, self-adjoint, and anticommutes with sigma3:
    ``[[0, e^{-i omega}], [e^{i omega}, 0]]``.
    """
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    return np.array(
        [[0.0, cmath.exp(-1j * omega)], [cmath.exp(1j * omega), 0.0]],
        dtype=complex,
    )


def build_csym(p: CsymParams) -> np.ndarray:
    """Involution ``C(chi, omega) = sigma3 * exp(chi * R(omega))``.

    Explicitly ``[[cosh chi, sinh chi e^{-i omega}],
    [-sinh chi e^{i omega}, -cosh chi]]``; satisfies ``C^2 = I`` and
    ``sigma3 C > 0`` for every parameter choice.
    """
    ch, sh = math.cosh(p.chi), math.sinh(p.chi)
    return np.array(
        [
            [ch, sh * cmath.exp(-1j * p.omega)],
            [-sh * cmath.exp(1j * p.omega), -ch],
        ],
        dtype=complex,
    )


def verify_csym(c, j=SIGMA3, tol: float | None = None) -> PositivityReport:
    """Certify the two defining conditions ``C^2 = I`` and ``JC > 0``.

    ``min_eig_JC`` is the smallest eigenvalue of the Hermitian part of
    ``JC``; positivity additionally requires ``JC`` to be Hermitian within
    ``tol``.
    """
    tol = default_tol() if tol is None else tol
    c = as_cmat2(c, "C")
    j = as_cmat2(j, "J")
    _check_fundamental_symmetry(j, max(tol, 1e-8))
    res = opnorm2(c @ c - IDENTITY2)
    g = j @ c
    herm_dev = hermitian_deviation(g)
    w, _ = eigh2(0.5 * (g + g.conj().T))
    min_eig = float(w[0])
    return PositivityReport(
        is_involution=res <= tol,
        involution_residual=res,
        min_eig_JC=min_eig,
        is_positive=(herm_dev <= tol and min_eig > 0.0),
    )


def factor_exponent(c, j=SIGMA3, tol: float | None = None) -> np.ndarray:
    """Hermitian exponent Y with ``C = J e^Y`` and ``{J, Y} = 0``.

    Computed as the principal logarithm of the positive-definite matrix
    ``JC`` through its closed-form eigendecomposition.  Raises
    :class:`PositivityError` when ``JC`` fails the positivity certificate.
    """
    tol = default_tol() if tol is None else tol
    c = as_cmat2(c, "C")
    j = as_cmat2(j, "J")
    g = j @ c
    if hermitian_deviation(g) > max(tol, 1e-8) * max(1.0, opnorm2(g)):
        raise PositivityError("JC is not Hermitian; C is not an admissible involution")
    w, v = eigh2(0.5 * (g + g.conj().T))
    if w[0] <= 0.0:
        raise PositivityError(f"JC is not positive definite (min eigenvalue {w[0]:.3e})")
    y = v @ np.diag(np.log(w)) @ v.conj().T
    # cheap self-checks: Hermitian, anticommutes with J, exponentiates back
    scale = max(1.0, opnorm2(y))
    if hermitian_deviation(y) > 1e-8 * scale or opnorm2(j @ y + y @ j) > 1e-8 * scale:
        raise PositivityError("exponent factorization failed its postconditions")
    return y


def expm_hermitian2(y) -> np.ndarray:
    """``exp(Y)`` for Hermitian 2x2 Y via closed-form diagonalization."""
    w, v = eigh2(np.asarray(y, dtype=complex))
    return v @ np.diag(np.exp(w)) @ v.conj().T


def transition_from_csym(c, j=SIGMA3, tol: float | None = None) -> np.ndarray:
    """Transition operator ``T = (I - JC)(I + JC)^{-1}`` of an involution C.

    T is a self-adjoint strict contraction anticommuting with J; for the
    family ``C(chi, omega)`` it equals ``-tanh(chi/2) R(omega)``.
    """
    tol = default_tol() if tol is None else tol
    c = as_cmat2(c, "C")
    j = as_cmat2(j, "J")
    g = j @ c
    ipg = IDENTITY2 + g
    det = ipg[0, 0] * ipg[1, 1] - ipg[0, 1] * ipg[1, 0]
    if abs(det) <= 1e-14 * max(1.0, opnorm2(ipg) ** 2):
        raise SingularTransformError("I + JC is singular; C is not admissible")
    return np.linalg.solve(ipg.T, (IDENTITY2 - g).T).T


def csym_from_transition(t, j=SIGMA3, tol: float | None = None) -> np.ndarray:
    """Inverse of :func:`transition_from_csym`: ``C = J(I - T)(I + T)^{-1}``.

    Requires T self-adjoint, a strict contraction, and ``{J, T} = 0``.
    """
    tol = default_tol() if tol is None else tol
    t = as_cmat2(t, "T")
    j = as_cmat2(j, "J")
    if hermitian_deviation(t) > max(tol, 1e-8):
        raise ValueError("transition operator must be self-adjoint")
    if opnorm2(t) >= 1.0 - 1e-14:
        raise ValueError("transition operator must be a strict contraction")
    if opnorm2(j @ t + t @ j) > max(tol, 1e-8):
        raise ValueError("transition operator must anticommute with J")
    ipt = IDENTITY2 + t
    return j @ np.linalg.solve(ipt.T, (IDENTITY2 - t).T).T


def projections_from_transition(t, j=SIGMA3, tol: float | None = None):
    """Skew projections (P_plus, P_minus) of the decomposition encoded by T.

    ``P_minus = (I - T)^{-1}(P_- - T P_+)`` and
    ``P_plus = (I - T)^{-1}(P_+ - T P_-)`` with ``P_{+/-} = (I +/- J)/2``.
    They are idempotent, sum to I, and ``P_plus - P_minus`` recovers the
    involution of :func:`csym_from_transition`.
    """
    tol = default_tol() if tol is None else tol
    t = as_cmat2(t, "T")
    j = as_cmat2(j, "J")
    imt = IDENTITY2 - t
    det = imt[0, 0] * imt[1, 1] - imt[0, 1] * imt[1, 0]
    if abs(det) <= 1e-14 * max(1.0, opnorm2(imt) ** 2):
        raise SingularTransformError("I - T is singular")
    p_up = 0.5 * (IDENTITY2 + j)
    p_dn = 0.5 * (IDENTITY2 - j)
    inv = np.linalg.inv(imt)
    p_plus = inv @ (p_up - t @ p_dn)
    p_minus = inv @ (p_dn - t @ p_up)
    scale = max(1.0, opnorm2(p_plus), opnorm2(p_minus))
    if (
        opnorm2(p_plus @ p_plus - p_plus) > 1e-8 * scale
        or opnorm2(p_minus @ p_minus - p_minus) > 1e-8 * scale
        or opnorm2(p_plus + p_minus - IDENTITY2) > 1e-8 * scale
    ):
        raise ValueError("projection postconditions failed; T is not admissible")
    return p_plus, p_minus


def limit_transition(omega: float, chi: float) -> float:
    """``||T(chi, omega) + R(omega)||`` -- the distance of the transition
    operator from the neutral-limit reflection.  Decays like ``2 e^{-chi}``.
    """
    if chi < 0:
        raise ValueError("chi must be nonnegative")
    # T + R = (1 - tanh(chi/2)) R; the coefficient in this form, not via
    # 1 - tanh, which loses all relative accuracy once chi > ~35
    e = math.exp(-chi)
    coeff = 2.0 * e / (1.0 + e)
    return opnorm2(coeff * build_r_omega(omega))


def cayley_theta(m_value: complex) -> complex:
    """Scalar Cayley transform ``theta = (m - i)/(m + i)``.

    Maps the open upper half-plane into the open unit disk and the real
    axis onto the unit circle; raises at the pole ``m = -i``.
    """
    m = complex(m_value)
    den = m + 1j
    if abs(den) <= 1e-300 * max(1.0, abs(m)) or den == 0:
        raise SingularTransformError("Cayley transform pole at m = -i")
    return (m - 1j) / den


def kshmulyan_transform(theta, u, tol: float | None = None) -> np.ndarray:
    """Block Moebius action ``(U10 + U11 Th)(U00 + U01 Th)^{-1}``.

    ``u`` is a 4x4 matrix, Z-unitary for ``Z = diag(I, -I)`` (verified);
    the transform preserves strict contractivity of ``theta``.
    """
    tol = default_tol() if tol is None else tol
    th = as_cmat2(theta, "theta")
    um = np.asarray(u, dtype=complex)
    if um.shape != (4, 4):
        raise ValueError(f"U must be 4x4, got {um.shape}")
    z = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
    dev = um.conj().T @ z @ um - z
    if float(np.max(np.abs(dev))) > max(tol, 1e-8) * max(1.0, float(np.max(np.abs(um))) ** 2):
        raise ValueError("U is not Z-unitary")
    u00, u01 = um[:2, :2], um[:2, 2:]
    u10, u11 = um[2:, :2], um[2:, 2:]
    piv = u00 + u01 @ th
    det = piv[0, 0] * piv[1, 1] - piv[0, 1] * piv[1, 0]
    if abs(det) <= 1e-14 * max(1.0, opnorm2(piv) ** 2):
        raise SingularTransformError("U00 + U01*theta is singular")
    return np.linalg.solve(piv.T, (u10 + u11 @ th).T).T


def cmat2_to_json(m) -> list[list[float]]:
    """Row-major [[re, im], ...] form used by the CLI JSON output."""
    a = as_cmat2(m)
    return [[float(z.real), float(z.imag)] for z in a.ravel()]


def cmat2_from_json(data) -> np.ndarray:
    pairs = list(data)
    if len(pairs) != 4:
        raise ValueError("expected four [re, im] pairs")
    vals = [complex(float(re), float(im)) for re, im in pairs]
    return np.array(vals, dtype=complex).reshape(2, 2)
