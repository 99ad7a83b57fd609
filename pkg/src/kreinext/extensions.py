"""The four-parameter family of sigma3-unitary extension matrices.

``build_k`` realizes the 2x2 matrix K(zeta, phi, xi, omega) that labels a
J-self-adjoint extension of the underlying symmetric operator;
``classify`` sorts parameters into self-adjoint / stable / commuting-core
classes, ``k_eigenvalues`` exposes the eigenvalue pair that controls
stability, and ``cayley_to_relation`` converts K into the resolvent
parameter (a sigma3-self-adjoint relation in graph form).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    IDENTITY2,
    SIGMA3,
    TWO_PI,
    as_cmat2,
    build_csym,
    CsymParams,
    default_tol,
    opnorm2,
)
from .errors import StabilityError

# Absolute tolerance for recognizing exact parameter intents (zeta = 0,
# phi = pi/2) from user-supplied floats.
PARAM_TOL = 1e-12


@dataclass(frozen=True)
class ExtParams:
    """Extension parameters (zeta, phi, xi, omega).

    phi is clamped to [0, pi]; xi and omega are reduced modulo 2pi.
    """

    zeta: float
    phi: float
    xi: float
    omega: float

    def __post_init__(self):
        vals = (self.zeta, self.phi, self.xi, self.omega)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("extension parameters must be finite")
        object.__setattr__(self, "phi", min(max(self.phi, 0.0), math.pi))
        object.__setattr__(self, "xi", self.xi % TWO_PI)
        object.__setattr__(self, "omega", self.omega % TWO_PI)

    def to_json_dict(self) -> dict:
        return {"zeta": self.zeta, "phi": self.phi, "xi": self.xi, "omega": self.omega}


@dataclass(frozen=True)
class ExtensionClass:
    """Classification of one parameter point.

    ``chi`` is the commuting-involution parameter, present exactly when the
    point is stable but not in the all-commuting set Upsilon.
    """

    in_upsilon: bool
    is_self_adjoint: bool
    is_stable: bool
    chi: float | None

    def to_json_dict(self) -> dict:
        return {
            "upsilon": self.in_upsilon,
            "self_adjoint": self.is_self_adjoint,
            "stable": self.is_stable,
            "chi": self.chi,
        }


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalues of K; ``t`` is the spectral angle, present when stable.

    ``k_plus`` annihilates the +1 eigenspace of the commuting involution,
    ``k_minus`` the -1 eigenspace; their product is ``-e^{-2i xi}``.
    """

    k_plus: complex
    k_minus: complex
    t: float | None


@dataclass(frozen=True)
class ResolventParam:
    """sigma3-self-adjoint relation in graph form {(Phi c, Psi c)}.

    ``graph`` is the pair (Phi, Psi), normalized so the stacked 4x2 matrix
    has orthonormal columns; ``matrix`` holds ``i(I+K)(I-K)^{-1}`` when
    ``I - K`` is invertible and None otherwise.
    """

    graph: tuple[np.ndarray, np.ndarray]
    matrix: np.ndarray | None


def build_k(p: ExtParams) -> np.ndarray:
    """Extension matrix ``e^{-i xi} [[-e^{-i phi} cosh z, e^{-i w} sinh z],
    [-e^{i w} sinh z, e^{i phi} cosh z]]``; satisfies ``K* s3 K = s3``."""
    ch, sh = math.cosh(p.zeta), math.sinh(p.zeta)
    phase = cmath.exp(-1j * p.xi)
    return phase * np.array(
        [
            [-cmath.exp(-1j * p.phi) * ch, cmath.exp(-1j * p.omega) * sh],
            [-cmath.exp(1j * p.omega) * sh, cmath.exp(1j * p.phi) * ch],
        ],
        dtype=complex,
    )


def adjoint_params(p: ExtParams) -> ExtParams:
    """Parameters of the adjoint extension: zeta flips sign."""
    return ExtParams(-p.zeta, p.phi, p.xi, p.omega)


def solve_chi(zeta: float, phi: float) -> float:
    """Unique chi with ``cos(phi) tanh(chi) = -tanh(zeta)``.

    Feasible exactly on the stable (non-Upsilon) region
    ``|tanh zeta| < |cos phi|``; raises :class:`StabilityError` otherwise.
    """
    tz = math.tanh(zeta)
    cp = math.cos(phi)
    if abs(tz) >= abs(cp):
        raise StabilityError(
            f"no commuting involution: |tanh zeta|={abs(tz):.6g} is not < |cos phi|={abs(cp):.6g}"
        )
    x = math.atanh(-tz / cp)
    return 0.0 if x == 0.0 else x  # normalize -0.0


def classify(p: ExtParams, param_tol: float = PARAM_TOL) -> ExtensionClass:
    """Sort a parameter point per the stability dichotomy.

    Upsilon is the exact corner ``zeta = 0, phi = pi/2``; self-adjointness
    is ``zeta = 0``; stability is Upsilon-membership or the strict
    inequality ``|tanh zeta| < |cos phi|`` (boundary points are unstable).
    """
    zeta_zero = abs(p.zeta) <= param_tol
    phi_half = abs(p.phi - 0.5 * math.pi) <= param_tol
    in_upsilon = zeta_zero and phi_half
    stable = in_upsilon or abs(math.tanh(p.zeta)) < abs(math.cos(p.phi))
    chi = None
    if stable and not in_upsilon:
        chi = solve_chi(p.zeta, p.phi)
    return ExtensionClass(
        in_upsilon=in_upsilon,
        is_self_adjoint=zeta_zero,
        is_stable=stable,
        chi=chi,
    )


def spectral_angle(p: ExtParams, param_tol: float = PARAM_TOL) -> float:
    """Angle t in [0, 2pi) with ``e^{it} ~ cos phi + i sin phi cosh chi``.

    Defined for stable parameters; at the Upsilon corner chi collapses to 0
    and t = pi/2.
    """
    cls = classify(p, param_tol)
    if not cls.is_stable:
        raise StabilityError("spectral angle is defined for stable parameters only")
    chi = 0.0 if cls.chi is None else cls.chi
    t = math.atan2(math.sin(p.phi) * math.cosh(chi), math.cos(p.phi))
    return t % TWO_PI


def k_eigenvalues(p: ExtParams, param_tol: float = PARAM_TOL) -> EigenPair:
    """Eigenvalue pair of K, labeled by the commuting-involution projections.

    Stable points give the unimodular pair ``k_plus = -e^{-i xi} e^{-i t}``,
    ``k_minus = e^{-i xi} e^{i t}``.  Unstable points return the raw
    characteristic-equation pair ``e^{-i xi}(+/- sqrt(1 - s^2) + i s)`` with
    ``s = sin phi cosh zeta`` (then ``t`` is absent and the moduli split).
    """
    cls = classify(p, param_tol)
    phase = cmath.exp(-1j * p.xi)
    if cls.is_stable:
        t = spectral_angle(p, param_tol)
        rot = cmath.exp(1j * t)
        return EigenPair(k_plus=-phase / rot, k_minus=phase * rot, t=t)
    s = math.sin(p.phi) * math.cosh(p.zeta)
    root = cmath.sqrt(1.0 - s * s)
    return EigenPair(k_plus=phase * (root + 1j * s), k_minus=phase * (-root + 1j * s), t=None)


def csym_of_extension(p: ExtParams, param_tol: float = PARAM_TOL) -> np.ndarray:
    """The involution commuting with K(p); requires stable parameters.

    On the Upsilon corner every family member commutes with the scalar K,
    so sigma3 is returned canonically.
    """
    cls = classify(p, param_tol)
    if not cls.is_stable:
        raise StabilityError("extension has no commuting involution (unstable parameters)")
    if cls.in_upsilon:
        return SIGMA3.copy()
    return build_csym(CsymParams(cls.chi, p.omega))


def cayley_to_relation(k, tol: float | None = None) -> ResolventParam:
    """Resolvent parameter of K: the relation ``i(I+K)(I-K)^{-1}``.

    Always returns the graph pair ``(I-K, i(I+K))`` (orthonormalized); the
    matrix form is attached when ``I - K`` is invertible.  The graph
    satisfies the Krein symmetry ``Phi* s3 Psi = (Phi* s3 Psi)*``.
    """
    tol = default_tol() if tol is None else tol
    km = as_cmat2(k, "K")
    dev = km.conj().T @ SIGMA3 @ km - SIGMA3
    if opnorm2(dev) > max(tol, 1e-8) * max(1.0, opnorm2(km) ** 2):
        raise ValueError("K is not sigma3-unitary")
    phi_raw = IDENTITY2 - km
    psi_raw = 1j * (IDENTITY2 + km)
    stack = np.vstack([phi_raw, psi_raw])
    q, _ = np.linalg.qr(stack)
    phi, psi = q[:2, :], q[2:, :]
    det = phi_raw[0, 0] * phi_raw[1, 1] - phi_raw[0, 1] * phi_raw[1, 0]
    matrix = None
    if abs(det) > 1e-12 * max(1.0, opnorm2(phi_raw) ** 2):
        matrix = np.linalg.solve(phi_raw.T, psi_raw.T).T
    return ResolventParam(graph=(phi, psi), matrix=matrix)


def relation_eigenvalues(rp: ResolventParam) -> list[complex]:
    """Finite eigenvalues of the relation: roots of det(Psi - lam Phi)."""
    phi, psi = rp.graph
    a = phi[0, 0] * phi[1, 1] - phi[0, 1] * phi[1, 0]
    b = -(
        psi[0, 0] * phi[1, 1]
        + phi[0, 0] * psi[1, 1]
        - psi[0, 1] * phi[1, 0]
        - phi[0, 1] * psi[1, 0]
    )
    c = psi[0, 0] * psi[1, 1] - psi[0, 1] * psi[1, 0]
    scale = max(abs(a), abs(b), abs(c), 1e-300)
    if abs(a) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            return []
        return [-c / b]
    disc = cmath.sqrt(b * b - 4.0 * a * c)
    return [(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]
