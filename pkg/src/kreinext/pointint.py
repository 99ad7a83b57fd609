"""One-dimensional Laplacian with a point interaction at the origin.

The concrete model shipped with the toolkit: the free second-derivative
operator on the line, restricted by interface conditions at 0.  Its Weyl
function is ``m(mu) = 2 i sqrt(mu)`` on the branch with positive-imaginary
square root; bound states are negative reals expressible in closed form
from the channel conditions, with ``[0, inf)`` as essential spectrum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StabilityError
from .extensions import ExtParams, classify
from .spectral import (
    POLE_TOL,
    ChannelCondition,
    EigenvalueHit,
    SpectrumReport,
    WeylFunction,
    channel_conditions,
)

# Edge of the essential spectrum; scans and closed forms stay strictly below.
ESSENTIAL_SPECTRUM_START = 0.0


def sqrt_upper(mu: complex) -> complex:
    """Square root with Im >= 0, approaching the cut [0, inf) from above."""
    tau = cmath.sqrt(mu)
    if tau.imag < 0.0:
        tau = -tau
    return tau


def m_free(mu: complex) -> complex:
    """Weyl function ``2 i sqrt(mu)`` of the decoupled half-line halves.

    Real mu < 0 gives the real boundary value ``-2 sqrt(|mu|)``.
    """
    return 2j * sqrt_upper(complex(mu))


class PointInteractionWeyl(WeylFunction):
    """`WeylFunction` wrapper around :func:`m_free`."""

    @property
    def real_intervals(self) -> tuple[tuple[float, float], ...]:
        return ((-math.inf, 0.0),)

    def eval(self, mu: complex) -> complex:
        return m_free(mu)

    def boundary_eval(self, r: float) -> float:
        if r >= 0.0:
            raise DomainError(
                f"r={r:.6g} lies in the essential spectrum [0, inf); no real boundary value"
            )
        return -2.0 * math.sqrt(-r)

    def invert(self, value: complex):
        # m maps C \ [0, inf) bijectively onto the open left half-plane
        value = complex(value)
        if value.real >= 0.0:
            return None
        return -0.25 * value * value


def gamma_matrices() -> tuple[np.ndarray, np.ndarray]:
    """Constant 2x4 matrices mapping trace data to the boundary vectors.

    Acting on ``(f(+0), f(-0), f'(+0), f'(-0))``: the first returns
    ``(u(0), v(+0))`` (even value, odd value) and the second
    ``2 (u'(+0), v'(0))`` (even slope, odd slope), where u, v are the even
    and odd parts of f.
    """
    g0 = np.array([[0.5, 0.5, 0.0, 0.0], [0.5, -0.5, 0.0, 0.0]], dtype=complex)
    g1 = np.array([[0.0, 0.0, 1.0, -1.0], [0.0, 0.0, 1.0, 1.0]], dtype=complex)
    return g0, g1


@dataclass(frozen=True)
class BoundaryData:
    """One-sided traces (f(+0), f(-0), f'(+0), f'(-0)) at the origin."""

    f_plus: complex
    f_minus: complex
    df_plus: complex
    df_minus: complex

    def __post_init__(self):
        for name in ("f_plus", "f_minus", "df_plus", "df_minus"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    def as_vector(self) -> np.ndarray:
        return np.array([self.f_plus, self.f_minus, self.df_plus, self.df_minus])


def gamma_maps(bd: BoundaryData) -> tuple[np.ndarray, np.ndarray]:
    """Boundary vectors (Gamma0, Gamma1) of one set of trace data."""
    g0, g1 = gamma_matrices()
    vec = bd.as_vector()
    return g0 @ vec, g1 @ vec


def _channel_root(cond: ChannelCondition) -> float | None:
    """Closed-form negative root of one channel, if the sign admits one.

    The channel requires ``m(r) = -a/b`` with ``m(r) = -2 sqrt(|r|) < 0``,
    so a root exists only for ``a/b > 0`` and sits at ``-(a/(2b))^2``.
    """
    if abs(cond.b) <= POLE_TOL:
        return None
    ratio = cond.a / cond.b
    if ratio <= 0.0:
        return None
    r = -0.25 * ratio * ratio
    if abs(r) < 1e-20:  # indistinguishable from the essential-spectrum edge
        return None
    return r


def closed_form_eigenvalues(p: ExtParams, coincide_tol: float = 1e-10) -> SpectrumReport:
    """All negative eigenvalues of the model, without scanning.

    Coinciding channels yield a single multiplicity-2 entry; a channel in
    boundary-condition-degenerate position (b = 0) contributes nothing.
    """
    if not classify(p).is_stable:
        raise StabilityError("closed-form eigenvalues require stable parameters")
    plus, minus = channel_conditions(p)
    weyl = PointInteractionWeyl()
    hits: list[EigenvalueHit] = []
    if plus.coincides(minus, coincide_tol):
        r = _channel_root(plus)
        if r is not None:
            hits.append(
                EigenvalueHit(
                    r=r, multiplicity=2, channel="both",
                    residual=plus.residual(weyl.boundary_eval(r)),
                )
            )
    else:
        for cond in (plus, minus):
            r = _channel_root(cond)
            if r is not None:
                hits.append(
                    EigenvalueHit(
                        r=r, multiplicity=1, channel=cond.channel,
                        residual=cond.residual(weyl.boundary_eval(r)),
                    )
                )
    hits.sort(key=lambda h: h.r)
    return SpectrumReport(
        eigenvalues=tuple(hits), scan_interval=(-math.inf, 0.0), method="closed_form"
    )
