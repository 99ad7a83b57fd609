"""Scalar Weyl-function interface and the discrete-spectrum solvers.

A :class:`WeylFunction` is a scalar Nevanlinna function m(mu) together
with a description of the real part of the reference resolvent set, where
it takes real boundary values.  Eigenvalues of a stable extension are the
real solutions of the two projective channel conditions ``a + b m(r) = 0``
produced by :func:`channel_conditions`; :func:`det_condition` provides the
independent determinant criterion through the resolvent parameter, and
:func:`kernel_gram` checks positive semidefiniteness of the
difference-quotient kernel.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, StabilityError
from .extensions import (
    ExtParams,
    ResolventParam,
    classify,
    relation_eigenvalues,
    spectral_angle,
)

# Channels with |b| below this are boundary-condition-degenerate (the
# reference-extension channel) and carry no root at regular points.
POLE_TOL = 1e-12

# Roots with |r| below this are indistinguishable from the edge of the
# essential spectrum and are not reported.
EDGE_FLOOR = 1e-20


class WeylFunction(ABC):
    """Scalar Nevanlinna function with real boundary values.

    Implementations must be reentrant: sweeps evaluate them concurrently.
    """

    @abstractmethod
    def eval(self, mu: complex) -> complex:
        """Value at a (generally nonreal) point of the resolvent set."""

    @property
    @abstractmethod
    def real_intervals(self) -> tuple[tuple[float, float], ...]:
        """Open intervals forming the real part of the resolvent set."""

    @abstractmethod
    def boundary_eval(self, r: float) -> float:
        """Real value on the real resolvent set; raises off-domain."""

    def contains_real(self, r: float) -> bool:
        return any(a < r < b for a, b in self.real_intervals)

    def invert(self, value: complex):
        """Solve m(mu) = value in closed form; None when no solution exists.

        Raises NotImplementedError when the function has no closed-form
        inverse (the probe then falls back to a grid search).
        """
        raise NotImplementedError


@dataclass(frozen=True)
class ChannelCondition:
    """Projective form (a, b) of one spectral channel: a + b*m(r) = 0.

    Normalized to a^2 + b^2 = 1 with the first nonvanishing component
    positive, which makes coincidence of the two channels testable by
    direct comparison.
    """

    a: float
    b: float
    channel: str  # "plus" | "minus"

    def residual(self, m_value: float) -> float:
        return abs(self.a + self.b * m_value)

    def coincides(self, other: "ChannelCondition", tol: float = 1e-10) -> bool:
        return abs(self.a - other.a) <= tol and abs(self.b - other.b) <= tol


@dataclass(frozen=True)
class EigenvalueHit:
    r: float
    multiplicity: int
    channel: str  # "plus" | "minus" | "both"
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "mult": self.multiplicity,
            "channel": self.channel,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[EigenvalueHit, ...]
    scan_interval: tuple[float, float]
    method: str  # "closed_form" | "bisection"

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [e.to_json_dict() for e in self.eigenvalues],
            "interval": list(self.scan_interval),
            "method": self.method,
        }


@dataclass(frozen=True)
class SolverOptions:
    """Options for the scanning solver.

    ``interval`` defaults to a window derived from the channel data (all
    model bound states satisfy |r| = (a/2b)^2, padded 4x) clipped to the
    real domain; ``step`` defaults to 1e-3 of the interval length.
    """

    interval: tuple[float, float] | None = None
    step: float | None = None
    coincide_tol: float = 1e-10
    min_magnitude: float = field(default=EDGE_FLOOR)


def _normalize_pair(a: float, b: float, channel: str) -> ChannelCondition:
    n = math.hypot(a, b)
    a, b = a / n, b / n
    if a < -POLE_TOL or (abs(a) <= POLE_TOL and b < 0.0):
        a, b = -a, -b
    return ChannelCondition(a=a, b=b, channel=channel)


def channel_conditions(p: ExtParams) -> tuple[ChannelCondition, ChannelCondition]:
    """The two projective channel conditions of a stable parameter point.

    The plus channel encodes ``tan((xi+t)/2) + m(r) = 0`` as
    ``(sin((xi+t)/2), cos((xi+t)/2))`` and the minus channel
    ``cot((xi-t)/2) - m(r) = 0`` as ``(cos((xi-t)/2), -sin((xi-t)/2))``;
    both stay finite across the tan/cot poles, where ``b = 0`` marks the
    reference-extension channel without roots at regular points.
    """
    if not classify(p).is_stable:
        raise StabilityError("channel conditions require stable parameters")
    t = spectral_angle(p)
    half_plus = 0.5 * (p.xi + t)
    half_minus = 0.5 * (p.xi - t)
    plus = _normalize_pair(math.sin(half_plus), math.cos(half_plus), "plus")
    minus = _normalize_pair(math.cos(half_minus), -math.sin(half_minus), "minus")
    return plus, minus


def default_scan_interval(
    channels, m: WeylFunction, floor: float = -1e-12
) -> tuple[float, float]:
    """Scan window derived from channel data, clipped to the real domain.

    Bound-state magnitudes of the shipped model satisfy |r| = (a/2b)^2
    (only channels whose sign admits a negative-m root count); the window
    pads the largest such magnitude 4x.  Pass an explicit interval for
    Weyl functions without that structure.
    """
    bounds = [
        (abs(c.a) / (2.0 * abs(c.b))) ** 2
        for c in channels
        if abs(c.b) > POLE_TOL and c.a / c.b > 0.0
    ]
    lo = -max(100.0, 4.0 * max(bounds)) if bounds else -100.0
    hi = floor
    for a, b in m.real_intervals:
        clo, chi = max(lo, a), min(hi, b)
        if clo < chi:
            return (clo, chi)
    raise DomainError("real domain does not meet the negative scan window")


def _refine_root(f, lo: float, hi: float) -> float:
    return float(brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200))


def find_discrete_spectrum(
    m: WeylFunction, p: ExtParams, opts: SolverOptions | None = None
) -> SpectrumReport:
    """Locate all real eigenvalues in the scan window by bracketing.

    Scans ``a + b m(r)`` per channel on a uniform grid, brackets sign
    changes, and refines each bracket; monotonicity of m is not assumed.
    Coinciding channels produce a single multiplicity-2 entry.
    """
    if not classify(p).is_stable:
        raise StabilityError("discrete-spectrum solver requires stable parameters")
    opts = opts or SolverOptions()
    plus, minus = channel_conditions(p)
    if opts.interval is None:
        interval = default_scan_interval((plus, minus), m)
    else:
        interval = (float(opts.interval[0]), float(opts.interval[1]))
        if interval[0] >= interval[1]:
            raise DomainError("scan interval must be increasing")
        if not (m.contains_real(interval[0]) and m.contains_real(interval[1])):
            raise DomainError("scan interval is not inside the real domain")
    length = interval[1] - interval[0]
    step = opts.step if opts.step is not None else 1e-3 * length
    npts = max(int(math.ceil(length / step)) + 1, 8)
    grid = np.linspace(interval[0], interval[1], npts)  # endpoints exact

    coincident = plus.coincides(minus, opts.coincide_tol)
    jobs = [(plus, "both" if coincident else "plus", 2 if coincident else 1)]
    if not coincident:
        jobs.append((minus, "minus", 1))

    mvals = np.array([m.boundary_eval(float(r)) for r in grid])
    hits: list[EigenvalueHit] = []
    for cond, tag, mult in jobs:
        if abs(cond.b) <= POLE_TOL:
            continue
        fvals = cond.a + cond.b * mvals
        sgn = np.sign(fvals)
        f = lambda r, c=cond: c.a + c.b * m.boundary_eval(r)
        for k in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            root = _refine_root(f, float(grid[k]), float(grid[k + 1]))
            if abs(root) < opts.min_magnitude:
                continue
            hits.append(
                EigenvalueHit(
                    r=root,
                    multiplicity=mult,
                    channel=tag,
                    residual=cond.residual(m.boundary_eval(root)),
                )
            )
        for k in np.nonzero(fvals == 0.0)[0]:
            root = float(grid[k])
            if abs(root) >= opts.min_magnitude:
                hits.append(EigenvalueHit(r=root, multiplicity=mult, channel=tag, residual=0.0))
    hits.sort(key=lambda h: h.r)
    return SpectrumReport(eigenvalues=tuple(hits), scan_interval=interval, method="bisection")


def det_condition(m: WeylFunction, rp: ResolventParam, mu: complex) -> complex:
    """Determinant criterion ``det(Psi - m(mu) Phi)`` at one point.

    Vanishes exactly on the spectrum of the extension inside the reference
    resolvent set; proportional to ``det(m(mu) I - R)`` when the matrix
    form of the relation exists.
    """
    mu = complex(mu)
    if mu.imag == 0.0 and not m.contains_real(mu.real):
        raise DomainError(f"mu={mu.real:.6g} is outside the real resolvent set")
    mv = m.eval(mu) if mu.imag != 0.0 else complex(m.boundary_eval(mu.real))
    phi, psi = rp.graph
    a = psi - mv * phi
    return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


@dataclass(frozen=True)
class ProbeGrid:
    """Complex rectangle sampled by the nonreal-probe fallback search."""

    re_range: tuple[float, float] = (-5.0, 5.0)
    im_range: tuple[float, float] = (-5.0, 5.0)
    n_re: int = 81
    n_im: int = 81


def nonreal_spectrum_probe(
    m: WeylFunction,
    p: ExtParams,
    rp: ResolventParam,
    grid: ProbeGrid | None = None,
    im_floor: float = 1e-9,
) -> list[complex]:
    """Nonreal zeros of the determinant condition (empty for stable p).

    When the Weyl function provides a closed-form inverse, the relation's
    eigenvalues are pulled back through it directly; otherwise the grid is
    searched for local minima of |det| and candidates are polished by a
    secant/Newton iteration.
    """
    grid = grid or ProbeGrid()
    roots: list[complex] = []
    lams = relation_eigenvalues(rp)
    try:
        for lam in lams:
            mu = m.invert(lam)
            if mu is None or abs(complex(mu).imag) <= im_floor:
                continue
            if abs(det_condition(m, rp, mu)) <= 1e-6 * (1.0 + abs(lam)) ** 2:
                roots.append(complex(mu))
        return sorted(roots, key=lambda z: (z.real, z.imag))
    except NotImplementedError:
        roots = []

    # grid fallback: |det| minima + Newton polish with numeric derivative
    res = np.linspace(grid.re_range[0], grid.re_range[1], grid.n_re)
    ims = np.linspace(grid.im_range[0], grid.im_range[1], grid.n_im)
    vals = np.empty((grid.n_im, grid.n_re), dtype=complex)
    for i, y in enumerate(ims):
        for k, x in enumerate(res):
            mu = complex(x, y)
            vals[i, k] = det_condition(m, rp, mu) if abs(y) > im_floor else np.inf
    mags = np.abs(vals)
    scale = float(np.nanmax(mags[np.isfinite(mags)]))
    for i in range(1, grid.n_im - 1):
        for k in range(1, grid.n_re - 1):
            w = mags[i, k]
            if not np.isfinite(w) or w > 1e-2 * scale:
                continue
            if w > mags[i - 1 : i + 2, k - 1 : k + 2].min():
                continue
            mu = complex(res[k], ims[i])
            h = 1e-6 * (1.0 + abs(mu))
            for _ in range(60):
                fv = det_condition(m, rp, mu)
                dv = (det_condition(m, rp, mu + h) - det_condition(m, rp, mu - h)) / (2 * h)
                if dv == 0:
                    break
                step = fv / dv
                mu -= step
                if abs(step) < 1e-13 * (1.0 + abs(mu)):
                    break
            if abs(mu.imag) > im_floor and abs(det_condition(m, rp, mu)) < 1e-8 * scale:
                if not any(abs(mu - r) < 1e-6 * (1.0 + abs(r)) for r in roots):
                    roots.append(mu)
    return sorted(roots, key=lambda z: (z.real, z.imag))


def kernel_gram(m: WeylFunction, points) -> tuple[np.ndarray, float]:
    """Difference-quotient Gram matrix at nonreal points and its least
    eigenvalue.

    ``G[i, j] = (m(mu_j) - m(conj mu_i)) / (mu_j - conj mu_i)`` with the
    diagonal taken as the limit ``Im m(mu) / Im mu``; nonnegativity of the
    least eigenvalue certifies the Nevanlinna property on the sample.
    """
    pts = [complex(z) for z in points]
    if not pts:
        raise ValueError("need at least one point")
    for z in pts:
        if z.imag == 0.0:
            raise DomainError("kernel points must be nonreal")
    n = len(pts)
    for i in range(n):
        for j in range(n):
            if i != j and abs(pts[j] - pts[i].conjugate()) <= 1e-14 * (1 + abs(pts[j])):
                raise DomainError(f"points {i} and {j} form a coincident conjugate pair")
    g = np.empty((n, n), dtype=complex)
    mv = [m.eval(z) for z in pts]
    mvc = [m.eval(z.conjugate()) for z in pts]
    for i in range(n):
        for j in range(n):
            if i == j:
                g[i, j] = mv[i].imag / pts[i].imag
            else:
                g[i, j] = (mv[j] - mvc[i]) / (pts[j] - pts[i].conjugate())
    gh = 0.5 * (g + g.conj().T)
    w = np.linalg.eigvalsh(gh)
    return g, float(w[0])
