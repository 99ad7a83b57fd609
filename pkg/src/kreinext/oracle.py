"""Independent finite-difference shooting oracle.

Discretizes ``-f'' = r f`` on ``[-L, 0) u (0, L]`` with the three-point
recursion, assembles the extension's interface condition at the origin
directly from the parameter matrix K(p) and the trace maps, and locates
negative eigenvalues as zeros of the 2x2 matching determinant.  The
oracle never evaluates the Weyl function, the channel conditions, or the
closed forms; it exists to cross-check them.

Outer boundary condition: by default the discrete decay mode of the
recursion is imposed at ``x = -L`` (and mirrored at ``+L``), which removes
the domain-truncation error entirely and leaves a pure second-order
scheme.  ``outer_bc="dirichlet"`` selects a hard wall instead; its
truncation shifts eigenvalues by about ``4 |r| exp(-2 sqrt(|r|) L)``,
which is what the decay mode is there to avoid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .extensions import ExtParams, build_k
from .pointint import gamma_matrices

# Magnitude guard: solutions growing past this get rescaled (positive
# factor, so zeros and sign structure of the determinant are unaffected).
_RENORM_LIMIT = 1e250

# A |det| dip this far (relative) below the scan maximum, without a sign
# change, is investigated as a potential double root.
_DIP_REL = 1e-4
_CONFIRM_REL = 1e-9


@dataclass(frozen=True)
class OracleConfig:
    """Discretization and scan controls.

    ``N`` counts grid steps per side (``h = L/N``); the scan runs over
    ``[scan[0], scan[1]]`` with spacing ``scan_step`` and refines brackets
    to ``bisect_tol``.
    """

    L: float = 20.0
    N: int = 4000
    scan: tuple[float, float] = (-10.0, -1e-6)
    scan_step: float = 1e-3
    bisect_tol: float = 1e-10
    outer_bc: str = "decay"  # "decay" | "dirichlet"
    keep_trace: bool = False

    def __post_init__(self):
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ValueError("L must be positive and finite")
        if self.N < 100:
            raise ValueError("N must be at least 100")
        if self.L / self.N >= 0.1:
            raise ValueError("grid too coarse: require h = L/N < 0.1")
        lo, hi = self.scan
        if not (lo < hi < 0.0):
            raise ValueError("scan interval must satisfy r_min < r_max < 0")
        if not (self.scan_step > 0.0):
            raise ValueError("scan_step must be positive")
        if not (self.bisect_tol > 0.0):
            raise ValueError("bisect_tol must be positive")
        if self.outer_bc not in ("decay", "dirichlet"):
            raise ValueError("outer_bc must be 'decay' or 'dirichlet'")


@dataclass(frozen=True)
class MatchReport:
    """Roots found by the scan; double roots land in ``degenerate``."""

    roots: tuple[float, ...]
    degenerate: tuple[float, ...]
    det_trace: tuple[tuple[float, complex], ...] | None = None

    def to_json_dict(self) -> dict:
        return {
            "roots": list(self.roots),
            "degenerate": list(self.degenerate),
            "trace_points": None if self.det_trace is None else len(self.det_trace),
        }


def interface_system(p: ExtParams) -> np.ndarray:
    """2x4 interface matrix M acting on (f(+0), f(-0), f'(+0), f'(-0)).

    ``M . traces = 0`` encodes the extension: ``i(I+K) Gamma0 = (I-K)
    Gamma1`` composed with the trace maps.  Always rank 2.
    """
    k = build_k(p)
    g0, g1 = gamma_matrices()
    eye = np.eye(2, dtype=complex)
    return 1j * (eye + k) @ g0 - (eye - k) @ g1


def _integrate_scalar(r: float, cfg: OracleConfig):
    """Single-r march with plain floats (same IEEE sequence as the batch)."""
    h = cfg.L / cfg.N
    c = 2.0 - (h * h) * r
    if cfg.outer_bc == "decay":
        half = 0.5 * c
        f_prev = 1.0
        f_cur = half + math.sqrt(half * half - 1.0)
    else:
        f_prev = 0.0
        f_cur = h
    scale = 1.0
    third = f_prev
    for _ in range(1, cfg.N):
        f_next = c * f_cur - f_prev
        third = f_prev
        f_prev, f_cur = f_cur, f_next
        peak = abs(f_cur)
        if peak > _RENORM_LIMIT:
            f_prev /= peak
            f_cur /= peak
            third /= peak
            scale *= peak
    slope = (3.0 * f_cur - 4.0 * f_prev + third) / (2.0 * h)
    return f_cur, slope, scale


def _integrate_side(rs: np.ndarray, cfg: OracleConfig):
    """March the recursion from the outer boundary to the origin.

    Returns interface values ``(f0, df0, scale)`` for the left side; the
    right side mirrors them (value equal, slope negated).  ``scale`` is the
    positive normalization applied on the way.
    """
    if rs.size == 1:
        value, slope, scale = _integrate_scalar(float(rs[0]), cfg)
        return np.array([value]), np.array([slope]), np.array([scale])
    h = cfg.L / cfg.N
    c = 2.0 - (h * h) * rs
    if cfg.outer_bc == "decay":
        half = 0.5 * c
        f_prev = np.ones_like(rs)
        f_cur = half + np.sqrt(half * half - 1.0)  # growing-inward mode
    else:
        f_prev = np.zeros_like(rs)
        f_cur = np.full_like(rs, h)
    scale = np.ones_like(rs)
    third = f_prev.copy()
    for _ in range(1, cfg.N):
        f_next = c * f_cur - f_prev
        third = f_prev
        f_prev, f_cur = f_cur, f_next
        peak = np.abs(f_cur)
        mask = peak > _RENORM_LIMIT
        if mask.any():
            factor = np.where(mask, peak, 1.0)
            f_prev = f_prev / factor
            f_cur = f_cur / factor
            third = third / factor
            scale = scale * factor
    value = f_cur
    slope = (3.0 * f_cur - 4.0 * f_prev + third) / (2.0 * h)
    return value, slope, scale


def _matching_dets(rs: np.ndarray, p: ExtParams, cfg: OracleConfig) -> np.ndarray:
    """Matching determinant, normalized per side by max(|f|, |f'|)."""
    rs = np.asarray(rs, dtype=float)
    value, slope, _ = _integrate_side(rs, cfg)
    m = interface_system(p)
    # right side: same value, opposite slope (reflection of the left march)
    f_plus, df_plus = value, -slope
    f_minus, df_minus = value, slope
    cr0 = m[0, 0] * f_plus + m[0, 2] * df_plus
    cr1 = m[1, 0] * f_plus + m[1, 2] * df_plus
    cl0 = m[0, 1] * f_minus + m[0, 3] * df_minus
    cl1 = m[1, 1] * f_minus + m[1, 3] * df_minus
    norm = np.maximum(np.abs(value), np.abs(slope))
    norm = np.where(norm > 0.0, norm, 1.0)
    return (cr0 * cl1 - cr1 * cl0) / (norm * norm)


def shoot(r: float, p: ExtParams, cfg: OracleConfig) -> complex:
    """Matching determinant at a single trial eigenvalue ``r < 0``.

    Zeros (up to the per-side positive normalization) mark eigenvalues of
    the discretized interface problem.
    """
    if not (r < 0.0):
        raise ValueError("shoot probes negative r only")
    return complex(_matching_dets(np.array([r]), p, cfg)[0])


def _scan_grid(cfg: OracleConfig) -> np.ndarray:
    lo, hi = cfg.scan
    n = int(math.floor((hi - lo) / cfg.scan_step)) + 1
    grid = lo + cfg.scan_step * np.arange(n)
    if grid[-1] < hi - 1e-15 * abs(hi):
        grid = np.append(grid, hi)
    return grid


def scan_spectrum(p: ExtParams, cfg: OracleConfig) -> MatchReport:
    """Bracket-and-refine sweep of the matching determinant.

    The complex determinant is de-phased by its value at the scan start
    (real up to a constant phase whenever the spectrum is real); sign
    changes are refined by Brent bracketing, and |det| dips without a sign
    change are refined by bounded minimization and reported as degenerate
    (double) roots.
    """
    grid = _scan_grid(cfg)
    dets = _matching_dets(grid, p, cfg)
    mags = np.abs(dets)
    peak = float(mags.max())
    if peak == 0.0:
        return MatchReport(roots=(), degenerate=(), det_trace=None)
    anchor = dets[0] if mags[0] > 1e-3 * peak else dets[int(np.argmax(mags))]
    phase = anchor / abs(anchor)
    signed = (dets / phase).real
    coherent = float(np.max(np.abs((dets / phase).imag))) <= 1e-8 * peak

    roots: list[float] = []
    degenerate: list[float] = []
    blocked = np.zeros(len(grid), dtype=bool)

    if coherent:
        def f(r: float) -> float:
            return (complex(_matching_dets(np.array([r]), p, cfg)[0]) / phase).real

        sgn = np.sign(signed)
        for k in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            roots.append(
                float(
                    brentq(
                        f,
                        float(grid[k]),
                        float(grid[k + 1]),
                        xtol=min(cfg.bisect_tol, 1e-12),
                        rtol=8.9e-16,
                        maxiter=200,
                    )
                )
            )
            blocked[max(k - 1, 0) : min(k + 3, len(grid))] = True
        for k in np.nonzero(signed == 0.0)[0]:
            if not blocked[k]:
                roots.append(float(grid[k]))
                blocked[max(k - 1, 0) : min(k + 3, len(grid))] = True

    def magnitude(r: float) -> float:
        return abs(complex(_matching_dets(np.array([r]), p, cfg)[0]))

    for k in range(1, len(grid) - 1):
        if blocked[k] or mags[k] > _DIP_REL * peak:
            continue
        if mags[k] > mags[k - 1] or mags[k] > mags[k + 1]:
            continue
        res = minimize_scalar(
            magnitude,
            bounds=(float(grid[k - 1]), float(grid[k + 1])),
            method="bounded",
            options={"xatol": min(cfg.bisect_tol, 1e-12)},
        )
        if res.fun <= _CONFIRM_REL * peak:
            r_hat = float(res.x)
            if not any(abs(r_hat - q) <= 2 * cfg.scan_step for q in degenerate):
                degenerate.append(r_hat)
        blocked[k - 1 : k + 2] = True

    trace = tuple((float(r), complex(d)) for r, d in zip(grid, dets)) if cfg.keep_trace else None
    return MatchReport(
        roots=tuple(sorted(roots)), degenerate=tuple(sorted(degenerate)), det_trace=trace
    )
