"""Command-line front end.

Subcommands: ``classify``, ``spectrum``, ``oracle``, ``sweep``,
``selftest``.  Every command prints one JSON document to stdout with the
shape ``{"command", "inputs", "outputs", "timing_ms", "version"}``; all
numbers carry 12 significant digits and ordering is deterministic, so
output is byte-stable across runs up to the ``timing_ms`` field.

Exit codes: 0 success, 2 malformed input, 3 violated mathematical
precondition (e.g. asking for the spectrum of unstable parameters).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
import time

from . import __version__
from .errors import DomainError, KreinError, StabilityError
from .extensions import ExtParams, classify, k_eigenvalues
from .jsonfmt import csv_cell, dumps
from .oracle import MatchReport, OracleConfig, scan_spectrum
from .pointint import ESSENTIAL_SPECTRUM_START, PointInteractionWeyl, closed_form_eigenvalues
from .selftest import run_all
from .spectral import SolverOptions, SpectrumReport, find_discrete_spectrum
from .wexpr import parse_weyl_expression

USAGE_ERROR = 2
PRECONDITION_ERROR = 3


class UsageError(Exception):
    pass


def _parse_params(text: str, degrees: bool) -> ExtParams:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--params needs four comma-separated numbers: zeta,phi,xi,omega")
    try:
        zeta, phi, xi, omega = (float(v) for v in parts)
    except ValueError as exc:
        raise UsageError(f"bad --params value: {exc}") from None
    if degrees:
        phi, xi, omega = (math.radians(v) for v in (phi, xi, omega))
    # recognize a decimal-truncated pi/2 intent: the Upsilon corner is a
    # single point, so classification snaps it rather than the library tol
    if abs(phi - 0.5 * math.pi) < 1e-9:
        phi = 0.5 * math.pi
    try:
        return ExtParams(zeta, phi, xi, omega)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("interval must be two comma-separated numbers: lo,hi")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise UsageError(f"bad interval: {exc}") from None
    return lo, hi


def _parse_axis(text: str, degrees: bool, is_angle: bool) -> list[float]:
    """Grid axis: either a single value or 'start:stop:count'."""
    scale = math.pi / 180.0 if (degrees and is_angle) else 1.0
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid axis must be value or start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad grid axis {text!r}: {exc}") from None
        if count < 1:
            raise UsageError("grid axis count must be >= 1")
        if count == 1:
            return [start * scale]
        step = (stop - start) / (count - 1)
        return [(start + k * step) * scale for k in range(count)]
    try:
        return [float(text) * scale]
    except ValueError as exc:
        raise UsageError(f"bad grid axis {text!r}: {exc}") from None


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _emit(command: str, inputs: dict, outputs: dict, started: float) -> None:
    doc = {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "timing_ms": (time.perf_counter() - started) * 1000.0,
        "version": __version__,
    }
    sys.stdout.write(dumps(doc) + "\n")


def _report_json(report: SpectrumReport) -> dict:
    return report.to_json_dict()


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    started = time.perf_counter()
    p = _parse_params(args.params, args.degrees)
    cls = classify(p)
    pair = k_eigenvalues(p)
    outputs = {
        "class": cls.to_json_dict(),
        "k_plus": _complex_pair(pair.k_plus),
        "k_minus": _complex_pair(pair.k_minus),
        "k_moduli": [abs(pair.k_plus), abs(pair.k_minus)],
        "t": pair.t,
    }
    _emit("classify", p.to_json_dict(), outputs, started)
    return 0


def _weyl_for_model(model: str, interval):
    if model == "pointint":
        return PointInteractionWeyl(), True
    intervals = ((-math.inf, 0.0),) if interval is None else (interval,)
    try:
        return parse_weyl_expression(model, real_intervals=intervals), False
    except ValueError as exc:
        raise UsageError(f"bad Weyl expression {model!r}: {exc}") from None


def cmd_spectrum(args) -> int:
    started = time.perf_counter()
    p = _parse_params(args.params, args.degrees)
    interval = _parse_interval(args.interval) if args.interval else None
    weyl, is_model = _weyl_for_model(args.model, interval)
    cls = classify(p)
    if not cls.is_stable:
        raise StabilityError(
            "spectrum is defined for stable parameters only: need zeta=0, phi=pi/2 "
            "or |tanh zeta| < |cos phi|"
        )
    opts = SolverOptions(interval=interval, step=args.step)
    report = find_discrete_spectrum(weyl, p, opts)
    closed = closed_form_eigenvalues(p) if is_model else None
    agreement = None
    if closed is not None:
        in_window = [
            h for h in closed.eigenvalues
            if report.scan_interval[0] <= h.r <= report.scan_interval[1]
        ]
        diffs = [
            abs(a.r - b.r) for a, b in zip(in_window, report.eigenvalues)
        ] if len(in_window) == len(report.eigenvalues) else None
        agreement = {
            "matched": len(report.eigenvalues) if diffs is not None else 0,
            "max_abs_diff": max(diffs) if diffs else (0.0 if diffs is not None else None),
        }
    outputs = {
        "stability": cls.to_json_dict(),
        "report": _report_json(report),
        "closed_form": None if closed is None else _report_json(closed),
        "agreement": agreement,
        "essential_spectrum_start": ESSENTIAL_SPECTRUM_START if is_model else None,
    }
    inputs = {**p.to_json_dict(), "model": args.model,
              "interval": list(interval) if interval else None, "step": args.step}
    _emit("spectrum", inputs, outputs, started)
    return 0


def _match_oracle(report: MatchReport, analytic: SpectrumReport, rel_tol: float = 0.05):
    """Pair oracle findings with closed-form eigenvalues."""
    simple = [h.r for h in analytic.eigenvalues if h.multiplicity == 1]
    double = [h.r for h in analytic.eigenvalues if h.multiplicity == 2]
    matched = 0
    max_rel = 0.0
    missed = 0
    for target in simple:
        cands = [r for r in report.roots if abs(r - target) <= rel_tol * max(abs(target), 1e-6)]
        if cands:
            matched += 1
            max_rel = max(max_rel, min(abs(r - target) / abs(target) for r in cands))
        else:
            missed += 1
    for target in double:
        cands = [
            r for r in report.degenerate if abs(r - target) <= rel_tol * max(abs(target), 1e-6)
        ]
        if cands:
            matched += 1
            max_rel = max(max_rel, min(abs(r - target) / abs(target) for r in cands))
        else:
            missed += 1
    spurious = len(report.roots) + len(report.degenerate) - matched
    return {
        "matched": matched,
        "missed": missed,
        "spurious": spurious,
        "max_rel_error": max_rel if matched else None,
    }


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    p = _parse_params(args.params, args.degrees)
    scan = _parse_interval(args.scan) if args.scan else (-10.0, -1e-6)
    try:
        cfg = OracleConfig(
            L=args.L,
            N=args.N,
            scan=scan,
            scan_step=args.step,
            bisect_tol=args.tol,
            outer_bc=args.bc,
            keep_trace=args.trace is not None,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = scan_spectrum(p, cfg)
    if args.trace is not None:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("r,re_det,im_det\n")
            for r, d in report.det_trace or ():
                fh.write(f"{csv_cell(r)},{csv_cell(d.real)},{csv_cell(d.imag)}\n")
    cls = classify(p)
    analytic = None
    comparison = None
    if cls.is_stable:
        analytic = closed_form_eigenvalues(p)
        in_window = SpectrumReport(
            eigenvalues=tuple(
                h for h in analytic.eigenvalues if scan[0] <= h.r <= scan[1]
            ),
            scan_interval=scan,
            method="closed_form",
        )
        comparison = _match_oracle(report, in_window)
    outputs = {
        "stability": cls.to_json_dict(),
        "match": report.to_json_dict(),
        "analytic": None if analytic is None else _report_json(analytic),
        "comparison": comparison,
    }
    inputs = {**p.to_json_dict(), "L": cfg.L, "N": cfg.N, "scan": list(scan),
              "step": cfg.scan_step, "tol": cfg.bisect_tol, "bc": cfg.outer_bc}
    _emit("oracle", inputs, outputs, started)
    return 0


SWEEP_COLUMNS = (
    "zeta", "phi", "xi", "omega", "stable", "upsilon", "self_adjoint",
    "chi", "k_plus_mod", "k_minus_mod", "eig1", "eig2",
)


def _sweep_cell(params: tuple[float, float, float, float]) -> str:
    p = ExtParams(*params)
    cls = classify(p)
    pair = k_eigenvalues(p)
    eig1 = eig2 = None
    if cls.is_stable:
        for h in closed_form_eigenvalues(p).eigenvalues:
            if h.channel in ("plus", "both"):
                eig1 = h.r
            if h.channel in ("minus", "both"):
                eig2 = h.r
    cells = (
        p.zeta, p.phi, p.xi, p.omega,
        cls.is_stable, cls.in_upsilon, cls.is_self_adjoint, cls.chi,
        abs(pair.k_plus), abs(pair.k_minus), eig1, eig2,
    )
    return ",".join(csv_cell(v) for v in cells)


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    zetas = _parse_axis(args.zeta, args.degrees, is_angle=False)
    phis = _parse_axis(args.phi, args.degrees, is_angle=True)
    xis = _parse_axis(args.xi, args.degrees, is_angle=True)
    omegas = _parse_axis(args.omega, args.degrees, is_angle=True)
    cells = [
        (z, ph, xi, om) for z in zetas for ph in phis for xi in xis for om in omegas
    ]
    workers = max(1, args.workers)
    out_dir = os.path.dirname(os.path.abspath(args.out)) or "."
    fd, tmp_path = tempfile.mkstemp(prefix=".sweep-", suffix=".csv", dir=out_dir)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(",".join(SWEEP_COLUMNS) + "\n")
            if workers == 1:
                for cell in cells:
                    fh.write(_sweep_cell(cell) + "\n")
            else:
                import multiprocessing

                with multiprocessing.Pool(workers) as pool:
                    # map preserves input order: assembly is grid-ordered
                    for line in pool.map(_sweep_cell, cells, chunksize=256):
                        fh.write(line + "\n")
        os.replace(tmp_path, args.out)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    outputs = {
        "rows": len(cells),
        "path": args.out,
        "columns": list(SWEEP_COLUMNS),
    }
    inputs = {"zeta": args.zeta, "phi": args.phi, "xi": args.xi, "omega": args.omega,
              "workers": workers, "degrees": args.degrees}
    _emit("sweep", inputs, outputs, started)
    return 0


def cmd_selftest(args) -> int:
    ok = run_all(write=lambda line: print(line, flush=True))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kreinext",
        description="Classification and spectral analysis of the 2x2 extension family",
    )
    parser.add_argument("--version", action="version", version=f"kreinext {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(sp):
        sp.add_argument(
            "--params",
            required=False,
            help="zeta,phi,xi,omega (radians unless --degrees)",
        )
        sp.add_argument("--zeta", type=float, help="alternative to --params")
        sp.add_argument("--phi", type=float)
        sp.add_argument("--xi", type=float)
        sp.add_argument("--omega", type=float)
        sp.add_argument("--degrees", action="store_true",
                        help="interpret phi, xi, omega in degrees")

    sp = sub.add_parser("classify", help="classify one parameter point")
    add_params(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("spectrum", help="discrete spectrum via the Weyl function")
    add_params(sp)
    sp.add_argument("--model", default="pointint",
                    help="'pointint' or a Weyl expression in mu, e.g. '2*i*sqrt(mu)'")
    sp.add_argument("--interval", help="scan window lo,hi (default: derived)")
    sp.add_argument("--step", type=float, default=None, help="scan step (absolute)")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("oracle", help="finite-difference shooting cross-check")
    add_params(sp)
    sp.add_argument("--L", type=float, default=20.0, help="half-interval length")
    sp.add_argument("--N", type=int, default=4000, help="grid steps per side")
    sp.add_argument("--scan", help="scan window lo,hi (default -10,-1e-6)")
    sp.add_argument("--step", type=float, default=1e-3, help="scan step")
    sp.add_argument("--tol", type=float, default=1e-10, help="refinement tolerance")
    sp.add_argument("--bc", choices=("decay", "dirichlet"), default="decay",
                    help="outer boundary condition")
    sp.add_argument("--trace", help="write the sampled determinant to this CSV path")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="parameter sweep to CSV")
    sp.add_argument("--zeta", required=True, help="value or start:stop:count")
    sp.add_argument("--phi", required=True, help="value or start:stop:count")
    sp.add_argument("--xi", required=True, help="value or start:stop:count")
    sp.add_argument("--omega", required=True, help="value or start:stop:count")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--workers", type=int, default=1, help="parallel workers")
    sp.add_argument("--degrees", action="store_true")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("selftest", help="run the full invariant suite")
    sp.set_defaults(func=cmd_selftest)

    return parser


def _merge_flag_params(args) -> None:
    """Allow --zeta/--phi/--xi/--omega as an alternative to --params."""
    if getattr(args, "params", None) is not None:
        return
    parts = [getattr(args, name, None) for name in ("zeta", "phi", "xi", "omega")]
    if all(v is not None for v in parts):
        args.params = ",".join(repr(float(v)) for v in parts)
        return
    raise UsageError("provide --params zeta,phi,xi,omega or all of --zeta --phi --xi --omega")


# flags whose value may start with '-' (negative numbers, ranges); merged
# into --flag=value before argparse sees them
_VALUE_FLAGS = {"--params", "--zeta", "--phi", "--xi", "--omega", "--scan", "--interval"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_merge_negative_values(argv))
    try:
        if args.command in ("classify", "spectrum", "oracle"):
            _merge_flag_params(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (StabilityError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION_ERROR
    except KreinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION_ERROR


if __name__ == "__main__":
    sys.exit(main())
