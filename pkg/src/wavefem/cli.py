"""Command-line front end.

    wavefem solve --scenario hollow_square --order 3 --out modes.csv

Exit codes: 0 success, 1 numerical failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, fields

from .errors import ConvergenceError, DefinitenessError, WavefemError
from .scenarios import SCENARIOS, ComparisonReport, make_scenario, run_scenario, sample_field

EXIT_OK, EXIT_NUMERICAL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
HEADER = ("mode", "analytic_k0", "computed_k0", "abs_err", "rel_err")
FIELD_HEADER = ("x", "y", "Hx", "Hy", "hz")


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    order: int = 3
    nx: int | None = None
    ny: int | None = None
    kz: float = 0.0
    modes: int = 3
    zero_cutoff: float | None = None
    merge_tol: float = 1e-4
    out: str | None = None
    fields: str | None = None
    field_mode: int = 1
    field_samples: int = 21
    fill: tuple | None = None
    eps_r: float | None = None
    diagonal: str = "up"
    method: str = "householder-ql"

    def to_argv(self) -> list[str]:
        """Serialize back to arguments accepted by :func:`parse_args`."""
        argv = ["solve"]
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if f.name == "fill":
                value = ",".join(repr(float(v)) for v in value)
            argv += ["--" + f.name.replace("_", "-"), str(value)]
        return argv

    def scenario_obj(self):
        return make_scenario(self.scenario, order=self.order, nx=self.nx, ny=self.ny,
                             kz=self.kz, fill=self.fill, eps_r=self.eps_r,
                             diagonal=self.diagonal)


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite number >= 0, got {text}")
    return v


def _positive_float(text):
    v = _nonneg_float(text)
    if v == 0:
        raise argparse.ArgumentTypeError(f"expected a number > 0, got {text}")
    return v


def _rect(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected x0,x1,y0,y1, got {text!r}")
    return tuple(float(p) for p in parts)


def build_parser() -> argparse.ArgumentParser:
    return _parsers()[0]


def _parsers():
    parser = argparse.ArgumentParser(prog="wavefem",
                                     description="Cutoff wavenumbers of rectangular waveguides "
                                                 "with cubic triangular finite elements.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", help="solve a benchmark guide and compare with its analytic modes")
    p.add_argument("--scenario", required=True, choices=SCENARIOS)
    p.add_argument("--order", type=int, choices=(2, 3), default=3)
    p.add_argument("--nx", type=_positive_int, help="cells along x (scenario default if omitted)")
    p.add_argument("--ny", type=_positive_int, help="cells along y (scenario default if omitted)")
    p.add_argument("--kz", type=_nonneg_float, default=0.0, help="propagation constant, rad/cm")
    p.add_argument("--modes", type=_nonneg_int, default=3, help="number of modes to report")
    p.add_argument("--zero-cutoff", type=_nonneg_float,
                   help="eigenvalues at or below this are discarded (default 1e-6 max)")
    p.add_argument("--merge-tol", type=_nonneg_float, default=1e-4,
                   help="relative tolerance for merging degenerate modes")
    p.add_argument("--out", help="modes CSV path (stdout if omitted)")
    p.add_argument("--fields", help="write field samples of --field-mode to this CSV")
    p.add_argument("--field-mode", type=_positive_int, default=1,
                   help="1-based row of the modes table whose field is exported")
    p.add_argument("--field-samples", type=_positive_int, default=21,
                   help="samples per side of the uniform field grid")
    p.add_argument("--fill", type=_rect, help="dielectric rectangle x0,x1,y0,y1 (dielectric_loaded)")
    p.add_argument("--eps-r", type=_positive_float, help="fill permittivity (dielectric_loaded)")
    p.add_argument("--diagonal", choices=("up", "down"), default="up")
    p.add_argument("--method", choices=("householder-ql", "lapack"), default="householder-ql")
    return parser, p


def parse_args(argv=None) -> RunConfig:
    """Parse and validate; invalid input exits with status 2."""
    parser, solve = _parsers()
    ns = parser.parse_args(argv)
    cfg = RunConfig(**{f.name: getattr(ns, f.name) for f in fields(RunConfig)})
    if cfg.field_samples < 2:
        solve.error("--field-samples: need at least 2 samples per side")
    try:
        cfg.scenario_obj()
    except (WavefemError, ValueError) as exc:
        solve.error(str(exc))
    return cfg


def _fmt(x: float, spec: str) -> str:
    return "nan" if x != x else format(x, spec)


def format_modes(report: ComparisonReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in report.rows:
        w.writerow((r.mode, _fmt(r.analytic, ".6f"), _fmt(r.computed, ".6f"),
                    _fmt(r.abs_err, ".6g"), _fmt(r.rel_err, ".6g")))
    return buf.getvalue()


def format_fields(points, values) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELD_HEADER)
    for (x, y), v in zip(points, values):
        w.writerow([format(x, ".6g"), format(y, ".6g")] + [format(c + 0.0, ".6e") for c in v])
    return buf.getvalue()


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def emit_results(report: ComparisonReport, config: RunConfig, stdout=None) -> int:
    """Write the modes table and optional field samples; return the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    table = format_modes(report)
    field_text = None
    if config.fields:
        rows = report.rows
        if config.field_mode > len(rows) or rows[config.field_mode - 1].match is None:
            print(f"wavefem: no computed mode for --field-mode {config.field_mode}", file=sys.stderr)
            return EXIT_NUMERICAL
        column = rows[config.field_mode - 1].match.index
        field_text = format_fields(*sample_field(report.solution, column, config.field_samples))
    try:
        if config.out:
            _write(config.out, table)
        else:
            stdout.write(table)
        if field_text is not None:
            _write(config.fields, field_text)
    except OSError as exc:
        print(f"wavefem: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        report = run_scenario(config.scenario_obj(), config.modes, config.zero_cutoff,
                              config.merge_tol, config.method)
    except (ConvergenceError, DefinitenessError, ArithmeticError) as exc:
        print(f"wavefem: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return emit_results(report, config)


if __name__ == "__main__":
    sys.exit(main())
