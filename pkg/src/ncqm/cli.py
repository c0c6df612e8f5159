"""Command-line entry point: ``python3 -m ncqm <command> [options]``.

Exit codes: 0 every check passed, 1 a verification check failed, 2 invalid
configuration or unwritable output.  Flags never change the exit code.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__, suites
from .hydrogen import PhysicalParams
from .report import Report, render_csv, render_json

__all__ = ["RunConfig", "ConfigError", "COMMANDS", "run", "emit", "main"]

COMMANDS = ("verify-poisson", "verify-trace", "verify-operators", "verify-hydrogen", "spectrum", "bounds",
            "report-all")
NMAX_LIMIT = 12
FSPECS = (0, 1, 2)
OUTPUT_ENV = "NCQM_OUTPUT_DIR"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    theta: float = 1e-3
    e2: float = 1.0
    fspec: int | None = None
    nmax: int = 4
    format: str = "json"
    output: str | None = None
    seed: int = 0
    timing: bool = False

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not math.isfinite(self.theta) or self.theta < 0:
            raise ConfigError("theta must be a finite number >= 0")
        if not math.isfinite(self.e2) or self.e2 <= 0:
            raise ConfigError("e2 must be a finite number > 0")
        if self.fspec is not None and self.fspec not in FSPECS:
            raise ConfigError(f"fspec must be one of {FSPECS}")
        if not 1 <= self.nmax <= NMAX_LIMIT:
            raise ConfigError(f"nmax must be between 1 and {NMAX_LIMIT}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        return self

    def physical(self, fspec: int) -> PhysicalParams:
        return PhysicalParams(e2=self.e2, theta=self.theta, fspec=fspec)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")
        d.pop("timing")
        return d


def _spectrum_fspecs(cfg: RunConfig, default=(0,)) -> tuple:
    return (cfg.fspec,) if cfg.fspec is not None else default


def _suite_fspecs(cfg: RunConfig) -> tuple:
    return (cfg.fspec,) if cfg.fspec is not None else FSPECS


def _row_checks(table: str, res: suites.SuiteResult, s: int) -> None:
    """Mirror table rows as info records so the JSON form carries them too."""
    key = "delta_E_coeff_exact" if table == "spectrum" else "bound_coeff_exact"
    num = "delta_E_numeric" if table == "spectrum" else "bound_numeric"
    for row in res.rows:
        name = f"{table}[n={row['n']},l={row['l']},m={row['m']},s={s}]"
        res.checks.append(suites.Check(name, "info", row[key], row[num], dict(row)))


def _dispatch(cfg: RunConfig) -> tuple[suites.SuiteResult, dict]:
    res = suites.SuiteResult()
    tables: dict = {}
    cmd = cfg.command
    if cmd in ("verify-poisson", "report-all"):
        res.extend(suites.verify_poisson(_suite_fspecs(cfg)))
    if cmd in ("verify-trace", "report-all"):
        res.extend(suites.verify_trace(cfg.seed, fspecs=_suite_fspecs(cfg)))
        res.extend(suites.verify_associativity(cfg.seed, fspecs=_suite_fspecs(cfg)))
    if cmd in ("verify-operators", "report-all"):
        res.extend(suites.verify_operators(cfg.seed, fspecs=_suite_fspecs(cfg)))
    if cmd in ("verify-hydrogen", "report-all"):
        res.extend(suites.verify_hydrogen(cfg.physical(0), nmax_exact=min(cfg.nmax, 4),
                                          nmax_oracle=max(cfg.nmax, 10)))
    if cmd in ("spectrum", "report-all"):
        for s in _spectrum_fspecs(cfg, (0, 1) if cmd == "report-all" else (0,)):
            part = suites.spectrum_table(cfg.physical(s), cfg.nmax)
            tables.setdefault("spectrum", []).extend(part.rows)
            _row_checks("spectrum", part, s)
            res.extend(part)
    if cmd in ("bounds", "report-all"):
        for s in _spectrum_fspecs(cfg, (0, 1) if cmd == "report-all" else (0,)):
            part = suites.bounds_table(cfg.physical(s), cfg.nmax)
            tables.setdefault("bounds", []).extend(part.rows)
            _row_checks("bounds", part, s)
            res.extend(part)
    return res, tables


def run(cfg: RunConfig) -> tuple[Report, int]:
    cfg.validate()
    start = time.perf_counter()
    res, tables = _dispatch(cfg)
    elapsed = (time.perf_counter() - start) * 1000
    report = Report(
        command=cfg.command,
        params=cfg.echo(),
        checks=res.checks,
        flags=res.flags,
        version=__version__,
        # wall time breaks byte-determinism, so it is opt-in
        runtime_ms=round(elapsed, 1) if cfg.timing else None,
        tables=tables,
    )
    return report, 0 if report.ok else 1


def _resolve_output(cfg: RunConfig) -> str | None:
    base = os.environ.get(OUTPUT_ENV)
    if cfg.output is None:
        return os.path.join(base, f"{cfg.command}.{cfg.format}") if base else None
    if base and not os.path.isabs(cfg.output):
        return os.path.join(base, cfg.output)
    return cfg.output


def emit(report: Report, fmt: str, path: str | None) -> None:
    text = render_json(report) if fmt == "json" else render_csv(report)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", type=float, default=1e-3, help="deformation parameter used for numeric columns")
    common.add_argument("--e2", type=float, default=1.0, help="coupling e^2 (a0 = 1/e2)")
    common.add_argument("--fspec", type=int, default=None, help="f(r^2) = (r^2)^(s/2); default: all suites")
    common.add_argument("--nmax", type=int, default=4, help=f"largest principal quantum number (<= {NMAX_LIMIT})")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default=None, help=f"output file; relative paths resolve under ${OUTPUT_ENV}")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized batteries")
    common.add_argument("--timing", action="store_true", help="record wall time (output no longer byte-stable)")
    parser = argparse.ArgumentParser(prog="ncqm", description="Exact checks for rotationally invariant NC QM.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    cfg = RunConfig(args.command, args.theta, args.e2, args.fspec, args.nmax, args.format, args.output,
                    args.seed, args.timing)
    try:
        report, code = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        emit(report, cfg.format, _resolve_output(cfg))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
