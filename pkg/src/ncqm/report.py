"""Machine-readable reports: one JSON schema and fixed-header CSV tables."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

from .suites import Check, Flag

__all__ = ["Report", "SPECTRUM_HEADER", "BOUNDS_HEADER", "CHECKS_HEADER", "render_json", "render_csv"]

SPECTRUM_HEADER = ("n", "l", "m", "E_n", "delta_E_coeff_exact", "delta_E_numeric", "bound_numeric", "flags")
BOUNDS_HEADER = ("n", "l", "m", "bound_coeff_exact", "bound_numeric", "product_numeric", "r2_exact", "r2_printed",
                 "flags")
CHECKS_HEADER = ("name", "status", "exact", "numeric")


@dataclass
class Report:
    command: str
    params: dict
    checks: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    version: str = ""
    runtime_ms: float | None = None
    # table rows keyed by table name ("spectrum" / "bounds"); the CSV body for those commands
    tables: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "checks": [_clean(asdict(c)) for c in self.checks],
            "flags": [_clean(asdict(f)) for f in self.flags],
            "version": self.version,
            "runtime_ms": self.runtime_ms,
        }


def _clean(obj):
    """JSON-safe copy: tuples become lists, non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def render_json(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, allow_nan=False) + "\n"


def _flag_row(f: Flag) -> dict:
    where = ",".join(f"{k}={v}" for k, v in f.where.items())
    values = ";".join(f"{k}={v}" for k, v in f.values.items())
    return {"name": f"{f.name}[{where}]", "status": "flag", "exact": values, "numeric": ""}


def _check_row(c: Check) -> dict:
    return {"name": c.name, "status": c.status, "exact": "" if c.exact is None else c.exact,
            "numeric": "" if c.numeric is None else repr(c.numeric)}


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    if report.command in ("spectrum", "bounds"):
        header = SPECTRUM_HEADER if report.command == "spectrum" else BOUNDS_HEADER
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in report.tables.get(report.command, []):
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items() if k in header})
        return buf.getvalue()
    writer = csv.DictWriter(buf, fieldnames=CHECKS_HEADER, lineterminator="\n")
    writer.writeheader()
    for c in report.checks:
        writer.writerow(_check_row(c))
    for f in report.flags:
        writer.writerow(_flag_row(f))
    return buf.getvalue()
