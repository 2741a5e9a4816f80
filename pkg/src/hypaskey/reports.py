"""Report records and deterministic serialization (JSON lines + CSV).

Data rows never carry timestamps or runtimes; runtimes go to a sidecar file
so two runs with the same config produce byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["VerificationReport", "ConvergenceStudy", "fit_order", "write_reports"]


def _json_value(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        return repr(v)
    return v


@dataclass(frozen=True)
class VerificationReport:
    """One named check at one parameter point."""

    name: str
    parameters: dict
    residual: float
    tolerance: float
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def json_row(self) -> str:
        row = {
            "name": self.name,
            "parameters": {k: _json_value(v) for k, v in sorted(self.parameters.items())},
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        return json.dumps(row, sort_keys=True)

    def param_string(self) -> str:
        def fmt(v):
            if isinstance(v, complex):
                return f"{v.real!r}{v.imag:+}i".replace("+", "+").replace("j", "")
            return repr(v)
        return ";".join(f"{k}={fmt(v)}" for k, v in sorted(self.parameters.items()))


def _sort_key(r: VerificationReport):
    return (r.name, r.param_string())


def write_reports(reports: list[VerificationReport], out: str | Path) -> bool:
    """Write <out>.jsonl, <out>.csv and the <out>.meta.json runtime sidecar.

    Reports are merged in canonical (name, parameters) order regardless of
    evaluation order.  Returns True when every check passed.
    """
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    ordered = sorted(reports, key=_sort_key)
    with open(out.with_suffix(".jsonl"), "w") as fh:
        for r in ordered:
            fh.write(r.json_row() + "\n")
    with open(out.with_suffix(".csv"), "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["name", "parameters", "residual", "tolerance", "passed"])
        for r in ordered:
            wr.writerow([r.name, r.param_string(), repr(r.residual),
                         repr(r.tolerance), str(r.passed).lower()])
    meta = {
        "runtime_ms": {f"{r.name}|{r.param_string()}": r.runtime_ms for r in ordered},
        "total_runtime_ms": sum(r.runtime_ms for r in ordered),
    }
    with open(out.with_suffix(".meta.json"), "w") as fh:
        json.dump(meta, fh, sort_keys=True, indent=1)
    return all(r.passed for r in ordered)


def fit_order(bs, errs) -> float:
    """Least-squares slope of log(err) against log(b).

    NaN when fewer than two usable points are supplied (degenerate study).
    """
    pts = [(b, e) for b, e in zip(bs, errs)
           if b > 0 and e > 0 and math.isfinite(e)]
    if len(pts) < 2:
        return math.nan
    xs = [math.log(b) for b, _ in pts]
    ys = [math.log(e) for _, e in pts]
    n = len(pts)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    return sxy / sxx


@dataclass
class ConvergenceStudy:
    """Numeric/asymptotic ratios along a descending list of b values."""

    b_values: list
    ratios: list = field(default_factory=list)
    failures: dict = field(default_factory=dict)   # b -> message

    def __post_init__(self):
        bs = [b for b in self.b_values]
        if any(b2 >= b1 for b1, b2 in zip(bs, bs[1:])):
            raise ValueError("b values must be strictly descending")

    @property
    def errors(self) -> list:
        return [abs(r - 1.0) if r is not None else math.nan for r in self.ratios]

    @property
    def fitted_order(self) -> float:
        good = [(b, e) for b, e, r in zip(self.b_values, self.errors, self.ratios)
                if r is not None]
        return fit_order([b for b, _ in good], [e for _, e in good])

    def write_csv(self, out: str | Path) -> None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["b", "abs_ratio_minus_1", "ratio_re", "ratio_im", "status"])
            for b, r in zip(self.b_values, self.ratios):
                if r is None:
                    wr.writerow([repr(b), "nan", "nan", "nan",
                                 self.failures.get(b, "failed")])
                else:
                    wr.writerow([repr(b), repr(abs(r - 1.0)), repr(r.real),
                                 repr(r.imag), "ok"])
            wr.writerow(["fitted_order", repr(self.fitted_order), "", "", ""])
