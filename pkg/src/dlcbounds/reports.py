"""Inequality check records and their CSV / text / JSON serializations."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

FLOAT_TOL = 1e-10
BASE_COLUMNS = ("bound_id", "lhs", "rhs", "slack", "holds", "tolerance")


@dataclass(frozen=True)
class BoundReport:
    """One ``lhs <= rhs`` check. ``slack = rhs - lhs``; holds iff slack >= -tolerance.

    A report with ``skipped`` set carries no numbers: the check's
    preconditions were not met and ``skipped`` says why.
    """

    bound_id: str
    lhs: float
    rhs: float
    tolerance: float
    context: Mapping[str, float] = field(default_factory=dict)
    skipped: str | None = None

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        if self.skipped is not None:
            return True
        return self.slack >= -self.tolerance

    @classmethod
    def skip(cls, bound_id: str, reason: str, context=None) -> "BoundReport":
        nan = float("nan")
        return cls(bound_id, nan, nan, nan, dict(context or {}), reason)

    def as_dict(self) -> dict:
        d = {
            "bound_id": self.bound_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "tolerance": self.tolerance,
            "context": {k: self.context[k] for k in sorted(self.context)},
        }
        if self.skipped is not None:
            d["skipped"] = self.skipped
        return d


def check(bound_id: str, lhs: float, rhs: float, *, tail: float = 0.0, tail_factor: float = 1.0, **context) -> BoundReport:
    """Build a report with tolerance ``FLOAT_TOL * scale + tail_factor * tail * scale``.

    ``scale = max(1, |lhs|, |rhs|)`` (infinite sides excluded). ``tail`` is the
    truncated mass of the inputs; ``tail_factor`` is the per-bound amplification.
    """
    finite = [abs(v) for v in (lhs, rhs) if math.isfinite(v)]
    scale = max([1.0] + finite)
    tol = FLOAT_TOL * scale + tail_factor * tail * scale
    return BoundReport(bound_id, float(lhs), float(rhs), tol, context)


def all_hold(reports: Iterable[BoundReport]) -> bool:
    return all(r.holds for r in reports)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_text(reports: Iterable[BoundReport]) -> str:
    lines = []
    for r in reports:
        ctx = " ".join(f"{k}={_fmt(r.context[k])}" for k in sorted(r.context))
        if r.skipped is not None:
            lines.append(f"{r.bound_id:<22} SKIP  {r.skipped}" + (f"  [{ctx}]" if ctx else ""))
            continue
        status = "ok  " if r.holds else "FAIL"
        lines.append(
            f"{r.bound_id:<22} {status}  lhs={r.lhs:.12g} rhs={r.rhs:.12g} "
            f"slack={r.slack:.6g} tol={r.tolerance:.3g}" + (f"  [{ctx}]" if ctx else "")
        )
    return "\n".join(lines) + ("\n" if lines else "")


def context_keys(reports: Iterable[BoundReport]) -> list[str]:
    keys = set()
    for r in reports:
        keys.update(r.context)
    return sorted(keys)


def to_csv(reports: Iterable[BoundReport]) -> str:
    """Columns: bound_id, lhs, rhs, slack, holds, tolerance, then context keys sorted."""
    reports = list(reports)
    keys = context_keys(reports)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(BASE_COLUMNS) + keys + ["skipped"])
    for r in reports:
        row = [r.bound_id, _fmt(r.lhs), _fmt(r.rhs), _fmt(r.slack), _fmt(r.holds), _fmt(r.tolerance)]
        row += [_fmt(r.context[k]) if k in r.context else "" for k in keys]
        row.append(r.skipped or "")
        w.writerow(row)
    return buf.getvalue()


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    return v


def to_json_lines(reports: Iterable[BoundReport]) -> str:
    return "".join(json.dumps(_json_safe(r.as_dict()), sort_keys=True) + "\n" for r in reports)
