"""Command-line entry point.

Distribution spec files are flat JSON objects with a ``family`` key plus that
family's parameters::

    {"family": "geometric_two_sided", "p": 0.5}
    {"family": "explicit", "offset": -1, "probs": [0.25, 0.5, 0.25]}
    {"family": "binomial", "n": 10, "p": 0.3}
    {"family": "poisson", "lambda": 2.5}
    {"family": "discrete_uniform", "n": 7, "start": 0}
    {"family": "bernoulli", "p": 0.2}
    {"family": "geometric_one_sided", "p": 0.4}
    {"family": "poisson_binomial", "p_list": [0.1, 0.5, 0.9]}

Exit status is 1 when any reported bound fails, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

from .bernoulli import (
    ESSEEN_CHAIN_CONSTANT,
    PUBLISHED_ESSEEN_CONSTANT,
    BernoulliSumSpec,
    check_bernoulli_bounds,
    check_mr_bound,
    crossover_variance,
    esseen_bound,
    optimal_constant_c,
    poisson_binomial_pmf,
)
from .corpus import sweep
from .distributions import FAMILIES, DistributionError, DistributionSpec, Pmf, build, variance
from .entropy import as_order, concentration, delta, entropy_power, m_functional, renyi_entropy
from .inequalities import check_thm_1_2, check_thm_1_3, run_single_suite
from .logconcave import PreconditionError
from .moriguti import compute_constants
from .reports import BoundReport, all_hold, to_csv, to_json_lines, to_text

COMMANDS = ("analyze", "verify", "constants", "esseen", "sweep")
FORMATS = ("text", "csv", "structured")
DEFAULT_ALPHAS = ("1", "2", "3", "inf")
DEFAULT_LAMBDAS = (0, 1, 2, 5)
DEFAULT_CONSTANT_ALPHAS = ("1.5", "2", "3", "10", "100", "inf")


class SpecParseError(ValueError):
    """Carries a ``source:line: field: message`` diagnostic."""


@dataclass
class RunConfig:
    command: str
    spec_paths: list = field(default_factory=list)
    inline_spec: str | None = None
    alpha_list: list = field(default_factory=list)
    lambda_list: list = field(default_factory=list)
    tail_eps: float = 1e-12
    output_format: str = "text"
    seed: int = 0
    count: int = 1000
    tuples: int = 0
    symmetric_only: bool = False
    p_list: list = field(default_factory=list)


# ---------------------------------------------------------------- spec parsing


def _key_line(text: str, key: str) -> int:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else 1


def parse_spec_text(text: str, source: str = "<inline>"):
    """Returns ``(spec, text)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecParseError(f"{source}:1: spec must be a JSON object")
    if "family" not in doc:
        raise SpecParseError(f"{source}:1: family: missing required key")
    fam = doc["family"]
    if fam not in FAMILIES:
        raise SpecParseError(f"{source}:{_key_line(text, 'family')}: family: unknown family {fam!r}")
    for k, v in doc.items():
        if isinstance(v, dict):
            raise SpecParseError(f"{source}:{_key_line(text, k)}: {k}: nested objects are not allowed")
    params = {k: v for k, v in doc.items() if k != "family"}
    return DistributionSpec(fam, params), text


def load_spec(text: str, source: str, tail_eps: float) -> Pmf:
    spec, raw = parse_spec_text(text, source)
    try:
        return build(spec, tail_eps)
    except DistributionError as exc:
        bad = [k for k in spec.params if re.search(r"\b%s\b" % re.escape(k), str(exc))]
        key = bad[0] if bad else "family"
        raise SpecParseError(f"{source}:{_key_line(raw, key)}: {key}: {exc}") from None


def read_specs(cfg: RunConfig):
    pmfs = []
    if cfg.inline_spec is not None:
        pmfs.append(load_spec(cfg.inline_spec, "<inline>", cfg.tail_eps))
    for path in cfg.spec_paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecParseError(f"{path}: {exc.strerror}") from None
        pmfs.append(load_spec(text, path, cfg.tail_eps))
    return pmfs


# ---------------------------------------------------------------- output


def _num(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def emit_table(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_num(r.get(c, "")) for c in columns])
        out.write(buf.getvalue())
    elif fmt == "structured":
        for r in rows:
            safe = {k: (None if isinstance(v, float) and math.isnan(v) else ("inf" if v == math.inf else v)) for k, v in r.items()}
            out.write(json.dumps(safe, sort_keys=True) + "\n")
    else:
        widths = [max(len(c), *(len(_fmt_cell(r.get(c, ""))) for r in rows)) if rows else len(c) for c in columns]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(_fmt_cell(r.get(c, "")).ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")


def _fmt_cell(v) -> str:
    return f"{v:.15g}" if isinstance(v, float) else str(v)


def emit_reports(reports, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(to_csv(reports))
    elif fmt == "structured":
        out.write(to_json_lines(reports))
    else:
        out.write(to_text(reports))


# ---------------------------------------------------------------- commands


def _alpha_label(order) -> str:
    return {"shannon": "1", "infinity": "inf"}.get(order.kind, repr(order.alpha))


def cmd_analyze(cfg: RunConfig, out) -> int:
    rows = []
    for i, pmf in enumerate(read_specs(cfg)):
        base = {"spec": i}
        rows.append({**base, "quantity": "M", "param": "", "value": m_functional(pmf)})
        rows.append({**base, "quantity": "Var", "param": "", "value": variance(pmf)})
        for lam in cfg.lambda_list:
            rows.append({**base, "quantity": "Q", "param": f"lambda={lam}", "value": concentration(pmf, lam)})
        for a in cfg.alpha_list:
            o = as_order(a)
            p = f"alpha={_alpha_label(o)}"
            rows.append({**base, "quantity": "H", "param": p, "value": renyi_entropy(pmf, o)})
            rows.append({**base, "quantity": "N", "param": p, "value": entropy_power(pmf, o)})
            rows.append({**base, "quantity": "Delta", "param": p, "value": delta(pmf, o)})
    emit_table(rows, ["spec", "quantity", "param", "value"], cfg.output_format, out)
    return 0


def _bernoulli_spec_of(pmf_spec_family: str, params) -> BernoulliSumSpec | None:
    if pmf_spec_family == "poisson_binomial":
        return BernoulliSumSpec(params["p_list"])
    if pmf_spec_family == "binomial":
        return BernoulliSumSpec([params["p"]] * int(params["n"]))
    if pmf_spec_family == "bernoulli":
        return BernoulliSumSpec([params["p"]])
    return None


def cmd_verify(cfg: RunConfig, out) -> int:
    pmfs = read_specs(cfg)
    reports: list[BoundReport] = []
    for pmf in pmfs:
        reports.extend(run_single_suite(pmf, cfg.alpha_list, cfg.lambda_list))
    if len(pmfs) > 1:
        for a in cfg.alpha_list:
            o = as_order(a)
            if o.alpha > 1.0:
                try:
                    reports.extend(check_thm_1_2(pmfs, o.alpha))
                except PreconditionError as exc:
                    reports.append(BoundReport.skip("eq1.10-lower", str(exc), {"alpha": o.alpha}))
            reports.extend(check_thm_1_3(pmfs, o.alpha if o.kind != "shannon" else 1.0))
    emit_reports(reports, cfg.output_format, out)
    return 0 if all_hold(reports) else 1


def cmd_constants(cfg: RunConfig, out) -> int:
    rows = []
    for a in cfg.alpha_list:
        o = as_order(a)
        try:
            k = compute_constants(o.alpha)
        except ValueError as exc:
            print(f"constants: alpha={_alpha_label(o)}: {exc}", file=sys.stderr)
            return 2
        rows.append({"alpha": _alpha_label(o), "c_alpha": k.c_alpha, "A_alpha": k.A_alpha, "var_extremal": k.var_extremal})
    emit_table(rows, ["alpha", "c_alpha", "A_alpha", "var_extremal"], cfg.output_format, out)
    return 0


def cmd_esseen(cfg: RunConfig, out) -> int:
    spec = BernoulliSumSpec(cfg.p_list)
    f = poisson_binomial_pmf(spec)
    c = optimal_constant_c()
    info = [
        {"quantity": "M", "value": m_functional(f)},
        {"quantity": "Var", "value": spec.variance},
        {"quantity": "esseen_integral", "value": esseen_bound(spec, 1.0 / math.pi)},
        {"quantity": "esseen_chain_constant", "value": ESSEEN_CHAIN_CONSTANT},
        {"quantity": "published_constant", "value": PUBLISHED_ESSEEN_CONSTANT},
        {"quantity": "optimal_c", "value": c},
        {"quantity": "crossover_variance", "value": crossover_variance(c)},
    ]
    reports = check_bernoulli_bounds(spec, c)
    for a in cfg.alpha_list:
        o = as_order(a)
        if o.alpha >= 2.0:
            reports.append(check_mr_bound(spec, o))
    if cfg.output_format == "text":
        emit_table(info, ["quantity", "value"], "text", out)
        out.write("\n")
        emit_reports(reports, "text", out)
    elif cfg.output_format == "csv":
        emit_table(info, ["quantity", "value"], "csv", out)
        out.write("\n")
        emit_reports(reports, "csv", out)
    else:
        emit_table(info, ["quantity", "value"], "structured", out)
        emit_reports(reports, "structured", out)
    return 0 if all_hold(reports) else 1


def cmd_sweep(cfg: RunConfig, out) -> int:
    summaries, failures = sweep(
        cfg.count, cfg.seed, cfg.symmetric_only, [as_order(a) for a in cfg.alpha_list], cfg.lambda_list, cfg.tuples
    )
    rows = [
        {
            "bound_id": bid,
            "checked": s.checked,
            "failed": s.failed,
            "skipped": s.skipped,
            "min_slack": s.min_slack if s.checked else float("nan"),
            "worst_index": s.worst_index,
        }
        for bid, s in summaries.items()
    ]
    emit_table(rows, ["bound_id", "checked", "failed", "skipped", "min_slack", "worst_index"], cfg.output_format, out)
    for idx, r in failures:
        print(f"violation: item {idx}: {r.bound_id} slack={r.slack!r} tol={r.tolerance!r}", file=sys.stderr)
    return 0 if not failures else 1


HANDLERS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "constants": cmd_constants,
    "esseen": cmd_esseen,
    "sweep": cmd_sweep,
}


# ---------------------------------------------------------------- argv


def _p_values(tokens):
    vals = []
    for tok in tokens:
        vals.extend(float(x) for x in tok.split(",") if x.strip())
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dlcbounds", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("args", nargs="*", help="spec files (analyze/verify) or p values (esseen)")
    ap.add_argument("--inline", dest="inline_spec", help="spec as a JSON string")
    ap.add_argument("--alpha", action="append", help="Renyi order; repeatable; 1 = Shannon, inf = min-entropy")
    ap.add_argument("--lambda", dest="lam", action="append", type=int, help="window width; repeatable")
    ap.add_argument("--tail-eps", type=float, default=1e-12)
    ap.add_argument("--format", dest="output_format", choices=FORMATS, default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=1000, help="sweep corpus size")
    ap.add_argument("--tuples", type=int, default=0, help="sweep: number of summand tuples for the sum bounds")
    ap.add_argument("--symmetric-only", action="store_true")
    return ap


def config_from_args(argv=None) -> RunConfig:
    ap = build_parser()
    ns = ap.parse_args(argv)
    default_alphas = DEFAULT_CONSTANT_ALPHAS if ns.command == "constants" else DEFAULT_ALPHAS
    cfg = RunConfig(
        command=ns.command,
        inline_spec=ns.inline_spec,
        alpha_list=list(ns.alpha or default_alphas),
        lambda_list=list(ns.lam if ns.lam is not None else DEFAULT_LAMBDAS),
        tail_eps=ns.tail_eps,
        output_format=ns.output_format,
        seed=ns.seed,
        count=ns.count,
        tuples=ns.tuples,
        symmetric_only=ns.symmetric_only,
    )
    if ns.command in ("analyze", "verify"):
        cfg.spec_paths = list(ns.args)
        if not cfg.spec_paths and cfg.inline_spec is None:
            ap.error(f"{ns.command} needs a spec file or --inline")
        if cfg.inline_spec is not None and cfg.spec_paths and ns.command == "analyze":
            ap.error("give either spec files or --inline, not both")
    elif ns.command == "esseen":
        try:
            cfg.p_list = _p_values(ns.args)
        except ValueError as exc:
            ap.error(f"esseen: bad p value: {exc}")
        if not cfg.p_list and cfg.inline_spec:
            spec, _ = parse_spec_text(cfg.inline_spec)
            try:
                bs = _bernoulli_spec_of(spec.family, spec.params)
            except (KeyError, ValueError) as exc:
                ap.error(f"esseen: {exc}")
            if bs is None:
                ap.error("esseen: --inline spec must be bernoulli, binomial or poisson_binomial")
            cfg.p_list = list(bs.p_list)
        if not cfg.p_list:
            ap.error("esseen needs p values")
    elif ns.args:
        ap.error(f"{ns.command} takes no positional arguments")
    if any(l < 0 for l in cfg.lambda_list):
        ap.error("--lambda must be non-negative")
    for a in cfg.alpha_list:
        try:
            as_order(a)
        except ValueError as exc:
            ap.error(f"--alpha {a}: {exc}")
    return cfg


def run(cfg: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        return HANDLERS[cfg.command](cfg, out)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DistributionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
