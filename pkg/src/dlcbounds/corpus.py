"""Seeded corpora of log-concave pmfs and the sweep that checks them."""
from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from .distributions import DistributionSpec, Pmf, build
from .inequalities import check_thm_1_2, check_thm_1_3, run_single_suite
from .entropy import as_order
from .logconcave import PreconditionError

MAX_LEN = 60
SYMMETRIC_KINDS = ("sym_random", "geometric_two_sided", "binomial_half", "discrete_uniform")
ALL_KINDS = (
    "random",
    "random",
    "sym_random",
    "binomial",
    "binomial_half",
    "poisson",
    "geometric_one_sided",
    "geometric_two_sided",
    "discrete_uniform",
    "bernoulli",
    "poisson_binomial",
)


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(index)])


def random_log_concave(rng: np.random.Generator, max_len: int = MAX_LEN, offset: int | None = None) -> Pmf:
    """Concave log-profile: non-increasing slopes, some repeated to create flat runs."""
    n = int(rng.integers(1, max_len + 1))
    scale = float(rng.uniform(0.02, 1.5))
    slopes = np.sort(rng.normal(float(rng.normal(0, 0.5)), scale, size=max(n - 1, 0)))[::-1]
    if n > 2 and rng.random() < 0.25:
        slopes[: int(rng.integers(1, n))] = slopes[0]
    logs = np.concatenate([[0.0], np.cumsum(slopes)])
    logs -= logs.max()
    logs = np.maximum(logs, -600.0) if np.all(np.diff(np.diff(logs)) <= 0) else logs
    w = np.exp(logs)
    off = int(rng.integers(-20, 21)) if offset is None else offset
    return Pmf.from_weights(w, off)


def random_symmetric_log_concave(rng: np.random.Generator, max_len: int = MAX_LEN) -> Pmf:
    """Palindromic log-concave weights around an integer or half-integer center."""
    n = int(rng.integers(1, max_len + 1))
    h = (n - 1) // 2 if n % 2 else n // 2 - 1
    steps = -np.sort(np.abs(rng.normal(0.0, float(rng.uniform(0.02, 1.5)), size=h)))
    half = np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    if n % 2:
        w = np.concatenate([half[::-1], half[1:]])
    else:
        w = np.concatenate([half[::-1], half])
    center = int(rng.integers(-10, 11))
    return Pmf.from_weights(w, center - (len(w) - 1) // 2)


def random_member(rng: np.random.Generator, kind: str, max_len: int = MAX_LEN, tail_eps: float = 1e-12) -> Pmf:
    if kind == "random":
        return random_log_concave(rng, max_len)
    if kind == "sym_random":
        return random_symmetric_log_concave(rng, max_len)
    if kind == "binomial":
        return build(DistributionSpec("binomial", {"n": int(rng.integers(0, max_len)), "p": float(rng.random())}))
    if kind == "binomial_half":
        return build(DistributionSpec("binomial", {"n": int(rng.integers(0, max_len)), "p": 0.5}))
    if kind == "poisson":
        return build(DistributionSpec("poisson", {"lambda": float(rng.uniform(0.05, 8.0))}), tail_eps)
    if kind == "geometric_one_sided":
        return build(DistributionSpec("geometric_one_sided", {"p": float(rng.uniform(0.0, 0.5))}), tail_eps)
    if kind == "geometric_two_sided":
        return build(DistributionSpec("geometric_two_sided", {"p": float(rng.uniform(0.0, 0.35))}), tail_eps)
    if kind == "discrete_uniform":
        return build(DistributionSpec("discrete_uniform", {"n": int(rng.integers(1, max_len + 1))}))
    if kind == "bernoulli":
        return build(DistributionSpec("bernoulli", {"p": float(rng.random())}))
    if kind == "poisson_binomial":
        n = int(rng.integers(1, max_len))
        return build(DistributionSpec("poisson_binomial", {"p_list": rng.random(n).tolist()}))
    raise ValueError(f"unknown corpus kind {kind!r}")


def corpus(count: int, seed: int = 0, symmetric_only: bool = False, max_len: int = MAX_LEN):
    """``[(kind, pmf), ...]``; item i depends only on (seed, i)."""
    kinds = SYMMETRIC_KINDS if symmetric_only else ALL_KINDS
    out = []
    for i in range(count):
        rng = _rng(seed, i)
        kind = kinds[int(rng.integers(len(kinds)))]
        out.append((kind, random_member(rng, kind, max_len)))
    return out


def summand_tuples(count: int, seed: int = 0, symmetric: bool = False, max_len: int = 25, min_var: float = 0.0):
    """Tuples of 2-4 log-concave summands for the sum inequalities."""
    kinds = SYMMETRIC_KINDS if symmetric else ALL_KINDS
    out = []
    i = 0
    while len(out) < count:
        rng = _rng(seed, 10**6 + i)
        i += 1
        k = int(rng.integers(2, 5))
        tup = [random_member(rng, kinds[int(rng.integers(len(kinds)))], max_len) for _ in range(k)]
        if min_var > 0:
            from .distributions import variance

            if min(variance(x) for x in tup) < min_var:
                continue
        out.append(tup)
    return out


@dataclass
class BoundSummary:
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    min_slack: float = math.inf
    worst_index: int = -1


def sweep(
    count: int = 1000,
    seed: int = 0,
    symmetric_only: bool = False,
    alphas=(1.0, 2.0, 3.0, math.inf),
    lambdas=(0, 1, 2, 5),
    tuples: int = 0,
):
    """Run every applicable check over a seeded corpus.

    Returns ``(summaries, failures)``: per-bound_id aggregates in first-seen order
    and the list of ``(index, report)`` for violated bounds.
    """
    summaries: "OrderedDict[str, BoundSummary]" = OrderedDict()
    failures = []

    def record(idx, reps):
        for r in reps:
            s = summaries.setdefault(r.bound_id, BoundSummary())
            if r.skipped is not None:
                s.skipped += 1
                continue
            s.checked += 1
            if r.slack < s.min_slack:
                s.min_slack, s.worst_index = r.slack, idx
            if not r.holds:
                s.failed += 1
                failures.append((idx, r))

    for i, (_, pmf) in enumerate(corpus(count, seed, symmetric_only)):
        record(i, run_single_suite(pmf, alphas, lambdas))
    if tuples:
        for j, tup in enumerate(summand_tuples(tuples, seed, symmetric=symmetric_only)):
            idx = count + j
            for a in (as_order(x).alpha for x in alphas):
                if a > 1:
                    try:
                        record(idx, check_thm_1_2(tup, a))
                    except PreconditionError:
                        pass
                record(idx, check_thm_1_3(tup, a))
    return summaries, failures
