"""Goodness-of-fit between an exact p.m.f. and a simulated histogram."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy import stats

from .sim import Histogram

MIN_EXPECTED = 5.0


def total_variation(p: Mapping[int, float], q: Mapping[int, float]) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(n, 0)) - float(q.get(n, 0))) for n in keys)


def pool_bins(probs: Mapping[int, float], counts: Mapping[int, int], total: int,
              min_expected: float = MIN_EXPECTED) -> list[tuple[int, int, float, int]]:
    """Merge consecutive values of n until each pool expects >= ``min_expected``.

    Returns ``(lo, hi, expected, observed)`` per pool.  A short final pool is
    folded into its left neighbour; observations beyond the last exact support
    point land in the last pool.
    """
    top = max([*probs, *counts, 0])
    pools, lo, exp, obs = [], 0, 0.0, 0
    for n in range(top + 1):
        exp += total * float(probs.get(n, 0))
        obs += counts.get(n, 0)
        if exp >= min_expected:
            pools.append([lo, n, exp, obs])
            lo, exp, obs = n + 1, 0.0, 0
    if exp > 0 or obs:
        if pools:
            pools[-1][1] = top
            pools[-1][2] += exp
            pools[-1][3] += obs
        else:
            pools.append([0, top, exp, obs])
    return [tuple(p) for p in pools]


def chi_square(probs: Mapping[int, float], counts: Mapping[int, int], total: int,
               min_expected: float = MIN_EXPECTED) -> tuple[float, int, float]:
    """Pearson statistic, degrees of freedom and p-value after pooling."""
    pools = pool_bins(probs, counts, total, min_expected)
    df = len(pools) - 1
    if df < 1:
        return 0.0, 0, 1.0
    chi2 = sum((o - e) ** 2 / e for _, _, e, o in pools)
    return float(chi2), df, float(stats.chi2.sf(chi2, df))


@dataclass
class ComparisonReport:
    trials: int
    total_variation: float
    chi_square: float
    degrees_of_freedom: int
    p_value: float
    exact_mean: float
    empirical_mean: float
    impossible_observations: int
    table: list[dict] = field(default_factory=list)
    exact_mean_fraction: str | None = None

    def passes(self, tv_max: float, alpha: float) -> bool:
        return (self.total_variation <= tv_max and self.p_value >= alpha
                and self.impossible_observations == 0)

    def to_dict(self) -> dict:
        return asdict(self)


def compare(exact: Mapping[int, Fraction | float], hist: Histogram) -> ComparisonReport:
    probs = {n: float(p) for n, p in exact.items()}
    freqs = hist.frequencies()
    chi2, df, pval = chi_square(probs, hist.counts, hist.total)
    exact_mean = sum(n * p for n, p in exact.items())
    top = max([*exact, *hist.counts])
    table = []
    for n in range(top + 1):
        row = {"n": n, "exact": probs.get(n, 0.0), "empirical": freqs.get(n, 0.0)}
        p = exact.get(n, 0)
        if isinstance(p, (int, Fraction)):
            p = Fraction(p)
            row["exact_numerator"] = str(p.numerator)
            row["exact_denominator"] = str(p.denominator)
        table.append(row)
    impossible = sum(c for n, c in hist.counts.items() if probs.get(n, 0.0) == 0.0)
    return ComparisonReport(
        trials=hist.total,
        total_variation=total_variation(probs, freqs),
        chi_square=chi2,
        degrees_of_freedom=df,
        p_value=pval,
        exact_mean=float(exact_mean),
        empirical_mean=hist.mean,
        impossible_observations=impossible,
        table=table,
        exact_mean_fraction=str(exact_mean) if isinstance(exact_mean, (int, Fraction)) else None,
    )


def sample_from_distribution(probs: Mapping[int, float], trials: int,
                             rng: np.random.Generator) -> Histogram:
    """Draw a histogram straight from ``probs`` (null-hypothesis self test)."""
    support = sorted(probs)
    p = np.array([float(probs[n]) for n in support])
    counts = rng.multinomial(trials, p / p.sum())
    return Histogram({n: int(c) for n, c in zip(support, counts) if c}, trials)
