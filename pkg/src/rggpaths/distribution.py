"""Exact law of the k-hop path count between the endpoints of a 1d hard RGG.

Conditioned on lens occupancies ``m = (m_1, ..., m_{k-1})`` the count equals
the chain-count volume of a uniformly random lattice path to ``m``.  The
volume is split as (prefix path over the first k-2 directions) x (where the
last direction's steps fall among the prefix's direction-(k-2) steps); the
second part is a 2d path, i.e. a partition with m_{k-1} parts in 0..m_{k-2}.
Every fine-grained interleaving that yields the same partition is counted by
a product of binomials, the degeneracy.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Mapping, Sequence

from scipy import stats

from .algebra import QPolynomial, q_binomial, restricted_partition_gf
from .errors import ConfigError
from .lattice import (DEFAULT_BUDGET, as_mvector, check_budget, iter_words, multinomial,
                      multiplicities, projection_partition, s_sequence, split_ranges,
                      LatticePath)


@dataclass(frozen=True)
class HopConfig:
    k: int
    m: tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"hop count must be >= 1, got {self.k}")
        if self.k >= 2:
            if len(self.m) != self.k - 1:
                raise ConfigError(f"k={self.k} needs {self.k - 1} lens occupancies, got {len(self.m)}")
            try:
                object.__setattr__(self, "m", as_mvector(self.m))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class ExactDistribution:
    """Probability mass function with exact rational masses summing to one."""

    probs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        probs = {int(n): Fraction(p) for n, p in sorted(self.probs.items()) if p != 0}
        if any(p < 0 for p in probs.values()):
            raise ValueError("negative probability")
        if any(n < 0 for n in probs):
            raise ValueError("support must be non-negative")
        if sum(probs.values()) != 1:
            raise ValueError(f"probabilities sum to {sum(probs.values())}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], total: int | None = None) -> "ExactDistribution":
        total = sum(counts.values()) if total is None else total
        return cls({n: Fraction(c, total) for n, c in counts.items()})

    @classmethod
    def point_mass(cls, n: int) -> "ExactDistribution":
        return cls({n: Fraction(1)})

    def __getitem__(self, n: int) -> Fraction:
        return self.probs.get(n, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, ExactDistribution):
            return NotImplemented
        return self.probs == other.probs

    def __hash__(self):
        return hash(tuple(self.probs.items()))

    @property
    def support(self) -> list[int]:
        return list(self.probs)

    @property
    def max_support(self) -> int:
        return max(self.probs)

    def as_list(self) -> list[Fraction]:
        """Dense list of masses for 0..max support."""
        return [self[n] for n in range(self.max_support + 1)]

    def scaled(self, factor: int) -> dict[int, Fraction]:
        return {n: p * factor for n, p in self.probs.items()}


def distribution_moments(d: ExactDistribution) -> tuple[Fraction, Fraction]:
    """Exact (mean, variance)."""
    mean = sum((n * p for n, p in d.probs.items()), Fraction(0))
    var = sum(((n - mean) ** 2 * p for n, p in d.probs.items()), Fraction(0))
    return mean, var


def degeneracy(pi_star: Sequence[int], prefix_mults: Sequence[Sequence[int]]) -> int:
    """Number of full lattice paths sharing one prefix and one 2d partition.

    ``pi_star`` counts the last direction's steps in each gap between the
    prefix's direction-(k-2) steps; ``prefix_mults[l]`` counts direction-l
    steps in those same gaps.  Within a gap the two groups interleave freely.
    """
    n = len(pi_star)
    for v in prefix_mults:
        if len(v) != n:
            raise ValueError(f"multiplicity vectors differ in length: {len(v)} vs {n}")
    out = 1
    for t in range(n):
        others = sum(v[t] for v in prefix_mults)
        out *= math.comb(pi_star[t] + others, pi_star[t])
    return out


# -- prefix data ------------------------------------------------------------

def _prefix_data(prefix: LatticePath) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(S sequence, per-gap count of lower-direction steps) for a prefix path."""
    d = prefix.dim
    s = s_sequence(prefix)
    other = [0] * (prefix.m[-1] + 1)
    for l in range(1, d):
        for t, c in enumerate(multiplicities(projection_partition(prefix, d, l))):
            other[t] += c
    return s, tuple(other)


def _prefixes(m: tuple[int, ...], start: int = 0, stop: int | None = None):
    pm = m[:-1]
    for w in iter_words(pm, start, stop):
        yield _prefix_data(LatticePath(w, pm))


def _inner_histogram(s, other, n_parts: int) -> Counter:
    """Degeneracy-weighted volume histogram over the 2d paths for one prefix."""
    hist = Counter()
    width = len(s)
    for parts in combinations_with_replacement(range(width), n_parts):
        mult = [0] * width
        for x in parts:
            mult[x] += 1
        hist[sum(a * b for a, b in zip(s, mult))] += degeneracy(mult, [other])
    return hist


def _theorem1_chunk(m: tuple[int, ...], start: int, stop: int) -> Counter:
    cache: dict = {}
    total = Counter()
    for s, other in _prefixes(m, start, stop):
        key = (s, other)
        if key not in cache:
            cache[key] = _inner_histogram(s, other, m[-1])
        total.update(cache[key])
    return total


def _run_chunks(fn, m, workers):
    n_prefix = multinomial(m[:-1])
    if not workers or workers <= 1:
        return fn(m, 0, n_prefix)
    total = None
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(fn, m, lo, hi) for lo, hi in split_ranges(n_prefix, 4 * workers)]
        for f in futures:
            part = f.result()
            total = part if total is None else total + part
    return total


def _trivial_case(cfg: HopConfig, r0: float | None) -> ExactDistribution:
    if cfg.k == 1:
        if r0 is None:
            raise ConfigError("k=1 needs the connection range r0")
        return ExactDistribution.point_mass(1 if r0 > 1 else 0)
    return ExactDistribution.point_mass(cfg.m[0])


def theorem1_counts(k: int, m: Sequence[int], budget: int | None = DEFAULT_BUDGET,
                    workers: int | None = None) -> dict[int, int]:
    """Unnormalised p.m.f.: number of lattice paths with each volume, k >= 3."""
    cfg = HopConfig(k, tuple(m))
    if k < 3:
        raise ConfigError("the lattice path sum needs k >= 3")
    m = cfg.m
    size = multinomial(m[:-1]) * math.comb(m[-2] + m[-1], m[-1])
    check_budget("prefix x partition enumeration", size, budget)
    return dict(sorted(_run_chunks(_theorem1_chunk, m, workers).items()))


def pmf_theorem1(k: int, m: Sequence[int] = (), *, r0: float | None = None,
                 budget: int | None = DEFAULT_BUDGET, workers: int | None = None) -> ExactDistribution:
    """Exact p.m.f. of the k-hop path count given lens occupancies ``m``.

    For k = 1 the answer depends only on ``r0``; for k = 2 every lens point
    gives one path, so the law is a point mass at ``m_1``.
    """
    cfg = HopConfig(k, tuple(m))
    if k < 3:
        return _trivial_case(cfg, r0)
    counts = theorem1_counts(k, cfg.m, budget, workers)
    return ExactDistribution.from_counts(counts, multinomial(cfg.m))


def degeneracy_total(k: int, m: Sequence[int], budget: int | None = DEFAULT_BUDGET) -> int:
    """Sum of degeneracies over every prefix path and every 2d path."""
    return sum(theorem1_counts(k, m, budget).values())


# -- generating function route ---------------------------------------------

def _theorem2_chunk(m: tuple[int, ...], start: int, stop: int) -> QPolynomial:
    q_max = math.prod(m)
    cache: dict = {}
    total = QPolynomial(())
    for s, other in _prefixes(m, start, stop):
        exponents = tuple(1 + x for x in other)
        key = (s, exponents)
        if key not in cache:
            series = restricted_partition_gf(s, exponents, m[-1], q_max)
            cache[key] = series.u_slice(m[-1])
        total = total + cache[key]
    return total


def pgf_counts(k: int, m: Sequence[int], budget: int | None = DEFAULT_BUDGET,
               workers: int | None = None) -> QPolynomial:
    """Unnormalised p.g.f. (integer coefficients) via coefficient extraction, k >= 3."""
    cfg = HopConfig(k, tuple(m))
    if k < 3:
        raise ConfigError("the generating-function sum needs k >= 3")
    m = cfg.m
    check_budget("prefix path enumeration", multinomial(m[:-1]), budget)
    return _run_chunks(_theorem2_chunk, m, workers)


def pgf_theorem2(k: int, m: Sequence[int] = (), *, r0: float | None = None,
                 budget: int | None = DEFAULT_BUDGET, workers: int | None = None) -> QPolynomial:
    """p.g.f. of the k-hop path count as a polynomial in q with Fraction coefficients."""
    cfg = HopConfig(k, tuple(m))
    if k < 3:
        d = _trivial_case(cfg, r0)
        return QPolynomial(d.as_list())
    return pgf_counts(k, cfg.m, budget, workers) / multinomial(cfg.m)


def pmf_k3_closed_form(m1: int, m2: int) -> ExactDistribution:
    """Three hops: normalised Gaussian binomial coefficients."""
    if m1 < 1 or m2 < 1:
        raise ConfigError("lens occupancies must be >= 1")
    poly = q_binomial(m1 + m2, m1)
    return ExactDistribution.from_counts(dict(enumerate(poly.coeffs)), math.comb(m1 + m2, m1))


# -- Poisson occupancies ------------------------------------------------------

def check_range(k: int, r0: float) -> None:
    """Enforce the non-overlapping lens condition 1/k < r0 < 1/(k-1)."""
    upper = math.inf if k == 1 else 1 / (k - 1)
    if not (1 / k < r0 < upper):
        hi = "inf" if k == 1 else f"1/{k - 1}"
        raise ConfigError(f"r0={r0} violates the lens condition 1/{k} < r0 < {hi} for k={k}")


def _poisson_cutoff(mu: float, tail: float) -> int:
    """Smallest M with P(X > M) < tail for X ~ Poisson(mu)."""
    if mu == 0:
        return 0
    M = int(stats.poisson.isf(tail, mu))
    while stats.poisson.sf(M, mu) >= tail:
        M += 1
    while M > 0 and stats.poisson.sf(M - 1, mu) < tail:
        M -= 1
    return M


def sigma2_distribution(lam: float, r0: float, tail: float = 1e-12) -> dict[int, float]:
    """Two hops: the count is the L_1 occupancy, Poisson with mean lam*(2 r0 - 1)."""
    check_range(2, r0)
    if lam < 0:
        raise ConfigError("density must be non-negative")
    mu = lam * (2 * r0 - 1)
    M = _poisson_cutoff(mu, tail)
    return {n: float(stats.poisson.pmf(n, mu)) for n in range(M + 1)}


def _conditional_masses(k: int, m: tuple[int, ...], budget) -> list[float]:
    if k == 2:
        return [0.0] * m[0] + [1.0]
    if k == 3:
        return [float(p) for p in pmf_k3_closed_form(*m).as_list()]
    # generating-function route: same masses as pmf_theorem1, cheaper per call
    return [float(c) for c in pgf_theorem2(k, m, budget=budget).coeffs]


def poisson_mixture(k: int, lam: float, r0: float, eps: float = 1e-6,
                    budget: int | None = DEFAULT_BUDGET) -> dict[int, float]:
    """Unconditional law of the k-hop count when occupancies are iid Poisson.

    The occupancy lattice is truncated per coordinate so that the dropped
    Poisson mass is below ``eps`` overall; the returned masses sum to at
    least ``1 - eps``.
    """
    check_range(k, r0)
    if lam < 0:
        raise ConfigError("density must be non-negative")
    if eps <= 0:
        raise ConfigError("eps must be positive")
    if k == 1:
        return {1 if r0 > 1 else 0: 1.0}
    mu = lam * (k * r0 - 1)
    M = _poisson_cutoff(mu, eps / (k - 1))
    weights = [float(stats.poisson.pmf(n, mu)) for n in range(M + 1)]
    out: dict[int, float] = Counter()
    cache: dict[tuple[int, ...], list[float]] = {}
    for occ in product(range(M + 1), repeat=k - 1):
        w = math.prod(weights[x] for x in occ)
        if w == 0:
            continue
        if 0 in occ:
            out[0] += w
            continue
        # the law is invariant under reversing the lens order
        key = min(occ, occ[::-1])
        if key not in cache:
            cache[key] = _conditional_masses(k, key, budget)
        for n, p in enumerate(cache[key]):
            out[n] += w * p
    return dict(sorted(out.items()))
