"""Sampling the 1d hard random geometric graph on [0, 1] and counting k-hop paths.

Vertices 0 and 1 are always present.  Under the lens condition
``1/k < r0 < 1/(k-1)`` the j-th interior vertex of any k-hop path from 0 to 1
lies in the lens ``L_j = (1 - (k-j) r0, j r0)``, so only lens points need to
be sampled.  ``full_interval=True`` samples the whole interval instead, which
the exhaustive path counter uses to confirm that the extra points are inert.

RNG streams: trial ``i`` of a run with seed ``s`` draws from
``numpy.random.default_rng([s, i])`` (a PCG64 seeded through
``SeedSequence([s, i])``), so any split of the trials across workers
reproduces the serial histogram exactly.
"""

from __future__ import annotations

import bisect
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .distribution import check_range
from .errors import ConfigError
from .lattice import as_mvector, split_ranges


@dataclass(frozen=True)
class Lens:
    j: int
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo < x < self.hi


def lens_interval(k: int, j: int, r0: float) -> Lens:
    """``B(0, j r0) ∩ B(1, (k-j) r0)``, of width ``k r0 - 1``."""
    check_range(k, r0)
    if not 1 <= j <= k - 1:
        raise ConfigError(f"lens index {j} outside 1..{k - 1}")
    return Lens(j, 1 - (k - j) * r0, j * r0)


def lenses(k: int, r0: float) -> list[Lens]:
    return [lens_interval(k, j, r0) for j in range(1, k)]


@dataclass(frozen=True)
class GeometryConfig:
    """Either a Poisson density ``lam`` or fixed per-lens occupancies ``m``."""

    k: int
    r0: float
    lam: float | None = None
    m: tuple[int, ...] | None = None
    trials: int = 1
    seed: int = 0
    full_interval: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError("hop count must be >= 1")
        check_range(self.k, self.r0)
        if (self.lam is None) == (self.m is None):
            raise ConfigError("give exactly one of a density (lam) or occupancies (m)")
        if self.lam is not None and self.lam < 0:
            raise ConfigError("density must be non-negative")
        if self.m is not None:
            if len(self.m) != self.k - 1:
                raise ConfigError(f"k={self.k} needs {self.k - 1} occupancies, got {len(self.m)}")
            try:
                object.__setattr__(self, "m", as_mvector(self.m))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            if self.full_interval:
                raise ConfigError("full-interval sampling needs a density, not fixed occupancies")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    @property
    def poisson(self) -> bool:
        return self.lam is not None


@dataclass(frozen=True)
class RggInstance:
    """Sorted point positions per lens, plus any sampled points outside the lenses."""

    k: int
    r0: float
    positions: tuple[tuple[float, ...], ...]
    outside: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.positions) != max(self.k - 1, 0):
            raise ValueError("one position list per lens is required")
        for lens, pts in zip(lenses(self.k, self.r0), self.positions):
            if any(not (lens.lo < x < lens.hi) for x in pts):
                raise ValueError(f"point outside lens {lens.j}")
            if list(pts) != sorted(pts):
                raise ValueError("lens positions must be sorted")

    @property
    def occupancies(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.positions)

    def vertices(self) -> list[float]:
        """All vertex positions including the endpoints 0 and 1."""
        return sorted([0.0, 1.0, *(x for p in self.positions for x in p), *self.outside])

    def with_point(self, x: float) -> "RggInstance":
        for j, lens in enumerate(lenses(self.k, self.r0)):
            if x in lens:
                pos = list(self.positions)
                pos[j] = tuple(sorted((*pos[j], x)))
                return RggInstance(self.k, self.r0, tuple(pos), self.outside)
        return RggInstance(self.k, self.r0, self.positions, tuple(sorted((*self.outside, x))))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def sample_instance(cfg: GeometryConfig, rng: np.random.Generator) -> RggInstance:
    ls = lenses(cfg.k, cfg.r0)
    if cfg.full_interval:
        pts = rng.uniform(0.0, 1.0, rng.poisson(cfg.lam))
        buckets = [[] for _ in ls]
        outside = []
        for x in pts.tolist():
            for j, lens in enumerate(ls):
                if x in lens:
                    buckets[j].append(x)
                    break
            else:
                outside.append(x)
        return RggInstance(cfg.k, cfg.r0, tuple(tuple(sorted(b)) for b in buckets),
                           tuple(sorted(outside)))
    positions = []
    for j, lens in enumerate(ls):
        n = rng.poisson(cfg.lam * lens.width) if cfg.poisson else cfg.m[j]
        positions.append(tuple(sorted(rng.uniform(lens.lo, lens.hi, n).tolist())))
    return RggInstance(cfg.k, cfg.r0, tuple(positions))


def instance_from_word(word: Sequence[int], k: int, r0: float) -> RggInstance:
    """Place points so that reading them by decreasing within-lens offset gives ``word``.

    Label ``j`` puts a point in lens ``L_j``; this realises any lattice path
    as a concrete graph.
    """
    ls = lenses(k, r0)
    n = len(word)
    buckets = [[] for _ in ls]
    for i, label in enumerate(word):
        lens = ls[label - 1]
        offset = (n - i) / (n + 1) * lens.width
        buckets[label - 1].append(lens.lo + offset)
    return RggInstance(k, r0, tuple(tuple(sorted(b)) for b in buckets))


def word_from_instance(inst: RggInstance) -> tuple[int, ...]:
    """Lens labels of all lens points, ordered by decreasing within-lens offset."""
    ls = lenses(inst.k, inst.r0)
    tagged = [(x - lens.lo, lens.j) for lens, pts in zip(ls, inst.positions) for x in pts]
    tagged.sort(key=lambda t: -t[0])
    return tuple(j for _, j in tagged)


def count_k_hop_paths(inst: RggInstance) -> int:
    """Number of k-edge paths from vertex 0 to vertex 1, by a layered sweep.

    Every L_1 point neighbours 0 and every L_{k-1} point neighbours 1; a point
    v in L_j is reached from the L_{j-1} points u with u > v - r0.
    """
    k, r0 = inst.k, inst.r0
    if k == 1:
        return int(r0 > 1)
    prev = list(inst.positions[0])
    counts = [1] * len(prev)
    for pts in inst.positions[1:]:
        # suffix[i] = sum(counts[i:])
        suffix = [0] * (len(prev) + 1)
        for i in range(len(prev) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + counts[i]
        counts = [suffix[bisect.bisect_right(prev, v - r0)] for v in pts]
        prev = list(pts)
    return sum(counts)


def count_k_hop_paths_exhaustive(inst: RggInstance) -> int:
    """Depth-first count of simple k-edge paths 0 -> 1 over every vertex.

    Uses only the adjacency rule |x - y| < r0.  A branch is cut when the
    remaining hops cannot cover the remaining distance, which holds for any
    geometric graph with edge length below r0.
    """
    k, r0 = inst.k, inst.r0
    verts = inst.vertices()
    n = len(verts)
    src, dst = verts.index(0.0), n - 1
    adj = [[j for j in range(n) if j != i and abs(verts[i] - verts[j]) < r0] for i in range(n)]
    visited = [False] * n
    visited[src] = True

    def walk(v: int, hops_left: int) -> int:
        if hops_left == 0:
            return int(v == dst)
        if v == dst or 1.0 - verts[v] >= hops_left * r0:
            return 0
        total = 0
        for u in adj[v]:
            if not visited[u]:
                visited[u] = True
                total += walk(u, hops_left - 1)
                visited[u] = False
        return total

    return walk(src, k)


@dataclass(frozen=True)
class Histogram:
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))
        if sum(self.counts.values()) != self.total:
            raise ValueError("histogram counts do not sum to the trial total")

    def merge(self, other: "Histogram") -> "Histogram":
        return Histogram(dict(Counter(self.counts) + Counter(other.counts)), self.total + other.total)

    def frequencies(self) -> dict[int, float]:
        return {n: c / self.total for n, c in self.counts.items()}

    @property
    def mean(self) -> float:
        return sum(n * c for n, c in self.counts.items()) / self.total


def _trials_chunk(cfg: GeometryConfig, start: int, stop: int) -> Histogram:
    hist = Counter()
    for i in range(start, stop):
        hist[count_k_hop_paths(sample_instance(cfg, trial_rng(cfg.seed, i)))] += 1
    return Histogram(dict(hist), stop - start)


def run_trials(cfg: GeometryConfig, workers: int | None = None) -> Histogram:
    """Histogram of path counts over ``cfg.trials`` independent instances."""
    if not workers or workers <= 1:
        return _trials_chunk(cfg, 0, cfg.trials)
    out = Histogram({}, 0)
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(_trials_chunk, cfg, lo, hi)
                   for lo, hi in split_ranges(cfg.trials, 4 * workers)]
        for f in futures:
            out = out.merge(f.result())
    return out
