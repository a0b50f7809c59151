"""Lattice paths in a hyperrectangle, viewed as multiset permutations.

A path from the origin to ``(m_1, ..., m_d)`` is a word over the step labels
``1..d`` in which label ``i`` occurs exactly ``m_i`` times.  Everything here is
pure and works on immutable values.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceededError

DEFAULT_BUDGET = 10**7


def as_mvector(m: Sequence[int]) -> tuple[int, ...]:
    """Validate lattice extents and return them as a tuple."""
    m = tuple(int(x) for x in m)
    if not m:
        raise ValueError("an m-vector needs at least one direction")
    if any(x < 1 for x in m):
        raise ValueError(f"every lattice extent must be >= 1, got {m}")
    return m


def multinomial(m: Sequence[int]) -> int:
    """Number of distinct words with ``m[i]`` copies of letter ``i``."""
    total, out = 0, 1
    for x in m:
        total += x
        out *= math.comb(total, x)
    return out


def check_budget(what: str, size: int, budget: int | None) -> None:
    if budget is not None and size > budget:
        raise BudgetExceededError(what, size, budget)


@dataclass(frozen=True)
class LatticePath:
    """A lattice path stored as its step labels (1-based directions)."""

    steps: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        counts = Counter(self.steps)
        d = len(self.m)
        if set(counts) - set(range(1, d + 1)):
            raise ValueError(f"step labels must lie in 1..{d}")
        if tuple(counts.get(i, 0) for i in range(1, d + 1)) != self.m:
            raise ValueError(f"steps {self.steps} do not match extents {self.m}")

    @classmethod
    def from_steps(cls, steps: Sequence[int]) -> "LatticePath":
        """Build a path, inferring the extents from the labels used."""
        steps = tuple(int(s) for s in steps)
        counts = Counter(steps)
        d = max(counts) if counts else 0
        return cls(steps, as_mvector(counts.get(i, 0) for i in range(1, d + 1)))

    @property
    def dim(self) -> int:
        return len(self.m)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def restrict(self, d: int) -> "LatticePath":
        """The path obtained by dropping every step with label > d."""
        if not 1 <= d <= self.dim:
            raise ValueError(f"cannot restrict a {self.dim}-dimensional path to {d} directions")
        return LatticePath(tuple(s for s in self.steps if s <= d), self.m[:d])

    def reversed_relabelled(self) -> "LatticePath":
        """Reverse the word and swap direction i with d+1-i."""
        d = self.dim
        return LatticePath(tuple(d + 1 - s for s in reversed(self.steps)), self.m[::-1])


def _as_path(p) -> LatticePath:
    return p if isinstance(p, LatticePath) else LatticePath.from_steps(p)


# -- enumeration -------------------------------------------------------------

def _next_word(w: list[int]) -> bool:
    """Advance ``w`` in place to its lexicographic successor; False at the end."""
    i = len(w) - 2
    while i >= 0 and w[i] >= w[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(w) - 1
    while w[j] <= w[i]:
        j -= 1
    w[i], w[j] = w[j], w[i]
    w[i + 1:] = reversed(w[i + 1:])
    return True


def rank_word(steps: Sequence[int], m: Sequence[int]) -> int:
    """Lexicographic rank of a word among all permutations of its multiset."""
    counts = list(m)
    remaining = multinomial(counts)
    n = sum(counts)
    rank = 0
    for s in steps:
        # remaining == multinomial(counts); words starting with letter c number remaining*counts[c]/n
        for c in range(s - 1):
            if counts[c]:
                rank += remaining * counts[c] // n
        remaining = remaining * counts[s - 1] // n
        counts[s - 1] -= 1
        n -= 1
    return rank


def unrank_word(rank: int, m: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`rank_word`."""
    counts = list(m)
    remaining = multinomial(counts)
    if not 0 <= rank < remaining:
        raise ValueError(f"rank {rank} outside 0..{remaining - 1}")
    n = sum(counts)
    out = []
    for _ in range(n):
        for c in range(len(counts)):
            if not counts[c]:
                continue
            block = remaining * counts[c] // n
            if rank < block:
                out.append(c + 1)
                remaining = block
                counts[c] -= 1
                n -= 1
                break
            rank -= block
    return tuple(out)


def iter_words(m: Sequence[int], start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Words of the multiset ``1^m_1 ... d^m_d`` with lexicographic rank in [start, stop)."""
    total = multinomial(m)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    w = list(unrank_word(start, m))
    yield tuple(w)
    for _ in range(stop - start - 1):
        _next_word(w)
        yield tuple(w)


def enumerate_paths(m: Sequence[int], start: int = 0, stop: int | None = None,
                    budget: int | None = DEFAULT_BUDGET) -> Iterator[LatticePath]:
    """Every lattice path to ``m`` exactly once, in lexicographic order of labels.

    ``start``/``stop`` select a half-open range of lexicographic ranks, so
    disjoint ranges can be handed to separate workers.
    """
    m = as_mvector(m)
    check_budget("lattice path enumeration", multinomial(m), budget)
    for w in iter_words(m, start, stop):
        yield LatticePath(w, m)


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Cut ``range(total)`` into at most ``parts`` contiguous (start, stop) chunks."""
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for i in range(parts):
        hi = lo + step + (i < extra)
        out.append((lo, hi))
        lo = hi
    return out


# -- partitions from paths ---------------------------------------------------

@dataclass(frozen=True)
class IntegerPartition:
    """Weakly increasing parts, each at most ``part_bound``."""

    parts: tuple[int, ...]
    part_bound: int

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(b < a for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-decreasing: {parts}")
        if parts and (parts[0] < 0 or parts[-1] > self.part_bound):
            raise ValueError(f"parts must lie in 0..{self.part_bound}: {parts}")

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)


def projection_partition(p, a: int, b: int) -> IntegerPartition:
    """Partition whose t-th part counts a-steps before the t-th b-step."""
    p = _as_path(p)
    if a == b:
        raise ValueError("projection needs two distinct directions")
    for x in (a, b):
        if not 1 <= x <= p.dim:
            raise ValueError(f"direction {x} outside 1..{p.dim}")
    seen, parts = 0, []
    for s in p.steps:
        if s == a:
            seen += 1
        elif s == b:
            parts.append(seen)
    return IntegerPartition(tuple(parts), p.m[a - 1])


def complement(pi: IntegerPartition) -> IntegerPartition:
    """The projection with the two directions swapped.

    If ``pi`` has ``m_b`` parts bounded by ``m_a``, the result has ``m_a`` parts
    bounded by ``m_b``; its t-th part counts the parts of ``pi`` below ``t``.
    """
    parts, j = [], 0
    for t in range(1, pi.part_bound + 1):
        while j < len(pi.parts) and pi.parts[j] < t:
            j += 1
        parts.append(j)
    return IntegerPartition(tuple(parts), len(pi.parts))


def multiplicities(pi: IntegerPartition) -> tuple[int, ...]:
    """Count of each part value 0..part_bound."""
    counts = [0] * (pi.part_bound + 1)
    for x in pi.parts:
        counts[x] += 1
    return tuple(counts)


def dot(s: Sequence[int], mult: Sequence[int]) -> int:
    if len(s) != len(mult):
        raise ValueError(f"length mismatch: {len(s)} vs {len(mult)}")
    return sum(x * y for x, y in zip(s, mult))


# -- volume ------------------------------------------------------------------

def _chain_walk(steps: Sequence[int], d: int):
    """acc[j] after the walk = number of 1<...<j chains ending at a j-step."""
    acc = [0] * (d + 1)
    last = []
    for s in steps:
        c = 1 if s == 1 else acc[s - 1]
        acc[s] += c
        if s == d:
            last.append(acc[d])
    return acc, last


def s_sequence(p) -> tuple[int, ...]:
    """Cumulative chain counts at the last direction's steps.

    Entry ``t`` is the number of position-ordered chains (one step of each
    direction 1..d) whose final step is among the first ``t`` direction-d
    steps.  In one dimension that is simply ``(0, 1, ..., m_1)``.
    """
    p = _as_path(p)
    if p.dim == 1:
        return tuple(range(p.m[0] + 1))
    _, last = _chain_walk(p.steps, p.dim)
    return (0, *last)


def s_sequence_from_partitions(adjacent: Sequence[IntegerPartition]) -> tuple[int, ...]:
    """Nested-sum form of :func:`s_sequence` from the adjacent projections.

    ``adjacent[j]`` is the projection onto directions (j+1, j+2); the first
    one's ``part_bound`` fixes ``m_1``.
    """
    if not adjacent:
        raise ValueError("need at least one adjacent projection")
    s = list(range(adjacent[0].part_bound + 1))
    for pi in adjacent:
        if pi.part_bound != len(s) - 1:
            raise ValueError("consecutive projections have inconsistent extents")
        nxt = [0]
        for part in pi.parts:
            nxt.append(nxt[-1] + s[part])
        s = nxt
    return tuple(s)


def volume(p) -> int:
    """Number of chains t_1 < ... < t_d (by position) taking one step per direction."""
    p = _as_path(p)
    if p.dim == 1:
        return 0
    acc, _ = _chain_walk(p.steps, p.dim)
    return acc[p.dim]


def _word_volume(w: Sequence[int], d: int) -> int:
    acc = [0] * (d + 1)
    acc[0] = 1
    for s in w:
        acc[s] += acc[s - 1]
    return acc[d]


def _volume_histogram_chunk(m: tuple[int, ...], start: int, stop: int) -> Counter:
    d = len(m)
    hist = Counter()
    if d == 1:
        hist[0] = stop - start
        return hist
    for w in iter_words(m, start, stop):
        hist[_word_volume(w, d)] += 1
    return hist


def brute_force_volume_distribution(m: Sequence[int], budget: int | None = DEFAULT_BUDGET,
                                    workers: int | None = None) -> dict[int, int]:
    """Histogram of :func:`volume` over every lattice path to ``m``."""
    m = as_mvector(m)
    total = multinomial(m)
    check_budget("lattice path enumeration", total, budget)
    if not workers or workers <= 1:
        hist = _volume_histogram_chunk(m, 0, total)
    else:
        hist = Counter()
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_volume_histogram_chunk, m, lo, hi)
                       for lo, hi in split_ranges(total, 4 * workers)]
            for f in futures:
                hist.update(f.result())
    return dict(sorted(hist.items()))
