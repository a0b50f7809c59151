from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from rggpaths.errors import BudgetExceededError
from rggpaths.lattice import (IntegerPartition, LatticePath, brute_force_volume_distribution,
                              complement, dot, enumerate_paths, iter_words, multinomial,
                              multiplicities, projection_partition, rank_word, s_sequence,
                              s_sequence_from_partitions, split_ranges, unrank_word, volume)

SIX_STEP_PATH = LatticePath.from_steps((3, 1, 1, 2, 3, 2))
# The 12-step path read off the k=4 worked example, with up->1, in->2, right->3.
RELABELLED_PATH = LatticePath.from_steps((1, 1, 2, 3, 2, 3, 3, 1, 2, 2, 3, 1))


def chain_count(steps):
    """Literal definition: tuples of one step per direction, increasing in position."""
    d = max(steps)
    pos = [[i for i, s in enumerate(steps) if s == j] for j in range(1, d + 1)]
    return sum(all(a < b for a, b in zip(t, t[1:])) for t in product(*pos))


def small_paths():
    return st.lists(st.integers(1, 3), min_size=1, max_size=4).flatmap(
        lambda m: st.permutations([j + 1 for j, x in enumerate(m) for _ in range(x)]))


# -- enumeration --------------------------------------------------------------

def test_enumerate_two_letters():
    assert [p.steps for p in enumerate_paths((1, 1))] == [(1, 2), (2, 1)]


def test_enumerate_square():
    paths = list(enumerate_paths((2, 2)))
    assert len(paths) == 6
    assert len({p.steps for p in paths}) == 6


def test_enumerate_555_exhausts_multinomial():
    assert multinomial((5, 5, 5)) == 756756
    assert sum(1 for _ in iter_words((5, 5, 5))) == 756756


@pytest.mark.parametrize("m", [(2, 2), (1, 2, 3), (2, 2, 2), (3, 1, 2, 1)])
def test_enumeration_is_sorted_and_complete(m):
    words = [p.steps for p in enumerate_paths(m)]
    word = [j + 1 for j, x in enumerate(m) for _ in range(x)]
    assert words == sorted(set(permutations(word)))


@pytest.mark.parametrize("m", [(2, 3, 2), (1, 1, 1, 1)])
def test_rank_roundtrip(m):
    for r, w in enumerate(iter_words(m)):
        assert rank_word(w, m) == r
        assert unrank_word(r, m) == w


def test_subranges_cover_stream():
    m = (2, 3, 2)
    whole = list(iter_words(m))
    pieces = [w for lo, hi in split_ranges(len(whole), 7) for w in iter_words(m, lo, hi)]
    assert pieces == whole


@pytest.mark.parametrize("bad", [(0, 2), (2, -1), ()])
def test_rejects_bad_mvector(bad):
    with pytest.raises(ValueError):
        list(enumerate_paths(bad))


def test_budget_guard():
    with pytest.raises(BudgetExceededError):
        list(enumerate_paths((5, 5, 5), budget=1000))
    with pytest.raises(BudgetExceededError):
        brute_force_volume_distribution((5, 5, 5), budget=1000)


# -- projections and multiplicities -----------------------------------------

@pytest.mark.parametrize("a,b,parts", [(1, 2, (2, 2)), (2, 3, (0, 1)), (1, 3, (0, 2))])
def test_projection_worked_example(a, b, parts):
    assert projection_partition(SIX_STEP_PATH, a, b).parts == parts


def test_projection_two_letter_word():
    # A at positions 1,2,6,8 and B at 3,4,5,7
    word = (1, 1, 2, 2, 2, 1, 2, 1)
    assert projection_partition(word, 1, 2).parts == (2, 2, 2, 3)
    assert projection_partition(word, 2, 1).parts == (0, 0, 3, 4)


def test_projection_relabelled_example():
    assert projection_partition(RELABELLED_PATH, 1, 2).parts == (2, 2, 3, 3)
    assert projection_partition(RELABELLED_PATH, 1, 3).parts == (2, 2, 2, 3)
    assert projection_partition(RELABELLED_PATH, 2, 3).parts == (1, 2, 2, 4)
    assert projection_partition(RELABELLED_PATH, 2, 1).parts == (0, 0, 2, 4)
    assert projection_partition(RELABELLED_PATH, 3, 1).parts == (0, 0, 3, 4)
    assert multiplicities(projection_partition(RELABELLED_PATH, 2, 1)) == (2, 0, 1, 0, 1)
    assert multiplicities(projection_partition(RELABELLED_PATH, 3, 1)) == (2, 0, 0, 1, 1)


def test_projection_rejects_same_direction():
    with pytest.raises(ValueError):
        projection_partition(SIX_STEP_PATH, 2, 2)


def test_complement_example():
    pi = IntegerPartition((1, 1, 3, 3), 4)
    comp = complement(pi)
    assert comp.parts == (0, 2, 2, 4)
    assert multiplicities(comp) == (1, 0, 2, 0, 1)


@pytest.mark.parametrize("parts,bound,expected", [
    ((1, 1, 3, 3), 4, (0, 2, 0, 2, 0)),
    ((0, 0, 2, 4), 4, (2, 0, 1, 0, 1)),
    ((), 3, (0, 0, 0, 0)),
])
def test_multiplicities(parts, bound, expected):
    assert multiplicities(IntegerPartition(parts, bound)) == expected


def test_partition_validation():
    with pytest.raises(ValueError):
        IntegerPartition((2, 1), 3)
    with pytest.raises(ValueError):
        IntegerPartition((1, 5), 3)


@settings(max_examples=200, deadline=None)
@given(small_paths(), st.data())
def test_projection_properties(steps, data):
    p = LatticePath.from_steps(steps)
    if p.dim < 2:
        return
    a, b = data.draw(st.sampled_from([(a, b) for a in range(1, p.dim + 1)
                                      for b in range(1, p.dim + 1) if a != b]))
    pi = projection_partition(p, a, b)
    assert len(pi) == p.m[b - 1]
    assert pi.part_bound == p.m[a - 1]
    assert list(pi.parts) == sorted(pi.parts)
    back = projection_partition(p, b, a)
    assert pi.size + back.size == p.m[a - 1] * p.m[b - 1]
    assert complement(pi) == back


# -- S-sequences, dot, volume -------------------------------------------------

def test_s_sequence_one_dimension():
    assert s_sequence((1, 1, 1, 1)) == (0, 1, 2, 3, 4)


def test_s_sequence_worked_example_prefix():
    assert s_sequence(SIX_STEP_PATH.restrict(2)) == (0, 2, 4)


def test_s_sequence_from_worked_partitions():
    p12 = IntegerPartition((2, 2, 3, 3), 4)
    p23 = IntegerPartition((1, 2, 2, 4), 4)
    assert s_sequence_from_partitions([p12]) == (0, 2, 4, 7, 10)
    assert s_sequence_from_partitions([p12, p23]) == (0, 2, 6, 10, 20)
    assert s_sequence(RELABELLED_PATH.restrict(2)) == (0, 2, 4, 7, 10)
    assert s_sequence(RELABELLED_PATH) == (0, 2, 6, 10, 20)


@pytest.mark.parametrize("m", [(2, 2, 2), (2, 3, 2), (1, 2, 1, 2)])
def test_s_sequence_routes_agree(m):
    for p in enumerate_paths(m):
        adjacent = [projection_partition(p, j, j + 1) for j in range(1, p.dim)]
        assert s_sequence(p) == s_sequence_from_partitions(adjacent)


def test_dot():
    assert dot((0, 2, 4, 7, 10), (0, 1, 2, 0, 1)) == 20
    assert dot((0, 2, 4), (1, 1, 0)) == 2
    assert dot((0, 5, 9), (0, 0, 0)) == 0
    with pytest.raises(ValueError):
        dot((0, 1), (1, 1, 1))


def test_volume_examples():
    assert volume(SIX_STEP_PATH) == 2
    assert volume((1, 1, 1, 2, 2)) == 6
    assert volume((2, 2, 1, 1, 1)) == 0
    assert volume(RELABELLED_PATH) == 20
    assert volume((1, 1, 1)) == 0


@pytest.mark.parametrize("m", [(2, 2, 2), (2, 3, 2)])
def test_volume_consistency_exhaustive(m):
    for p in enumerate_paths(m):
        d = p.dim
        s = s_sequence(p.restrict(d - 1))
        mult = multiplicities(projection_partition(p, d - 1, d))
        assert volume(p) == dot(s, mult) == chain_count(p.steps)


@settings(max_examples=300, deadline=None)
@given(small_paths())
def test_volume_matches_literal_chain_count(steps):
    p = LatticePath.from_steps(steps)
    expected = chain_count(steps) if p.dim > 1 else 0
    assert volume(p) == expected
    assert 0 <= volume(p) <= prod(p.m)
    assert volume(p.reversed_relabelled()) == volume(p)


# -- brute-force histograms --------------------------------------------------

@pytest.mark.parametrize("m,expected", [
    ((1, 1), {0: 1, 1: 1}),
    ((2, 2), {0: 1, 1: 1, 2: 2, 3: 1, 4: 1}),
    ((1, 1, 1), {0: 5, 1: 1}),
    ((2, 2, 2), {0: 43, 1: 12, 2: 18, 3: 4, 4: 10, 6: 2, 8: 1}),
    ((2, 3, 2), {0: 83, 1: 25, 2: 36, 3: 14, 4: 25, 5: 5, 6: 14, 8: 5, 10: 2, 12: 1}),
])
def test_brute_force_histograms(m, expected):
    assert brute_force_volume_distribution(m) == expected


@pytest.mark.parametrize("m", [(1, 2, 3), (2, 3, 1, 2), (3, 2, 2)])
def test_histogram_reversal_and_bounds(m):
    h = brute_force_volume_distribution(m)
    assert h == brute_force_volume_distribution(m[::-1])
    assert sum(h.values()) == multinomial(m)
    assert min(h) == 0 and max(h) == prod(m)
    mean = Fraction(sum(n * c for n, c in h.items()), multinomial(m))
    assert mean == Fraction(prod(m), factorial(len(m)))


def test_parallel_histogram_matches_serial():
    assert brute_force_volume_distribution((2, 3, 2), workers=2) == \
        brute_force_volume_distribution((2, 3, 2))
