from fractions import Fraction
from math import comb, factorial, prod

import pytest

from rggpaths.algebra import QPolynomial, q_binomial
from rggpaths.distribution import (ExactDistribution, HopConfig, degeneracy, degeneracy_total,
                                   distribution_moments, pgf_theorem2, pmf_k3_closed_form,
                                   pmf_theorem1, poisson_mixture, sigma2_distribution,
                                   theorem1_counts)
from rggpaths.errors import BudgetExceededError, ConfigError
from rggpaths.lattice import (brute_force_volume_distribution, enumerate_paths, multinomial,
                              multiplicities, projection_partition)

PREFIX_MULTS = [(2, 0, 1, 0, 1)]


def test_degeneracy_worked_vectors():
    assert degeneracy((0, 1, 2, 0, 1), PREFIX_MULTS) == 6
    assert degeneracy((0, 1, 1, 2, 0), PREFIX_MULTS) == 2
    assert degeneracy((3, 0, 1), []) == 1
    with pytest.raises(ValueError):
        degeneracy((0, 1, 2), [(1, 1)])


@pytest.mark.parametrize("pi23,expected", [((1, 2, 2, 4), 6), ((1, 2, 3, 3), 2)])
def test_degeneracy_counts_real_paths(pi23, expected):
    # prefix over directions 1,2 with S = (0,2,4,7,10); count full paths sharing it
    prefix = (1, 1, 2, 2, 1, 2, 2, 1)
    hits = 0
    for p in enumerate_paths((4, 4, 4)):
        if tuple(s for s in p.steps if s < 3) == prefix and \
                projection_partition(p, 2, 3).parts == pi23:
            hits += 1
    assert hits == expected
    sample = next(p for p in enumerate_paths((4, 4, 4))
                  if tuple(s for s in p.steps if s < 3) == prefix)
    assert multiplicities(projection_partition(sample, 2, 1)) == (2, 0, 1, 0, 1)


@pytest.mark.parametrize("k,m,expected", [
    (3, (2, 2), {0: Fraction(1, 6), 1: Fraction(1, 6), 2: Fraction(2, 6), 3: Fraction(1, 6),
                 4: Fraction(1, 6)}),
    (4, (1, 1, 1), {0: Fraction(5, 6), 1: Fraction(1, 6)}),
    (3, (1, 1), {0: Fraction(1, 2), 1: Fraction(1, 2)}),
])
def test_pmf_examples(k, m, expected):
    assert pmf_theorem1(k, m).probs == expected


def test_trivial_hop_counts():
    assert pmf_theorem1(2, (4,)) == ExactDistribution.point_mass(4)
    assert pmf_theorem1(1, r0=1.5) == ExactDistribution.point_mass(1)
    with pytest.raises(ConfigError):
        pmf_theorem1(1)
    with pytest.raises(ConfigError):
        HopConfig(4, (1, 2))
    with pytest.raises(ConfigError):
        HopConfig(3, (0, 2))


def test_pgf_examples():
    assert pgf_theorem2(3, (7, 7)) == q_binomial(14, 7) / 3432
    assert pgf_theorem2(4, (1, 1, 1)) == QPolynomial([Fraction(5, 6), Fraction(1, 6)])
    for k, m in [(3, (2, 5)), (4, (2, 3, 1)), (5, (1, 2, 1, 2))]:
        assert pgf_theorem2(k, m).at_one() == 1


def test_pmf_k3_closed_form():
    d = pmf_k3_closed_form(7, 7)
    assert d.support == list(range(50))
    assert [p * 3432 for p in d.as_list()] == list(q_binomial(14, 7).coeffs)
    assert pmf_k3_closed_form(1, 1).probs == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert pmf_k3_closed_form(2, 2) == ExactDistribution.from_counts(
        brute_force_volume_distribution((2, 2)))


CROSS = [(3, (1, 7)), (3, (4, 6)), (3, (7, 7)), (4, (1, 2, 3)), (4, (2, 2, 2)), (4, (3, 2, 4)),
         (4, (4, 4, 4)), (5, (2, 2, 2, 2)), (5, (1, 3, 2, 1)), (6, (1, 2, 1, 2, 1))]


@pytest.mark.parametrize("k,m", CROSS)
def test_theorems_agree(k, m):
    pmf = pmf_theorem1(k, m)
    pgf = pgf_theorem2(k, m)
    assert pmf.as_list() == list(pgf.coeffs)


@pytest.mark.parametrize("k,m", [c for c in CROSS if multinomial(c[1]) <= 10**5])
def test_theorem1_matches_enumeration(k, m):
    assert theorem1_counts(k, m) == brute_force_volume_distribution(m)


@pytest.mark.parametrize("k,m", CROSS)
def test_mean_support_and_normalisation(k, m):
    d = pmf_theorem1(k, m)
    mean, _ = distribution_moments(d)
    assert mean == Fraction(prod(m), factorial(k - 1))
    assert d.max_support == prod(m) and d[prod(m)] > 0
    assert sum(d.probs.values()) == 1


@pytest.mark.parametrize("m", [(1, 1, 1), (2, 3, 4), (4, 1, 3), (4, 4, 4)])
def test_degeneracy_totality(m):
    assert degeneracy_total(4, m) == multinomial(m)


def test_parallel_matches_serial():
    assert pmf_theorem1(4, (3, 3, 3), workers=2) == pmf_theorem1(4, (3, 3, 3))
    assert pgf_theorem2(4, (3, 3, 3), workers=2) == pgf_theorem2(4, (3, 3, 3))


def test_budget():
    with pytest.raises(BudgetExceededError):
        pmf_theorem1(4, (5, 5, 5), budget=100)


def test_moments():
    assert distribution_moments(pmf_theorem1(3, (2, 2)))[0] == 2
    assert distribution_moments(pmf_theorem1(4, (1, 1, 1))) == (Fraction(1, 6), Fraction(5, 36))
    assert distribution_moments(ExactDistribution.point_mass(0)) == (0, 0)


def test_exact_distribution_invariants():
    with pytest.raises(ValueError):
        ExactDistribution({0: Fraction(1, 2)})
    with pytest.raises(ValueError):
        ExactDistribution({0: Fraction(3, 2), 1: Fraction(-1, 2)})


# -- Poisson occupancies --------------------------------------------------------

def test_sigma2():
    assert sigma2_distribution(0, 0.7) == {0: 1.0}
    d = sigma2_distribution(100, 0.51)
    assert sum(d.values()) == pytest.approx(1, abs=1e-12)
    assert sum(n * p for n, p in d.items()) == pytest.approx(2.0, abs=1e-9)
    assert d[0] == pytest.approx(0.1353352832366127)
    with pytest.raises(ConfigError):
        sigma2_distribution(100, 0.4)


def test_mixture():
    assert poisson_mixture(3, 0, 0.4) == {0: 1.0}
    r0 = 0.35
    lam = 1 / (3 * r0 - 1)
    eps = 1e-6
    d = poisson_mixture(3, lam, r0, eps)
    assert 1 - eps <= sum(d.values()) <= 1 + 1e-12
    assert sum(n * p for n, p in d.items()) == pytest.approx(0.5, abs=1e-4)
    with pytest.raises(ConfigError):
        poisson_mixture(3, 1.0, 0.6)


def test_mixture_k4_against_direct_sum():
    r0, lam, eps = 0.27, 5.0, 1e-5
    d = poisson_mixture(4, lam, r0, eps)
    mu = lam * 0.08
    # E sigma_4 = E[m1 m2 m3] / 3! for independent Poisson(mu) occupancies
    assert sum(n * p for n, p in d.items()) == pytest.approx(mu ** 3 / 6, rel=1e-3)
    assert sum(d.values()) >= 1 - eps
