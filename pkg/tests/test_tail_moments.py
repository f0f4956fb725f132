"""
tests/test_tail_moments
~~~~~~~~~~~~~~~~~~~~~~~
"""
import math
from fractions import Fraction

import pytest

from bernsum.core.exceptions import (
    DivergenceSuspectedError,
    InvalidParameterError,
    NonMonotoneTailError,
    NotNormalizedError,
)
from bernsum.models.moment_models import CountDist, GeometricDecay
from bernsum.models.scalar import scalar_sum
from bernsum.services.bernoulli_core import MomentEngine
from bernsum.services.combinat import stirling2
from bernsum.services.distributions import (
    Benford,
    Binomial,
    EmptyUrns,
    Geometric,
    Hypergeometric,
    Matching,
    Poisson,
    Soliton,
)
from bernsum.services.tail_moments import (
    factorial_moment_from_tail,
    moment_chakra,
    moment_from_tail,
    tail_from_pmf,
)

HALF = Fraction(1, 2)
FINITE_SPECS = [Binomial(5, Fraction(1, 3)), Hypergeometric(8, 3, 4), Matching(5), Soliton(7), EmptyUrns(4, 3)]


def test_soliton_mean_is_harmonic():
    """
    Ensures the tail sum of Soliton(5) gives H_5 = 137/60 exactly.
    """
    estimate = moment_from_tail(Soliton(5).count_dist(), 1)
    assert estimate.value.is_exact
    assert estimate.value.value == Fraction(137, 60)
    assert not estimate.truncated


def test_benford_mean():
    estimate = moment_from_tail(Benford(10).count_dist(), 1)
    assert float(estimate.value) == pytest.approx(9 - math.log10(math.factorial(9)), rel=1e-12)


def test_point_mass():
    dist = tail_from_pmf({3: 1})
    assert [dist.tail(M) for M in range(5)] == [1, 1, 1, 1, 0]
    assert moment_from_tail(dist, 2).value == 9
    assert moment_chakra(dist, 2).value == 9
    assert factorial_moment_from_tail(dist, 2).value == 6
    assert moment_from_tail(tail_from_pmf({0: 1}), 1).value == 0


def test_order_zero_is_one():
    dist = Geometric(HALF).count_dist()
    for fn in (moment_from_tail, factorial_moment_from_tail, moment_chakra):
        assert fn(dist, 0).value == 1
    with pytest.raises(InvalidParameterError):
        moment_from_tail(dist, -1)


def test_factorial_moments_from_tails():
    """
    Ensures E([N]_2) is 4 for Geometric(1/2) and Soliton(5).
    """
    estimate = factorial_moment_from_tail(Geometric(HALF).count_dist(), 2)
    assert float(estimate.value) == pytest.approx(4, rel=1e-12)
    assert estimate.truncated and estimate.value.is_approx
    assert factorial_moment_from_tail(Soliton(5).count_dist(), 2).value == 4


@pytest.mark.parametrize("p", [Fraction(1, 4), HALF, Fraction(3, 4)])
def test_geometric_factorial_moments(p):
    dist = Geometric(p).count_dist()
    for k in range(1, 6):
        estimate = factorial_moment_from_tail(dist, k)
        expected = math.factorial(k) * (1 - p) ** (k - 1) / p ** k
        assert float(estimate.value) == pytest.approx(float(expected), rel=1e-12)
        assert float(estimate.residual_bound) <= 1e-15 * (float(estimate.value) + 1)


def test_chakra_geometric_mean():
    assert float(moment_chakra(Geometric(HALF).count_dist(), 1).value) == pytest.approx(2, rel=1e-12)


@pytest.mark.parametrize("lam", [HALF, 1, 2, 5])
def test_poisson_factorial_moments(lam):
    """
    Ensures tail sums reproduce lambda^k for Poisson counts.
    """
    dist = Poisson(lam).count_dist()
    for k in range(1, 6):
        assert float(factorial_moment_from_tail(dist, k).value) == pytest.approx(float(Fraction(lam) ** k), rel=1e-12)


@pytest.mark.parametrize("lam", [HALF, 1, 2])
def test_poisson_raw_moments(lam):
    dist = Poisson(lam).count_dist()
    for k in range(1, 6):
        touchard = sum(stirling2(k, m) * Fraction(lam) ** m for m in range(1, k + 1))
        assert float(moment_from_tail(dist, k).value) == pytest.approx(float(touchard), rel=1e-12)


def test_poisson_at_zero_rate():
    assert moment_from_tail(Poisson(0).count_dist(), 3).value == 0


@pytest.mark.parametrize("spec", FINITE_SPECS, ids=str)
def test_finite_tails_match_pmf_sums(spec):
    """
    Ensures tail sums equal direct pmf sums and the chakra cross-check on finite supports.
    """
    dist = spec.count_dist()
    factorials = [factorial_moment_from_tail(dist, j).value for j in range(7)]
    for k in range(7):
        direct = scalar_sum(x ** k * spec.pmf(x) for x in range(spec.support_max + 1))
        assert moment_from_tail(dist, k).value == direct
        assert moment_chakra(dist, k).value == direct
        assert MomentEngine.moments_from_factorial(factorials, k) == direct


def test_chakra_agrees_on_solitons():
    for r in range(2, 51):
        dist = Soliton(r).count_dist()
        for k in range(1, 7):
            assert moment_chakra(dist, k).value == moment_from_tail(dist, k).value


def test_tail_from_pmf():
    dist = tail_from_pmf(Soliton(5).pmf_table())
    assert dist.tail(3).value == Fraction(3, 10)
    assert [dist.tail(M) for M in range(1, 4)] == [1, Fraction(4, 5), Fraction(3, 10)]
    point = tail_from_pmf({2: 1})
    assert [point.tail(M) for M in (1, 2, 3)] == [1, 1, 0]
    benford = tail_from_pmf(Benford(10).pmf, support_max=9)
    for d in range(1, 10):
        assert float(benford.tail(d)) == pytest.approx(1 - math.log10(d), abs=1e-12)


def test_tail_from_pmf_normalization():
    with pytest.raises(NotNormalizedError):
        tail_from_pmf({0: HALF, 1: Fraction(1, 3)})
    with pytest.raises(NotNormalizedError):
        tail_from_pmf({0: 0.5, 1: 0.5000001})
    assert tail_from_pmf({0: 0.5, 1: 0.5 + 1e-10}).max_m == 1
    with pytest.raises(NotNormalizedError):
        tail_from_pmf({})


def test_tail_from_pmf_rejects_bad_points():
    with pytest.raises(InvalidParameterError):
        tail_from_pmf({-1: HALF, 1: HALF})
    with pytest.raises(InvalidParameterError):
        tail_from_pmf({0: Fraction(3, 2), 1: -HALF})
    with pytest.raises(InvalidParameterError):
        tail_from_pmf(lambda x: HALF)


def test_non_monotone_tail_rejected():
    with pytest.raises(NonMonotoneTailError):
        CountDist(tail_fn=lambda M: [HALF, Fraction(3, 4)][M - 1], max_m=2)
    with pytest.raises(NonMonotoneTailError):
        CountDist(tail_fn=lambda M: -HALF, max_m=1)


def test_decay_certificate_violation():
    """
    Ensures a tail that breaks its decay certificate is reported as divergent.
    """
    dist = CountDist(tail_fn=lambda M: Fraction(1, M), decay=GeometricDecay(1, HALF))
    with pytest.raises(DivergenceSuspectedError):
        moment_from_tail(dist, 1)


def test_term_cap():
    with pytest.raises(DivergenceSuspectedError):
        moment_from_tail(Geometric(HALF).count_dist(), 1, max_terms=3)


def test_epsilon_must_be_positive():
    with pytest.raises(InvalidParameterError):
        moment_from_tail(Geometric(HALF).count_dist(), 1, epsilon=0)


def test_count_dist_needs_one_description():
    with pytest.raises(InvalidParameterError):
        CountDist(tail_fn=lambda M: HALF)
    with pytest.raises(InvalidParameterError):
        CountDist(tail_fn=lambda M: HALF, max_m=2, decay=GeometricDecay(1, HALF))
    with pytest.raises(InvalidParameterError):
        GeometricDecay(1, 1)


@pytest.mark.parametrize("lam", [800, 800.5])
def test_poisson_tails_at_a_large_rate(lam):
    """
    Ensures a rate far beyond the float range of e^lam still sums to lambda^k.
    """
    dist = Poisson(lam).count_dist()
    for k in (1, 2):
        estimate = factorial_moment_from_tail(dist, k)
        assert float(estimate.value) == pytest.approx(lam ** k, rel=1e-9)
        assert estimate.truncated
