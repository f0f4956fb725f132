"""
Moments of count random variables from their upper tails.
A count N equals the Bernoulli sum of the indicators 1{N >= i}, so every
moment of N is a weighted sum of Pr(N >= M). Infinite supports are summed
until a geometric decay certificate bounds the remainder.
"""
from math import comb, factorial

from bernsum.core.config import get_config
from bernsum.core.exceptions import (
    DivergenceSuspectedError,
    InvalidParameterError,
    NotNormalizedError,
)
from bernsum.core.logging import tail_logger as logger
from bernsum.models.moment_models import APPROX_SLACK, CountDist, TailEstimate
from bernsum.models.scalar import Scalar, scalar_sum
from bernsum.services.combinat import binom, surjections


def moment_from_tail(dist, k, epsilon=None, max_terms=None):
    """
    E(N^k) = sum_m S(k,m) sum_{M>=m} C(M-1, m-1) Pr(N >= M).

    Args:
        dist (CountDist): the count variable
        k (int): moment order
        epsilon (float, optional): relative truncation tolerance for infinite supports
        max_terms (int, optional): hard cap on the number of tail terms

    Returns:
        TailEstimate: value, residual bound (infinite supports) and term count
    """
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    if k == 0:
        return TailEstimate(Scalar(1))

    def weight(M):
        return sum(surjections(k, m) * comb(M - 1, m - 1) for m in range(1, min(k, M) + 1))

    return _tail_series(dist, weight, 1, epsilon, max_terms)


def factorial_moment_from_tail(dist, k, epsilon=None, max_terms=None):
    """E([N]_k) = k! sum_{M>=k} C(M-1, k-1) Pr(N >= M)."""
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    if k == 0:
        return TailEstimate(Scalar(1))
    scale = factorial(k)

    def weight(M):
        return scale * binom(M - 1, k - 1)

    return _tail_series(dist, weight, k, epsilon, max_terms)


def moment_chakra(dist, k, epsilon=None, max_terms=None):
    """
    Cross-check for moment_from_tail: E(N^k) = sum_{i>=0} ((i+1)^k - i^k) Pr(N > i).
    """
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    if k == 0:
        return TailEstimate(Scalar(1))

    def weight(M):
        return M ** k - (M - 1) ** k

    return _tail_series(dist, weight, 1, epsilon, max_terms)


def _tail_series(dist, weight, start, epsilon, max_terms):
    """Sum weight(M) * tail(M) for M >= start."""
    if dist.is_finite:
        partial = scalar_sum(weight(M) * dist.tail(M) for M in range(start, dist.max_m + 1))
        return TailEstimate(dist.apply_scale(partial), None, max(dist.max_m - start + 1, 0))

    config = get_config()
    epsilon = config.TRUNCATION_EPSILON if epsilon is None else epsilon
    max_terms = config.TRUNCATION_MAX_TERMS if max_terms is None else max_terms
    if epsilon <= 0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")

    decay = dist.decay
    ratio = float(decay.ratio)
    partial = Scalar(0)
    previous = dist.tail(start - 1)
    M = start
    while True:
        if M - start >= max_terms:
            raise DivergenceSuspectedError(
                f"tail sum did not settle within {max_terms} terms (last index {M - 1})"
            )
        value = dist.tail(M)
        dist.check_step(M, value, previous)
        if M >= decay.start and float(value) > float(decay.bound(M)) * (1 + 1e-9) + APPROX_SLACK:
            raise DivergenceSuspectedError(
                f"Pr(N >= {M}) = {float(value):.6g} breaks the decay certificate {float(decay.bound(M)):.6g}"
            )
        partial = partial + weight(M) * value
        previous = value

        if M >= decay.start:
            w_next, w_after = weight(M + 1), weight(M + 2)
            if w_next > 0:
                rho = ratio * w_after / w_next
                if rho < 1:
                    residual = w_next * float(decay.bound(M + 1)) / (1 - rho)
                    if residual <= epsilon * (abs(float(partial)) + 1):
                        terms = M - start + 1
                        scaled_residual = residual if dist.scale is None else residual * dist.scale
                        logger.debug(
                            f"Truncated tail sum of {dist.label or 'count'} at M={M} "
                            f"({terms} terms), residual <= {scaled_residual:.3g}"
                        )
                        return TailEstimate(
                            dist.apply_scale(partial.as_approx()),
                            Scalar(scaled_residual),
                            terms,
                        )
        M += 1


def tail_from_pmf(pmf, support_max=None, label=''):
    """
    Build a finite-support CountDist from a pmf by suffix sums.

    Args:
        pmf: mapping x -> probability, or a callable when support_max is given
        support_max (int, optional): largest support point for a callable pmf
        label (str, optional): name carried into logs

    Raises:
        NotNormalizedError: the masses do not sum to one (exactly for Exact
            masses, within 1e-9 otherwise)
    """
    if callable(pmf):
        if support_max is None:
            raise InvalidParameterError("a callable pmf needs support_max")
        masses = {x: Scalar.of(pmf(x)) for x in range(support_max + 1)}
    else:
        masses = {int(x): Scalar.of(p) for x, p in pmf.items()}
        if not masses:
            raise NotNormalizedError("empty pmf")
        support_max = max(masses)

    for x, mass in masses.items():
        if x < 0:
            raise InvalidParameterError(f"count variables live on 0, 1, 2, ...; got support point {x}")
        if mass < 0:
            raise InvalidParameterError(f"Pr(N = {x}) = {mass} is negative")

    total = scalar_sum(masses.values())
    if total.is_exact:
        if total != 1:
            raise NotNormalizedError(f"pmf sums to {total}, not 1")
    elif abs(float(total) - 1) > 1e-9:
        raise NotNormalizedError(f"pmf sums to {float(total):.17g}, not 1 within 1e-9")

    tails = [Scalar(0)] * (support_max + 2)
    for M in range(support_max, 0, -1):
        tails[M] = tails[M + 1] + masses.get(M, Scalar(0))

    return CountDist(tail_fn=lambda M: tails[M], max_m=support_max, label=label)
