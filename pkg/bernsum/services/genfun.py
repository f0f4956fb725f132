"""
Generating functions for Bernoulli sums.
Truncated moment, factorial-moment and probability generating series, the
shift G_X(s) = H_X(s - 1) between the last two, and inversion of factorial
moments into point probabilities.
"""
import logging
from math import comb, factorial

from bernsum.core.exceptions import (
    AlternatingSeriesUnstableError,
    InvalidParameterError,
    TruncationUnsoundError,
)
from bernsum.models.moment_models import SeriesPoly
from bernsum.models.scalar import Scalar, scalar_sum
from bernsum.services.combinat import stirling2, surjections

logger = logging.getLogger(__name__)

# An alternating tail term below this is treated as converged
STABLE_TERM = 1e-12


def _series(kind, values, order):
    if order < 0:
        raise InvalidParameterError(f"order must be non-negative, got {order}")
    if len(values) < order + 1:
        raise InvalidParameterError(f"need values up to order {order}, got {len(values)}")
    return SeriesPoly(kind, tuple(Scalar.of(values[k]) / factorial(k) for k in range(order + 1)))


def mgf_series(moments, order):
    """M_X(s) = sum_k E(X^k) s^k / k!, truncated at `order`."""
    return _series('mgf', moments, order)


def fmgf_series(factorials, order):
    """H_X(s) = sum_k E([X]_k) s^k / k!, truncated at `order`."""
    return _series('fmgf', factorials, order)


def pgf_from_fmgf(h, exact_degree):
    """
    Shift a factorial-moment series into a probability generating series.

    The coefficient of s^l in H(s - 1) is sum_{k>=l} c_k C(k,l) (-1)^(k-l).
    The shift only commutes with truncation when H is a polynomial, so the
    caller must assert that with exact_degree.

    Raises:
        TruncationUnsoundError: exact_degree is False
    """
    if h.kind != 'fmgf':
        raise InvalidParameterError(f"expected an fmgf series, got {h.kind}")
    if not exact_degree:
        raise TruncationUnsoundError(
            "shifting a truncated factorial-moment series is not a truncation of the shifted series; "
            "only finite-support variables with an exact-degree fmgf can be converted"
        )
    order = h.order
    coeffs = tuple(
        scalar_sum((-1) ** (k - l) * comb(k, l) * h.coeffs[k] for k in range(l, order + 1))
        for l in range(order + 1)
    )
    return SeriesPoly('pgf', coeffs)


def pmf_from_factorial_moments(factorials, x, jmax, support_max=None):
    """
    Pr(X = x) = sum_{j=x}^{jmax} (-1)^(j-x) C(j,x) E([X]_j) / j!.

    The sum is exact when X lives on 0..support_max with support_max <= jmax,
    since E([X]_j) vanishes beyond the support. Without that guarantee the
    result is a truncated series and comes back Approx.

    Raises:
        AlternatingSeriesUnstableError: the truncated alternating sum has no
            finite-support guarantee and either its last term is not
            negligible or x lies beyond jmax
    """
    if x < 0:
        return Scalar(0)
    if len(factorials) < jmax + 1:
        raise InvalidParameterError(f"need factorial moments up to {jmax}, got {len(factorials)}")
    if support_max is not None and x > support_max:
        return Scalar(0)
    certified = support_max is not None and support_max <= jmax
    if not certified and x > jmax:
        raise AlternatingSeriesUnstableError(
            f"Pr(X = {x}) needs factorial moments beyond j = {jmax} and the support is not bounded there"
        )

    terms = [
        (-1) ** (j - x) * comb(j, x) * Scalar.of(factorials[j]) / factorial(j)
        for j in range(x, jmax + 1)
    ]
    if not certified:
        last = terms[-1]
        if not (last == 0 or abs(float(last)) < STABLE_TERM):
            raise AlternatingSeriesUnstableError(
                f"inversion at x={x} stops at j={jmax} with a last term of {float(last):.3g} "
                "and no finite support to bound the remainder"
            )
        logger.debug(f"Accepting uncertified inversion at x={x}: last term {float(last):.3g}")
        return scalar_sum(terms).as_approx()
    return scalar_sum(terms)


def poisson_limit_gap(n, lam, k):
    """
    |E(Binomial(n, lam/n)^k) - E(Poisson(lam)^k)|, exact for rational lam.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    lam = Scalar.of(lam)
    if lam < 0 or lam > n:
        raise InvalidParameterError(f"lambda must lie in [0, n], got {lam}")
    if k == 0:
        return Scalar(0)
    p = lam / n
    binomial = scalar_sum(surjections(k, m) * comb(n, m) * p ** m for m in range(1, min(k, n) + 1))
    poisson = scalar_sum(stirling2(k, m) * lam ** m for m in range(1, k + 1))
    return abs(binomial - poisson)
