"""
Exact combinatorial kernel.
Surjection counts, Stirling numbers of both kinds, Bell numbers, binomial
coefficients and falling factorials over arbitrary-precision integers and
fractions. Every function is pure; the memo caches are thread-safe.
"""
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from bernsum.core.exceptions import InvalidParameterError
from bernsum.models.scalar import Scalar


def _require_non_negative(**kwargs):
    for name, value in kwargs.items():
        if value < 0:
            raise InvalidParameterError(f"{name} must be non-negative, got {value}")


@lru_cache(maxsize=None)
def surjections(k: int, m: int) -> int:
    """
    Number of surjections from a k-set onto an m-set.

    S(k,m) = sum_{v=0}^{m-1} (-1)^v C(m,v) (m-v)^k, with S(0,0) = 1 and
    S(k,m) = 0 whenever m > k or m = 0 < k.
    """
    _require_non_negative(k=k, m=m)
    if m > k:
        return 0
    if m == 0:
        return 1 if k == 0 else 0
    return sum((-1) ** v * comb(m, v) * (m - v) ** k for v in range(m))


def stirling2(k: int, m: int) -> int:
    """Stirling number of the second kind, S(k,m)/m!."""
    quotient, remainder = divmod(surjections(k, m), factorial(m))
    assert remainder == 0
    return quotient


@lru_cache(maxsize=None)
def stirling1_signed(k: int, m: int) -> int:
    """
    Signed Stirling number of the first kind: the coefficient of x^m in the
    falling factorial [x]_k.
    """
    _require_non_negative(k=k, m=m)
    if m > k:
        return 0
    if k == 0:
        return 1
    if m == 0:
        return 0
    return stirling1_signed(k - 1, m - 1) - (k - 1) * stirling1_signed(k - 1, m)


@lru_cache(maxsize=None)
def bell(k: int) -> int:
    """Bell number B_k, the number of partitions of a k-set."""
    _require_non_negative(k=k)
    if k == 0:
        return 1
    return sum(stirling2(k, m) for m in range(1, k + 1))


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the combinatorial zero extension."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def falling(x, k: int):
    """
    Falling factorial [x]_k = x(x-1)...(x-k+1), with [x]_0 = 1.

    Works for ints, Fractions and Scalars and returns the same kind.
    """
    _require_non_negative(k=k)
    result = Scalar(1) if isinstance(x, Scalar) else 1
    for j in range(k):
        result = result * (x - j)
    return result


@lru_cache(maxsize=None)
def harmonic(r: int) -> Fraction:
    """Harmonic number H_r = 1 + 1/2 + ... + 1/r."""
    if r < 1:
        raise InvalidParameterError(f"r must be at least 1, got {r}")
    return sum((Fraction(1, i) for i in range(1, r + 1)), Fraction(0))


def weighted_falling_sum(m: int, r: int) -> int:
    """
    Closed form of sum_{M=0}^{r} M [M]_m:
    (m+1)! C(r+1, r-m-1) + m m! C(r+1, r-m).
    """
    _require_non_negative(m=m, r=r)
    return factorial(m + 1) * binom(r + 1, r - m - 1) + m * factorial(m) * binom(r + 1, r - m)


def elementary_symmetric(values, mmax: int):
    """
    Elementary symmetric sums e_0..e_mmax of `values` (Scalars), i.e. the sum
    over m-subsets of the product of their members.
    """
    sums = [Scalar(1)] + [Scalar(0)] * mmax
    for count, value in enumerate(values, start=1):
        for j in range(min(count, mmax), 0, -1):
            sums[j] = sums[j] + sums[j - 1] * value
    return sums
