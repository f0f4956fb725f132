"""
Ground-truth oracles.
Brute-force enumeration of outcomes, direct pmf summation and seeded Monte
Carlo sampling. None of these touch the Stirling or surjection kernel, so an
agreement with the moment engine is independent evidence.
"""
import math
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product

import numpy as np

from bernsum.core.config import get_config
from bernsum.core.exceptions import InvalidParameterError, SubsetExplosionError
from bernsum.core.logging import oracle_logger as logger
from bernsum.models.moment_models import OracleResult
from bernsum.models.scalar import Scalar, scalar_sum

RNG_NAME = 'numpy.PCG64'
MIN_SAMPLES = 1000
MC_CHUNK = 100_000


def _power(x, k):
    result = 1
    for _ in range(k):
        result = result * x
    return result


def _falling_inline(x, k):
    result = 1
    for j in range(k):
        result = result * (x - j)
    return result


def histogram_moments(histogram, kmax, method):
    """
    Raw, central and factorial moments of a count variable from its
    {value: probability} histogram, by direct summation.
    """
    masses = {x: Scalar.of(w) for x, w in histogram.items()}
    raw = {k: scalar_sum(_power(x, k) * w for x, w in masses.items()) for k in range(kmax + 1)}
    mu = scalar_sum(x * w for x, w in masses.items())
    central = {k: scalar_sum(_power(x - mu, k) * w for x, w in masses.items()) for k in range(kmax + 1)}
    factorial_moments = {
        k: scalar_sum(_falling_inline(x, k) * w for x, w in masses.items()) for k in range(kmax + 1)
    }
    return OracleResult(values=raw, method=method, central=central, factorial=factorial_moments)


class OracleService:
    """Independent computations of the moments of a count variable."""

    def __init__(self, config=None):
        self.config = config or get_config()

    def _guard(self, needed, limit, what):
        if needed > limit:
            logger.error(f"Refusing {what} enumeration: {needed} outcomes over limit {limit}")
            raise SubsetExplosionError(f"{what} enumeration needs {needed} outcomes; limit is {limit}")
        logger.debug(f"Enumerating {needed} {what} outcomes")

    def enumerate_independent(self, probs, kmax):
        """Sum over all 2^n outcomes of independent indicators."""
        probs = [Scalar.of(p) for p in probs]
        n = len(probs)
        if n > self.config.ORACLE_INDEPENDENT_MAX_N:
            raise SubsetExplosionError(
                f"independent enumeration is limited to n <= {self.config.ORACLE_INDEPENDENT_MAX_N}, got {n}"
            )
        logger.debug(f"Enumerating {2 ** n} independent outcomes")
        histogram = defaultdict(lambda: Scalar(0))
        for outcome in product((0, 1), repeat=n):
            weight = Scalar(1)
            for y, p in zip(outcome, probs):
                weight = weight * (p if y else 1 - p)
            count = sum(outcome)
            histogram[count] = histogram[count] + weight
        return histogram_moments(histogram, kmax, 'enumeration')

    def enumerate_matching(self, n, kmax):
        """Fixed points over all n! permutations."""
        if n > self.config.ORACLE_MATCHING_MAX_N:
            raise SubsetExplosionError(
                f"permutation enumeration is limited to n <= {self.config.ORACLE_MATCHING_MAX_N}, got {n}"
            )
        logger.debug(f"Enumerating {math.factorial(n)} permutations")
        counts = defaultdict(int)
        for perm in permutations(range(n)):
            counts[sum(1 for i, v in enumerate(perm) if i == v)] += 1
        total = math.factorial(n)
        return histogram_moments({x: Fraction(c, total) for x, c in counts.items()}, kmax, 'enumeration')

    def enumerate_urns(self, n, balls, kmax):
        """Empty urns over all equally likely multiset placements of the balls."""
        if n < 1 or balls < 0:
            raise InvalidParameterError(f"need n >= 1 urns and balls >= 0, got n={n}, balls={balls}")
        total = math.comb(balls + n - 1, balls)
        self._guard(total, self.config.ORACLE_URN_MAX_PLACEMENTS, 'placement')
        counts = defaultdict(int)
        for placement in combinations_with_replacement(range(n), balls):
            counts[n - len(set(placement))] += 1
        return histogram_moments({x: Fraction(c, total) for x, c in counts.items()}, kmax, 'enumeration')

    def enumerate_hypergeometric(self, population, g, n, kmax):
        """Trait bearers over all equally likely n-subsets of the population (bearers are 0..g-1)."""
        if not (0 <= g <= population and 0 <= n <= population):
            raise InvalidParameterError(f"need g <= N and n <= N, got N={population}, g={g}, n={n}")
        total = math.comb(population, n)
        self._guard(total, self.config.ORACLE_DRAW_MAX_SUBSETS, 'draw')
        counts = defaultdict(int)
        for draw in combinations(range(population), n):
            counts[sum(1 for item in draw if item < g)] += 1
        return histogram_moments({x: Fraction(c, total) for x, c in counts.items()}, kmax, 'enumeration')

    def pmf_moments(self, spec, kmax):
        """Direct sum of x^k Pr(X = x) over a finite support."""
        if not spec.is_finite:
            raise InvalidParameterError(f"{spec.name} has infinite support; use monte_carlo instead")
        return histogram_moments(spec.pmf_table(), kmax, 'pmf_sum')

    def enumeration_for(self, spec, kmax):
        """
        The brute-force enumeration that matches spec, or None when the spec
        has no enumeration oracle or is beyond its limits.
        """
        try:
            if spec.name == 'binomial':
                return self.enumerate_independent([spec.p] * spec.n, kmax)
            if spec.name == 'poisson-binomial':
                return self.enumerate_independent(spec.probs, kmax)
            if spec.name == 'matching':
                return self.enumerate_matching(spec.n, kmax)
            if spec.name == 'empty-urns':
                return self.enumerate_urns(spec.n, spec.balls, kmax)
            if spec.name == 'hypergeometric':
                return self.enumerate_hypergeometric(spec.population, spec.g, spec.n, kmax)
        except SubsetExplosionError:
            logger.debug(f"No enumeration for {spec}: over the limit")
        return None

    # Monte Carlo

    def monte_carlo(self, spec, kmax, samples, seed=None):
        """
        Sample moments with standard errors from a seeded PCG64 stream.

        Identical (spec, samples, seed) give identical results on one build.
        """
        if samples < MIN_SAMPLES:
            raise InvalidParameterError(f"monte carlo needs at least {MIN_SAMPLES} samples, got {samples}")
        seed = self.config.SEED if seed is None else seed
        rng = np.random.Generator(np.random.PCG64(seed))
        x = self._sample(spec, rng, samples).astype(np.float64)
        logger.debug(f"Drew {samples} samples of {spec} with seed {seed}")

        mean = x.mean()
        root_n = math.sqrt(samples)
        values, central, factorial_moments, stderr = {}, {}, {}, {}
        falling_x = np.ones_like(x)
        for k in range(kmax + 1):
            powers = x ** k
            values[k] = Scalar(float(powers.mean()))
            stderr[k] = float(powers.std(ddof=1) / root_n)
            central[k] = Scalar(float(((x - mean) ** k).mean()))
            factorial_moments[k] = Scalar(float(falling_x.mean()))
            falling_x = falling_x * (x - k)
        return OracleResult(
            values=values,
            method='monte_carlo',
            central=central,
            factorial=factorial_moments,
            sample_count=samples,
            stderr=stderr,
            rng=RNG_NAME,
        )

    def _sample(self, spec, rng, samples):
        name = spec.name
        if name == 'binomial':
            return rng.binomial(spec.n, float(spec.p), size=samples)
        if name == 'hypergeometric':
            return rng.hypergeometric(spec.g, spec.population - spec.g, spec.n, size=samples)
        if name == 'poisson':
            return rng.poisson(float(spec.lam), size=samples)
        if name == 'geometric':
            return rng.geometric(float(spec.p), size=samples)
        if name == 'poisson-binomial':
            probs = np.array([float(p) for p in spec.probs])
            return np.concatenate([
                (rng.random((size, len(probs))) < probs).sum(axis=1)
                for size in self._chunks(samples)
            ])
        if name == 'matching':
            identity = np.arange(spec.n)
            return np.concatenate([
                (rng.permuted(np.tile(identity, (size, 1)), axis=1) == identity).sum(axis=1)
                for size in self._chunks(samples)
            ])
        table = spec.pmf_table()
        support = np.array(list(table))
        weights = np.array([float(w) for w in table.values()])
        return rng.choice(support, size=samples, p=weights / weights.sum())

    @staticmethod
    def _chunks(samples):
        full, rest = divmod(samples, MC_CHUNK)
        return [MC_CHUNK] * full + ([rest] if rest else [])
