"""
Distribution catalogue.
Ten count distributions with their pmf, upper tail, joint expectations (for
the ones built as Bernoulli sums) and closed-form moments.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial
from typing import ClassVar, Tuple

from bernsum.core.exceptions import (
    InvalidParameterError,
    NotBernoulliSumError,
    UnsupportedKindError,
)
from bernsum.models.moment_models import CountDist, GeometricDecay, JointModel, MomentReport
from bernsum.models.scalar import Scalar, parse_scalar, scalar_sum
from bernsum.services.bernoulli_core import MomentEngine
from bernsum.services.combinat import (
    binom,
    elementary_symmetric,
    falling,
    harmonic,
    stirling2,
    surjections,
)
from bernsum.services.tail_moments import tail_from_pmf

logger = logging.getLogger(__name__)

CLOSED_FORM_KINDS = ('raw', 'central', 'factorial', 'choose')

# Poisson tails are summed exactly up to this many halvings past the point
# where consecutive weights start halving.
POISSON_HORIZON_HALVINGS = 120


@lru_cache(maxsize=None)
def derangements(m):
    """Permutations of m elements without fixed points."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    if m == 1:
        return 0
    return (m - 1) * (derangements(m - 1) + derangements(m - 2))


def _ratio(num, den):
    """num/den with 0/0 read as 0."""
    if den == 0:
        if num != 0:
            raise ZeroDivisionError("nonzero numerator over a vanishing falling factorial")
        return Scalar(0)
    return Scalar.of(num) / den


class DistSpec(ABC):
    """
    A named distribution with its parameters.

    Subclasses are frozen dataclasses registered under `name`. Finite
    supports report `support_max`; infinite ones report None.
    """
    name: ClassVar[str] = ''
    support_min: ClassVar[int] = 0
    is_bernoulli_sum: ClassVar[bool] = False
    has_printed_variant: ClassVar[bool] = False

    @property
    @abstractmethod
    def support_max(self):
        pass

    @abstractmethod
    def pmf(self, x):
        pass

    @property
    def is_finite(self):
        return self.support_max is not None

    def tail(self, M):
        """Pr(N >= M)."""
        if M <= self.support_min:
            return Scalar(1)
        if not self.is_finite:
            raise UnsupportedKindError(f"{self.name} has no tail formula")
        if M > self.support_max:
            return Scalar(0)
        return scalar_sum(self.pmf(x) for x in range(M, self.support_max + 1))

    def pmf_table(self, xmax=None):
        """{x: Pr(N = x)} over the support, cut at xmax for infinite supports."""
        if xmax is None:
            if not self.is_finite:
                raise InvalidParameterError(f"{self.name} has infinite support; give xmax")
            xmax = self.support_max
        elif self.is_finite:
            xmax = min(xmax, self.support_max)
        return {x: self.pmf(x) for x in range(self.support_min, xmax + 1)}

    # Bernoulli-sum constructions

    @property
    def trials(self):
        raise NotBernoulliSumError(f"{self.name} is not built as a Bernoulli sum; use its tail")

    def joint_expectation(self, m, indices=None):
        """E(Y_i1 ... Y_im) for any m-subset of the indicators."""
        raise NotBernoulliSumError(f"{self.name} is not built as a Bernoulli sum; use its tail")

    def _check_m(self, m):
        if not 0 <= m <= self.trials:
            raise InvalidParameterError(f"m must lie in [0, {self.trials}], got {m}")

    def as_joint_model(self):
        if not self.is_bernoulli_sum:
            raise NotBernoulliSumError(f"{self.name} is not built as a Bernoulli sum; use its tail")
        return JointModel.exchangeable(self.trials, self.joint_expectation, label=self.name)

    def count_dist(self):
        """The tail view of this distribution, for the tail-moment formulas."""
        return CountDist(tail_fn=self.tail, max_m=self.support_max, label=self.name)

    # Closed forms

    def factorial_closed_form(self, k, as_printed=False):
        raise UnsupportedKindError(f"no closed-form factorial moments for {self.name}")

    def raw_closed_form(self, k, as_printed=False):
        factorials = [self.factorial_closed_form(j, as_printed) for j in range(k + 1)]
        return MomentEngine.moments_from_factorial(factorials, k)

    def closed_form_moment(self, kind, k, as_printed=False):
        """
        Closed-form moment of the given kind.

        Args:
            kind (str): raw, central, factorial or choose
            k (int): order
            as_printed (bool): use the formula exactly as originally
                published where it is known to be misprinted

        Returns:
            Scalar: the moment
        """
        if k < 0:
            raise InvalidParameterError(f"k must be non-negative, got {k}")
        if as_printed and self.has_printed_variant:
            logger.info(f"Using the as-printed {kind} formula for {self.name}; it is a documented erratum")
        if kind == 'raw':
            return Scalar(1) if k == 0 else self.raw_closed_form(k, as_printed)
        if kind == 'factorial':
            return Scalar(1) if k == 0 else self.factorial_closed_form(k, as_printed)
        if kind == 'choose':
            return Scalar(1) if k == 0 else self.factorial_closed_form(k) / factorial(k)
        if kind == 'central':
            raws = [self.closed_form_moment('raw', j, as_printed) for j in range(max(k, 1) + 1)]
            return MomentEngine.central_from_raw(raws, raws[1], k)
        raise UnsupportedKindError(f"no closed form for {kind} moments")

    def closed_form_report(self, kind, kmax, as_printed=False):
        mu = self.closed_form_moment('raw', 1, as_printed) if kind == 'central' else None
        values = {k: self.closed_form_moment(kind, k, as_printed) for k in range(kmax + 1)}
        return MomentReport(kind=kind, values=values, provenance='closed_form', mu=mu)

    # Serialization

    def to_dict(self):
        data = {'dist': self.name}
        for f in fields(self):
            value = getattr(self, f.name)
            key = f.metadata.get('key', f.name)
            if isinstance(value, tuple):
                data[key] = [v.to_str() for v in value]
            elif isinstance(value, Scalar):
                data[key] = value.to_str()
            else:
                data[key] = value
        return data

    def __str__(self):
        params = ', '.join(f"{k}={v}" for k, v in self.to_dict().items() if k != 'dist')
        return f"{self.name}({params})"


# Parameter coercion

def _int_param(spec, name, minimum=0):
    value = getattr(spec, name)
    if isinstance(value, bool):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, str):
        try:
            value = int(value.strip())
        except ValueError as e:
            raise InvalidParameterError(f"{name} must be an integer, got {value!r}") from e
    elif isinstance(value, Scalar):
        if not (value.is_exact and value.value.denominator == 1):
            raise InvalidParameterError(f"{name} must be an integer, got {value}")
        value = int(value.value)
    elif not isinstance(value, int):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParameterError(f"{name} must be at least {minimum}, got {value}")
    object.__setattr__(spec, name, value)
    return value


def _scalar_param(spec, name, low=None, high=None, low_open=False):
    value = parse_scalar(getattr(spec, name))
    if low is not None and (value < low or (low_open and value == low)):
        bracket = '(' if low_open else '['
        raise InvalidParameterError(f"{name} must lie in {bracket}{low}, {high if high is not None else 'inf'}], got {value}")
    if high is not None and value > high:
        raise InvalidParameterError(f"{name} must lie in [{low}, {high}], got {value}")
    object.__setattr__(spec, name, value)
    return value


# Bernoulli-sum constructions

@dataclass(frozen=True)
class Binomial(DistSpec):
    """n independent trials with success probability p."""
    n: int
    p: Scalar

    name: ClassVar[str] = 'binomial'
    is_bernoulli_sum: ClassVar[bool] = True

    def __post_init__(self):
        _int_param(self, 'n')
        _scalar_param(self, 'p', 0, 1)

    @property
    def support_max(self):
        return self.n

    @property
    def trials(self):
        return self.n

    def pmf(self, x):
        if not 0 <= x <= self.n:
            return Scalar(0)
        return comb(self.n, x) * self.p ** x * (1 - self.p) ** (self.n - x)

    def joint_expectation(self, m, indices=None):
        self._check_m(m)
        return self.p ** m

    def factorial_closed_form(self, k, as_printed=False):
        return falling(self.n, k) * self.p ** k

    def raw_closed_form(self, k, as_printed=False):
        return scalar_sum(surjections(k, m) * comb(self.n, m) * self.p ** m for m in range(1, min(k, self.n) + 1))


@dataclass(frozen=True)
class PoissonBinomial(DistSpec):
    """Independent trials with their own success probabilities."""
    probs: Tuple[Scalar, ...]

    name: ClassVar[str] = 'poisson-binomial'
    is_bernoulli_sum: ClassVar[bool] = True

    def __post_init__(self):
        probs = getattr(self, 'probs')
        if isinstance(probs, str):
            probs = [p for p in probs.split(',') if p.strip()]
        values = tuple(parse_scalar(p) for p in probs)
        for i, p in enumerate(values, start=1):
            if not 0 <= p <= 1:
                raise InvalidParameterError(f"p_{i} must lie in [0, 1], got {p}")
        object.__setattr__(self, 'probs', values)

    @property
    def support_max(self):
        return len(self.probs)

    @property
    def trials(self):
        return len(self.probs)

    @cached_property
    def _pmf(self):
        probs = [Scalar(1)]
        for p in self.probs:
            nxt = [Scalar(0)] * (len(probs) + 1)
            for x, mass in enumerate(probs):
                nxt[x] = nxt[x] + mass * (1 - p)
                nxt[x + 1] = nxt[x + 1] + mass * p
            probs = nxt
        return tuple(probs)

    def pmf(self, x):
        return self._pmf[x] if 0 <= x <= self.trials else Scalar(0)

    def joint_expectation(self, m, indices=None):
        """Product of the marginals over `indices`; a bare m needs equal probabilities."""
        self._check_m(m)
        if indices is None:
            if len(set(self.probs)) > 1:
                raise InvalidParameterError("poisson-binomial joint expectations depend on the indices; pass them")
            return self.probs[0] ** m if self.probs else Scalar(1)
        if len(indices) != m:
            raise InvalidParameterError(f"expected {m} indices, got {len(indices)}")
        result = Scalar(1)
        for i in indices:
            result = result * self.probs[i]
        return result

    def as_joint_model(self):
        return JointModel.general(
            self.trials,
            lambda indices: self.joint_expectation(len(indices), indices),
            label=self.name,
        )

    def factorial_closed_form(self, k, as_printed=False):
        if k > self.trials:
            return Scalar(0)
        return factorial(k) * elementary_symmetric(self.probs, k)[k]

    def raw_closed_form(self, k, as_printed=False):
        sums = elementary_symmetric(self.probs, min(k, self.trials))
        return scalar_sum(surjections(k, m) * sums[m] for m in range(1, min(k, self.trials) + 1))


@dataclass(frozen=True)
class Hypergeometric(DistSpec):
    """Trait count in n draws without replacement from a population with g bearers."""
    population: int
    g: int
    n: int

    name: ClassVar[str] = 'hypergeometric'
    is_bernoulli_sum: ClassVar[bool] = True

    def __post_init__(self):
        N = _int_param(self, 'population')
        g = _int_param(self, 'g')
        n = _int_param(self, 'n')
        if g > N or n > N:
            raise InvalidParameterError(f"need g <= N and n <= N, got N={N}, g={g}, n={n}")

    @property
    def support_max(self):
        return min(self.n, self.g)

    @property
    def trials(self):
        return self.n

    def pmf(self, x):
        return Scalar(binom(self.g, x) * binom(self.population - self.g, self.n - x)) / comb(self.population, self.n)

    def joint_expectation(self, m, indices=None):
        self._check_m(m)
        return _ratio(falling(self.g, m), falling(self.population, m))

    def factorial_closed_form(self, k, as_printed=False):
        if k > self.n:
            return Scalar(0)
        return _ratio(falling(self.n, k) * falling(self.g, k), falling(self.population, k))


@dataclass(frozen=True)
class CmpBinomial(DistSpec):
    """
    Conway-Maxwell-Poisson binomial: Pr(X = l) proportional to
    C(n,l)^nu p^l (1-p)^(n-l). nu = 1 is the binomial.
    """
    n: int
    p: Scalar
    nu: Scalar

    name: ClassVar[str] = 'cmp-binomial'
    is_bernoulli_sum: ClassVar[bool] = True
    has_printed_variant: ClassVar[bool] = True

    def __post_init__(self):
        _int_param(self, 'n')
        _scalar_param(self, 'p', 0, 1)
        _scalar_param(self, 'nu', 0)

    @property
    def support_max(self):
        return self.n

    @property
    def trials(self):
        return self.n

    @property
    def exact_nu(self):
        return self.nu.is_exact and self.nu.value.denominator == 1

    @cached_property
    def _weights(self):
        weights = []
        for l in range(self.n + 1):
            if self.exact_nu:
                count = Scalar(comb(self.n, l) ** int(self.nu.value))
            else:
                count = Scalar(float(comb(self.n, l)) ** float(self.nu))
            weights.append(count * self.p ** l * (1 - self.p) ** (self.n - l))
        return tuple(weights)

    @cached_property
    def normalizer(self):
        """C_{n,p,nu}, summed exactly or with compensated summation."""
        return scalar_sum(self._weights)

    def pmf(self, x):
        if not 0 <= x <= self.n:
            return Scalar(0)
        return self._weights[x] / self.normalizer

    def _joint(self, m, upper):
        # E(Y_1..Y_m) = sum_l Pr(X=l) C(n-m, l-m) / C(n, l)
        return scalar_sum(
            self._weights[l] * comb(self.n - m, l - m) / comb(self.n, l)
            for l in range(m, upper + 1)
        ) / self.normalizer

    def joint_expectation(self, m, indices=None):
        self._check_m(m)
        return Scalar(1) if m == 0 else self._joint(m, self.n)

    def factorial_closed_form(self, k, as_printed=False):
        if k > self.n:
            return Scalar(0)
        upper = min(self.n, k) if as_printed else self.n
        return falling(self.n, k) * self._joint(k, upper)

    def raw_closed_form(self, k, as_printed=False):
        top = min(k, self.n)
        return scalar_sum(
            surjections(k, m) * comb(self.n, m) * self._joint(m, min(self.n, k) if as_printed else self.n)
            for m in range(1, top + 1)
        )


@dataclass(frozen=True)
class EmptyUrns(DistSpec):
    """Empty urns after placing indistinguishable balls, every multiset placement equally likely."""
    n: int
    balls: int

    name: ClassVar[str] = 'empty-urns'
    is_bernoulli_sum: ClassVar[bool] = True

    def __post_init__(self):
        _int_param(self, 'n', 1)
        _int_param(self, 'balls')

    @property
    def support_max(self):
        return self.n if self.balls == 0 else self.n - 1

    @property
    def trials(self):
        return self.n

    def pmf(self, x):
        n, balls = self.n, self.balls
        if balls == 0:
            return Scalar(1 if x == n else 0)
        if not 0 <= x <= n:
            return Scalar(0)
        return Scalar(comb(n, x) * binom(balls - 1, n - x - 1)) / comb(balls + n - 1, balls)

    def joint_expectation(self, m, indices=None):
        self._check_m(m)
        if self.balls == 0:
            return Scalar(1)
        return _ratio(falling(self.n - 1, m), falling(self.balls + self.n - 1, m))

    def factorial_closed_form(self, k, as_printed=False):
        if k > self.n:
            return Scalar(0)
        if self.balls == 0:
            return Scalar(falling(self.n, k))
        return _ratio(falling(self.n, k) * falling(self.n - 1, k), falling(self.balls + self.n - 1, k))

    def as_hypergeometric(self):
        """The hypergeometric law with the same distribution (needs at least one ball)."""
        if self.balls == 0:
            raise InvalidParameterError("with no balls the equivalent population is smaller than the sample")
        return Hypergeometric(self.balls + self.n - 1, self.n - 1, self.n)


@dataclass(frozen=True)
class Matching(DistSpec):
    """Fixed points of a uniformly random permutation of n elements."""
    n: int

    name: ClassVar[str] = 'matching'
    is_bernoulli_sum: ClassVar[bool] = True

    def __post_init__(self):
        _int_param(self, 'n')

    @property
    def support_max(self):
        return self.n

    @property
    def trials(self):
        return self.n

    def pmf(self, x):
        if not 0 <= x <= self.n:
            return Scalar(0)
        return Scalar(comb(self.n, x) * derangements(self.n - x)) / factorial(self.n)

    def joint_expectation(self, m, indices=None):
        self._check_m(m)
        return Scalar(factorial(self.n - m)) / factorial(self.n)

    def factorial_closed_form(self, k, as_printed=False):
        return Scalar(1 if k <= self.n else 0)

    def raw_closed_form(self, k, as_printed=False):
        # Bell number B_k, less the partitions with more than n blocks
        return Scalar(sum(stirling2(k, m) for m in range(1, min(k, self.n) + 1)))


# Count distributions known through their tails

@dataclass(frozen=True)
class Poisson(DistSpec):
    """
    Poisson(lam). Tails are summed exactly in units of the pmf at the mode,
    so the weights stay bounded by one for any rate.
    """
    lam: Scalar = field(metadata={'key': 'lambda'})

    name: ClassVar[str] = 'poisson'

    def __post_init__(self):
        _scalar_param(self, 'lam', 0)

    @property
    def support_max(self):
        return 0 if self.lam == 0 else None

    @property
    def _mode(self):
        return math.floor(float(self.lam))

    def _log_pmf(self, x):
        lam = float(self.lam)
        return x * math.log(lam) - lam - math.lgamma(x + 1)

    @cached_property
    def _scale(self):
        """Pr(N = mode); every scaled weight is a ratio to it."""
        return math.exp(self._log_pmf(self._mode))

    def pmf(self, x):
        if x < 0:
            return Scalar(0)
        if self.lam == 0:
            return Scalar(1 if x == 0 else 0)
        return Scalar(math.exp(self._log_pmf(x)))

    @cached_property
    def _decay_start(self):
        return math.ceil(2 * float(self.lam)) + 1

    @cached_property
    def _scaled_weights(self):
        """Pr(N = l) / Pr(N = mode) for l up to the summation horizon."""
        horizon = self._decay_start + POISSON_HORIZON_HALVINGS
        mode = self._mode
        weights = [Scalar(0)] * (horizon + 1)
        weights[mode] = Scalar(1)
        for l in range(mode + 1, horizon + 1):
            weights[l] = weights[l - 1] * self.lam / l
        for l in range(mode - 1, -1, -1):
            weights[l] = weights[l + 1] * (l + 1) / self.lam
        return tuple(weights)

    @cached_property
    def _scaled_tails(self):
        weights = self._scaled_weights
        tails = [Scalar(0)] * (len(weights) + 1)
        for M in range(len(weights) - 1, -1, -1):
            tails[M] = tails[M + 1] + weights[M]
        return tuple(tails)

    def _scaled_tail(self, M):
        tails = self._scaled_tails
        return tails[M] if M < len(tails) else Scalar(0)

    def tail(self, M):
        if M <= 0:
            return Scalar(1)
        if self.lam == 0:
            return Scalar(0)
        return Scalar(float(self._scaled_tail(M)) * self._scale)

    def count_dist(self):
        if self.lam == 0:
            return CountDist(tail_fn=self.tail, max_m=0, label=self.name)
        start = self._decay_start
        # Exact constant even for a float rate; it grows like e^lam
        w_start = Fraction(self._scaled_weights[start].value)
        decay = GeometricDecay(constant=2 * w_start * 2 ** start, ratio=Scalar(1) / 2, start=start)
        return CountDist(
            tail_fn=self._scaled_tail,
            decay=decay,
            scale=self._scale,
            label=self.name,
        )

    def factorial_closed_form(self, k, as_printed=False):
        return self.lam ** k

    def raw_closed_form(self, k, as_printed=False):
        # Touchard polynomial
        return scalar_sum(stirling2(k, m) * self.lam ** m for m in range(1, k + 1))


@dataclass(frozen=True)
class Geometric(DistSpec):
    """Number of tosses up to and including the first head."""
    p: Scalar

    name: ClassVar[str] = 'geometric'
    support_min: ClassVar[int] = 1
    has_printed_variant: ClassVar[bool] = True

    def __post_init__(self):
        _scalar_param(self, 'p', 0, 1, low_open=True)

    @property
    def support_max(self):
        return 1 if self.p == 1 else None

    def pmf(self, x):
        if x < 1:
            return Scalar(0)
        return (1 - self.p) ** (x - 1) * self.p

    def tail(self, M):
        if M <= 1:
            return Scalar(1)
        return (1 - self.p) ** (M - 1)

    def count_dist(self):
        if self.p == 1:
            return CountDist(tail_fn=self.tail, max_m=1, label=self.name)
        q = 1 - self.p
        return CountDist(tail_fn=self.tail, decay=GeometricDecay(1 / q, q, 1), label=self.name)

    def factorial_closed_form(self, k, as_printed=False):
        printed = (1 - self.p) ** (k - 1) / self.p ** k
        # The published form drops the k! and is E(C(N, k)) instead
        return printed if as_printed else factorial(k) * printed

    def raw_closed_form(self, k, as_printed=False):
        return scalar_sum(
            surjections(k, m) * (1 - self.p) ** (m - 1) / self.p ** m for m in range(1, k + 1)
        )


@dataclass(frozen=True)
class Soliton(DistSpec):
    """Ideal soliton: Pr(1) = 1/r, Pr(i) = 1/(i(i-1)) for 2 <= i <= r."""
    r: int

    name: ClassVar[str] = 'soliton'
    support_min: ClassVar[int] = 1
    has_printed_variant: ClassVar[bool] = True

    def __post_init__(self):
        _int_param(self, 'r', 2)

    @property
    def support_max(self):
        return self.r

    def pmf(self, x):
        if x == 1:
            return Scalar(1) / self.r
        if 2 <= x <= self.r:
            return Scalar(1) / (x * (x - 1))
        return Scalar(0)

    def tail(self, M):
        if M <= 1:
            return Scalar(1)
        if M > self.r:
            return Scalar(0)
        return Scalar(self.r - 1) / self.r - Scalar(M - 2) / (M - 1)

    def _choose_moment(self, m, as_printed):
        """E(C(N, m)) for m >= 2."""
        r = self.r
        lead = Scalar(r - 1) / r * comb(r, m)
        if as_printed:
            return lead - binom(r - 3, m) - (m - 2) ** 2 * binom(r - 3, m - 1)
        return lead - binom(r - 1, m) - Scalar(m - 2) / (m - 1) * binom(r - 1, m - 1)

    def factorial_closed_form(self, k, as_printed=False):
        if k == 1:
            return Scalar(harmonic(self.r))
        return factorial(k) * self._choose_moment(k, as_printed)

    def raw_closed_form(self, k, as_printed=False):
        return Scalar(harmonic(self.r)) + scalar_sum(
            surjections(k, m) * self._choose_moment(m, as_printed) for m in range(2, k + 1)
        )


@dataclass(frozen=True)
class Benford(DistSpec):
    """Leading digit in base b: Pr(d) = log_b(d+1) - log_b(d) for d = 1..b-1."""
    base: int

    name: ClassVar[str] = 'benford'
    support_min: ClassVar[int] = 1

    def __post_init__(self):
        _int_param(self, 'base', 2)

    @property
    def support_max(self):
        return self.base - 1

    def _log(self, M):
        return math.log(M) / math.log(self.base)

    def pmf(self, x):
        if not 1 <= x < self.base:
            return Scalar(0)
        return Scalar(self._log(x + 1) - self._log(x))

    def tail(self, M):
        if M <= 1:
            return Scalar(1)
        if M >= self.base:
            return Scalar(0)
        return Scalar(1 - self._log(M))

    def _log_sum(self, m):
        return math.fsum(comb(M - 1, m - 1) * self._log(M) for M in range(m, self.base))

    def factorial_closed_form(self, k, as_printed=False):
        return Scalar(factorial(k) * (binom(self.base - 1, k) - self._log_sum(k)))

    def raw_closed_form(self, k, as_printed=False):
        return scalar_sum(
            Scalar(surjections(k, m) * (binom(self.base - 1, m) - self._log_sum(m))) for m in range(1, k + 1)
        )


@dataclass(frozen=True)
class Tabulated(DistSpec):
    """
    A count distribution given point by point, e.g. read from a pmf file.

    Accepts a mapping {x: prob} or a list of [x, prob] pairs. Repeated points
    add up; the masses must be non-negative and sum to one.
    """
    masses: Tuple[Tuple[int, Scalar], ...]

    name: ClassVar[str] = 'tabulated'

    def __post_init__(self):
        if isinstance(self.masses, dict):
            entries = list(self.masses.items())
        elif isinstance(self.masses, (list, tuple)):
            entries = list(self.masses)
        else:
            raise InvalidParameterError(
                f"a pmf is an object {{x: prob}} or a list of [x, prob] pairs, got {type(self.masses).__name__}"
            )
        pairs = []
        for entry in entries:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise InvalidParameterError(f"pmf entries are [x, prob] pairs, got {entry!r}")
            x, p = entry
            pairs.append((_support_point(x), parse_scalar(p)))
        if not pairs:
            raise InvalidParameterError("a tabulated pmf needs at least one point")
        object.__setattr__(self, 'masses', tuple(sorted(pairs)))
        # Rejects negative points or masses and unnormalized tables up front
        self.count_dist()

    @cached_property
    def _table(self):
        table = {}
        for x, p in self.masses:
            table[x] = table.get(x, Scalar(0)) + p
        return table

    @cached_property
    def _count_dist(self):
        return tail_from_pmf(self._table, label=self.name)

    @property
    def support_max(self):
        return max(self._table)

    def pmf(self, x):
        return self._table.get(x, Scalar(0))

    def count_dist(self):
        return self._count_dist

    def to_dict(self):
        return {'dist': self.name, 'pmf': {str(x): p.to_str() for x, p in self._table.items()}}


def _support_point(x):
    if isinstance(x, bool) or (isinstance(x, float) and not x.is_integer()):
        raise InvalidParameterError(f"support points must be integers, got {x!r}")
    try:
        return int(x)
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(f"support points must be integers, got {x!r}") from e


DISTRIBUTIONS = {
    cls.name: cls
    for cls in (
        Binomial, PoissonBinomial, Hypergeometric, CmpBinomial, EmptyUrns,
        Matching, Poisson, Geometric, Soliton, Benford,
    )
}


def parse_spec(data):
    """
    Build a DistSpec from a mapping such as {"dist": "binomial", "n": 10, "p": "1/2"}.

    Raises:
        InvalidParameterError: unknown distribution, missing or unknown parameters
    """
    if not isinstance(data, dict) or 'dist' not in data:
        raise InvalidParameterError("a distribution spec needs a 'dist' name")
    name = data['dist']
    cls = DISTRIBUTIONS.get(name)
    if cls is None:
        raise InvalidParameterError(f"unknown distribution {name!r}; choose from {', '.join(DISTRIBUTIONS)}")

    keys = {f.metadata.get('key', f.name): f.name for f in fields(cls)}
    unknown = set(data) - set(keys) - {'dist'}
    if unknown:
        raise InvalidParameterError(f"{name} does not take {', '.join(sorted(unknown))}")
    missing = [key for key in keys if data.get(key) is None]
    if missing:
        raise InvalidParameterError(f"{name} needs {', '.join(missing)}")
    return cls(**{attr: data[key] for key, attr in keys.items()})
