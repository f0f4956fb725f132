"""
Data models for bernsum.
This module contains the value types passed between the moment engine, the
distribution catalogue, the tail-moment machinery, the generating-function
helpers and the oracles.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from bernsum.core.exceptions import (
    InvalidModelError,
    InvalidParameterError,
    NonMonotoneTailError,
)
from bernsum.models.scalar import Scalar

# Slack for Approx joint expectations and tails that land a hair outside [0,1]
APPROX_SLACK = 1e-12


def _check_probability(value, where):
    """Coerce to Scalar and require 0 <= value <= 1."""
    try:
        value = Scalar.of(value)
    except TypeError as e:
        raise InvalidModelError(f"{where}: {e}") from e
    slack = 0 if value.is_exact else APPROX_SLACK
    if value < -slack or value > 1 + slack:
        raise InvalidModelError(f"{where} = {value} lies outside [0, 1]")
    return value


class ModelKind(str, Enum):
    GENERAL = 'general'
    EXCHANGEABLE = 'exchangeable'
    INDEPENDENT = 'independent'
    INDEPENDENT_TRUNCATED = 'independent_truncated'


@dataclass(frozen=True)
class JointModel:
    """
    Joint-expectation provider for a family of Bernoulli indicators Y_1..Y_n.

    Build one with the classmethods rather than the constructor:
      * general(n, joint_fn): joint_fn receives a tuple of 0-based indices
      * exchangeable(n, e_fn): e_fn receives the subset size m, e_fn(0) = 1
      * independent(probabilities)
      * independent_truncated(prob_gen, truncation, tail_bound): prob_gen
        receives 1-based indices; the caller asserts sum_{i>truncation} p_i
        <= tail_bound.
    """
    kind: ModelKind
    n: int
    joint_fn: Optional[Callable] = field(default=None, compare=False)
    e_values: Tuple[Scalar, ...] = ()
    probabilities: Tuple[Scalar, ...] = ()
    tail_bound: Optional[Scalar] = None
    label: str = ''

    @classmethod
    def general(cls, n, joint_fn, label=''):
        if n < 0:
            raise InvalidParameterError(f"n must be non-negative, got {n}")
        return cls(kind=ModelKind.GENERAL, n=n, joint_fn=joint_fn, label=label)

    @classmethod
    def exchangeable(cls, n, e_fn, label=''):
        if n < 0:
            raise InvalidParameterError(f"n must be non-negative, got {n}")
        values = tuple(_check_probability(e_fn(m), f"e({m})") for m in range(n + 1))
        if (values[0].is_exact and values[0] != 1) or abs(float(values[0]) - 1) > APPROX_SLACK:
            raise InvalidModelError(f"e(0) must be 1, got {values[0]}")
        for m in range(n):
            slack = 0 if values[m + 1].is_exact and values[m].is_exact else APPROX_SLACK
            if values[m + 1] > values[m] + slack:
                raise InvalidModelError(
                    f"joint expectations must not increase with m: e({m + 1}) = {values[m + 1]} > e({m}) = {values[m]}"
                )
        return cls(kind=ModelKind.EXCHANGEABLE, n=n, e_values=values, label=label)

    @classmethod
    def independent(cls, probabilities, label=''):
        probs = tuple(_check_probability(p, f"p_{i + 1}") for i, p in enumerate(probabilities))
        return cls(kind=ModelKind.INDEPENDENT, n=len(probs), probabilities=probs, label=label)

    @classmethod
    def independent_truncated(cls, prob_gen, truncation, tail_bound, label=''):
        if truncation < 0:
            raise InvalidParameterError(f"truncation must be non-negative, got {truncation}")
        tail_bound = Scalar.of(tail_bound)
        if tail_bound < 0:
            raise InvalidParameterError(f"tail bound must be non-negative, got {tail_bound}")
        probs = tuple(_check_probability(prob_gen(i), f"p_{i}") for i in range(1, truncation + 1))
        return cls(
            kind=ModelKind.INDEPENDENT_TRUNCATED,
            n=truncation,
            probabilities=probs,
            tail_bound=tail_bound,
            label=label,
        )

    @property
    def is_truncated(self):
        return self.kind is ModelKind.INDEPENDENT_TRUNCATED

    def exchangeable_value(self, m):
        """e(m) for the exchangeable kind; zero beyond n."""
        if m > self.n:
            return Scalar(0)
        return self.e_values[m]

    def joint(self, indices):
        """E(Y_i1 ... Y_im) for one index subset (General kind)."""
        return _check_probability(self.joint_fn(tuple(indices)), f"E(prod Y over {tuple(indices)})")


VALID_KINDS = ('raw', 'central', 'factorial', 'expected_factorial', 'choose')
VALID_PROVENANCE = ('engine', 'closed_form', 'oracle', 'tail')


@dataclass(frozen=True)
class MomentReport:
    """Moments of one kind for k = 0..kmax, with where they came from."""
    kind: str
    values: Dict[int, Scalar]
    provenance: str
    mu: Optional[Scalar] = None
    truncation_bound: Optional[Scalar] = None

    def __post_init__(self):
        if self.kind not in VALID_KINDS:
            raise InvalidParameterError(f"unknown moment kind: {self.kind}")
        if self.provenance not in VALID_PROVENANCE:
            raise InvalidParameterError(f"unknown provenance: {self.provenance}")

    @property
    def kmax(self):
        return max(self.values) if self.values else 0

    @property
    def approx(self):
        scalars = list(self.values.values())
        if self.mu is not None:
            scalars.append(self.mu)
        return any(v.is_approx for v in scalars)

    def to_dict(self, digits=None):
        """Serialize the report."""
        return {
            'kind': self.kind,
            'kmax': self.kmax,
            'values': {str(k): self.values[k].to_str(digits) for k in sorted(self.values)},
            'mu': self.mu.to_str(digits) if self.mu is not None else None,
            'provenance': self.provenance,
            'approx': self.approx,
            'truncation_bound': (
                format(float(self.truncation_bound), '.6g') if self.truncation_bound is not None else None
            ),
        }


class ExpansionTerm(NamedTuple):
    """One group of the idempotent power expansion: S(k,m) times the C(n,m) m-subset products."""
    m: int
    coefficient: int
    subset_count: int


@dataclass(frozen=True)
class GeometricDecay:
    """Certificate tail(M) <= constant * ratio**M for every M >= start."""
    constant: Scalar
    ratio: Scalar
    start: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'constant', Scalar.of(self.constant))
        object.__setattr__(self, 'ratio', Scalar.of(self.ratio))
        if not (0 < self.ratio < 1):
            raise InvalidParameterError(f"decay ratio must lie in (0, 1), got {self.ratio}")
        if self.constant < 0:
            raise InvalidParameterError(f"decay constant must be non-negative, got {self.constant}")

    def bound(self, M):
        return self.constant * self.ratio ** M


@dataclass(frozen=True)
class CountDist:
    """
    A count random variable N described by its upper tail M -> Pr(N >= M).

    Exactly one of `max_m` (finite support, tail vanishes beyond it) or
    `decay` (infinite support with a geometric decay certificate) is set.
    When `scale` is given, tail_fn values are in units of that factor, tail_fn(0)
    is the total mass in those units, and the factor is applied once to final
    results.
    """
    tail_fn: Callable[[int], Scalar] = field(compare=False)
    max_m: Optional[int] = None
    decay: Optional[GeometricDecay] = None
    scale: Optional[float] = None
    label: str = ''
    finite_tails: Tuple[Scalar, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if (self.max_m is None) == (self.decay is None):
            raise InvalidParameterError("a CountDist needs exactly one of a finite bound or a decay certificate")
        if self.max_m is not None:
            if self.max_m < 0:
                raise InvalidParameterError(f"support bound must be non-negative, got {self.max_m}")
            tails = tuple(Scalar.of(self.tail_fn(M)) for M in range(1, self.max_m + 1))
            previous = self.tail(0)
            for M, value in enumerate(tails, start=1):
                self.check_step(M, value, previous)
                previous = value
            object.__setattr__(self, 'finite_tails', tails)

    def check_step(self, M, value, previous):
        """Reject a negative tail or one that rises from M-1 to M."""
        slack = 0 if value.is_exact and previous.is_exact else APPROX_SLACK
        if value < -slack:
            raise NonMonotoneTailError(f"Pr(N >= {M}) = {value} is negative")
        if value > previous + slack:
            raise NonMonotoneTailError(f"tail increases at M = {M}: {value} > {previous}")

    @property
    def is_finite(self):
        return self.max_m is not None

    def tail(self, M):
        """Tail value at M, in the units of `scale` when one is set."""
        if M <= 0:
            return Scalar(1) if self.scale is None else Scalar.of(self.tail_fn(0))
        if self.max_m is not None:
            return self.finite_tails[M - 1] if M <= self.max_m else Scalar(0)
        return Scalar.of(self.tail_fn(M))

    def apply_scale(self, value):
        return value if self.scale is None else Scalar(float(value) * self.scale)


@dataclass(frozen=True)
class TailEstimate:
    """A tail-sum result with its truncation residual (None when exact)."""
    value: Scalar
    residual_bound: Optional[Scalar] = None
    terms: int = 0

    @property
    def truncated(self):
        return self.residual_bound is not None


SERIES_KINDS = ('mgf', 'fmgf', 'pgf')


@dataclass(frozen=True)
class SeriesPoly:
    """Truncated power series c_0 + c_1 s + ... + c_K s^K."""
    kind: str
    coeffs: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise InvalidParameterError(f"unknown series kind: {self.kind}")
        coeffs = tuple(Scalar.of(c) for c in self.coeffs)
        if not coeffs:
            raise InvalidParameterError("a series needs at least one coefficient")
        object.__setattr__(self, 'coeffs', coeffs)
        if self.kind in ('mgf', 'fmgf'):
            lead = coeffs[0]
            if (lead.is_exact and lead != 1) or abs(float(lead) - 1) > APPROX_SLACK:
                raise InvalidParameterError(f"{self.kind} series must start with 1, got {lead}")
        else:
            total = Scalar(0)
            for c in coeffs:
                _check_probability(c, "pgf coefficient")
                total = total + c
            slack = 0 if total.is_exact else 1e-9
            if total > 1 + slack:
                raise InvalidParameterError(f"pgf coefficients sum to {total} > 1")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def to_dict(self, digits=None):
        return {
            'kind': self.kind,
            'order': self.order,
            'coeffs': [c.to_str(digits) for c in self.coeffs],
        }


ORACLE_METHODS = ('enumeration', 'pmf_sum', 'monte_carlo')


@dataclass(frozen=True)
class OracleResult:
    """Ground-truth moments from an independent computation."""
    values: Dict[int, Scalar]
    method: str
    central: Dict[int, Scalar] = field(default_factory=dict)
    factorial: Dict[int, Scalar] = field(default_factory=dict)
    sample_count: Optional[int] = None
    stderr: Optional[Dict[int, float]] = None
    rng: Optional[str] = None

    def __post_init__(self):
        if self.method not in ORACLE_METHODS:
            raise InvalidParameterError(f"unknown oracle method: {self.method}")
        if self.method == 'monte_carlo' and (self.sample_count is None or self.stderr is None):
            raise InvalidParameterError("monte carlo results must carry sample_count and stderr")

    def by_kind(self, kind):
        return {'raw': self.values, 'central': self.central, 'factorial': self.factorial}[kind]
