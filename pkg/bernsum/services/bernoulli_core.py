"""
Moment engine for Bernoulli sums.
Raw, central and factorial moments, binomial-coefficient expectations,
expected factorials and the pmf of X = Y_1 + ... + Y_n, all computed from
the joint expectations E(Y_i1 ... Y_im) a JointModel provides.
"""
from itertools import combinations
from math import comb, factorial

from bernsum.core.config import get_config
from bernsum.core.exceptions import InvalidParameterError, SubsetExplosionError
from bernsum.core.logging import engine_logger as logger
from bernsum.models.moment_models import ExpansionTerm, ModelKind, MomentReport
from bernsum.models.scalar import Scalar, scalar_sum
from bernsum.services.combinat import (
    elementary_symmetric,
    stirling1_signed,
    stirling2,
    surjections,
)


def _require_k(k, name='k'):
    if k < 0:
        raise InvalidParameterError(f"{name} must be non-negative, got {k}")


def _require_length(values, k, what):
    if len(values) < k + 1:
        raise InvalidParameterError(f"need {what} up to order {k}, got {len(values)} values")


class MomentEngine:
    """
    Computes moments of a Bernoulli sum from its JointModel.

    Every moment reduces to the subset sums
        sums[m] = sum over m-subsets of E(Y_i1 ... Y_im) = E(C(X, m)),
    which collapse to C(n,m) e(m) for exchangeable models and to elementary
    symmetric sums for independent ones. General models enumerate subsets
    under an explicit budget.
    """

    def __init__(self, budget=None, config=None):
        self.config = config or get_config()
        self.budget = budget if budget is not None else self.config.ENUMERATION_BUDGET

    # Subset sums

    def subset_sums(self, model, mmax):
        """
        Return [sums[0], ..., sums[mmax]] with sums[m] = E(C(X, m)).

        Raises:
            SubsetExplosionError: a General model would need more subset
                evaluations than the budget allows, or has n above the guard.
        """
        _require_k(mmax, 'mmax')
        top = min(mmax, model.n)
        sums = [Scalar(1)] + [Scalar(0)] * mmax

        if model.kind is ModelKind.EXCHANGEABLE:
            for m in range(1, top + 1):
                sums[m] = comb(model.n, m) * model.exchangeable_value(m)
        elif model.kind in (ModelKind.INDEPENDENT, ModelKind.INDEPENDENT_TRUNCATED):
            sums[:top + 1] = elementary_symmetric(model.probabilities, top)
        else:
            self._check_budget(model.n, top)
            for m in range(1, top + 1):
                sums[m] = scalar_sum(model.joint(subset) for subset in combinations(range(model.n), m))
        return sums

    def _check_budget(self, n, top):
        if top > 0 and n > self.config.GENERAL_MAX_N:
            logger.error(f"Refusing subset enumeration: n={n} exceeds {self.config.GENERAL_MAX_N}")
            raise SubsetExplosionError(
                f"general models are enumerated only up to n = {self.config.GENERAL_MAX_N}, got n = {n}"
            )
        needed = sum(comb(n, m) for m in range(1, top + 1))
        if needed > self.budget:
            logger.error(f"Refusing subset enumeration: {needed} evaluations over budget {self.budget}")
            raise SubsetExplosionError(
                f"enumerating subsets of size <= {top} from n = {n} needs {needed} evaluations; budget is {self.budget}"
            )
        logger.debug(f"Enumerating {needed} subsets (n={n}, m<={top}, budget={self.budget})")

    # Moments

    @staticmethod
    def _raw_from_sums(sums, k):
        if k == 0:
            return Scalar(1)
        top = min(k, len(sums) - 1)
        return scalar_sum(surjections(k, m) * sums[m] for m in range(1, top + 1))

    def raw_moment(self, model, k):
        """E(X^k) = sum_m S(k,m) * sum over m-subsets of E(prod)."""
        _require_k(k)
        if k == 0:
            return Scalar(1)
        return self._raw_from_sums(self.subset_sums(model, min(k, model.n)), k)

    def central_moment(self, model, k):
        """E((X - mu)^k) through the binomial expansion of the raw moments."""
        _require_k(k)
        sums = self.subset_sums(model, min(max(k, 1), model.n))
        raws = [self._raw_from_sums(sums, j) for j in range(max(k, 1) + 1)]
        mu = raws[1]
        return self.central_from_raw(raws, mu, k)

    def choose_expectation(self, model, m):
        """E(C(X, m)), the sum of joint expectations over m-subsets."""
        _require_k(m, 'm')
        if m > model.n:
            return Scalar(0)
        return self.subset_sums(model, m)[m]

    def factorial_moment(self, model, k):
        """E([X]_k) = k! E(C(X, k))."""
        _require_k(k)
        return factorial(k) * self.choose_expectation(model, k)

    def pmf(self, model):
        """
        Exact pmf of X as a list indexed 0..n.

        Independent models use the product of the indicator pgfs; every other
        kind inverts the subset sums, Pr(X=x) = sum_{j>=x} (-1)^(j-x) C(j,x) sums[j].
        """
        if model.kind in (ModelKind.INDEPENDENT, ModelKind.INDEPENDENT_TRUNCATED):
            probs = [Scalar(1)]
            for p in model.probabilities:
                nxt = [Scalar(0)] * (len(probs) + 1)
                for x, mass in enumerate(probs):
                    nxt[x] = nxt[x] + mass * (1 - p)
                    nxt[x + 1] = nxt[x + 1] + mass * p
                probs = nxt
            return probs

        if model.kind is ModelKind.GENERAL and model.n > self.config.EXPECTED_FACTORIAL_MAX_N:
            raise SubsetExplosionError(
                f"the pmf of a general model enumerates 2^n subsets; n = {model.n} exceeds "
                f"{self.config.EXPECTED_FACTORIAL_MAX_N}"
            )
        sums = self.subset_sums(model, model.n)
        return [
            scalar_sum((-1) ** (j - x) * comb(j, x) * sums[j] for j in range(x, model.n + 1))
            for x in range(model.n + 1)
        ]

    def expected_factorial(self, model):
        """E(X!) = sum_x x! Pr(X = x)."""
        if model.is_truncated:
            raise InvalidParameterError("E(X!) needs a finite model; truncated infinite sums are not supported")
        pmf = self.pmf(model)
        return scalar_sum(factorial(x) * mass for x, mass in enumerate(pmf))

    # Conversions between moment kinds

    @staticmethod
    def moments_from_factorial(factorials, k):
        """E(X^k) = sum_{m=1}^{k} S2(k,m) E([X]_m)."""
        _require_k(k)
        _require_length(factorials, k, 'factorial moments')
        if factorials[0] != 1:
            raise InvalidParameterError(f"E([X]_0) must be 1, got {factorials[0]}")
        if k == 0:
            return Scalar(1)
        return scalar_sum(stirling2(k, m) * Scalar.of(factorials[m]) for m in range(1, k + 1))

    @staticmethod
    def factorial_from_moments(moments, k):
        """E([X]_k) = sum_{m=1}^{k} S1(k,m) E(X^m), signed Stirling numbers."""
        _require_k(k)
        _require_length(moments, k, 'moments')
        if k == 0:
            return Scalar.of(moments[0])
        return scalar_sum(stirling1_signed(k, m) * Scalar.of(moments[m]) for m in range(1, k + 1))

    @staticmethod
    def central_from_factorial(factorials, mu, k):
        """
        E((X-mu)^k) = (-mu)^k + sum_{j=1}^{k} (sum_{m=j}^{k} S2(m,j) C(k,m) (-mu)^(k-m)) E([X]_j).
        """
        _require_k(k)
        _require_length(factorials, k, 'factorial moments')
        if factorials[0] != 1:
            raise InvalidParameterError(f"E([X]_0) must be 1, got {factorials[0]}")
        neg_mu = -Scalar.of(mu)
        terms = [neg_mu ** k]
        for j in range(1, k + 1):
            weight = scalar_sum(stirling2(m, j) * comb(k, m) * neg_mu ** (k - m) for m in range(j, k + 1))
            terms.append(weight * Scalar.of(factorials[j]))
        return scalar_sum(terms)

    @staticmethod
    def central_from_raw(raws, mu, k):
        """E((X-mu)^k) = sum_{l=0}^{k} C(k,l) (-mu)^(k-l) E(X^l), with E(X^0) = 1."""
        _require_k(k)
        _require_length(raws, k, 'raw moments')
        neg_mu = -Scalar.of(mu)
        return scalar_sum(
            comb(k, l) * neg_mu ** (k - l) * (Scalar(1) if l == 0 else Scalar.of(raws[l]))
            for l in range(k + 1)
        )

    @staticmethod
    def expand_idempotent_power(n, k):
        """
        Structured expansion of (y_1 + ... + y_n)^k for commuting idempotents:
        S(k,m) copies of each product over an m-subset, for m = 1..min(k,n).
        """
        if n < 1 or k < 1:
            raise InvalidParameterError(f"n and k must be at least 1, got n={n}, k={k}")
        return [ExpansionTerm(m, surjections(k, m), comb(n, m)) for m in range(1, min(k, n) + 1)]

    # Infinite independent sums

    @staticmethod
    def moment_ceiling(mu, k):
        """Upper bound sum_m S(k,m) mu^m on E(X^k) for an independent sum with mean mu."""
        _require_k(k)
        if k == 0:
            return Scalar(1)
        mu = Scalar.of(mu)
        return scalar_sum(surjections(k, m) * mu ** m for m in range(1, k + 1))

    def truncation_bound(self, model, k, kind='raw'):
        """
        Bound on how far a truncated moment can sit below the untruncated one.

        The m-subset sum over all indicators exceeds the truncated one by at
        most sum_{j=1}^{m} e_{m-j}(p_1..p_N) tau^j / j!, tau being the
        caller's bound on the neglected probabilities. Raw moments weight
        these by S(k,m), factorial moments by k! at m = k.
        """
        _require_k(k)
        if not model.is_truncated:
            return None
        tau = model.tail_bound
        elementary = elementary_symmetric(model.probabilities, k)

        def gap(m):
            return scalar_sum(elementary[m - j] * tau ** j / factorial(j) for j in range(1, m + 1))

        if k == 0:
            return Scalar(0)
        if kind == 'raw':
            bound = scalar_sum(surjections(k, m) * gap(m) for m in range(1, k + 1))
        elif kind == 'factorial':
            bound = factorial(k) * gap(k)
        elif kind == 'choose':
            bound = gap(k)
        else:
            raise InvalidParameterError(f"no truncation bound for {kind} moments")
        logger.debug(f"Truncation bound for {kind} moment k={k} with N={model.n}, tau={tau}: {bound}")
        return bound

    # Reports

    def report(self, model, kind, kmax):
        """
        Build a MomentReport for k = 0..kmax.

        The subset sums are computed once and shared by every order.
        """
        _require_k(kmax, 'kmax')
        if kind == 'expected_factorial':
            return MomentReport(kind=kind, values={0: self.expected_factorial(model)}, provenance='engine')

        sums = self.subset_sums(model, min(max(kmax, 1), model.n))
        mu = None
        if kind == 'raw':
            values = {k: self._raw_from_sums(sums, k) for k in range(kmax + 1)}
        elif kind == 'central':
            raws = [self._raw_from_sums(sums, k) for k in range(max(kmax, 1) + 1)]
            mu = raws[1]
            values = {k: self.central_from_raw(raws, mu, k) for k in range(kmax + 1)}
        elif kind == 'factorial':
            values = {k: factorial(k) * self._sum_at(sums, k) for k in range(kmax + 1)}
        elif kind == 'choose':
            values = {k: self._sum_at(sums, k) for k in range(kmax + 1)}
        else:
            raise InvalidParameterError(f"unknown moment kind: {kind}")

        bound = None
        if model.is_truncated and kind != 'central':
            bound = self.truncation_bound(model, kmax, kind)
        return MomentReport(kind=kind, values=values, provenance='engine', mu=mu, truncation_bound=bound)

    @staticmethod
    def _sum_at(sums, k):
        return sums[k] if k < len(sums) else Scalar(0)
