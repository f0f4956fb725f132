"""
Numeric carrier for every result in bernsum.
A Scalar is either Exact (a Fraction in lowest terms) or Approx (a float).
Exact and Approx never mix silently: any operation touching an Approx
operand yields an Approx result.
"""
import math
from fractions import Fraction
from numbers import Rational

from bernsum.core.exceptions import InvalidParameterError

APPROX_DIGITS = 17


class Scalar:
    """Tagged exact-or-approximate number."""

    __slots__ = ('value',)

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            value = value.value
        elif isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        elif isinstance(value, Rational):
            value = Fraction(value)
        elif isinstance(value, float):
            if math.isnan(value):
                raise InvalidParameterError("NaN is not a valid scalar")
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        object.__setattr__(self, 'value', value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def of(cls, value):
        return value if isinstance(value, Scalar) else cls(value)

    @property
    def is_exact(self):
        return isinstance(self.value, Fraction)

    @property
    def is_approx(self):
        return not self.is_exact

    def as_approx(self):
        return Scalar(float(self.value))

    # Arithmetic

    @staticmethod
    def _unwrap(other):
        if isinstance(other, Scalar):
            return other.value
        if isinstance(other, bool):
            return None
        if isinstance(other, Rational):
            return Fraction(other)
        if isinstance(other, float):
            return other
        return None

    def _combine(self, other, op, reflected=False):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        lhs = self.value
        if reflected:
            lhs, rhs = rhs, lhs
        if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            return Scalar(op(lhs, rhs))
        return Scalar(op(float(lhs), float(rhs)))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._combine(other, lambda a, b: a + b, reflected=True)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: a - b, reflected=True)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._combine(other, lambda a, b: a * b, reflected=True)

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._combine(other, lambda a, b: a / b, reflected=True)

    def __pow__(self, exponent):
        if isinstance(exponent, Scalar):
            if exponent.is_exact and exponent.value.denominator == 1:
                exponent = int(exponent.value)
            else:
                exponent = float(exponent.value)
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            return Scalar(self.value ** exponent)
        if isinstance(exponent, float):
            return Scalar(float(self.value) ** exponent)
        return NotImplemented

    def __neg__(self):
        return Scalar(-self.value)

    def __pos__(self):
        return self

    def __abs__(self):
        return Scalar(abs(self.value))

    # Comparison

    def __eq__(self, other):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        return self.value == rhs

    def __lt__(self, other):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        return self.value < rhs

    def __le__(self, other):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        return self.value <= rhs

    def __gt__(self, other):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        return self.value > rhs

    def __ge__(self, other):
        rhs = self._unwrap(other)
        if rhs is None:
            return NotImplemented
        return self.value >= rhs

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __float__(self):
        return float(self.value)

    # Rendering

    def to_str(self, digits=None):
        """
        Serialize the value.

        Exact values render as "num/den" in lowest terms ("5" for integers),
        Approx values as a decimal with 17 significant digits. With `digits`
        set, both kinds render as a decimal at that precision.
        """
        if digits is not None:
            return format(float(self.value), f".{digits}g")
        if self.is_exact:
            if self.value.denominator == 1:
                return str(self.value.numerator)
            return f"{self.value.numerator}/{self.value.denominator}"
        return format(self.value, f".{APPROX_DIGITS}g")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        kind = 'Exact' if self.is_exact else 'Approx'
        return f"Scalar.{kind}({self.to_str()})"


ZERO = Scalar(0)
ONE = Scalar(1)


def parse_scalar(raw):
    """
    Parse a user-supplied number.

    "a/b" strings and integers (as int or digit strings) are Exact; decimal
    strings and floats are Approx, which forces the Approx path downstream.
    """
    if isinstance(raw, Scalar):
        return raw
    if isinstance(raw, bool):
        raise InvalidParameterError(f"not a number: {raw!r}")
    if isinstance(raw, (int, Fraction, float)):
        return Scalar(raw)
    if not isinstance(raw, str):
        raise InvalidParameterError(f"not a number: {raw!r}")
    text = raw.strip()
    try:
        if '/' in text:
            return Scalar(Fraction(text))
        try:
            return Scalar(int(text))
        except ValueError:
            value = float(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameterError(f"not a number: {raw!r}") from e
    if math.isinf(value):
        raise InvalidParameterError(f"not a finite number: {raw!r}")
    return Scalar(value)


def scalar_sum(values):
    """
    Sum scalars exactly when all are Exact, otherwise with compensated
    floating-point summation.
    """
    values = [Scalar.of(v) for v in values]
    if all(v.is_exact for v in values):
        return Scalar(sum((v.value for v in values), Fraction(0)))
    return Scalar(math.fsum(float(v.value) for v in values))


def is_close(a, b, rel_tol=1e-9, abs_tol=0.0):
    """Exact equality for two Exact scalars, tolerance comparison otherwise."""
    a, b = Scalar.of(a), Scalar.of(b)
    if a.is_exact and b.is_exact:
        return a.value == b.value
    return math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=abs_tol)
