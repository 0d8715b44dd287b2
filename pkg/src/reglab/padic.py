"""Exact arithmetic in Q_p with absolute precision tracking.

A :class:`PadicNumber` is stored as ``p**val * unit`` where ``unit`` is a
p-adic unit known modulo ``p**(prec - val)``.  A value that is zero at its
precision is stored with ``unit == 0`` and ``val == prec``.

All numbers belong to a :class:`PadicField`, which fixes the prime, the
precision cap ``N`` and the branch of the logarithm (the value of
``log(p)``).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "PadicField",
    "PadicNumber",
    "PrecisionError",
    "ConvergenceError",
    "padic_log",
    "padic_exp",
    "teichmuller",
    "valuation",
]


class PrecisionError(ArithmeticError):
    """Raised when a value is indistinguishable from zero where it must not be."""


class ConvergenceError(ArithmeticError):
    """Raised when a series is evaluated outside its disc of convergence."""


def valuation(n, p: int):
    """p-adic valuation of a nonzero integer or Fraction."""
    if n == 0:
        return math.inf
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(int(n))
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def _ppow(p: int, k: int) -> int:
    return p**k


class PadicField:
    """Q_p truncated at absolute precision ``prec`` with a chosen branch of log.

    ``guard`` extra digits are used internally by transcendental functions so
    that capped intermediate values do not cost digits of the final result.
    """

    guard = 8

    def __init__(self, p: int, prec: int = 20, log_branch=0):
        if not isinstance(p, int) or p < 3 or not _is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p!r}")
        if not isinstance(prec, int) or prec < 1:
            raise ValueError(f"precision must be a positive integer, got {prec!r}")
        self.p = p
        self.prec = prec
        if isinstance(log_branch, PadicNumber):
            branch = log_branch.with_field(self)
        else:
            branch = self(log_branch)
        if not branch.is_zero() and branch.valuation() < 0:
            raise ValueError("log branch must have nonnegative valuation")
        self.log_branch = branch

    def __repr__(self):
        return f"PadicField(p={self.p}, prec={self.prec}, log_branch={self.log_branch.to_fraction()})"

    def _key(self):
        return (self.p, self.prec, self.log_branch.to_fraction())

    def __eq__(self, other):
        return isinstance(other, PadicField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def extended(self, extra: int | None = None) -> "PadicField":
        """Same prime and branch with ``extra`` more digits of precision."""
        extra = self.guard if extra is None else extra
        return _extended(self.p, self.prec + extra, self.log_branch.to_fraction())

    def __call__(self, x, prec: int | None = None) -> "PadicNumber":
        if isinstance(x, PadicNumber):
            out = x.with_field(self)
            return out if prec is None else out.add_bigoh(prec)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (int, Rational)):
            return PadicNumber.from_rational(self, Fraction(x), prec)
        raise TypeError(f"cannot convert {type(x).__name__} to a p-adic number")

    def zero(self, prec: int | None = None) -> "PadicNumber":
        prec = self.prec if prec is None else min(prec, self.prec)
        return PadicNumber(self, 0, prec, prec)

    def one(self) -> "PadicNumber":
        return PadicNumber(self, 1, 0, self.prec)

    def from_digits(self, val: int, digits, prec: int) -> "PadicNumber":
        """Build ``p**val * sum(d_i p**i)`` known modulo ``p**prec``."""
        p = self.p
        unit = 0
        for i, d in enumerate(digits):
            if not 0 <= d < p:
                raise ValueError(f"digit {d} out of range for p={p}")
            unit += d * p**i
        if unit == 0:
            return self.zero(prec)
        shift = valuation(unit, p)
        return PadicNumber.make(self, unit // p**shift, val + shift, prec)


@lru_cache(maxsize=64)
def _extended(p, prec, branch):
    return PadicField(p, prec, branch)


class PadicNumber:
    """An element of Q_p known modulo ``p**prec``.  Immutable."""

    __slots__ = ("field", "unit", "val", "prec")

    def __init__(self, field: PadicField, unit: int, val: int, prec: int):
        # trusted constructor: unit is a unit reduced mod p**(prec-val), or 0 with val == prec
        self.field = field
        self.unit = unit
        self.val = val
        self.prec = prec

    # -- construction -------------------------------------------------------
    @staticmethod
    def make(field: PadicField, n: int, val: int, prec: int) -> "PadicNumber":
        """Normalize ``p**val * n`` (any integer n) modulo ``p**prec``."""
        prec = min(prec, field.prec)
        p = field.p
        if n != 0 and val < prec:
            n %= _ppow(p, prec - val)
        if n == 0 or val >= prec:
            return PadicNumber(field, 0, prec, prec)
        while n % p == 0:
            n //= p
            val += 1
        if val >= prec:
            return PadicNumber(field, 0, prec, prec)
        return PadicNumber(field, n, val, prec)

    @staticmethod
    def from_rational(field: PadicField, x: Fraction, prec: int | None = None) -> "PadicNumber":
        prec = field.prec if prec is None else min(prec, field.prec)
        if x == 0:
            return PadicNumber(field, 0, prec, prec)
        p = field.p
        num, den = x.numerator, x.denominator
        vn = valuation(num, p)
        vd = valuation(den, p)
        v = vn - vd
        if v >= prec:
            return PadicNumber(field, 0, prec, prec)
        m = _ppow(p, prec - v)
        unit = (num // p**vn) * pow(den // p**vd, -1, m) % m
        return PadicNumber(field, unit, v, prec)

    def with_field(self, field: PadicField) -> "PadicNumber":
        """Reinterpret in ``field`` (same prime), truncating to its cap."""
        if field is self.field:
            return self
        if field.p != self.field.p:
            raise ValueError("cannot mix different primes")
        return PadicNumber.make(field, self.unit, self.val, min(self.prec, field.prec))

    def add_bigoh(self, prec: int) -> "PadicNumber":
        if prec >= self.prec:
            return self
        return PadicNumber.make(self.field, self.unit, self.val, prec)

    # -- inspection ---------------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    def valuation(self) -> int:
        """Valuation; for a value that is zero at its precision this is ``prec``."""
        return self.val

    def precision(self) -> int:
        return self.prec

    def relative_precision(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        return self.unit == 0

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, least significant first."""
        out, n, p = [], self.unit, self.p
        for _ in range(self.prec - self.val):
            out.append(n % p)
            n //= p
        while out and out[-1] == 0:
            out.pop()
        return out

    def lift(self) -> Fraction:
        """The rational ``p**val * unit`` with ``0 <= unit < p**(prec-val)``."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    to_fraction = lift

    def centered_lift(self) -> Fraction:
        """Like :meth:`lift` but with the unit in the symmetric residue range."""
        if self.unit == 0:
            return Fraction(0)
        m = _ppow(self.p, self.prec - self.val)
        u = self.unit if self.unit <= m // 2 else self.unit - m
        return Fraction(u) * Fraction(self.p) ** self.val

    def __repr__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.prec})"
        return f"{self.centered_lift()} + O({self.p}^{self.prec})"

    def __hash__(self):
        return hash((self.p, self.unit, self.val, self.prec))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.field is self.field:
                return other
            if other.field.p != self.field.p:
                raise ValueError("cannot mix different primes")
            return other
        if isinstance(other, (int, Rational)):
            return PadicNumber.from_rational(self.field, Fraction(other))
        return NotImplemented

    def _out_field(self, other: "PadicNumber") -> PadicField:
        # the coarser cap wins
        return self.field if self.field.prec <= other.field.prec else other.field

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self._out_field(other)
        prec = min(self.prec, other.prec)
        if self.unit == 0:
            return PadicNumber.make(field, other.unit, other.val, prec)
        if other.unit == 0:
            return PadicNumber.make(field, self.unit, self.val, prec)
        v = min(self.val, other.val)
        p = self.p
        n = self.unit * _ppow(p, self.val - v) + other.unit * _ppow(p, other.val - v)
        return PadicNumber.make(field, n, v, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        m = _ppow(self.p, self.prec - self.val)
        return PadicNumber(self.field, (-self.unit) % m, self.val, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self._out_field(other)
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.unit == 0 or other.unit == 0:
            prec = min(prec, field.prec)
            return PadicNumber(field, 0, prec, prec)
        return PadicNumber.make(field, self.unit * other.unit, self.val + other.val, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.unit == 0:
            raise PrecisionError("insufficient precision: division by a value indistinguishable from 0")
        field = self._out_field(other)
        if self.unit == 0:
            prec = min(self.prec - other.val, field.prec)
            return PadicNumber(field, 0, prec, prec)
        val = self.val - other.val
        rel = min(self.prec - self.val, other.prec - other.val)
        m = _ppow(self.p, rel)
        return PadicNumber.make(field, self.unit * pow(other.unit, -1, m), val, val + rel)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.field.one() / self**(-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        """Equality at the common precision."""
        if isinstance(other, float):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def discrepancy(self, other) -> int:
        """Valuation of ``self - other`` (the common precision if they agree)."""
        return (self - self._coerce(other)).val


# -- transcendental functions ----------------------------------------------

def _unit_part(x: PadicNumber) -> PadicNumber:
    return PadicNumber(x.field, x.unit, 0, x.prec - x.val)


def _log_one_plus(t: PadicNumber, target: int) -> PadicNumber:
    """log(1+t) for v(t) >= 1 by the alternating series, computed to ``target``."""
    vt = t.val
    total = t.field.zero(target)
    power = t.field.one()
    k = 1
    while True:
        power = power * t
        # every later term has valuation >= k*vt - log_p(k) (increasing in k)
        if k * vt - math.log(k, t.p) >= target and k > 1:
            break
        term = power / k
        total = total + term if k % 2 else total - term
        k += 1
    return total


def padic_log(x, field: PadicField | None = None) -> PadicNumber:
    """Branch of the p-adic logarithm fixed by ``field.log_branch`` = log(p).

    ``log(p**v * w) = v*log(p) + log(w**(p-1))/(p-1)``, which kills the
    Teichmüller part of the unit ``w``.
    """
    if field is None:
        field = x.field
    x = field(x)
    if x.is_zero():
        raise PrecisionError("log of a value indistinguishable from 0")
    work = field.extended()
    w = _unit_part(x).with_field(work)
    y = w ** (x.p - 1)
    t = y - 1
    target = min(t.prec, work.prec)
    if t.is_zero():
        log_unit = work.zero(target)
    else:
        log_unit = _log_one_plus(t, target) / (x.p - 1)
    out = log_unit
    if x.val:
        out = out + work.log_branch * x.val
    return out.with_field(field)


def padic_exp(x) -> PadicNumber:
    """exp(x) = sum x^k/k! for v(x) >= 1 (p odd)."""
    if x.is_zero():
        return x.field.one().add_bigoh(x.prec)
    if x.val < 1:
        raise ConvergenceError("outside convergence domain: exp needs v(x) >= 1")
    field = x.field
    work = field.extended()
    xw = x.with_field(work)
    target = min(x.prec, work.prec)
    total = work.one()
    term = work.one()
    k = 1
    while True:
        term = term * xw / k
        # v(x^k/k!) >= k*v(x) - (k-1)/(p-1)
        if k * x.val - (k - 1) / (x.p - 1) >= target:
            break
        total = total + term
        k += 1
    return total.add_bigoh(target).with_field(field)


def teichmuller(x) -> PadicNumber:
    """The (p-1)-th root of unity congruent to the unit ``x`` modulo p."""
    if x.is_zero() or x.val != 0:
        raise ValueError("not a unit")
    field = x.field
    p = field.p
    m = _ppow(p, field.prec)
    y = x.unit % p
    # y -> y^p converges to the root of unity, gaining one digit per step
    for _ in range(field.prec):
        y = pow(y, p, m)
    return PadicNumber.make(field, y, 0, field.prec)
