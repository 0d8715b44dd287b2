"""Truncated Laurent series over Q_p and the algebra K((z))[log z].

A :class:`LaurentSeries` knows its coefficients on a window.  Exponents
below ``lo`` are exactly zero (a Laurent series is finite to the left), the
stored exponents ``lo <= n < lo + len(nums)`` carry a value and an absolute
precision each, exponents from there up to ``sup`` are exactly zero, and
exponents ``>= sup`` are unknown.  Reading an unknown coefficient raises
:class:`WindowExhausted` instead of silently returning zero.

Coefficient values are packed as integers over a common power of p so that
products reduce to an exact integer convolution plus a min-plus convolution
for the precisions (see :mod:`reglab._kernels`).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from . import _kernels
from .padic import PadicField, PadicNumber, _ppow, padic_log

__all__ = [
    "WindowExhausted",
    "NotMeromorphic",
    "LaurentSeries",
    "LogLaurent",
    "LogForm",
    "differential",
    "integrate_form",
    "residue",
    "constant_term",
    "in_alog_prime",
    "reparametrize",
    "EXACT",
]

# sup of a series with no unknown tail (a Laurent polynomial)
EXACT = 1 << 40
_HALF = EXACT >> 1


class WindowExhausted(ArithmeticError):
    """A coefficient outside the reliable window was required."""


class NotMeromorphic(ValueError):
    """A log-free series or form was required."""


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _min_sup(*sups):
    s = min(sups)
    return EXACT if s >= _HALF else s


class LaurentSeries:
    """Truncated Laurent series in one variable over a :class:`PadicField`.

    The coefficient of ``z**(lo + i)`` is ``nums[i] * p**-shift``, known
    modulo ``p**precs[i]``.  Immutable.
    """

    __slots__ = ("field", "lo", "sup", "shift", "nums", "precs")

    def __init__(self, field: PadicField, lo: int, sup: int, shift: int, nums, precs):
        # trusted constructor; use the class methods or _normalize otherwise
        self.field = field
        self.lo = lo
        self.sup = sup
        self.shift = shift
        self.nums = nums
        self.precs = precs

    # -- construction -------------------------------------------------------
    @classmethod
    def _normalize(cls, field, lo, sup, shift, nums, precs):
        """Reduce numerators, drop the unknown tail and minimize the shift."""
        p = field.p
        cap = field.prec
        sup = _min_sup(sup)
        n = len(nums)
        if sup < lo + n:
            n = max(sup - lo, 0)
        shift, nums, precs = _kernels.reduce_numerators(p, cap, shift, nums[:n], precs[:n])
        return cls(field, lo, sup, shift, nums, precs)

    @classmethod
    def from_coeffs(cls, field: PadicField, coeffs, lo: int = 0, sup: int | None = None):
        """Series ``sum coeffs[i] z**(lo+i)``; ``sup=None`` means exact."""
        items = [field(c) for c in coeffs]
        if sup is None:
            sup = EXACT
        return cls._from_padics(field, lo, sup, items)

    @classmethod
    def _from_padics(cls, field, lo, sup, items):
        p = field.p
        shift = 0
        for x in items:
            if not x.is_zero() and -x.val > shift:
                shift = -x.val
        nums, precs = [], []
        for x in items:
            if x.is_zero():
                nums.append(0)
            else:
                nums.append(x.unit * _ppow(p, x.val + shift))
            precs.append(x.prec)
        return cls._normalize(field, lo, sup, shift, nums, precs)

    @classmethod
    def zero(cls, field: PadicField, sup: int = EXACT):
        return cls(field, 0 if sup >= _HALF else sup, sup, 0, [], [])

    @classmethod
    def constant(cls, field: PadicField, c, sup: int = EXACT):
        return cls.from_coeffs(field, [c], 0, sup)

    @classmethod
    def monomial(cls, field: PadicField, n: int, c=1, sup: int = EXACT):
        return cls.from_coeffs(field, [c], n, sup)

    # -- inspection ---------------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    def __len__(self):
        return len(self.nums)

    @property
    def hi(self) -> int:
        """One past the last stored exponent."""
        return self.lo + len(self.nums)

    def is_exact(self) -> bool:
        return self.sup >= _HALF

    def window(self) -> tuple[int, int]:
        return (self.lo, self.sup)

    def coeff(self, n: int) -> PadicNumber:
        if n >= self.sup:
            raise WindowExhausted(f"window exhausted: coefficient z^{n} needed, known below z^{self.sup}")
        if n < self.lo or n >= self.hi:
            return self.field.zero()
        i = n - self.lo
        return PadicNumber.make(self.field, self.nums[i], -self.shift, self.precs[i])

    __getitem__ = coeff

    def coefficients(self) -> list[tuple[int, PadicNumber]]:
        """Stored (exponent, value) pairs, lowest exponent first."""
        return [(self.lo + i, self.coeff(self.lo + i)) for i in range(len(self.nums))]

    def _vals(self):
        """Valuation of each stored coefficient, capped at its precision."""
        p, s = self.field.p, self.shift
        out = []
        for a, m in zip(self.nums, self.precs):
            out.append(min(_vp(a, p) - s, m) if a else m)
        return out

    def is_zero(self) -> bool:
        """True when every known coefficient is zero at its precision."""
        return not any(self.nums)

    def order(self) -> int | None:
        """Exponent of the first coefficient that is nonzero at its precision."""
        for i, a in enumerate(self.nums):
            if a:
                return self.lo + i
        return None

    def precision(self) -> int:
        """Smallest absolute precision among the stored coefficients."""
        return min(self.precs, default=self.field.prec)

    def __repr__(self):
        terms = []
        for n, c in self.coefficients():
            if not c.is_zero():
                terms.append(f"({c.centered_lift()})*z^{n}")
        tail = "" if self.is_exact() else f" + O(z^{self.sup})"
        return (" + ".join(terms) or "0") + tail

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries.constant(self.field, other)
        if other.field.p != self.field.p:
            raise ValueError("cannot mix different primes")
        return other

    def _field_with(self, other):
        return self.field if self.field.prec <= other.field.prec else other.field

    def truncate(self, sup: int) -> "LaurentSeries":
        if sup >= self.sup:
            return self
        return LaurentSeries._normalize(self.field, min(self.lo, sup), sup, self.shift,
                                       self.nums, self.precs)

    def add_bigoh_coeffs(self, prec: int) -> "LaurentSeries":
        """Cap every coefficient's precision at ``prec``."""
        return LaurentSeries._normalize(self.field, self.lo, self.sup, self.shift, self.nums,
                                       [min(m, prec) for m in self.precs])

    def __add__(self, other):
        other = self._check(other)
        field = self._field_with(other)
        p = field.p
        sup = _min_sup(self.sup, other.sup)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        shift = max(self.shift, other.shift)
        sa = _ppow(p, shift - self.shift)
        sb = _ppow(p, shift - other.shift)
        cap = field.prec
        nums = [0] * (hi - lo)
        precs = [cap] * (hi - lo)
        for src, scale in ((self, sa), (other, sb)):
            off = src.lo - lo
            for i, (a, m) in enumerate(zip(src.nums, src.precs)):
                nums[off + i] += a * scale
                if m < precs[off + i]:
                    precs[off + i] = m
        return LaurentSeries._normalize(field, lo, sup, shift, nums, precs)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._normalize(self.field, self.lo, self.sup, self.shift,
                                       [-a for a in self.nums], self.precs)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def scale(self, c) -> "LaurentSeries":
        """Multiply by a scalar."""
        c = self.field(c) if not isinstance(c, PadicNumber) else c
        p = self.field.p
        if c.is_zero():
            precs = [min(c.prec + v, m + c.val) for v, m in zip(self._vals(), self.precs)]
            return LaurentSeries._normalize(self.field, self.lo, self.sup, 0,
                                           [0] * len(self.nums), precs)
        vals = self._vals()
        precs = [min(m + c.val, c.prec + v) for v, m in zip(vals, self.precs)]
        if c.val >= 0:
            mult, shift = c.unit * _ppow(p, c.val), self.shift
        else:
            mult, shift = c.unit, self.shift - c.val
        return LaurentSeries._normalize(self.field, self.lo, self.sup, shift,
                                       [a * mult for a in self.nums], precs)

    def shift_exponent(self, k: int) -> "LaurentSeries":
        """Multiply by ``z**k``."""
        sup = self.sup if self.is_exact() else self.sup + k
        return LaurentSeries(self.field, self.lo + k, sup, self.shift, self.nums, self.precs)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        other = self._check(other)
        field = self._field_with(other)
        lo = self.lo + other.lo
        sup = _min_sup(self.lo + other.sup, other.lo + self.sup)
        if not self.nums or not other.nums:
            precs = []
            return LaurentSeries._normalize(field, min(lo, sup), sup, 0, [], precs)
        nums = _kernels.conv_int(self.nums, other.nums)
        precs = _kernels.conv_prec(self._vals(), self.precs, other._vals(), other.precs)
        return LaurentSeries._normalize(field, lo, sup, self.shift + other.shift, nums, precs)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentSeries.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; the leading stored coefficient must be a known nonzero value."""
        if not self.nums or not self.nums[0]:
            raise WindowExhausted("window exhausted: leading coefficient not known to be nonzero")
        field = self.field
        lead = self.coeff(self.lo)
        unit = self.shift_exponent(-self.lo).scale(1 / lead)  # 1 + O(z)
        size = (self.sup - self.lo) if not self.is_exact() else None
        if size is None:
            raise ValueError("inverse of an exact series needs a truncation; call truncate first")
        # Newton iteration y <- y(2 - u y) doubles the number of correct terms
        y = LaurentSeries.constant(field, 1)
        known = 1
        while known < size:
            known = min(2 * known, size)
            u = unit.truncate(known)
            # y is treated as exact: the iteration itself certifies `known` terms
            y = (y * (2 - u * y)).truncate(known)
            y = LaurentSeries(field, y.lo, EXACT, y.shift, y.nums, y.precs)
        y = y.truncate(size)
        return y.scale(1 / lead).shift_exponent(-self.lo)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self.scale(1 / self.field(other))

    def derivative(self) -> "LaurentSeries":
        p = self.field.p
        nums, precs = [], []
        for i, (a, m) in enumerate(zip(self.nums, self.precs)):
            n = self.lo + i
            nums.append(a * n)
            precs.append(m + (_vp(n, p) if n else self.field.prec + 1000))
        sup = self.sup if self.is_exact() else self.sup - 1
        if self.lo == 0 and nums:
            nums, precs = nums[1:], precs[1:]
            return LaurentSeries._normalize(self.field, 0, sup, self.shift, nums, precs)
        return LaurentSeries._normalize(self.field, self.lo - 1, sup, self.shift, nums, precs)

    def integral_without_residue(self) -> "LaurentSeries":
        """Antiderivative with zero constant term; the z^-1 coefficient is ignored."""
        p = self.field.p
        cap = self.field.prec
        exps = []
        for i in range(len(self.nums)):
            k = self.lo + i + 1
            exps.append(_vp(k, p) if k else 0)
        emax = max(exps, default=0)
        shift = self.shift + emax
        nums, precs = [], []
        for i, (a, m) in enumerate(zip(self.nums, self.precs)):
            k = self.lo + i + 1
            if k == 0:
                nums.append(0)
                precs.append(cap)
                continue
            e = exps[i]
            unit = k // _ppow(p, e)
            mod_exp = m + self.shift
            if mod_exp <= 0:
                nums.append(0)
            else:
                mod = _ppow(p, mod_exp)
                nums.append(a * pow(unit % mod, -1, mod) * _ppow(p, emax - e))
            precs.append(m - e)
        sup = self.sup if self.is_exact() else self.sup + 1
        return LaurentSeries._normalize(self.field, self.lo + 1, sup, shift, nums, precs)

    def compose(self, z_series: "LaurentSeries") -> "LaurentSeries":
        """Substitute ``z = z_series`` where ``z_series`` has order exactly 1."""
        if z_series.order() != 1 or z_series.lo < 1:
            raise ValueError("substitution must have order exactly 1")
        field = self.field
        if not self.nums:
            out = LaurentSeries.zero(field)
            return out if self.is_exact() else out.truncate(self.sup)
        terms = len(self.nums)
        acc = LaurentSeries.constant(field, self.coeff(self.lo + terms - 1))
        for k in range(terms - 2, -1, -1):
            acc = acc * z_series + LaurentSeries.constant(field, self.coeff(self.lo + k))
        if not self.is_exact():
            acc = acc.truncate(self.sup - self.lo)
        if self.lo == 0:
            return acc
        if self.lo > 0:
            return acc * z_series ** self.lo
        return acc * z_series.inverse() ** (-self.lo)

    def discrepancy(self, other) -> int:
        """Smallest valuation of a coefficient difference on the shared window."""
        diff = self - other
        vals = diff._vals()
        return min(vals, default=diff.field.prec)

    def agrees(self, other, prec: int | None = None) -> bool:
        """Equal at the shared precision (or at least to ``prec``)."""
        diff = self - other
        if prec is None:
            return diff.is_zero()
        return all(v >= prec for v in diff._vals())

    def evaluate(self, x: PadicNumber) -> PadicNumber:
        """Sum the known terms at ``x`` (caller is responsible for the tail)."""
        out = self.field.zero()
        for n, c in self.coefficients():
            out = out + c * x ** n
        return out


# -- the algebra K((z))[log z] --------------------------------------------

def _trim(comps):
    comps = list(comps)
    while len(comps) > 1 and comps[-1].is_zero():
        comps.pop()
    return tuple(comps)


class LogLaurent:
    """``sum_i components[i] * log(z)**i`` with truncated Laurent components."""

    __slots__ = ("field", "components")

    def __init__(self, components):
        comps = _trim(components)
        if not comps:
            raise ValueError("a LogLaurent needs at least one component")
        self.components = comps
        self.field = comps[0].field

    @classmethod
    def from_series(cls, s: LaurentSeries) -> "LogLaurent":
        return cls((s,))

    @classmethod
    def constant(cls, field: PadicField, c, sup: int = EXACT) -> "LogLaurent":
        return cls((LaurentSeries.constant(field, c, sup),))

    @classmethod
    def log_z(cls, field: PadicField, coeff=1) -> "LogLaurent":
        return cls((LaurentSeries.zero(field), LaurentSeries.constant(field, coeff)))

    @classmethod
    def zero(cls, field: PadicField) -> "LogLaurent":
        return cls((LaurentSeries.zero(field),))

    @property
    def degree(self) -> int:
        return len(self.components) - 1

    def component(self, i: int) -> LaurentSeries:
        if i < len(self.components):
            return self.components[i]
        return LaurentSeries.zero(self.field)

    def is_meromorphic(self) -> bool:
        return self.degree == 0

    def window(self) -> tuple[int, int]:
        lo = min(c.lo for c in self.components)
        sup = _min_sup(*(c.sup for c in self.components))
        return (lo, sup)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.components):
            if c.is_zero() and i:
                continue
            parts.append(f"[{c}]" + (f"*log(z)^{i}" if i else ""))
        return " + ".join(parts)

    def _coerce(self, other):
        if isinstance(other, LogLaurent):
            return other
        if isinstance(other, LaurentSeries):
            return LogLaurent.from_series(other)
        return LogLaurent.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        d = max(self.degree, other.degree)
        return LogLaurent([self.component(i) + other.component(i) for i in range(d + 1)])

    __radd__ = __add__

    def __neg__(self):
        return LogLaurent([-c for c in self.components])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "LogLaurent":
        return LogLaurent([s.scale(c) for s in self.components])

    def __mul__(self, other):
        if not isinstance(other, (LogLaurent, LaurentSeries)):
            return self.scale(other)
        other = self._coerce(other)
        out = [None] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.components):
            for j, b in enumerate(other.components):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return LogLaurent(out)

    __rmul__ = __mul__

    def truncate(self, sup: int) -> "LogLaurent":
        return LogLaurent([c.truncate(sup) for c in self.components])

    def discrepancy(self, other) -> int:
        other = self._coerce(other)
        d = max(self.degree, other.degree)
        return min(self.component(i).discrepancy(other.component(i)) for i in range(d + 1))

    def agrees(self, other, prec: int | None = None) -> bool:
        other = self._coerce(other)
        d = max(self.degree, other.degree)
        return all(self.component(i).agrees(other.component(i), prec) for i in range(d + 1))


class LogForm:
    """The differential form ``coefficient * dz`` with coefficient in K((z))[log z]."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient):
        if isinstance(coefficient, LaurentSeries):
            coefficient = LogLaurent.from_series(coefficient)
        self.coefficient = coefficient

    @property
    def field(self):
        return self.coefficient.field

    def __add__(self, other):
        return LogForm(self.coefficient + other.coefficient)

    def __sub__(self, other):
        return LogForm(self.coefficient - other.coefficient)

    def __neg__(self):
        return LogForm(-self.coefficient)

    def __mul__(self, f):
        """Multiply the form by a function (or scalar)."""
        return LogForm(self.coefficient * f)

    __rmul__ = __mul__

    def __repr__(self):
        return f"({self.coefficient}) dz"

    def agrees(self, other, prec: int | None = None) -> bool:
        return self.coefficient.agrees(other.coefficient, prec)

    def discrepancy(self, other) -> int:
        return self.coefficient.discrepancy(other.coefficient)


def differential(F: LogLaurent) -> LogForm:
    """d(sum f_i log^i z) = sum (f_i' + (i+1) f_{i+1} / z) log^i z dz."""
    if isinstance(F, LaurentSeries):
        F = LogLaurent.from_series(F)
    comps = F.components
    out = []
    for i, f in enumerate(comps):
        t = f.derivative()
        if i + 1 < len(comps):
            t = t + comps[i + 1].shift_exponent(-1).scale(i + 1)
        out.append(t)
    return LogForm(LogLaurent(out))


def integrate_form(omega: LogForm) -> LogLaurent:
    """The antiderivative with constant term 0.

    ``z**-1 log^i z`` integrates to ``log^{i+1} z / (i+1)``; every other
    monomial is handled by repeated integration by parts, which never
    produces a constant term.
    """
    if isinstance(omega, (LogLaurent, LaurentSeries)):
        omega = LogForm(omega)
    coef = omega.coefficient
    field = coef.field
    d = coef.degree
    out = [LaurentSeries.zero(field) for _ in range(d + 2)]
    for i, w in enumerate(coef.components):
        r = w.coeff(-1)
        if not r.is_zero() or r.prec < field.prec:
            out[i + 1] = out[i + 1] + LaurentSeries.constant(field, r / (i + 1))
        cur = w
        mult = 1
        for j in range(i + 1):
            G = cur.integral_without_residue()
            out[i - j] = out[i - j] + G.scale(mult)
            mult *= -(i - j)
            cur = G.shift_exponent(-1)
    return LogLaurent(out)


def residue(omega: LogForm) -> PadicNumber:
    """Coefficient of dz/z of a meromorphic form."""
    if isinstance(omega, (LogLaurent, LaurentSeries)):
        omega = LogForm(omega)
    if omega.coefficient.degree > 0:
        raise NotMeromorphic("not meromorphic: residue needs a log-free form")
    return omega.coefficient.component(0).coeff(-1)


def constant_term(F: LogLaurent) -> PadicNumber:
    """Constant coefficient of the log-free component."""
    if isinstance(F, LaurentSeries):
        return F.coeff(0)
    return F.component(0).coeff(0)


def in_alog_prime(F: LogLaurent):
    """Return ``(True, alpha)`` if F = alpha*log z + meromorphic, else ``(False, None)``."""
    if isinstance(F, LaurentSeries):
        return True, F.field.zero()
    if F.degree == 0:
        return True, F.field.zero()
    if F.degree > 1:
        return False, None
    f1 = F.components[1]
    for n, c in f1.coefficients():
        if n != 0 and not c.is_zero():
            return False, None
    return True, f1.coeff(0)


def split_alog_prime(F: LogLaurent):
    """Split F = alpha*log z + f; raises ValueError outside A'_log."""
    ok, alpha = in_alog_prime(F)
    if not ok:
        raise ValueError("not in A-prime: log coefficient must be a constant and log-degree <= 1")
    return alpha, F.component(0)


def log_unit_series(u: LaurentSeries, field: PadicField | None = None) -> LaurentSeries:
    """log of a power series with invertible constant term."""
    if u.lo < 0 or u.order() != 0:
        raise ValueError("log_unit_series needs a unit power series")
    c0 = u.coeff(0)
    const = LaurentSeries.constant(u.field, padic_log(c0, field or u.field))
    if u.is_exact() and len(u) == 1:
        # an exact constant has no tail to invert
        return const
    rest = (u.derivative() * u.inverse()).integral_without_residue()
    return rest + const


def reparametrize(F: LogLaurent, c, u: LaurentSeries | None = None,
                  window: int = 32) -> LogLaurent:
    """Rewrite F(z) in the parameter t where ``z = c * t * u(t)`` and ``u(0) = 1``.

    ``log z`` becomes ``log t + log c + log u(t)``.  An exact ``u`` is
    truncated to the window of F, or to ``window`` terms when F is exact too.
    """
    if isinstance(F, LaurentSeries):
        F = LogLaurent.from_series(F)
    field = F.field
    c = field(c)
    if c.is_zero():
        raise ValueError("reparametrization constant must be nonzero")
    if u is None:
        u = LaurentSeries.constant(field, 1)
    if u.lo < 0 or not u.coeff(0) == 1:
        raise ValueError("u must be a power series with u(0) = 1")
    if u.is_exact() and len(u) > 1:
        sup = min(c_.sup for c_ in F.components)
        lo = min(c_.lo for c_ in F.components)
        u = u.truncate(sup - lo + 1 if sup < _HALF else window)
    z_series = u.scale(c).shift_exponent(1)
    shift_log = log_unit_series(u) + LaurentSeries.constant(field, padic_log(c))
    comps = [f.compose(z_series) for f in F.components]
    out = LogLaurent.zero(field)
    lam_pow = [LaurentSeries.constant(field, 1)]
    for i in range(1, len(comps)):
        lam_pow.append(lam_pow[-1] * shift_log)
    for i, f in enumerate(comps):
        parts = [f * lam_pow[i - k] * comb(i, k) for k in range(i + 1)]
        out = out + LogLaurent(parts)
    return out


def series_from_fraction_coeffs(field: PadicField, coeffs, lo: int = 0, sup: int | None = None):
    """Convenience wrapper accepting Fractions/ints."""
    return LaurentSeries.from_coeffs(field, [Fraction(c) for c in coeffs], lo, sup)
