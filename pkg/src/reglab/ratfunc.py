"""Exact rational functions over Q with split denominators, and points of P^1.

A :class:`RationalFunction` keeps a dense numerator and a factored monic
denominator, so partial fractions and local expansions at its poles are
exact.  Numerators are factored on demand (through sympy) when zeros are
needed; a numerator that does not split into linear factors over Q is
reported with :class:`NotSplit`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .padic import PadicField, PadicNumber
from .series import EXACT, LaurentSeries

__all__ = ["INF", "Infinity", "NotSplit", "RationalFunction", "as_point", "point_key"]


class NotSplit(ValueError):
    """A polynomial has an irreducible factor of degree > 1 over Q."""


class Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def as_point(x):
    """Normalize a point: ``INF``, the string "inf", or anything Fraction accepts."""
    if x is INF or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(x, PadicNumber):
        return x
    return Fraction(x)


def point_key(x):
    """Sort key putting finite points first (in numeric order) and inf last."""
    return (1, 0) if x is INF else (0, x)


# -- dense polynomials over Q (low degree first) ----------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def p_scale(a, c):
    return _trim(x * c for x in a)


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def p_eval(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def p_deriv(a):
    return _trim(i * a[i] for i in range(1, len(a)))


def p_integral(a):
    """Antiderivative vanishing at 0."""
    return _trim([Fraction(0)] + [Fraction(a[i]) / (i + 1) for i in range(len(a))])


def p_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return _trim(q), _trim(a)


def p_linear_power(a, m):
    """(z - a)**m."""
    out = (Fraction(1),)
    for _ in range(m):
        out = p_mul(out, (-a, Fraction(1)))
    return out


def p_taylor(a, x):
    """Coefficients of a(x + t) in t."""
    out = [Fraction(c) for c in a]
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += x * out[j + 1]
    return out


@lru_cache(maxsize=4096)
def _factor_roots(coeffs: tuple):
    """(leading coefficient, ((root, mult), ...)) of a polynomial split over Q."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x,
                      domain=sympy.QQ)
    _, factors = poly.factor_list()
    roots = []
    for fac, mult in factors:
        if fac.degree() != 1:
            raise NotSplit("requires splitting field: polynomial does not split over Q")
        c1, c0 = fac.all_coeffs()
        c1 = Fraction(int(sympy.fraction(c1)[0]), int(sympy.fraction(c1)[1]))
        c0 = Fraction(int(sympy.fraction(c0)[0]), int(sympy.fraction(c0)[1]))
        roots.append((-c0 / c1, mult))
    roots.sort()
    return Fraction(coeffs[-1]), tuple(roots)


def _multiplicity(num, a):
    m = 0
    lin = (-a, Fraction(1))
    while num and p_eval(num, a) == 0:
        num, _ = p_divmod(num, lin)
        m += 1
    return m, num


class RationalFunction:
    """num(z) / prod (z - r)**m over Q, kept in lowest terms.  Immutable."""

    __slots__ = ("num", "poles", "_den")

    def __init__(self, num, poles=()):
        num = _trim(Fraction(c) for c in num)
        if not num:
            raise ValueError("the zero function is not a RationalFunction")
        pole_map = {}
        for r, m in poles:
            r = Fraction(r)
            pole_map[r] = pole_map.get(r, 0) + m
        # cancel common linear factors; negative multiplicities move to the numerator
        for r in list(pole_map):
            m = pole_map[r]
            if m < 0:
                num = p_mul(num, p_linear_power(r, -m))
                m = 0
            while m > 0 and p_eval(num, r) == 0:
                num, _ = p_divmod(num, (-r, Fraction(1)))
                m -= 1
            if m:
                pole_map[r] = m
            else:
                del pole_map[r]
        self.num = num
        self.poles = tuple(sorted(pole_map.items()))
        self._den = None

    # -- construction -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((Fraction(c),))

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def linear(cls, a) -> "RationalFunction":
        """z - a."""
        return cls((-Fraction(a), Fraction(1)))

    @classmethod
    def from_roots(cls, lead, zeros=(), poles=()) -> "RationalFunction":
        """lead * prod (z - a)**m over ``zeros`` divided by prod over ``poles``.

        ``zeros``/``poles`` are mappings or iterables of (point, multiplicity);
        a negative multiplicity in ``zeros`` is a pole.
        """
        zeros = list(zeros.items() if isinstance(zeros, dict) else zeros)
        poles = list(poles.items() if isinstance(poles, dict) else poles)
        poles += [(a, -m) for a, m in zeros if m < 0]
        num = (Fraction(lead),)
        for a, m in zeros:
            if m > 0:
                num = p_mul(num, p_linear_power(Fraction(a), m))
        return cls(num, [(Fraction(a), m) for a, m in poles if m])

    @classmethod
    def mobius(cls, a, b, c, d) -> "RationalFunction":
        """(a z + b) / (c z + d) with ad - bc != 0."""
        a, b, c, d = map(Fraction, (a, b, c, d))
        if a * d - b * c == 0:
            raise ValueError("degenerate Mobius transformation")
        if c == 0:
            return cls((b / d, a / d))
        return cls((b / c, a / c), [(-d / c, 1)])

    @classmethod
    def from_sympy(cls, expr, var) -> "RationalFunction":
        import sympy

        num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
        pn = sympy.Poly(num, var, domain=sympy.QQ)
        pd = sympy.Poly(den, var, domain=sympy.QQ)
        to_f = lambda c: Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))  # noqa: E731
        dcoeffs = tuple(to_f(c) for c in reversed(pd.all_coeffs()))
        lead, roots = _factor_roots(dcoeffs)
        ncoeffs = tuple(to_f(c) / lead for c in reversed(pn.all_coeffs()))
        return cls(ncoeffs, roots)

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        """Parse an expression in ``z`` such as ``"(z-1)/(z+3)^2"``."""
        import sympy

        z = sympy.Symbol("z")
        expr = sympy.sympify(text.replace("^", "**"), locals={"z": z})
        return cls.from_sympy(expr, z)

    # -- inspection ---------------------------------------------------------
    @property
    def den(self):
        if self._den is None:
            d = (Fraction(1),)
            for r, m in self.poles:
                d = p_mul(d, p_linear_power(r, m))
            self._den = d
        return self._den

    def degree_num(self) -> int:
        return len(self.num) - 1

    def degree_den(self) -> int:
        return sum(m for _, m in self.poles)

    def is_constant(self) -> bool:
        return len(self.num) == 1 and not self.poles

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant function")
        return self.num[0]

    def factored(self):
        """(lead, zeros, poles) with zeros/poles as tuples of (root, mult)."""
        lead, zeros = _factor_roots(self.num) if len(self.num) > 1 else (self.num[0], ())
        return lead, zeros, self.poles

    def zeros(self):
        return self.factored()[1]

    def is_split(self) -> bool:
        try:
            self.factored()
        except NotSplit:
            return False
        return True

    def order_at(self, y) -> int:
        """Order of vanishing at y (negative for poles)."""
        y = as_point(y)
        if y is INF:
            return self.degree_den() - self.degree_num()
        m, _ = _multiplicity(self.num, y)
        return m - dict(self.poles).get(y, 0)

    def divisor(self) -> dict:
        """{point: order}, including inf, without zero entries."""
        lead, zeros, poles = self.factored()
        out = {}
        for a, m in zeros:
            out[a] = out.get(a, 0) + m
        for a, m in poles:
            out[a] = out.get(a, 0) - m
        inf = self.degree_den() - self.degree_num()
        if inf:
            out[INF] = inf
        return {k: v for k, v in out.items() if v}

    def leading_at(self, y) -> Fraction:
        """Value at y of f / t**ord with t = z - y (or 1/z at inf)."""
        y = as_point(y)
        if y is INF:
            return self.num[-1]  # denominator is monic
        m, rest = _multiplicity(self.num, y)
        val = p_eval(rest, y)
        for r, k in self.poles:
            if r != y:
                val /= (y - r) ** k
        return val

    def __call__(self, x):
        """Value at a finite point or inf; raises ZeroDivisionError at a pole."""
        x = as_point(x)
        if x is INF:
            o = self.order_at(INF)
            if o > 0:
                return Fraction(0)
            if o < 0:
                raise ZeroDivisionError("pole at inf")
            return self.num[-1]
        if isinstance(x, PadicNumber):
            val = p_eval([x.field(c) for c in self.num], x)
            for r, m in self.poles:
                val = val / (x - x.field(r)) ** m
            return val
        den = 1
        for r, m in self.poles:
            den *= (x - r) ** m
        if den == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return p_eval(self.num, x) / den

    def __repr__(self):
        def poly(c):
            terms = []
            for i, a in enumerate(c):
                if a:
                    terms.append(f"{a}" + ("" if i == 0 else ("*z" if i == 1 else f"*z^{i}")))
            return " + ".join(terms) or "0"
        if not self.poles:
            return f"({poly(self.num)})"
        den = "*".join(f"(z - {r})" + (f"^{m}" if m > 1 else "") for r, m in self.poles)
        return f"({poly(self.num)})/({den})"

    def _key(self):
        return (self.num, self.poles)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction)):
                return self.is_constant() and self.num[0] == other
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction.constant(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(p_mul(self.num, other.num), self.poles + other.poles)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        lead, zeros, poles = self.factored()
        num = (Fraction(1) / lead,)
        for r, m in poles:
            num = p_mul(num, p_linear_power(r, m))
        return RationalFunction(num, zeros)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __add__(self, other):
        if not isinstance(other, RationalFunction) and other == 0:
            return self
        other = self._coerce(other)
        mine, theirs = dict(self.poles), dict(other.poles)
        common = {r: max(mine.get(r, 0), theirs.get(r, 0)) for r in set(mine) | set(theirs)}
        num = ()
        for f, poles in ((self, mine), (other, theirs)):
            extra = (Fraction(1),)
            for r, m in common.items():
                extra = p_mul(extra, p_linear_power(r, m - poles.get(r, 0)))
            num = p_add(num, p_mul(f.num, extra))
        if not num:
            return 0
        return RationalFunction(num, list(common.items()))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(p_scale(self.num, -1), self.poles)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def derivative(self) -> "RationalFunction | int":
        """d/dz as a rational function (0 for constants)."""
        if not self.poles:
            d = p_deriv(self.num)
            return RationalFunction(d) if d else 0
        simple = (Fraction(1),)
        for r, _ in self.poles:
            simple = p_mul(simple, (-r, Fraction(1)))
        num = p_mul(p_deriv(self.num), simple)
        for r, m in self.poles:
            others, _ = p_divmod(simple, (-r, Fraction(1)))
            num = p_add(num, p_scale(p_mul(self.num, others), -m))
        if not num:
            return 0
        return RationalFunction(num, [(r, m + 1) for r, m in self.poles])

    def dlog(self) -> "RationalFunction | int":
        """f'/f."""
        lead, zeros, poles = self.factored()
        out = 0
        for a, m in zeros:
            out = out + RationalFunction((Fraction(m),), [(a, 1)])
        for a, m in poles:
            out = out + RationalFunction((Fraction(-m),), [(a, 1)])
        return out

    def compose_mobius(self, a, b, c, d) -> "RationalFunction":
        """f((a z + b)/(c z + d))."""
        lead, zeros, poles = self.factored()
        out = RationalFunction.constant(lead)
        mob = RationalFunction.mobius(a, b, c, d)
        for r, m in zeros:
            out = out * (mob - r) ** m
        for r, m in poles:
            out = out / (mob - r) ** m
        return out

    def partial_fractions(self):
        """(polynomial part, {pole: [c_1, ..., c_m]}) with f = P + sum c_k / (z - r)**k."""
        poly, rem = p_divmod(self.num, self.den)
        parts = {}
        for r, m in self.poles:
            # principal part at r from the Taylor expansion of rem / (other factors)
            t_num = p_taylor(rem, r)
            series = [Fraction(x) for x in t_num[:m]] + [Fraction(0)] * max(0, m - len(t_num))
            for s, k in self.poles:
                if s == r:
                    continue
                # (t + r - s)^-k expanded to order m
                inv = _inverse_linear_power(r - s, k, m)
                series = [sum(series[i] * inv[j - i] for i in range(j + 1)) for j in range(m)]
            parts[r] = [series[m - k] for k in range(1, m + 1)]
        return poly, parts

    def laurent_at(self, y, field: PadicField, sup: int) -> LaurentSeries:
        """Expansion in t = z - y (or t = 1/z at inf), known below t**sup."""
        y = as_point(y)
        exact = self._expansion_is_finite(y)
        if exact:
            sup = len(self.num) + self.degree_den() + 1
        coeffs, lo = self.laurent_coeffs(y, sup)
        if not coeffs and lo >= sup:
            return LaurentSeries.zero(field, EXACT if exact else sup)
        return LaurentSeries.from_coeffs(field, coeffs, lo, None if exact else sup)

    def _expansion_is_finite(self, y):
        if y is INF:
            return not self.poles or (len(self.poles) == 1 and self.poles[0][0] == 0)
        return not self.poles or (len(self.poles) == 1 and self.poles[0][0] == y)

    def laurent_coeffs(self, y, sup: int):
        """Exact rational coefficients of the expansion at y: (coeffs, lo)."""
        y = as_point(y)
        if y is INF:
            # f(1/t): numerator and factors rewritten in t
            dn = self.degree_num()
            num_t = tuple(reversed(self.num))  # t**dn * num(1/t)
            series = [Fraction(c) for c in num_t]
            lo = self.degree_den() - dn
            for r, m in self.poles:
                # (1/t - r)^-m = t**m (1 - r t)^-m
                inv = _inverse_linear_power(Fraction(1), m, max(sup - lo, 0) + 1, slope=-r)
                series = _mul_trunc(series, inv, max(sup - lo, 0))
            series = series[:max(sup - lo, 0)]
            return series, lo
        y = Fraction(y)
        m_pole = dict(self.poles).get(y, 0)
        t_num = p_taylor(self.num, y)
        lo = -m_pole
        n = max(sup - lo, 0)
        series = [Fraction(x) for x in t_num[:n]]
        for s, k in self.poles:
            if s == y:
                continue
            series = _mul_trunc(series, _inverse_linear_power(y - s, k, n), n)
        # strip leading zeros into lo
        while series and series[0] == 0:
            series.pop(0)
            lo += 1
        return series[:max(sup - lo, 0)], lo


def _mul_trunc(a, b, n):
    out = [Fraction(0)] * min(n, len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += x * y
    return out


def _inverse_linear_power(c, k, n, slope=Fraction(1)):
    """First n coefficients of (c + slope*t)**-k in t (c != 0)."""
    c = Fraction(c)
    base = [Fraction(1) / c]
    q = -Fraction(slope) / c
    for i in range(1, n):
        base.append(base[-1] * q)
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(k):
        out = _mul_trunc(out, base, n)
    return out[:n]
