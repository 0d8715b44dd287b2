"""p-adic dilogarithms at points and closed-form Coleman expressions.

Point evaluation covers the discs that power series reach without
Frobenius: ``v(z) > 0`` (direct series), ``v(z) < 0`` (inversion),
``v(z - 1) > 0`` (reflection), plus the conventional values at 0, 1, inf.

A :class:`ColemanExpression` is a finite sum of terms
``coeff * r(z) * log(z - a1) * ... * L2(mu(z))`` with r rational over Q and
mu a Mobius transformation.  Such expressions can be differentiated
symbolically, evaluated at regular points and expanded at any point of
P^1 into K((t))[log t], with the constant of every L2 expansion pinned by
its constant term at that point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import PadicField, PadicNumber, PrecisionError, padic_log
from .ratfunc import INF, RationalFunction, as_point
from .series import LaurentSeries, LogForm, LogLaurent, constant_term, integrate_form, log_unit_series, reparametrize

__all__ = [
    "Unreachable",
    "ColemanValue",
    "li2",
    "ltwo",
    "lmod2",
    "li2_series",
    "Term",
    "ColemanExpression",
    "dilog_integrate",
    "rational_integral",
    "eval_expr",
    "constant_term_at",
    "ltwo_constant_term",
    "expand_ltwo",
    "log_expansion",
    "log_rational_form",
    "form_at",
]


class Unreachable(ValueError):
    """The argument lies in a residue disc the series routes cannot reach."""


@dataclass(frozen=True)
class ColemanValue:
    value: PadicNumber
    route: str  # direct-series | inversion | reflection | convention

    def __iter__(self):
        return iter((self.value, self.route))


def _point(z, field: PadicField):
    if isinstance(z, PadicNumber):
        return z.with_field(field) if z.field.prec < field.prec else z
    z = as_point(z)
    if z is INF:
        return INF
    return field(z)


def _classify(z: PadicNumber) -> str:
    if z.is_zero():
        return "zero"
    if z.val > 0:
        return "small"
    if z.val < 0:
        return "large"
    w = z - 1
    if w.is_zero():
        return "one"
    if w.val > 0:
        return "near-one"
    raise Unreachable(f"outside series-reachable locus: {z!r} reduces to neither 0, 1 nor inf")


def li2_series(z: PadicNumber, target: int | None = None) -> PadicNumber:
    """sum z**n / n**2 for v(z) > 0, summed until the tail is below p**target."""
    if z.val <= 0 and not z.is_zero():
        raise Unreachable("direct series needs v(z) > 0")
    p = z.p
    target = z.prec if target is None else target
    total = z.field.zero(target)
    if z.is_zero():
        return total
    v = z.val
    power = z.field.one()
    n = 1
    while True:
        power = power * z
        total = total + power / (n * n)
        n += 1
        # v(z^m/m^2) >= m v - 2 log_p m, increasing for m >= n once m v grows past 2/ln p
        if n * v - 2 * math.log(n, p) >= target and n * v * math.log(p) >= 2:
            break
    return total


def _work(field: PadicField) -> PadicField:
    return field.extended()


def _ltwo_work(z: PadicNumber) -> tuple[PadicNumber, str]:
    """L2 in the guard field of z's field."""
    kind = _classify(z)
    if kind in ("zero", "one"):
        return z.field.zero(), "convention"
    if kind == "small":
        li = li2_series(z)
        return li + padic_log(z) * padic_log(1 - z), "direct-series"
    if kind == "large":
        w = 1 / z
        l2w = li2_series(w) + padic_log(w) * padic_log(1 - w)
        lz = padic_log(z)
        return lz * lz / 2 - l2w, "inversion"
    # disc of 1: L2(z) = -Li2(1 - z)
    return -li2_series(1 - z), "reflection"


def ltwo(z, field: PadicField | None = None) -> ColemanValue:
    """L2(z) = Li2(z) + log(z) log(1 - z); 0 at 0, 1 and inf."""
    if field is None:
        field = z.field if isinstance(z, PadicNumber) else None
    if field is None:
        raise ValueError("a PadicField is needed for non-p-adic arguments")
    work = _work(field)
    z = _point(z, work)
    if z is INF:
        return ColemanValue(field.zero(), "convention")
    val, route = _ltwo_work(z)
    return ColemanValue(val.with_field(field), route)


def li2(z, field: PadicField | None = None) -> ColemanValue:
    """Li2(z) = L2(z) - log(z) log(1 - z); Li2(0) = Li2(1) = 0."""
    if field is None:
        field = z.field if isinstance(z, PadicNumber) else None
    if field is None:
        raise ValueError("a PadicField is needed for non-p-adic arguments")
    work = _work(field)
    zw = _point(z, work)
    if zw is INF:
        raise Unreachable("Li2 has no value at inf")
    kind = _classify(zw)
    if kind in ("zero", "one"):
        return ColemanValue(field.zero(), "convention")
    if kind == "small":
        return ColemanValue(li2_series(zw).with_field(field), "direct-series")
    val, route = _ltwo_work(zw)
    return ColemanValue((val - padic_log(zw) * padic_log(1 - zw)).with_field(field), route)


def lmod2(z, field: PadicField | None = None) -> ColemanValue:
    """L2mod(z) = Li2(z) + log(z) log(1 - z) / 2; 0 at 0, 1 and inf."""
    if field is None:
        field = z.field if isinstance(z, PadicNumber) else None
    if field is None:
        raise ValueError("a PadicField is needed for non-p-adic arguments")
    work = _work(field)
    zw = _point(z, work)
    if zw is INF:
        return ColemanValue(field.zero(), "convention")
    kind = _classify(zw)
    if kind in ("zero", "one"):
        return ColemanValue(field.zero(), "convention")
    val, route = _ltwo_work(zw)
    return ColemanValue((val - padic_log(zw) * padic_log(1 - zw) / 2).with_field(field), route)


# -- closed-form expressions -------------------------------------------------

_ONE = RationalFunction.constant(1)


def _mobius_parts(mu: RationalFunction):
    """(lead, zeros, poles) of a Mobius function with at most one finite zero and pole."""
    if mu.degree_num() > 1 or mu.degree_den() > 1 or mu.is_constant():
        raise ValueError("L2 argument must be a nonconstant Mobius transformation")
    return mu.factored()


@dataclass(frozen=True)
class Term:
    """coeff * rat(z) * prod log(z - a) * L2(ltwo(z)) (the last factor optional)."""

    coeff: PadicNumber
    rat: RationalFunction = _ONE
    logs: tuple = ()
    ltwo: RationalFunction | None = None

    @property
    def key(self):
        return (self.rat, self.logs, self.ltwo)

    @property
    def shape(self) -> str:
        if self.ltwo is not None:
            return "Ltwo" if self.rat.is_constant() and not self.logs else "Ltwo*rational"
        if not self.logs:
            return "Const" if self.rat.is_constant() else "Rational"
        if len(self.logs) == 1:
            return "Log" if self.rat.is_constant() else "Log*rational"
        return "LogLog" if self.rat.is_constant() else "LogLog*rational"


def _normalize_term(coeff, rat, logs, ltwo):
    lead = rat.num[-1]
    if lead != 1:
        coeff = coeff * coeff.field(lead)
        rat = rat * (Fraction(1) / lead)
    return Term(coeff, rat, tuple(sorted(logs)), ltwo)


class ColemanExpression:
    """A finite sum of :class:`Term` objects over a fixed PadicField."""

    def __init__(self, field: PadicField, terms=()):
        self.field = field
        merged: dict = {}
        for t in terms:
            t = _normalize_term(field(t.coeff), t.rat, t.logs, t.ltwo)
            if t.key in merged:
                merged[t.key] = merged[t.key] + t.coeff
            else:
                merged[t.key] = t.coeff
        self.terms = tuple(Term(c, *k) for k, c in merged.items()
                           if not (c.is_zero() and c.prec >= field.prec))

    # -- construction -------------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [Term(field(c))])

    @classmethod
    def rational(cls, field, r: RationalFunction, coeff=1):
        if not isinstance(r, RationalFunction):
            return cls.constant(field, field(coeff) * field(r))
        return cls(field, [Term(field(coeff), r)])

    @classmethod
    def log_linear(cls, field, a, coeff=1):
        """coeff * log(z - a)."""
        return cls(field, [Term(field(coeff), _ONE, (Fraction(a),))])

    @classmethod
    def log_of(cls, field, f: RationalFunction):
        """log f as log(lead) + sum ord * log(z - a)."""
        lead, zeros, poles = f.factored()
        terms = [Term(padic_log(field(lead)))]
        for a, m in zeros:
            terms.append(Term(field(m), _ONE, (a,)))
        for a, m in poles:
            terms.append(Term(field(-m), _ONE, (a,)))
        return cls(field, terms)

    @classmethod
    def ltwo_of(cls, field, mu: RationalFunction, coeff=1):
        _mobius_parts(mu)
        return cls(field, [Term(field(coeff), _ONE, (), mu)])

    # -- algebra ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ColemanExpression):
            other = ColemanExpression.constant(self.field, other)
        return ColemanExpression(self.field, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ColemanExpression(self.field, [Term(-t.coeff, t.rat, t.logs, t.ltwo) for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c) if not isinstance(c, PadicNumber) else c
        return ColemanExpression(self.field, [Term(t.coeff * c, t.rat, t.logs, t.ltwo) for t in self.terms])

    def __mul__(self, other):
        """Product; at most one L2 factor per term is supported."""
        if isinstance(other, RationalFunction):
            return ColemanExpression(self.field, [Term(t.coeff, t.rat * other, t.logs, t.ltwo)
                                                  for t in self.terms])
        if not isinstance(other, ColemanExpression):
            return self.scale(other)
        out = []
        for s in self.terms:
            for t in other.terms:
                if s.ltwo is not None and t.ltwo is not None:
                    raise ValueError("products of two L2 factors are not supported")
                out.append(Term(s.coeff * t.coeff, s.rat * t.rat, s.logs + t.logs, s.ltwo or t.ltwo))
        return ColemanExpression(self.field, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        parts = []
        for t in self.terms:
            s = f"({t.coeff.centered_lift()})"
            if not t.rat.is_constant():
                s += f"*{t.rat}"
            for a in t.logs:
                s += f"*log(z - {a})"
            if t.ltwo is not None:
                s += f"*L2({t.ltwo})"
            parts.append(s)
        return " + ".join(parts) or "0"

    def max_log_count(self) -> int:
        return max((len(t.logs) for t in self.terms), default=0)

    def has_ltwo(self) -> bool:
        return any(t.ltwo is not None for t in self.terms)

    def rational_part(self):
        """Sum of the log-free, L2-free terms as (constant coefficient, RationalFunction or 0)."""
        return [t for t in self.terms if not t.logs and t.ltwo is None]

    # -- calculus -----------------------------------------------------------
    def derivative(self) -> "ColemanExpression":
        """The coefficient of dz in dE, using d L2(mu) = log(mu) dlog(1 - mu)."""
        field = self.field
        out = []
        for t in self.terms:
            dr = t.rat.derivative()
            if dr != 0:
                out.append(Term(t.coeff, dr, t.logs, t.ltwo))
            for i, a in enumerate(t.logs):
                rest = t.logs[:i] + t.logs[i + 1:]
                out.append(Term(t.coeff, t.rat * RationalFunction((Fraction(1),), [(a, 1)]), rest, t.ltwo))
            if t.ltwo is not None:
                mu = t.ltwo
                dlog_one_minus = (1 - mu).dlog()
                log_mu = ColemanExpression.log_of(field, mu)
                for s in log_mu.terms:
                    out.append(Term(t.coeff * s.coeff, t.rat * dlog_one_minus, t.logs + s.logs, None))
        return ColemanExpression(field, out)

    def evaluate(self, y) -> PadicNumber:
        """Value at a point where every term is regular."""
        field = self.field
        y = _point(y, field)
        if y is INF:
            raise ValueError("evaluate at inf through constant_term_at")
        total = field.zero()
        for t in self.terms:
            val = t.coeff * t.rat(y)
            for a in t.logs:
                val = val * padic_log(y - field(a))
            if t.ltwo is not None:
                val = val * ltwo(t.ltwo(y)).value
            total = total + val
        return total

    def expand(self, y, sup: int = 24) -> LogLaurent:
        """Expansion at y in t = z - y (t = 1/z at inf), known below t**sup."""
        field = self.field
        y = as_point(y)
        cache: dict = {}
        total = LogLaurent.zero(field)
        for t in self.terms:
            piece = LogLaurent.constant(field, t.coeff)
            if not t.rat.is_constant():
                piece = piece * t.rat.laurent_at(y, field, sup)
            for a in t.logs:
                if ("log", a) not in cache:
                    cache[("log", a)] = _expand_log_linear(field, a, y, sup)
                piece = piece * cache[("log", a)]
            if t.ltwo is not None:
                if ("l2", t.ltwo) not in cache:
                    cache[("l2", t.ltwo)] = expand_ltwo(field, t.ltwo, y, sup)
                piece = piece * cache[("l2", t.ltwo)]
            total = total + piece
        return total


def _expand_log_linear(field, a, y, sup) -> LogLaurent:
    """log(z - a) at y."""
    a = Fraction(a)
    if y is INF:
        # z - a = (1 - a t) / t
        one_minus = LaurentSeries.from_coeffs(field, [1, -a]).truncate(sup)
        return LogLaurent((log_unit_series(one_minus), LaurentSeries.constant(field, -1)))
    if y == a:
        return LogLaurent.log_z(field)
    lin = LaurentSeries.from_coeffs(field, [y - a, 1]).truncate(sup)
    return LogLaurent.from_series(log_unit_series(lin))


def log_expansion(field, f: RationalFunction, y, sup: int = 24) -> LogLaurent:
    """log f at y; its log t coefficient is ord_y(f)."""
    return ColemanExpression.log_of(field, f).expand(y, sup)


def ltwo_constant_term(field, g: RationalFunction, y) -> PadicNumber:
    """Constant term of L2(g) at y in the standard parameter.

    0 where g vanishes, log(gbar(y))**2 / 2 where g has a pole (gbar = g / t**ord),
    and L2(g(y)) elsewhere.
    """
    y = as_point(y)
    o = g.order_at(y)
    if o > 0:
        return field.zero()
    if o < 0:
        lg = padic_log(field(g.leading_at(y)))
        return lg * lg / 2
    return ltwo(g(y), field).value


def expand_ltwo(field, g: RationalFunction, y, sup: int = 24) -> LogLaurent:
    """L2(g) at y: its constant term plus pint(log g dlog(1 - g))."""
    log_g = log_expansion(field, g, y, sup + 2)
    one_minus = 1 - g
    if one_minus == 0 or not isinstance(one_minus, RationalFunction):
        raise ValueError("L2 of the constant 1")
    dlog = one_minus.dlog()
    form = log_g * form_at(dlog, y, field, sup + 2) if dlog != 0 else LogLaurent.zero(field)
    body = integrate_form(LogForm(form))
    body = body.truncate(sup)
    return body + LogLaurent.constant(field, ltwo_constant_term(field, g, y))


def form_at(r: RationalFunction, y, field, sup: int) -> LaurentSeries:
    """Coefficient of dt for the form r(z) dz at y (dz = -dt / t**2 at inf)."""
    y = as_point(y)
    if y is INF:
        s = r.laurent_at(y, field, sup + 2)
        return (-s).shift_exponent(-2)
    return r.laurent_at(y, field, sup)


def eval_expr(E: ColemanExpression, y) -> PadicNumber:
    """Value of E at y when regular there, else its constant term in the standard parameter."""
    try:
        return E.evaluate(y)
    except (ZeroDivisionError, PrecisionError):
        return constant_term_at(E, y)


def constant_term_at(E: ColemanExpression, y, param=None, sup: int = 24) -> PadicNumber:
    """Constant term of E at y; ``param=(c, u)`` uses the parameter s with t = c*s*u(s)."""
    F = E.expand(y, sup)
    if param is not None:
        c, u = param
        F = reparametrize(F, c, u)
    return constant_term(F)


# -- integration -------------------------------------------------------------

def rational_integral(field, r) -> ColemanExpression:
    """Antiderivative of r(z) dz: a rational function plus residues times log(z - b)."""
    if not isinstance(r, RationalFunction):
        r = RationalFunction.constant(r) if r != 0 else None
    if r is None:
        return ColemanExpression.zero(field)
    R, residues = _rational_part_of_integral(r)
    out = ColemanExpression.zero(field)
    if R != 0:
        out = out + ColemanExpression.rational(field, R)
    for b, c in residues.items():
        if c:
            out = out + ColemanExpression.log_linear(field, b, c)
    return out


def _rational_part_of_integral(r: RationalFunction):
    """(R, {b: residue}) with r = R' + sum residue / (z - b)."""
    from .ratfunc import p_integral

    poly, parts = r.partial_fractions()
    R = 0
    ip = p_integral(poly)
    if ip:
        R = RationalFunction(ip)
    residues = {}
    for b, cs in parts.items():
        residues[b] = cs[0]
        for k in range(2, len(cs) + 1):
            if cs[k - 1]:
                R = R + RationalFunction((Fraction(cs[k - 1]) / (1 - k),), [(b, k - 1)])
    return R, residues


def _log_times_dlog(field, a, b) -> ColemanExpression:
    """Antiderivative of log(z - a) dz / (z - b)."""
    a, b = Fraction(a), Fraction(b)
    if a == b:
        return ColemanExpression(field, [Term(field(Fraction(1, 2)), _ONE, (a, a))])
    lba = padic_log(field(b - a))
    u = RationalFunction.mobius(1, -a, 0, b - a)  # (z - a) / (b - a)
    return ColemanExpression(field, [
        Term(lba, _ONE, (b,)),          # log(b-a) log(1-u) = log(b-a) (log(z-b) - log(b-a))
        Term(-lba * lba),
        Term(field.one(), _ONE, (), u),
    ])


def dilog_integrate(integrand: ColemanExpression) -> ColemanExpression:
    """Antiderivative of ``integrand * dz`` when every term has at most one log and no L2."""
    field = integrand.field
    out = ColemanExpression.zero(field)
    for t in integrand.terms:
        if t.ltwo is not None or len(t.logs) > 1:
            raise ValueError("dilog_integrate needs terms with at most one log factor and no L2")
        if not t.logs:
            out = out + rational_integral(field, t.rat).scale(t.coeff)
            continue
        a = t.logs[0]
        R, residues = _rational_part_of_integral(t.rat)
        piece = ColemanExpression.zero(field)
        if R != 0:
            # by parts: log(z-a) R - int R / (z - a)
            piece = piece + ColemanExpression(field, [Term(field.one(), R, (a,))])
            piece = piece - rational_integral(field, R * RationalFunction((Fraction(1),), [(a, 1)]))
        for b, c in residues.items():
            if c:
                piece = piece + _log_times_dlog(field, a, b).scale(field(c))
        out = out + piece.scale(t.coeff)
    return out


def log_rational_form(field, log_of: RationalFunction | None, r: RationalFunction, coeff=1):
    """The integrand log(log_of) * r as a ColemanExpression (coefficient of dz)."""
    base = ColemanExpression.rational(field, r, coeff)
    if log_of is None:
        return base
    return ColemanExpression.log_of(field, log_of) * base
