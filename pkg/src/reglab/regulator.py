"""Symbol elements sum c_i [g_i]_2 (x) f_i, their closedness conditions, and the
explicit regulator formulas on wide opens of P^1.

Forms are exact, ``omega = dh`` with h rational; the antiderivative F_omega
is h itself.  Where a formula asks for F_omega at a pole of h, the constant
term of h in the standard parameter is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .p1geom import WideOpen, divisor_of, global_triple_index, with_window
from .padic import PadicField, PadicNumber, padic_log
from .polylog import ColemanExpression, Unreachable, constant_term_at, dilog_integrate, lmod2
from .ratfunc import NotSplit, RationalFunction, as_point, point_key

__all__ = [
    "SymbolElement",
    "ExactForm",
    "NotExact",
    "ConditionCheckError",
    "factor_vector",
    "check_special_units",
    "check_ocond",
    "check_ocond_tilde",
    "check_ccond_numeric",
    "regmap_thm1",
    "regmap_thm2",
    "regmap_thm3",
    "regmap_thm4a",
    "regmap_thm4b",
    "stokes_cyclic_sum",
    "RegulatorReport",
    "by_parts_constant_term_sides",
    "two_term_sequence_sides",
]


class NotExact(ValueError):
    """The form has nonzero residues, so it has no rational antiderivative."""


class ConditionCheckError(ValueError):
    """A closedness condition could not be evaluated exactly."""


@dataclass(frozen=True)
class SymbolElement:
    """sum c * [g]_2 (x) f over (c, g, f)."""

    terms: tuple

    def __init__(self, terms):
        norm = []
        for c, g, f in terms:
            g = g if isinstance(g, RationalFunction) else RationalFunction.constant(g)
            f = f if isinstance(f, RationalFunction) else RationalFunction.constant(f)
            if g.is_constant() and g.constant_value() in (0, 1):
                raise ValueError("[g]_2 needs g different from 0 and 1")
            norm.append((Fraction(c), g, f))
        object.__setattr__(self, "terms", tuple(norm))

    def __add__(self, other):
        return SymbolElement(self.terms + other.terms)

    def scale(self, c) -> "SymbolElement":
        return SymbolElement([(c * a, g, f) for a, g, f in self.terms])

    def functions(self):
        out = []
        for _, g, f in self.terms:
            out.extend([g, 1 - g, f])
        return out


@dataclass(frozen=True)
class ExactForm:
    """The form dh for a rational function h."""

    h: RationalFunction

    @classmethod
    def from_form(cls, r: RationalFunction) -> "ExactForm":
        """The form r dz, which must have all residues zero."""
        from .polylog import _rational_part_of_integral

        R, residues = _rational_part_of_integral(r)
        if any(residues.values()):
            raise NotExact("form has nonzero residues; only exact forms are supported")
        return cls(R if isinstance(R, RationalFunction) else RationalFunction.constant(1))

    def is_zero(self) -> bool:
        return self.h.is_constant()

    def coefficient(self):
        """The rational function r with omega = r dz (0 for the zero form)."""
        return self.h.derivative()


# -- factor base ------------------------------------------------------------

def _prime_factors(x: Fraction) -> dict:
    out = {}
    for n, sign in ((x.numerator, 1), (x.denominator, -1)):
        n = abs(n)
        d = 2
        while d * d <= n:
            while n % d == 0:
                out[d] = out.get(d, 0) + sign
                n //= d
            d += 1
        if n > 1:
            out[n] = out.get(n, 0) + sign
    return out


def factor_vector(f) -> dict:
    """Exponent vector of f in the basis {monic z - a} and {primes}; signs are torsion."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction.constant(f)
    try:
        lead, zeros, poles = f.factored()
    except NotSplit as exc:
        raise ConditionCheckError("condition check requires split factorizations") from exc
    vec = {}
    for q, e in _prime_factors(Fraction(lead)).items():
        vec[("p", q)] = Fraction(e)
    for a, m in zeros:
        vec[("z", a)] = vec.get(("z", a), 0) + m
    for a, m in poles:
        vec[("z", a)] = vec.get(("z", a), 0) - m
    return {k: Fraction(v) for k, v in vec.items() if v}


def _key(k):
    kind, x = k
    return (0 if kind == "p" else 1, x)


def _wedge2(b, c):
    out = {}
    for x, bx in b.items():
        for y, cy in c.items():
            if x == y:
                continue
            lo_, hi_ = (x, y) if _key(x) < _key(y) else (y, x)
            sign = 1 if lo_ == x else -1
            out[(lo_, hi_)] = out.get((lo_, hi_), 0) + sign * bx * cy
    return {k: v for k, v in out.items() if v}


def _wedge3(a, b, c):
    out = {}
    for x, ax in a.items():
        for pair, v in _wedge2(b, c).items():
            if x in pair:
                continue
            idx = sorted((x,) + pair, key=_key)
            # sign of the permutation taking (x, pair0, pair1) to sorted order
            perm = [idx.index(x), idx.index(pair[0]), idx.index(pair[1])]
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
            s = -1 if inv % 2 else 1
            out[tuple(idx)] = out.get(tuple(idx), 0) + s * ax * v
    return {k: v for k, v in out.items() if v}


def ocond_vector(alpha: SymbolElement) -> dict:
    """sum c (1 - g) (x) (g ^ f) in V (x) Lambda^2 V."""
    out = {}
    for c, g, f in alpha.terms:
        a = factor_vector(1 - g)
        w = _wedge2(factor_vector(g), factor_vector(f))
        for x, ax in a.items():
            for pair, v in w.items():
                out[(x, pair)] = out.get((x, pair), 0) + c * ax * v
    return {k: v for k, v in out.items() if v}


def ocond_tilde_vector(alpha: SymbolElement) -> dict:
    """sum c (1 - g) ^ g ^ f in Lambda^3 V."""
    out = {}
    for c, g, f in alpha.terms:
        for k, v in _wedge3(factor_vector(1 - g), factor_vector(g), factor_vector(f)).items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def check_ocond(alpha: SymbolElement) -> bool:
    return not ocond_vector(alpha)


def check_ocond_tilde(alpha: SymbolElement) -> bool:
    return not ocond_tilde_vector(alpha)


def _is_unit_on(f: RationalFunction, U: WideOpen) -> bool:
    if f.is_constant():
        c = f.constant_value()
        return c != 0 and c.numerator % U.p != 0 and c.denominator % U.p != 0
    try:
        return U.contains_support(f)
    except NotSplit:
        return False


def check_special_units(alpha: SymbolElement, U: WideOpen) -> bool:
    """Every g, 1 - g and f is invertible on U."""
    for _, g, f in alpha.terms:
        one_minus = 1 - g
        if not isinstance(one_minus, RationalFunction):
            return False
        if not (_is_unit_on(g, U) and _is_unit_on(one_minus, U) and _is_unit_on(f, U)):
            return False
    return True


def check_ccond_numeric(alpha: SymbolElement, field: PadicField) -> list[dict]:
    """Per point x of the divisors of the f_i: sum c ord_x(f) L2mod(g(x)) and the wedge
    sum c ord_x(f) (1 - g(x)) ^ g(x), with [0]_2 = [1]_2 = [inf]_2 = 0."""
    points = set()
    for _, _, f in alpha.terms:
        points |= set(divisor_of(f))
    report = []
    for x in sorted(points, key=point_key):
        total = field.zero()
        wedge = {}
        status = "ok"
        for c, g, f in alpha.terms:
            o = f.order_at(x)
            if not o:
                continue
            og = g.order_at(x)
            if og != 0:
                continue
            gx = g(x)
            if gx == 1:
                continue
            try:
                total = total + lmod2(gx, field).value * field(c * o)
            except Unreachable:
                status = "unverifiable"
            for k, v in _wedge2(factor_vector(1 - gx), factor_vector(gx)).items():
                wedge[k] = wedge.get(k, 0) + c * o * v
        wedge = {k: v for k, v in wedge.items() if v}
        if status == "ok":
            passed = total.is_zero() and not wedge
            status = "necessary condition passed" if passed else "necessary condition failed"
        report.append({"point": x, "lmod2_sum": None if status == "unverifiable" else total,
                       "wedge_zero": not wedge, "status": status})
    return report


# -- regulator formulas -------------------------------------------------------

@dataclass
class RegulatorReport:
    value: PadicNumber
    local_terms: list = dc_field(default_factory=list)  # (label, value)

    def nonzero_local_terms(self) -> int:
        return sum(1 for _, v in self.local_terms if not v.is_zero())

    def add(self, label, v):
        self.local_terms.append((label, v))
        self.value = self.value + v


def _omega(omega) -> ExactForm:
    if isinstance(omega, ExactForm):
        return omega
    if isinstance(omega, RationalFunction):
        return ExactForm.from_form(omega)
    if omega == 0:
        return ExactForm(RationalFunction.constant(1))
    raise TypeError("omega must be an ExactForm or a rational form coefficient")


def _F_omega_at(field, h: RationalFunction, y, truncation) -> PadicNumber:
    y = as_point(y)
    if h.order_at(y) >= 0:
        return field(h(y))
    return with_window(lambda sup: constant_term_at(ColemanExpression.rational(field, h), y, sup=sup),
                       truncation)


def _ct(field, E: ColemanExpression, y, truncation) -> PadicNumber:
    return with_window(lambda sup: constant_term_at(E, y, sup=sup), truncation)


def _integral_F_dlog(field, h: RationalFunction, u) -> ColemanExpression:
    """int F_omega dlog(u) for rational F_omega = h."""
    if not isinstance(u, RationalFunction) or u.is_constant():
        return ColemanExpression.zero(field)
    return dilog_integrate(ColemanExpression.rational(field, h * u.dlog()))


def _result(report, rep):
    return report if rep else report.value


def regmap_thm3(alpha: SymbolElement, omega, U: WideOpen, field: PadicField, truncation: int = 64,
                report: bool = False):
    """sum_i c_i sum_e <log f_i, log g_i; int F_omega dlog(1 - g_i)>_e."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    for i, (c, g, f) in enumerate(alpha.terms):
        if w.is_zero():
            continue
        H = _integral_F_dlog(field, w.h, 1 - g)
        if H.is_zero():
            continue
        rep = global_triple_index(f, g, H, U, field, truncation=truncation, report=True)
        for end, v in rep.local:
            out.add((i, "end", end.point), v * field(c))
    return _result(out, report)


def regmap_thm4a(alpha: SymbolElement, omega, U: WideOpen, field: PadicField, truncation: int = 64,
                 report: bool = False):
    """sum_i c_i (2/3) (<log f, log g; int F dlog(1-g)>_gl - <log f, log(1-g); int F dlog g>_gl)."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    two_thirds = field(Fraction(2, 3))
    for i, (c, g, f) in enumerate(alpha.terms):
        if w.is_zero():
            continue
        for sign, second, third in ((1, g, 1 - g), (-1, 1 - g, g)):
            H = _integral_F_dlog(field, w.h, third)
            if H.is_zero():
                continue
            rep = global_triple_index(f, second, H, U, field, truncation=truncation, report=True)
            for end, v in rep.local:
                out.add((i, "end", end.point, sign), v * field(sign * c) * two_thirds)
    return _result(out, report)


def _ltwo_integral(field, g: RationalFunction, h: RationalFunction) -> ColemanExpression:
    """int L2(g) dh = L2(g) h - int h log(g) dlog(1 - g)."""
    first = ColemanExpression.ltwo_of(field, g) * h
    second = dilog_integrate(ColemanExpression.log_of(field, g) * (h * (1 - g).dlog()))
    return first - second


def _const_g_term(field, c_g: Fraction, f, h, truncation, with_correction=True) -> tuple:
    """For constant g, 2 sum_y ord_y(f) (L2(g) - L2mod(g)) F(y) = log g log(1-g) sum ord F(y)."""
    s = field.zero()
    for y, o in divisor_of(f).sorted_items():
        s = s + _F_omega_at(field, h, y, truncation) * o
    return s


def regmap_thm2(alpha: SymbolElement, omega, U: WideOpen, field: PadicField, truncation: int = 64,
                report: bool = False):
    """sum_i c_i (2 int_{(f)} L2(g) omega - 2 sum_y ord_y(f) F_omega(y) L2mod(g(y)))."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    if w.is_zero():
        return _result(out, report)
    h = w.h
    for i, (c, g, f) in enumerate(alpha.terms):
        cc = field(c)
        if g.is_constant():
            gv = g.constant_value()
            s = _const_g_term(field, gv, f, h, truncation)
            v = padic_log(field(gv)) * padic_log(field(1 - gv)) * s * cc
            out.add((i, "constant-g"), v)
            continue
        J = _ltwo_integral(field, g, h)
        for y, o in divisor_of(f).sorted_items():
            out.add((i, "int", y), _ct(field, J, y, truncation) * field(2 * o) * cc)
            if g.order_at(y) != 0:
                continue
            gy = g(y)
            corr = lmod2(gy, field).value * _F_omega_at(field, h, y, truncation)
            out.add((i, "lmod", y), -corr * field(2 * o) * cc)
    return _result(out, report)


def regmap_thm1(alpha: SymbolElement, omega, U: WideOpen, field: PadicField, truncation: int = 64,
                report: bool = False):
    """sum_i c_i 2 int_{(f_i)} L2(g_i) omega."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    if w.is_zero():
        return _result(out, report)
    h = w.h
    for i, (c, g, f) in enumerate(alpha.terms):
        cc = field(c)
        if g.is_constant():
            s = _const_g_term(field, g.constant_value(), f, h, truncation)
            if not s.is_zero():
                raise Unreachable("outside series-reachable locus: L2 of a constant g")
            continue
        J = _ltwo_integral(field, g, h)
        for y, o in divisor_of(f).sorted_items():
            out.add((i, "int", y), _ct(field, J, y, truncation) * field(2 * o) * cc)
    return _result(out, report)


def regmap_thm4b(alpha: SymbolElement, omega, U: WideOpen, field: PadicField, truncation: int = 64,
                 report: bool = False):
    """sum_i c_i (2/3) (int_{(1-g)} log(g) F dlog f - int_{(g)} log(1-g) F dlog f)."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    if w.is_zero():
        return _result(out, report)
    h = w.h
    two_thirds = field(Fraction(2, 3))
    for i, (c, g, f) in enumerate(alpha.terms):
        cc = field(c) * two_thirds
        if f.is_constant():
            continue
        form = h * f.dlog()
        for sign, log_of, div_of in ((1, g, 1 - g), (-1, 1 - g, g)):
            if not isinstance(div_of, RationalFunction) or div_of.is_constant():
                continue
            A = dilog_integrate(ColemanExpression.log_of(field, log_of) * form)
            for y, o in divisor_of(div_of).sorted_items():
                out.add((i, sign, y), _ct(field, A, y, truncation) * field(sign * o) * cc)
    return _result(out, report)


def stokes_cyclic_sum(F: RationalFunction, G: RationalFunction, H: RationalFunction, omega, U: WideOpen,
                      field: PadicField, truncation: int = 64, report: bool = False):
    """<F,G; int F_w dH>_gl + <F,H; int F_w dG>_gl + <G,H; int F_w dF>_gl for logs of F, G, H."""
    w = _omega(omega)
    out = RegulatorReport(field.zero())
    for a, b, c in ((F, G, H), (F, H, G), (G, H, F)):
        K = _integral_F_dlog(field, w.h, c)
        if K.is_zero():
            continue
        rep = global_triple_index(a, b, K, U, field, truncation=truncation, report=True)
        for end, v in rep.local:
            out.add(((a, b, c), end.point), v)
    return _result(out, report)


def by_parts_constant_term_sides(g: RationalFunction, h: RationalFunction, y, field: PadicField, truncation: int = 64):
    """Both sides of c_z(int log(g) F dlog(1-g)) = F(y) c_z(L2(g)) - (int L2(g) omega)|_y.

    Integrals are chosen so that integration by parts holds exactly, and F = h
    must be regular at y.
    """
    y = as_point(y)
    lhs_expr = dilog_integrate(ColemanExpression.log_of(field, g) * (h * (1 - g).dlog()))
    J = _ltwo_integral(field, g, h)
    lhs = _ct(field, lhs_expr, y, truncation)
    rhs = (_F_omega_at(field, h, y, truncation) * _ct(field, ColemanExpression.ltwo_of(field, g), y, truncation)
           - _ct(field, J, y, truncation))
    return lhs, rhs


def two_term_sequence_sides(alpha: SymbolElement, h: RationalFunction, y, field: PadicField, truncation: int = 64):
    """The two constant-term sums equated on closed elements at the point y.

    ``dilog_integrate`` works term by term on partial fractions, so the
    integrals int log(f) F dlog(k) it produces are bilinear in (f, k).
    """
    y = as_point(y)
    left = field.zero()
    right = field.zero()
    for c, g, f in alpha.terms:
        form = h * (1 - g).dlog()
        of, og = f.order_at(y), g.order_at(y)
        if of:
            E = dilog_integrate(ColemanExpression.log_of(field, g) * form)
            left = left + _ct(field, E, y, truncation) * field(c * of)
        if og:
            E = dilog_integrate(ColemanExpression.log_of(field, f) * form)
            right = right + _ct(field, E, y, truncation) * field(c * og)
    return left, right
