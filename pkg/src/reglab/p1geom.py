"""Divisors, wide opens and global index sums on the projective line.

A wide open is P^1 minus discs around finitely many Q-rational points with
pairwise distinct reductions mod p (inf is always removed).  Each removed
point carries an end with local parameter ``z - a``, or ``1/z`` at inf.
Residues at inf are taken in that parameter, so the residues of a rational
form over all ends sum to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .index import NotAPrime, TripleData, triple_index
from .padic import PadicField, PadicNumber
from .polylog import ColemanExpression, dilog_integrate, form_at, rational_integral
from .ratfunc import INF, RationalFunction, as_point, point_key
from .series import LogLaurent, WindowExhausted

__all__ = [
    "Divisor",
    "ResidueDiscCollision",
    "NotAPrimeOnEnd",
    "End",
    "WideOpen",
    "divisor_of",
    "reduction",
    "wide_open_ends",
    "expand_at_end",
    "residue_at_end",
    "rational_antiderivative",
    "global_triple_index",
    "GlobalIndexReport",
    "with_window",
]


class ResidueDiscCollision(ValueError):
    """Two removed points share a residue disc."""


class NotAPrimeOnEnd(ValueError):
    """An input is not alpha*log z + meromorphic on some end."""


class Divisor(dict):
    """Finite formal sum of points of P^1 with integer multiplicities."""

    def __init__(self, items=()):
        super().__init__()
        items = items.items() if isinstance(items, dict) else items
        for pt, m in items:
            pt = as_point(pt)
            self[pt] = self.get(pt, 0) + m
        for pt in [k for k, v in self.items() if v == 0]:
            del self[pt]

    def degree(self) -> int:
        return sum(self.values())

    def support(self):
        return sorted(self, key=point_key)

    def sorted_items(self):
        return [(pt, self[pt]) for pt in self.support()]

    def __add__(self, other):
        return Divisor(list(self.items()) + list(other.items()))

    def __repr__(self):
        return "Divisor({" + ", ".join(f"{pt}: {m}" for pt, m in self.sorted_items()) + "})"


def divisor_of(f: RationalFunction) -> Divisor:
    """Zeros minus poles, including inf."""
    return Divisor(f.divisor())


def reduction(pt, p: int):
    """Image of a point of P^1(Q) in P^1(F_p)."""
    if pt is INF:
        return INF
    x = Fraction(pt)
    num, den = x.numerator, x.denominator
    if den % p == 0:
        return INF
    return num * pow(den, -1, p) % p


@dataclass(frozen=True)
class End:
    """The annulus end around a removed point; parameter z - a, or 1/z at inf."""

    point: object

    @property
    def parameter(self) -> str:
        return "1/z" if self.point is INF else f"z - {self.point}"

    def __repr__(self):
        return f"End({self.point})"


@dataclass(frozen=True)
class WideOpen:
    p: int
    points: tuple
    ends: tuple = dc_field(init=False)

    def __post_init__(self):
        pts = sorted({as_point(x) for x in self.points} | {INF}, key=point_key)
        seen = {}
        for pt in pts:
            red = reduction(pt, self.p)
            if red in seen:
                raise ResidueDiscCollision(
                    f"residue disc collision: {seen[red]} and {pt} both reduce to {red} mod {self.p}")
            seen[red] = pt
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "ends", tuple(End(pt) for pt in pts))

    def contains_support(self, f: RationalFunction) -> bool:
        """True when every zero and pole of f is a removed point."""
        return all(pt in self.points for pt in divisor_of(f))


def wide_open_ends(functions, p: int) -> WideOpen:
    """The wide open removing every zero and pole of the given functions (and inf)."""
    pts = set()
    for f in functions:
        pts |= set(divisor_of(f))
    return WideOpen(p, tuple(pts))


def _as_expression(E, field) -> ColemanExpression:
    if isinstance(E, ColemanExpression):
        return E
    if isinstance(E, RationalFunction):
        return ColemanExpression.log_of(field, E)
    return ColemanExpression.constant(field, E)


def expand_at_end(E, end: End, field: PadicField, sup: int = 24) -> LogLaurent:
    """Expansion of a Coleman expression (or of log f for a RationalFunction f) on an end."""
    return _as_expression(E, field).expand(end.point, sup)


def residue_at_end(r: RationalFunction, end: End, field: PadicField, sup: int = 8) -> PadicNumber:
    """Residue of the form r(z) dz on an end."""
    if not isinstance(r, RationalFunction):
        return field.zero()
    order = max(r.degree_den() + 2, sup)
    return form_at(r, end.point, field, order).coeff(-1)


def rational_antiderivative(r: RationalFunction, field: PadicField) -> ColemanExpression:
    """A rational function plus residue * log(z - a) terms whose derivative is r."""
    return rational_integral(field, r)


def with_window(fn, truncation: int = 64, start: int = 16):
    """Call ``fn(sup)`` with growing windows until it stops running out of terms."""
    sup = min(start, truncation)
    while True:
        try:
            return fn(sup)
        except WindowExhausted:
            if sup >= truncation:
                raise
            sup = min(2 * sup, truncation)


@dataclass
class GlobalIndexReport:
    value: PadicNumber
    local: list  # (end, value) in end order
    aux: dict

    def nonzero_local_terms(self) -> int:
        return sum(1 for _, v in self.local if not v.is_zero())


def _aux_integral(R: ColemanExpression, S: ColemanExpression) -> ColemanExpression:
    """A global antiderivative of R dS."""
    return dilog_integrate(R * S.derivative())


def global_triple_index(F, G, H, U: WideOpen, field: PadicField, I_GdH=None, I_FdH=None, I_FdG=None,
                        truncation: int = 64, report: bool = False):
    """Sum over the ends of U of the local triple indices.

    F, G, H are Coleman expressions (a RationalFunction f stands for log f).
    Missing auxiliary integrals are produced once globally in closed form, so
    every end sees the same global choice.
    """
    F, G, H = (_as_expression(X, field) for X in (F, G, H))
    aux = {
        "I_GdH": I_GdH if I_GdH is not None else _aux_integral(G, H),
        "I_FdH": I_FdH if I_FdH is not None else _aux_integral(F, H),
        "I_FdG": I_FdG if I_FdG is not None else _aux_integral(F, G),
    }
    aux = {k: _as_expression(v, field) for k, v in aux.items()}

    def local(end, sup):
        pt = end.point
        data = TripleData(F.expand(pt, sup), G.expand(pt, sup), H.expand(pt, sup),
                          aux["I_GdH"].expand(pt, sup), aux["I_FdH"].expand(pt, sup),
                          aux["I_FdG"].expand(pt, sup))
        try:
            return triple_index(data)
        except NotAPrime as exc:
            raise NotAPrimeOnEnd(f"not A-prime on end {end}: {exc}") from exc

    values = []
    total = field.zero()
    for end in U.ends:
        v = with_window(lambda sup, end=end: local(end, sup), truncation)
        values.append((end, v))
        total = total + v
    if report:
        return GlobalIndexReport(total, values, aux)
    return total
