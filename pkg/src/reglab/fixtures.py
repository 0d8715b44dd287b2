"""Seeded generators for the self-test suites and the test-suite.

Every fixture lives on a wide open removing alpha = 0 mod p, beta = 1 mod p
and inf.  With only these three residue classes involved, every cross-ratio
that a dilogarithm or logarithm is evaluated at reduces to 0, 1 or inf, so
every evaluation stays inside the series-reachable locus.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .p1geom import WideOpen
from .ratfunc import INF, RationalFunction
from .regulator import ExactForm, SymbolElement

__all__ = [
    "lift",
    "ThreePoints",
    "three_points",
    "random_unit",
    "closed_fixture",
    "tilde_fixture",
]

_DENOMS = (1, 2, 3, 4, 5, 6, 8, 9, 10, 11)


def lift(rng: random.Random, residue: int, p: int = 7, spread: int = 20) -> Fraction:
    """A random rational congruent to ``residue`` mod p with a p-unit denominator."""
    while True:
        den = rng.choice(_DENOMS)
        if den % p == 0:
            continue
        x = Fraction(p * rng.randint(-spread, spread) + residue * den, den)
        if x.denominator % p:
            return x


class ThreePoints:
    """alpha, beta and the wide open U = P^1 minus the discs of alpha, beta, inf."""

    def __init__(self, alpha: Fraction, beta: Fraction, p: int = 7):
        self.alpha, self.beta, self.p = alpha, beta, p
        self.U = WideOpen(p, (alpha, beta))
        # u(alpha) = 0, u(beta) = 1, u(inf) = inf
        self.u = RationalFunction.mobius(1, -alpha, 0, beta - alpha)

    def point(self, name):
        return {"alpha": self.alpha, "beta": self.beta, "inf": INF}[name]

    def anharmonic(self) -> dict:
        """The six Moebius functions permuting {alpha, beta, inf} onto {0, 1, inf}."""
        u = self.u
        return {"u": u, "1-u": 1 - u, "1/u": 1 / u, "1/(1-u)": 1 / (1 - u),
                "1-1/u": 1 - 1 / u, "u/(u-1)": u / (u - 1)}

    def simple_pole_at(self, pt, c=1) -> RationalFunction:
        """c/(z - pt), or c*z at inf."""
        if pt is INF:
            return RationalFunction.z() * Fraction(c)
        return RationalFunction.from_roots(Fraction(c), {pt: -1})

    def __repr__(self):
        return f"ThreePoints({self.alpha}, {self.beta}, p={self.p})"


def three_points(rng: random.Random, p: int = 7) -> ThreePoints:
    # beta - alpha = +-1 has logarithm 0, which makes every regulator local term vanish
    while True:
        alpha, beta = lift(rng, 0, p), lift(rng, 1, p)
        if abs(beta - alpha) != 1:
            return ThreePoints(alpha, beta, p)


def random_unit(rng: random.Random, tp: ThreePoints, max_exp: int = 2) -> RationalFunction:
    """A nonconstant c (z - alpha)^i (z - beta)^j."""
    while True:
        c = Fraction(rng.choice([1, -1, 2, 3, 5, -3, 4]), rng.choice([1, 2, 3, 5]))
        f = RationalFunction.from_roots(c, {tp.alpha: rng.randint(-max_exp, max_exp),
                                            tp.beta: rng.randint(-max_exp, max_exp)})
        if not f.is_constant():
            return f


def _value_one_at(tp: ThreePoints, name):
    # u and 1 - u are left out: with h = c/(z - R) every local term of theirs vanishes
    A = tp.anharmonic()
    return {"beta": (A["1/u"],), "alpha": (A["1/(1-u)"],),
            "inf": (A["u/(u-1)"], A["1-1/u"])}[name]


def _zero_at(tp: ThreePoints, name):
    A = tp.anharmonic()
    return {"alpha": (A["u"], A["u/(u-1)"]), "beta": (A["1-u"], A["1-1/u"]),
            "inf": (A["1/u"], A["1/(1-u)"])}[name]


def _coefficient(rng):
    return Fraction(rng.choice([1, -1, 2, -2, 3, 5]), rng.choice([1, 2, 3]))


def _weights_nonzero(terms, exponents) -> bool:
    """Signs are torsion, so each g carries the weight sum c*k; all weights must be nonzero."""
    weight = {}
    for (c, g, _), k in zip(terms, exponents):
        weight[g] = weight.get(g, 0) + c * k
    return all(weight.values())


def closed_fixture(rng: random.Random, p: int = 7, n_terms: int = 5):
    """(tp, alpha, omega) with alpha a sum of [g]_2 (x) (+-g^k) terms and omega = dh.

    All g take the value 1 at a common point R and h has a single simple pole
    at R, so every end index reduces to the point formula.
    """
    tp = three_points(rng, p)
    R = rng.choice(["alpha", "beta", "inf"])
    gs = _value_one_at(tp, R)
    while True:
        terms, exps = [], []
        for i in range(n_terms):
            g = gs[i % len(gs)]
            k = rng.choice([1, 2, -1, 3])
            sign = rng.choice([1, -1])
            terms.append((_coefficient(rng), g, (g ** k) * sign if k > 0 else (1 / g) ** (-k) * sign))
            exps.append(k)
        if _weights_nonzero(terms, exps):
            break
    h = tp.simple_pole_at(tp.point(R), rng.choice([1, 2, -3, 5]))
    return tp, SymbolElement(terms), ExactForm(h)


def tilde_fixture(rng: random.Random, p: int = 7, n_terms: int = 5):
    """(tp, alpha, omega) with alpha a sum of [g]_2 (x) (+-(1-g)^k) terms and omega = dh.

    All g vanish at a common point P and h has a single simple pole at P.
    """
    tp = three_points(rng, p)
    P = rng.choice(["alpha", "beta", "inf"])
    gs = _zero_at(tp, P)
    while True:
        terms, exps = [], []
        for i in range(n_terms):
            g = gs[i % 2]
            k = rng.choice([1, 2, -1])
            sign = rng.choice([1, -1])
            one_minus = 1 - g
            f = one_minus ** k if k > 0 else (1 / one_minus) ** (-k)
            terms.append((_coefficient(rng), g, f * sign))
            exps.append(k)
        if _weights_nonzero(terms, exps):
            break
    h = tp.simple_pole_at(tp.point(P), rng.choice([1, 2, -3, 5]))
    return tp, SymbolElement(terms), ExactForm(h)
