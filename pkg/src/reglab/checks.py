"""Seeded property checks shared by ``reglab selftest`` and the acceptance tests.

Each check draws its inputs from ``random.Random(seed)``, measures how close
every identity comes to holding (as the valuation of the discrepancy), and
returns a :class:`CheckResult`.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fixtures import ThreePoints, closed_fixture, random_unit, three_points, tilde_fixture
from .index import double_index, make_triple_data, split, triple_index, triple_index_simple_pole
from .p1geom import global_triple_index, with_window
from .padic import PadicField, padic_log
from .polylog import ColemanExpression, constant_term_at, lmod2, ltwo
from .ratfunc import INF, RationalFunction
from .regulator import (
    SymbolElement,
    _ltwo_integral,
    check_ccond_numeric,
    check_ocond,
    check_ocond_tilde,
    regmap_thm2,
    regmap_thm3,
    regmap_thm4a,
    regmap_thm4b,
    stokes_cyclic_sum,
)
from .series import LaurentSeries, LogLaurent

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: int  # smallest discrepancy valuation seen
    threshold: int
    count: int
    seconds: float
    extra: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.extra.items()))
        return (f"{status} {self.name}: n={self.count} worst_valuation={self.worst} "
                f"(need >= {self.threshold}) time={self.seconds:.2f}s{extra}")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst_valuation": self.worst,
                "threshold": self.threshold, "count": self.count, "extra": dict(sorted(self.extra.items()))}


class _Tracker:
    def __init__(self, name, threshold, prec):
        self.name, self.threshold = name, threshold
        self.worst = prec
        self.count = 0
        self.t0 = time.perf_counter()
        self.extra = {}

    def see(self, lhs, rhs=None):
        d = lhs if rhs is None else lhs - rhs
        self.worst = min(self.worst, d.val)

    def result(self, ok=True) -> CheckResult:
        return CheckResult(self.name, ok and self.worst >= self.threshold, self.worst, self.threshold,
                           self.count, time.perf_counter() - self.t0, self.extra)


# -- random inputs ----------------------------------------------------------------

def _small_rational(rng, p):
    num = rng.randint(-40, 40)
    den = rng.choice([1, 2, 3, 4, 5, 6, 8, 9])
    if den % p == 0:
        den = 1
    return Fraction(num, den)


def random_alog_prime(rng, field: PadicField, lo=-3, hi=5, holomorphic=False) -> LogLaurent:
    """alpha log z + a Laurent polynomial with small rational coefficients."""
    p = field.p
    lo = 0 if holomorphic else lo
    coeffs = [field(_small_rational(rng, p)) for _ in range(lo, hi + 1)]
    mer = LaurentSeries.from_coeffs(field, coeffs, lo=lo)
    alpha = _small_rational(rng, p) if rng.random() < 0.8 else 0
    return LogLaurent.from_series(mer) + LogLaurent.log_z(field, field(alpha))


def _shifted(rng, field, F, G, H):
    c = [field(_small_rational(rng, field.p)) for _ in range(3)]
    return make_triple_data(F, G, H).shift_constants(*c)


# -- index ------------------------------------------------------------------------

def check_triple_axioms(n=200, seed=0, prime=7, precision=20) -> CheckResult:
    """Trilinearity, symmetry, triple identity, reduction, I_FdG independence, change of constants."""
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("triple-index axioms", precision - 2, precision)
    for _ in range(n):
        F, G, H, F2, G2, H2 = (random_alog_prime(rng, K) for _ in range(6))
        d = _shifted(rng, K, F, G, H)
        v = triple_index(d)
        # symmetry and triple identity
        tr.see(v, triple_index(d.permute("GFH")))
        tr.see(v + triple_index(d.permute("FHG")) + triple_index(d.permute("GHF")))
        # linearity in each slot; the summands share the integrals not involving that slot
        TD = type(d)
        a, b = K(_small_rational(rng, prime)), K(_small_rational(rng, prime))
        e = _shifted(rng, K, F2, G, H)
        e = TD(F2, G, H, d.I_GdH, e.I_FdH, e.I_FdG)
        comb = TD(F.scale(a) + F2.scale(b), G, H, d.I_GdH, d.I_FdH.scale(a) + e.I_FdH.scale(b),
                  d.I_FdG.scale(a) + e.I_FdG.scale(b))
        tr.see(triple_index(comb), v * a + triple_index(e) * b)
        e = _shifted(rng, K, F, G2, H)
        e = TD(F, G2, H, e.I_GdH, d.I_FdH, e.I_FdG)
        comb = TD(F, G.scale(a) + G2.scale(b), H, d.I_GdH.scale(a) + e.I_GdH.scale(b), d.I_FdH,
                  d.I_FdG.scale(a) + e.I_FdG.scale(b))
        tr.see(triple_index(comb), v * a + triple_index(e) * b)
        e = _shifted(rng, K, F, G, H2)
        e = TD(F, G, H2, e.I_GdH, e.I_FdH, d.I_FdG)
        comb = TD(F, G, H.scale(a) + H2.scale(b), d.I_GdH.scale(a) + e.I_GdH.scale(b),
                  d.I_FdH.scale(a) + e.I_FdH.scale(b), d.I_FdG)
        tr.see(triple_index(comb), v * a + triple_index(e) * b)
        # reduction to the double index with G meromorphic
        Gm = LogLaurent.from_series(split(G)[1])
        dm = _shifted(rng, K, F, Gm, H)
        tr.see(triple_index(dm), double_index(F, dm.I_GdH))
        # independence of I_FdG and both change-of-constant formulas
        C = K(_small_rational(rng, prime))
        tr.see(triple_index(d.shift_constants(c_fg=C)), v)
        tr.see(triple_index(d.shift_constants(c_gh=C)), v - C * split(F)[0])
        tr.see(triple_index(d.shift_constants(c_fh=C)), v - C * split(G)[0])
        tr.count += 1
    return tr.result()


def check_recipe_vs_simple_pole(n=200, seed=0, prime=7, precision=20) -> CheckResult:
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("recipe vs constant-term formula", precision, precision)
    for _ in range(n):
        F, G, H = (random_alog_prime(rng, K, holomorphic=True) for _ in range(3))
        d = _shifted(rng, K, F, G, H)
        tr.see(triple_index(d), triple_index_simple_pole(F, G, H, d.I_FdH, d.I_GdH))
        tr.count += 1
    return tr.result()


# -- polylog ----------------------------------------------------------------------

def _reachable_point(rng, p, kind=None):
    kind = kind or rng.choice(["small", "large", "near1"])
    x = Fraction(p * rng.randint(1, 300), rng.choice([1, 2, 3, 4, 5, 6, 8, 9, 10]))
    if kind == "small":
        return x
    if kind == "large":
        return 1 / x
    return 1 + x


def check_polylog_identities(n=50, seed=0, prime=7, precision=20, branch=0) -> CheckResult:
    K = PadicField(prime, precision, branch)
    rng = random.Random(seed)
    tr = _Tracker(f"polylog identities (log branch {branch})", precision - 5, precision)
    L = lambda x: lmod2(x, K).value  # noqa: E731
    for _ in range(n):
        z = _reachable_point(rng, prime)
        tr.see(L(z) + L(1 / z))
        tr.see(L(z) + L(1 - z))
        l = padic_log(K(z))
        tr.see(ltwo(z, K).value + ltwo(1 / z, K).value, l * l / 2)
        z1, z2 = _reachable_point(rng, prime, "small"), _reachable_point(rng, prime, "small")
        tr.see(L(z1 * z2), L(z1) + L(z2) + L(z1 * (1 - z2) / (z1 - 1)) + L(z2 * (1 - z1) / (z2 - 1)))
        b, c = z1, z2
        tr.see(L(1 / b), L(1 / (b * c)) + L(c) + L((1 - c) / (1 - b * c)) + L((b * c - 1) / (b * (c - 1))))
        tr.count += 1
    return tr.result()


# -- global -----------------------------------------------------------------------

def check_reciprocity(n=50, seed=0, prime=7, precision=20, truncation=64) -> CheckResult:
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("global reciprocity and constant third slot", precision - 4, precision)
    nonzero = []
    for _ in range(n):
        tp = three_points(rng, prime)
        f, g, h = (random_unit(rng, tp) for _ in range(3))
        rep = global_triple_index(f, g, h, tp.U, K, truncation=truncation, report=True)
        tr.see(rep.value)
        nonzero.append(rep.nonzero_local_terms())
        c = ColemanExpression.constant(K, _small_rational(rng, prime) or 1)
        tr.see(global_triple_index(f, g, c, tp.U, K, truncation=truncation))
        tr.count += 1
    tr.extra["max_nonzero_local_terms"] = max(nonzero, default=0)
    return tr.result()


def check_stokes(n=25, seed=0, prime=7, precision=20, truncation=64) -> CheckResult:
    from .regulator import ExactForm

    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("Stokes-type cyclic sum", precision - 4, precision)
    for _ in range(n):
        tp = three_points(rng, prime)
        F, G, H = (random_unit(rng, tp) for _ in range(3))
        h = random_unit(rng, tp)
        rep = stokes_cyclic_sum(F, G, H, ExactForm(h), tp.U, K, truncation=truncation, report=True)
        tr.see(rep.value)
        tr.count += 1
    return tr.result()


# -- constant terms -----------------------------------------------------------------

def _second_parameter(K, rng):
    """t = c s u(s) with c a p-adic unit and u a unit power series."""
    c = Fraction(rng.choice([2, 3, 5, -1, -2]), rng.choice([1, 3, 4]))
    u = LaurentSeries.from_coeffs(K, [K(1)] + [K(rng.randint(-3, 3)) for _ in range(3)])
    return c, u


def check_constant_terms(n=20, seed=0, prime=7, precision=20, truncation=64) -> CheckResult:
    """Constant terms of L2 at zeros, poles and regular points, and their independence of the local parameter."""
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("constant-term identities", precision - 4, precision)

    def ct(E, y, param=None):
        return with_window(lambda sup: constant_term_at(E, y, param, sup=sup), truncation)

    counts = {"l2_values": 0, "lmod2_parameter_free": 0, "cz_parameter_free": 0}
    for _ in range(n):
        tp = three_points(rng, prime)
        g = rng.choice(list(tp.anharmonic().values()))
        c, u = _second_parameter(K, rng)
        E = ColemanExpression.ltwo_of(K, g)
        M = E - ColemanExpression.log_of(K, g) * ColemanExpression.log_of(K, 1 - g) * Fraction(1, 2)
        for y in (tp.alpha, tp.beta, INF):
            o = g.order_at(y)
            # 0 at zeros, half log^2 of the leading coefficient at poles, L2(g(y)) otherwise
            # the leading coefficient in s, where t = c s u(s) and u(0) = 1
            lead_s = g.leading_at(y) * Fraction(c) ** o
            if o > 0:
                expect = K.zero()
            elif o < 0:
                lg = padic_log(K(lead_s))
                expect = lg * lg / 2
            else:
                expect = ltwo(g(y), K).value
            tr.see(ct(E, y, (c, u)), expect)
            counts["l2_values"] += 1
            tr.see(ct(M, y), ct(M, y, (c, u)))
            counts["lmod2_parameter_free"] += 1
            # parameter independence needs omega = dh holomorphic at y
            h = _regular_at(rng, tp, y)
            J = _ltwo_integral(K, g, h)
            tr.see(ct(J, y), ct(J, y, (c, u)))
            counts["cz_parameter_free"] += 1
        tr.count += 1
    tr.extra.update(counts)
    return tr.result()


def _regular_at(rng, tp: ThreePoints, y) -> RationalFunction:
    others = [pt for pt in (tp.alpha, tp.beta) if pt != y]
    k = rng.randint(1, 3)
    if y is INF:
        return RationalFunction.from_roots(rng.choice([1, 2, -3]), {others[0]: -k})
    return RationalFunction.from_roots(rng.choice([1, 2, -3]), {others[0]: rng.randint(0, 2)}) + \
        RationalFunction.z() ** k


# -- regulator ----------------------------------------------------------------------

def check_regulator(n=10, seed=0, prime=7, precision=20, truncation=64) -> CheckResult:
    """Closed fixtures: thm2 = thm3 = 0; tilde-closed fixtures: thm4a = thm4b = thm3 = 0."""
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("regulator cross-engine", precision - 6, precision)
    min_terms = {}
    ok = True
    for kind, make, fns in (("closed", closed_fixture, (regmap_thm2, regmap_thm3)),
                            ("tilde", tilde_fixture, (regmap_thm4a, regmap_thm4b, regmap_thm3))):
        for _ in range(n):
            tp, alpha, omega = make(rng, prime)
            ok &= check_ocond(alpha) if kind == "closed" else check_ocond_tilde(alpha)
            for fn in fns:
                rep = fn(alpha, omega, tp.U, K, truncation=truncation, report=True)
                tr.see(rep.value)
                key = f"{kind}_{fn.__name__}_min_nonzero_terms"
                min_terms[key] = min(min_terms.get(key, 10**9), rep.nonzero_local_terms())
            tr.count += 1
    tr.extra.update(min_terms)
    return tr.result(ok and all(v >= 10 for v in min_terms.values()))


def check_conditions(seed=0, prime=7, precision=20, n=10) -> CheckResult:
    K = PadicField(prime, precision)
    rng = random.Random(seed)
    tr = _Tracker("condition checkers", 0, precision)
    ok = True
    z = RationalFunction.z()
    for _ in range(n):
        tp = three_points(rng, prime)
        for g in tp.anharmonic().values():
            ok &= check_ocond(SymbolElement([(1, g, g)]))
            ok &= not check_ocond(SymbolElement([(1, g, z - 3)]))
            ok &= check_ocond_tilde(SymbolElement([(1, g, 1 - g)]))
            for rec in check_ccond_numeric(SymbolElement([(1, g, g)]), K):
                ok &= rec["status"] == "necessary condition passed" and rec["lmod2_sum"].is_zero()
        tr.count += 1
    return tr.result(ok)


SUITES = {
    "index": [check_triple_axioms, check_recipe_vs_simple_pole],
    "polylog": [check_polylog_identities, lambda **kw: check_polylog_identities(branch=3, **kw),
                check_constant_terms],
    "global": [check_reciprocity, check_stokes],
    "regulator": [check_regulator, check_conditions],
}

_SMALL = {"check_triple_axioms": 20, "check_recipe_vs_simple_pole": 20, "check_polylog_identities": 10,
          "check_constant_terms": 4, "check_reciprocity": 5, "check_stokes": 3, "check_regulator": 2,
          "check_conditions": 2}


def run_suite(name: str, seed: int = 0, prime: int = 7, precision: int = 20, full: bool = False) -> list:
    """Run a named suite at self-test size (or at acceptance size when ``full``)."""
    out = []
    for fn in SUITES[name]:
        kwargs = {"seed": seed, "prime": prime, "precision": precision}
        base = getattr(fn, "__name__", "")
        if base == "<lambda>":
            base = "check_polylog_identities"
        if not full:
            kwargs["n"] = _SMALL[base]
        out.append(fn(**kwargs))
    return out
