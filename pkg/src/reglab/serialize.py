"""JSON encodings for p-adic numbers, series, triple data, rational functions,
Coleman expressions, wide opens and symbol elements.

Every encoder produces plain dicts/lists with deterministic ordering so that
``json.dumps(..., sort_keys=True)`` is byte-stable.
"""
from __future__ import annotations

from fractions import Fraction

from .index import TripleData
from .p1geom import Divisor, WideOpen
from .padic import PadicField, PadicNumber
from .polylog import ColemanExpression, Term
from .ratfunc import INF, RationalFunction, as_point
from .regulator import ExactForm, SymbolElement
from .series import EXACT, LaurentSeries, LogLaurent

__all__ = [
    "ParseError",
    "padic_to_json",
    "padic_from_json",
    "rational_to_json",
    "point_to_json",
    "point_from_json",
    "ratfunc_to_json",
    "ratfunc_from_json",
    "series_to_json",
    "series_from_json",
    "triple_data_to_json",
    "triple_data_from_json",
    "expression_to_json",
    "expression_from_json",
    "divisor_to_json",
    "wide_open_to_json",
    "wide_open_from_json",
    "element_to_json",
    "element_from_json",
    "omega_from_json",
]


class ParseError(ValueError):
    """An input document does not match the expected shape."""


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


# -- numbers and points -------------------------------------------------------

def padic_to_json(x: PadicNumber) -> dict:
    """{"val", "digits", "prec"}; zero has no digits and val = prec."""
    if x.is_zero():
        return {"val": x.prec, "digits": [], "prec": x.prec}
    return {"val": x.val, "digits": x.digits(), "prec": x.prec}


def padic_from_json(field: PadicField, obj) -> PadicNumber:
    """A p-adic literal, an integer, or a rational string such as "3/7"."""
    if isinstance(obj, PadicNumber):
        return obj.with_field(field)
    if isinstance(obj, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(obj, int):
        return field(obj)
    if isinstance(obj, str):
        try:
            return field(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {obj!r}") from exc
    if isinstance(obj, dict):
        try:
            val, digits, prec = int(obj["val"]), [int(d) for d in obj["digits"]], int(obj["prec"])
            return field.from_digits(val, digits, min(prec, field.prec))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad p-adic literal: {exc}") from exc
    raise ParseError(f"cannot read a number from {obj!r}")


def rational_to_json(x) -> str:
    return str(Fraction(x))


def point_to_json(pt):
    return "inf" if pt is INF else rational_to_json(pt)


def point_from_json(obj):
    try:
        return as_point(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {obj!r}") from exc


# -- rational functions ---------------------------------------------------------

def ratfunc_to_json(f: RationalFunction) -> dict:
    """Factored form {"lead": q, "factors": [[root, mult], ...]}; poles have negative mult.

    Non-split numerators fall back to {"num": [coefficients, low degree first], "poles": ...}.
    """
    if not isinstance(f, RationalFunction):
        f = RationalFunction.constant(f)
    if f.is_split():
        lead, zeros, poles = f.factored()
        factors = [[rational_to_json(a), m] for a, m in zeros] + [[rational_to_json(a), -m] for a, m in poles]
        factors.sort(key=lambda e: Fraction(e[0]))
        return {"lead": rational_to_json(lead), "factors": factors}
    return {"num": [rational_to_json(c) for c in f.num],
            "poles": [[rational_to_json(a), m] for a, m in f.poles]}


def ratfunc_from_json(obj) -> RationalFunction:
    """A factored record, a {"num", "poles"} record, a number, or an expression string in z."""
    if isinstance(obj, RationalFunction):
        return obj
    if isinstance(obj, bool):
        raise ParseError("booleans are not rational functions")
    if isinstance(obj, int):
        return RationalFunction.constant(obj)
    try:
        if isinstance(obj, str):
            return RationalFunction.parse(obj)
        if isinstance(obj, dict) and "factors" in obj:
            factors = [(Fraction(a), int(m)) for a, m in obj["factors"]]
            return RationalFunction.from_roots(Fraction(obj.get("lead", 1)), factors)
        if isinstance(obj, dict) and "num" in obj:
            return RationalFunction(tuple(Fraction(c) for c in obj["num"]),
                                    [(Fraction(a), int(m)) for a, m in obj.get("poles", [])])
    except ParseError:
        raise
    except Exception as exc:  # sympy raises a zoo of exception types on bad input
        raise ParseError(f"bad rational function {obj!r}: {exc}") from exc
    raise ParseError(f"cannot read a rational function from {obj!r}")


# -- series ---------------------------------------------------------------------

def _component_to_json(s: LaurentSeries):
    return [[n, padic_to_json(c)] for n, c in s.coefficients()]


def series_to_json(F) -> dict:
    """{"logdeg", "components": [[[exponent, literal], ...] per log power], "window": [lo, sup]}.

    An exact series has sup null.
    """
    if isinstance(F, LaurentSeries):
        F = LogLaurent.from_series(F)
    lo, sup = F.window()
    return {
        "logdeg": F.degree,
        "components": [_component_to_json(F.component(i)) for i in range(F.degree + 1)],
        "window": [lo, None if sup >= EXACT else sup],
    }


def series_from_json(field: PadicField, obj) -> LogLaurent:
    comps = _need(obj, "components", "series")
    window = obj.get("window", [None, None])
    sup = window[1] if window and len(window) > 1 else None
    out = []
    for comp in comps:
        coeffs = {}
        for entry in comp:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError("series: each coefficient is [exponent, number]")
            coeffs[int(entry[0])] = padic_from_json(field, entry[1])
        lo = min(coeffs, default=0)
        hi = max(coeffs, default=0) + 1
        dense = [coeffs.get(n, field.zero()) for n in range(lo, hi)]
        out.append(LaurentSeries.from_coeffs(field, dense, lo=lo, sup=None if sup is None else int(sup)))
    if not out:
        out = [LaurentSeries.zero(field)]
    return LogLaurent(out)


def triple_data_to_json(data: TripleData) -> dict:
    names = ("F", "G", "H", "I_GdH", "I_FdH", "I_FdG")
    out = {k: series_to_json(getattr(data, k)) for k in names}
    out["partners"] = {k: series_to_json(getattr(data, k)) for k in ("I_HdG", "I_HdF", "I_GdF")}
    return out


def triple_data_from_json(field: PadicField, obj):
    """(F, G, H, overrides) where overrides maps integral names to series (possibly empty)."""
    F, G, H = (series_from_json(field, _need(obj, k, "triple data")) for k in ("F", "G", "H"))
    overrides = {k: series_from_json(field, obj[k]) for k in ("I_GdH", "I_FdH", "I_FdG") if k in obj}
    return F, G, H, overrides


# -- Coleman expressions ------------------------------------------------------

def expression_to_json(E: ColemanExpression) -> list:
    out = []
    for t in E.terms:
        rec = {"coeff": padic_to_json(t.coeff), "rat": ratfunc_to_json(t.rat),
               "logs": [rational_to_json(a) for a in t.logs]}
        if t.ltwo is not None:
            rec["ltwo"] = ratfunc_to_json(t.ltwo)
        out.append(rec)
    return out


def expression_from_json(field: PadicField, obj) -> ColemanExpression:
    """A term list, {"log": f} for log f, {"rational": f}, or a bare rational function (meaning log f)."""
    if isinstance(obj, dict) and "log" in obj:
        return ColemanExpression.log_of(field, ratfunc_from_json(obj["log"]))
    if isinstance(obj, dict) and "rational" in obj:
        return ColemanExpression.rational(field, ratfunc_from_json(obj["rational"]))
    if isinstance(obj, list):
        terms = []
        for rec in obj:
            coeff = padic_from_json(field, rec.get("coeff", 1))
            rat = ratfunc_from_json(rec.get("rat", 1))
            logs = tuple(Fraction(a) for a in rec.get("logs", []))
            ltwo = ratfunc_from_json(rec["ltwo"]) if rec.get("ltwo") is not None else None
            if ltwo is not None:
                terms.extend((ColemanExpression.ltwo_of(field, ltwo) * rat).scale(coeff).terms)
                if logs:
                    raise ParseError("expression: L2 terms cannot carry log factors")
                continue
            terms.append(Term(coeff, rat, logs))
        return ColemanExpression(field, terms)
    return ColemanExpression.log_of(field, ratfunc_from_json(obj))


# -- geometry -------------------------------------------------------------------

def divisor_to_json(D: Divisor) -> list:
    return [[point_to_json(pt), m] for pt, m in D.sorted_items()]


def wide_open_to_json(U: WideOpen) -> dict:
    return {"p": U.p, "points": [point_to_json(pt) for pt in U.points]}


def wide_open_from_json(p: int, obj) -> WideOpen:
    """{"points": [...]} or a bare list of points; inf is always removed."""
    pts = obj.get("points", []) if isinstance(obj, dict) else obj
    if not isinstance(pts, list):
        raise ParseError("wide open: points must be a list")
    return WideOpen(int(obj.get("p", p)) if isinstance(obj, dict) else p,
                    tuple(point_from_json(x) for x in pts))


# -- symbol elements and forms --------------------------------------------------

def element_to_json(alpha: SymbolElement) -> list:
    return [{"c": rational_to_json(c), "g": ratfunc_to_json(g), "f": ratfunc_to_json(f)}
            for c, g, f in alpha.terms]


def element_from_json(obj) -> SymbolElement:
    if isinstance(obj, dict) and "terms" in obj:
        obj = obj["terms"]
    if not isinstance(obj, list):
        raise ParseError("element: expected a list of {c, g, f} records")
    terms = []
    for rec in obj:
        try:
            c = Fraction(str(rec.get("c", 1)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"element: bad coefficient {rec.get('c')!r}") from exc
        terms.append((c, ratfunc_from_json(_need(rec, "g", "element")), ratfunc_from_json(_need(rec, "f", "element"))))
    try:
        return SymbolElement(terms)
    except ValueError as exc:
        raise ParseError(f"element: {exc}") from exc


def omega_from_json(obj) -> ExactForm:
    """{"exact": h} for dh, or {"form": r} for r dz (must have zero residues)."""
    if isinstance(obj, dict) and "exact" in obj:
        return ExactForm(ratfunc_from_json(obj["exact"]))
    if isinstance(obj, dict) and "form" in obj:
        r = ratfunc_from_json(obj["form"])
        return ExactForm.from_form(r)
    if obj == 0 or (isinstance(obj, dict) and obj.get("zero")):
        return ExactForm(RationalFunction.constant(1))
    raise ParseError("omega: expected {\"exact\": h} or {\"form\": r}")
