"""Double and triple indices on A'_log = K((z)) + K*log z.

The double index is the antisymmetric bilinear extension of ``res F dG``.
The triple index takes three elements of A'_log and a choice of
antiderivatives of the mixed products; it is computed by expanding each slot
into its log part and its meromorphic part, reducing every piece with a
meromorphic slot to a double index, and correcting for the chosen constants
of integration.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

from .padic import PadicNumber
from .series import (
    LaurentSeries,
    LogForm,
    LogLaurent,
    constant_term,
    differential,
    in_alog_prime,
    integrate_form,
)

__all__ = [
    "NotAPrime",
    "InvalidIntegral",
    "NotSimplePole",
    "split",
    "double_index",
    "TripleData",
    "make_triple_data",
    "triple_index",
    "triple_index_simple_pole",
    "pint",
]


class NotAPrime(ValueError):
    """An input is not of the form alpha*log z + meromorphic."""


class InvalidIntegral(ValueError):
    """A supplied auxiliary integral is not an antiderivative of the stated form."""


class NotSimplePole(ValueError):
    """A differential has a pole of order two or more."""


def _as_log_laurent(F) -> LogLaurent:
    if isinstance(F, LaurentSeries):
        return LogLaurent.from_series(F)
    return F


def split(F) -> tuple[PadicNumber, LaurentSeries]:
    """Return ``(alpha, f)`` with ``F = alpha*log z + f``."""
    F = _as_log_laurent(F)
    ok, alpha = in_alog_prime(F)
    if not ok:
        raise NotAPrime("not in A-prime: expected alpha*log z + meromorphic")
    return alpha, F.component(0)


def pint(omega) -> LogLaurent:
    """The antiderivative with constant term 0."""
    return integrate_form(omega if isinstance(omega, LogForm) else LogForm(omega))


def _res_f_dg(f: LaurentSeries, g: LaurentSeries) -> PadicNumber:
    return (f * g.derivative()).coeff(-1)


def double_index(F, G) -> PadicNumber:
    """<F, G> = res f dg + beta*c(f) - alpha*c(g) for F = alpha L + f, G = beta L + g."""
    alpha, f = split(F)
    beta, g = split(G)
    return _res_f_dg(f, g) + beta * f.coeff(0) - alpha * g.coeff(0)


def _product(R: LogLaurent, S: LogLaurent) -> LogLaurent:
    return _as_log_laurent(R) * _as_log_laurent(S)


def _form(R, S) -> LogForm:
    """R dS."""
    return differential(_as_log_laurent(S)) * _as_log_laurent(R)


def _offset_constant(I: LogLaurent, canonical: LogLaurent, name: str) -> PadicNumber:
    """The constant C with I = canonical + C; rejects a nonconstant offset."""
    diff = _as_log_laurent(I) - canonical
    for i, comp in enumerate(diff.components):
        for n, c in comp.coefficients():
            if (i > 0 or n != 0) and not c.is_zero():
                raise InvalidIntegral(f"invalid auxiliary integral {name}: differs from an antiderivative "
                                      f"by a nonconstant term at z^{n} log^{i}")
    return constant_term(diff)


@dataclass(frozen=True)
class TripleData:
    """Three elements of A'_log with chosen integrals of the mixed products.

    Only ``I_GdH``, ``I_FdH`` and ``I_FdG`` are stored; the partners follow
    from ``I_RdS + I_SdR = R*S``.
    """

    F: LogLaurent
    G: LogLaurent
    H: LogLaurent
    I_GdH: LogLaurent
    I_FdH: LogLaurent
    I_FdG: LogLaurent

    @property
    def I_HdG(self) -> LogLaurent:
        return _product(self.G, self.H) - self.I_GdH

    @property
    def I_HdF(self) -> LogLaurent:
        return _product(self.F, self.H) - self.I_FdH

    @property
    def I_GdF(self) -> LogLaurent:
        return _product(self.F, self.G) - self.I_FdG

    def integral(self, r: str, s: str) -> LogLaurent:
        """The chosen integral of ``r d s`` for slot names r, s in "FGH"."""
        return getattr(self, f"I_{r}d{s}")

    def permute(self, order: str) -> "TripleData":
        """The same functions in slot order ``order`` (e.g. "FHG") with consistent integrals."""
        a, b, c = order
        X = {"F": self.F, "G": self.G, "H": self.H}
        return TripleData(X[a], X[b], X[c], self.integral(b, c), self.integral(a, c),
                          self.integral(a, b))

    def shift_constants(self, c_gh=0, c_fh=0, c_fg=0) -> "TripleData":
        """Same data with constants added to the three stored integrals."""
        return TripleData(self.F, self.G, self.H, self.I_GdH + c_gh, self.I_FdH + c_fh,
                          self.I_FdG + c_fg)


def make_triple_data(F, G, H, I_GdH=None, I_FdH=None, I_FdG=None) -> TripleData:
    """Triple data with pint integrals unless overridden.

    An override must differ from the canonical antiderivative by a constant.
    """
    F, G, H = (_as_log_laurent(X) for X in (F, G, H))
    for X in (F, G, H):
        split(X)
    integrals = []
    for given, (R, S), name in ((I_GdH, (G, H), "I_GdH"), (I_FdH, (F, H), "I_FdH"),
                                (I_FdG, (F, G), "I_FdG")):
        canonical = pint(_form(R, S))
        if given is None:
            integrals.append(canonical)
        else:
            _offset_constant(given, canonical, name)
            integrals.append(_as_log_laurent(given))
    return TripleData(F, G, H, *integrals)


def _piece(kind, field, alpha, f):
    if kind == "log":
        return None if alpha.is_zero() else LogLaurent.log_z(field, alpha)
    return LogLaurent.from_series(f)


class _IdentityCache:
    """Bounded LRU keyed on object identity; entries keep their keys alive so ids stay unique."""

    def __init__(self, size=512):
        self.size = size
        self.data = OrderedDict()

    def get(self, objs, tag, compute):
        key = tuple(id(o) for o in objs) + (tag,)
        hit = self.data.get(key)
        if hit is not None and all(a is b for a, b in zip(hit[0], objs)):
            self.data.move_to_end(key)
            return hit[1]
        value = compute()
        self.data[key] = (objs, value)
        if len(self.data) > self.size:
            self.data.popitem(last=False)
        return value


# series are immutable, so pieces and their integrals can be shared between calls
_cache = _IdentityCache()


def _pieces_of(X):
    def compute():
        a, f = split(X)
        return {k: _piece(k, X.field, a, f) for k in ("log", "mer")}
    return _cache.get((X,), "pieces", compute)


class _Pieces:
    """Log and meromorphic parts of F, G, H with cached pint of r dw for pieces r, w."""

    def __init__(self, F, G, H):
        self.series = {"F": F, "G": G, "H": H}
        self.parts = {name: _pieces_of(X) for name, X in self.series.items()}

    def get(self, name, kind):
        return self.parts[name][kind]

    def pint(self, r, rk, w, wk) -> LogLaurent:
        return _cache.get((self.series[r], self.series[w]), ("pint", rk, wk),
                          lambda: pint(_form(self.get(r, rk), self.get(w, wk))))

    def full_pint(self, r, w) -> LogLaurent:
        """pint(R dW) as the sum over pieces (pint is linear)."""
        total = None
        for rk in ("log", "mer"):
            for wk in ("log", "mer"):
                if self.get(r, rk) is None or self.get(w, wk) is None:
                    continue
                term = self.pint(r, rk, w, wk)
                total = term if total is None else total + term
        return total


def _recipe_term(P: _Pieces, kinds) -> PadicNumber:
    """Canonical triple index of one trilinear piece."""
    kx, ky, kw = kinds
    x, y, w = P.get("F", kx), P.get("G", ky), P.get("H", kw)
    if kx == ky == kw == "log":
        return x.field.zero()
    if ky == "mer":
        return double_index(x, P.pint("G", ky, "H", kw))
    if kx == "mer":
        return double_index(y, P.pint("F", kx, "H", kw))
    # x, y logarithmic and w meromorphic: the triple identity moves w to the middle slot,
    # where the integral is the partner of the canonical one
    I_wdy = _product(w, y) - P.pint("G", ky, "H", kw)
    I_wdx = _product(w, x) - P.pint("F", kx, "H", kw)
    return -double_index(x, I_wdy) - double_index(y, I_wdx)


def _canonical_value(P: _Pieces) -> PadicNumber:
    total = None
    for kx in ("log", "mer"):
        for ky in ("log", "mer"):
            for kw in ("log", "mer"):
                if P.get("F", kx) is None or P.get("G", ky) is None or P.get("H", kw) is None:
                    continue
                v = _recipe_term(P, (kx, ky, kw))
                total = v if total is None else total + v
    return total


def triple_index(data: TripleData) -> PadicNumber:
    """<F, G; H> for the auxiliary data carried by ``data``.

    The value with pint data is corrected by the constant offsets of the
    chosen integrals: ``- C_GdH * res dF - C_FdH * res dG``.  The choice of
    ``I_FdG`` does not enter.
    """
    F, G, H = data.F, data.G, data.H
    P = _Pieces(F, G, H)
    value = _canonical_value(P)
    alpha, _ = split(F)
    beta, _ = split(G)
    c_gh = _offset_constant(data.I_GdH, P.full_pint("G", "H"), "I_GdH")
    c_fh = _offset_constant(data.I_FdH, P.full_pint("F", "H"), "I_FdH")
    # res dF of alpha*log z + f is alpha
    return value - c_gh * alpha - c_fh * beta


def _check_simple_pole(X, name):
    dX = differential(X).coefficient.component(0)
    for n, c in dX.coefficients():
        if n <= -2 and not c.is_zero():
            raise NotSimplePole(f"not simple-pole: d{name} has a pole of order {-n}")


def triple_index_simple_pole(F, G, H, I_FdH, I_GdH) -> PadicNumber:
    """c(F) c(G) res dH - res dF c(I_GdH) - res dG c(I_FdH), for at most simple poles."""
    F, G, H = (_as_log_laurent(X) for X in (F, G, H))
    for X, name in ((F, "F"), (G, "G"), (H, "H")):
        split(X)
        _check_simple_pole(X, name)
    res_dF = split(F)[0]
    res_dG = split(G)[0]
    res_dH = split(H)[0]
    return (constant_term(F) * constant_term(G) * res_dH
            - res_dF * constant_term(_as_log_laurent(I_GdH))
            - res_dG * constant_term(_as_log_laurent(I_FdH)))
