"""p-adic triple indices, Coleman dilogarithms and regulator formulas on P^1 minus discs."""
from .index import (
    InvalidIntegral,
    NotAPrime,
    NotSimplePole,
    TripleData,
    double_index,
    make_triple_data,
    triple_index,
    triple_index_simple_pole,
)
from .p1geom import Divisor, End, WideOpen, divisor_of, global_triple_index, wide_open_ends
from .padic import PadicField, PadicNumber, PrecisionError, padic_exp, padic_log, teichmuller
from .polylog import ColemanExpression, Unreachable, li2, lmod2, ltwo
from .ratfunc import INF, NotSplit, RationalFunction
from .regulator import (
    ConditionCheckError,
    ExactForm,
    NotExact,
    SymbolElement,
    check_ccond_numeric,
    check_ocond,
    check_ocond_tilde,
    check_special_units,
    regmap_thm1,
    regmap_thm2,
    regmap_thm3,
    regmap_thm4a,
    regmap_thm4b,
)
from .series import LaurentSeries, LogLaurent, WindowExhausted

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ColemanExpression",
    "ConditionCheckError",
    "Divisor",
    "End",
    "ExactForm",
    "InvalidIntegral",
    "LaurentSeries",
    "LogLaurent",
    "NotAPrime",
    "NotExact",
    "NotSimplePole",
    "NotSplit",
    "PadicField",
    "PadicNumber",
    "PrecisionError",
    "RationalFunction",
    "SymbolElement",
    "TripleData",
    "Unreachable",
    "WideOpen",
    "WindowExhausted",
    "check_ccond_numeric",
    "check_ocond",
    "check_ocond_tilde",
    "check_special_units",
    "divisor_of",
    "double_index",
    "global_triple_index",
    "li2",
    "lmod2",
    "ltwo",
    "make_triple_data",
    "padic_exp",
    "padic_log",
    "regmap_thm1",
    "regmap_thm2",
    "regmap_thm3",
    "regmap_thm4a",
    "regmap_thm4b",
    "teichmuller",
    "triple_index",
    "triple_index_simple_pole",
    "wide_open_ends",
]
