"""Reference values computed once with exact rational arithmetic and frozen here.

Each constant is the residue modulo 7**20 of a truncated series whose tail
has valuation at least 20; the generating expression is kept next to it.
"""
from fractions import Fraction
from math import factorial

P, N = 7, 20
MOD = P**N

# sum_{k<20} 7^k, i.e. 1/(1 - 7)
GEOMETRIC = 13298711049602000
# sum_{k>=1} (-1)^(k+1) 7^k / k
LOG_8 = 15219497126128666
# sum_{k>=0} 7^k / k!
EXP_7 = 20586210475743186
# y -> y^7 iterated 20 times from 3
TEICHMULLER_3 = 22143577275619761
# sum_{n>=1} 7^n / n^2
LI2_7 = 48833362942606445
# -sum_{k>=1} 7^k / k
LOG_MINUS_6 = 60619612826360973


def residue(x: Fraction) -> int:
    return x.numerator * pow(x.denominator, -1, MOD) % MOD


def recompute():
    """The generating sums; the test-suite checks them against the frozen constants."""
    y = 3
    for _ in range(N):
        y = pow(y, P, MOD)
    return {
        "GEOMETRIC": sum(P**k for k in range(N)) % MOD,
        "LOG_8": residue(sum(Fraction((-1) ** (k + 1) * P**k, k) for k in range(1, 60))),
        "EXP_7": residue(sum(Fraction(P**k, factorial(k)) for k in range(60))),
        "TEICHMULLER_3": y,
        "LI2_7": residue(sum(Fraction(P**n, n * n) for n in range(1, 80))),
        "LOG_MINUS_6": residue(-sum(Fraction(P**k, k) for k in range(1, 60))),
    }
