"""Exact rational exponents and sign-correct real powers.

Exponents are carried as reduced integer pairs end to end; only the final
power is evaluated in floating point, so the parity of numerator and
denominator (which decides which real root exists) is never corrupted by
rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import DomainError, ZeroDenominator

__all__ = [
    "ExponentClass",
    "RationalExponent",
    "classify_exponent",
    "parse_exponent",
    "signed_pow",
]


class ExponentClass(Enum):
    EVEN_OVER_ODD = "even/odd"
    ODD_OVER_EVEN = "odd/even"
    ODD_OVER_ODD = "odd/odd"
    ONE = "one"


@dataclass(frozen=True)
class RationalExponent:
    """A reduced rational p/q with q > 0 and its parity class."""

    p: int
    q: int
    cls: ExponentClass

    @property
    def value(self) -> float:
        return self.p / self.q

    def negated(self) -> "RationalExponent":
        return classify_exponent(-self.p, self.q)

    def __str__(self) -> str:
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


def classify_exponent(p: int, q: int) -> RationalExponent:
    """Reduce p/q, canonicalize q > 0, and classify by parity.

    n = 0 reduces to 0/1 and lands in the even/odd class, so linear problems
    flow through the same formula selection as any other even-numerator
    exponent.
    """
    if q == 0:
        raise ZeroDenominator("exponent denominator must be nonzero")
    frac = Fraction(p, q)
    rp, rq = frac.numerator, frac.denominator
    if rp == 1 and rq == 1:
        cls = ExponentClass.ONE
    elif rp % 2 == 0:
        cls = ExponentClass.EVEN_OVER_ODD
    elif rq % 2 == 0:
        cls = ExponentClass.ODD_OVER_EVEN
    else:
        cls = ExponentClass.ODD_OVER_ODD
    return RationalExponent(rp, rq, cls)


def parse_exponent(text: Union[str, int, float]) -> RationalExponent:
    """Parse "p/q" or integer text (ValueError on anything else)."""
    if isinstance(text, RationalExponent):
        return text
    if isinstance(text, int):
        return classify_exponent(text, 1)
    if isinstance(text, float):
        if not text.is_integer():
            raise ValueError(f"non-integer exponent {text!r}; use the p/q form")
        return classify_exponent(int(text), 1)
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return classify_exponent(int(num.strip()), int(den.strip()))
    return classify_exponent(int(s), 1)


def signed_pow(x: float, r: RationalExponent) -> float:
    """x**(p/q) with odd-root semantics: sign(x)**p * |x|**(p/q) for odd q.

    For even q the base must be non-negative.  Exact for x in {0, -1, 1}.
    Raises DomainError for an even root of a negative base, and for
    0 raised to a negative exponent.
    """
    p, q = r.p, r.q
    if x == 0.0:
        if p < 0:
            raise DomainError("zero base with negative exponent")
        return 1.0 if p == 0 else 0.0
    if q % 2 == 0:
        if x < 0.0:
            raise DomainError(f"even root ({p}/{q}) of negative base {x!r}")
        return math.pow(x, p / q)
    mag = math.pow(abs(x), p / q)
    return -mag if (x < 0.0 and p % 2 != 0) else mag
