"""Exact rationals, open intervals over them, and simplest-fraction search.

The rational type ``Q`` comes from the kernel backend (compiled or pure);
everything here works purely through arithmetic and comparisons, so it is
backend-agnostic.
"""

from __future__ import annotations

import re
from typing import Optional, Union

from ._qarith import BACKEND, Q

RatLike = Union["Q", int, str]

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rat(value: RatLike) -> Q:
    """Coerce an int, a 'p/q' string, or a Q into a Q."""
    if isinstance(value, Q):
        return value
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def parse_rational(text: str) -> Q:
    """Parse the canonical 'p/q' form (bare 'p' for integers)."""
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Q(num, den)


def rat_str(q: Q) -> str:
    """Canonical text form: 'p/q', with '/q' omitted for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def floor_rat(q: Q) -> int:
    return q.numerator // q.denominator


def ceil_rat(q: Q) -> int:
    return -((-q.numerator) // q.denominator)


def _simplest_nonneg(lo: Q, inc_lo: bool, hi: Optional[Q], inc_hi: bool) -> Q:
    """Simplest rational in an interval with 0 <= lo < hi (hi=None: +inf).

    Continued-fraction descent: take the smallest admissible integer if
    one exists, otherwise recurse on the reciprocal of the fractional
    parts.  Minimizes the denominator, then the numerator.
    """
    fl = floor_rat(lo)
    if lo == fl and inc_lo:
        first_int = fl
    else:
        first_int = fl + 1
    if hi is None or first_int < hi or (first_int == hi and inc_hi):
        return Q(first_int)
    # interval lies strictly inside (fl, fl + 1); write x = fl + 1/y
    y_lo = 1 / (hi - fl)
    if lo == fl:
        y_hi: Optional[Q] = None
    else:
        y_hi = 1 / (lo - fl)
    y = _simplest_nonneg(y_lo, inc_hi, y_hi, inc_lo)
    return fl + 1 / y


def simplest_between(lo: Q, hi: Q, include_lo: bool = False,
                     include_hi: bool = False) -> Q:
    """Rational with smallest denominator in the given interval.

    Endpoint inclusion is controlled by the flags; the interval must be
    nonempty.  Deterministic, and cheap: runs along the continued
    fraction of the endpoints.
    """
    if lo > hi or (lo == hi and not (include_lo and include_hi)):
        raise ValueError(f"empty interval ({rat_str(lo)}, {rat_str(hi)})")
    if lo == hi:
        return lo
    if (lo < 0 or (lo == 0 and include_lo)) and (hi > 0 or (hi == 0 and include_hi)):
        return Q(0)
    if hi < 0 or (hi == 0 and not include_hi):
        return -_simplest_nonneg(-hi, include_hi, -lo, include_lo)
    return _simplest_nonneg(lo, include_lo, hi, include_hi)


class Interval:
    """Open interval of rationals; either endpoint may be infinite (None)."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower: Optional[RatLike], upper: Optional[RatLike]):
        lo = rat(lower) if lower is not None else None
        hi = rat(upper) if upper is not None else None
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError(f"empty interval ({rat_str(lo)}, {rat_str(hi)})")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __eq__(self, other):
        return (isinstance(other, Interval)
                and self.lower == other.lower and self.upper == other.upper)

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        lo = rat_str(self.lower) if self.lower is not None else "-inf"
        hi = rat_str(self.upper) if self.upper is not None else "+inf"
        return f"Interval({lo}, {hi})"

    @property
    def is_finite(self) -> bool:
        return self.lower is not None and self.upper is not None

    def contains(self, q: Q) -> bool:
        if self.lower is not None and not q > self.lower:
            return False
        if self.upper is not None and not q < self.upper:
            return False
        return True

    def contains_open(self, other: "Interval") -> bool:
        """Whether the open interval ``other`` is a subset of this one."""
        if self.lower is not None:
            if other.lower is None or other.lower < self.lower:
                return False
        if self.upper is not None:
            if other.upper is None or other.upper > self.upper:
                return False
        return True

    def contains_closed(self, a: Q, b: Q) -> bool:
        """Whether the closed interval [a, b] is a subset of this one."""
        if a > b:
            raise ValueError("closed interval endpoints out of order")
        if self.lower is not None and not self.lower < a:
            return False
        if self.upper is not None and not b < self.upper:
            return False
        return True

    def finite_window(self) -> "Interval":
        """A finite open subinterval, equal to self when already finite."""
        if self.is_finite:
            return self
        if self.lower is None and self.upper is None:
            return Interval(0, 1)
        if self.lower is None:
            return Interval(self.upper - 1, self.upper)
        return Interval(self.lower, self.lower + 1)

    @property
    def midpoint(self) -> Q:
        if not self.is_finite:
            raise ValueError("midpoint of an infinite interval")
        return (self.lower + self.upper) / 2

    @property
    def width(self) -> Q:
        if not self.is_finite:
            raise ValueError("width of an infinite interval")
        return self.upper - self.lower


__all__ = [
    "BACKEND", "Q", "Interval", "rat", "parse_rational", "rat_str",
    "floor_rat", "ceil_rat", "simplest_between",
]
