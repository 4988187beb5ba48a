"""Pure-Python rational backend: stdlib Fraction.

Kept as a one-liner on purpose; Fraction already is the reference
implementation of exact rational arithmetic, so the fallback carries no
duplicated math.
"""

from fractions import Fraction as Q

__all__ = ["Q"]
