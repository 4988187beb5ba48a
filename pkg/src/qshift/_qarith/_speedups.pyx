# cython: language_level=3
"""Compiled rational kernel.

Drop-in for the subset of fractions.Fraction behaviour the package uses:
exact normalized p/q over arbitrary-precision ints, mixed arithmetic and
comparison with int, integer powers, and the "p/q" string form.  Hash
agrees with int for integral values so rationals and ints can share sets.
"""

from math import gcd


cdef inline Q q_make(object n, object d):
    # assumes d > 0 and gcd(n, d) == 1
    cdef Q r = Q.__new__(Q)
    r._n = n
    r._d = d
    return r


cdef inline Q q_norm(object n, object d):
    if d == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return q_make(n, d)


cdef class Q:
    cdef readonly object _n
    cdef readonly object _d

    def __init__(self, n=0, d=None):
        if d is None:
            if isinstance(n, Q):
                self._n = (<Q> n)._n
                self._d = (<Q> n)._d
                return
            if isinstance(n, int):
                self._n = n
                self._d = 1
                return
            raise TypeError(f"cannot build rational from {type(n).__name__}")
        if not (isinstance(n, int) and isinstance(d, int)):
            raise TypeError("rational components must be int")
        cdef Q r = q_norm(n, d)
        self._n = r._n
        self._d = r._d

    @property
    def numerator(self):
        return self._n

    @property
    def denominator(self):
        return self._d

    def __add__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return q_norm(a._n * b._d + b._n * a._d, a._d * b._d)
        if isinstance(other, int):
            return q_make(a._n + other * a._d, a._d)
        return NotImplemented

    def __radd__(self, other):
        cdef Q a = <Q> self
        if isinstance(other, int):
            return q_make(a._n + other * a._d, a._d)
        return NotImplemented

    def __sub__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return q_norm(a._n * b._d - b._n * a._d, a._d * b._d)
        if isinstance(other, int):
            return q_make(a._n - other * a._d, a._d)
        return NotImplemented

    def __rsub__(self, other):
        cdef Q a = <Q> self
        if isinstance(other, int):
            return q_make(other * a._d - a._n, a._d)
        return NotImplemented

    def __mul__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            g1 = gcd(a._n, b._d)
            g2 = gcd(b._n, a._d)
            return q_make((a._n // g1) * (b._n // g2),
                          (a._d // g2) * (b._d // g1))
        if isinstance(other, int):
            g = gcd(other, a._d)
            return q_make(a._n * (other // g), a._d // g)
        return NotImplemented

    def __rmul__(self, other):
        cdef Q a = <Q> self
        if isinstance(other, int):
            g = gcd(other, a._d)
            return q_make(a._n * (other // g), a._d // g)
        return NotImplemented

    def __truediv__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return q_norm(a._n * b._d, a._d * b._n)
        if isinstance(other, int):
            return q_norm(a._n, a._d * other)
        return NotImplemented

    def __rtruediv__(self, other):
        cdef Q a = <Q> self
        if isinstance(other, int):
            return q_norm(other * a._d, a._n)
        return NotImplemented

    def __pow__(self, exp, mod):
        cdef Q a = <Q> self
        if mod is not None or not isinstance(exp, int):
            return NotImplemented
        if exp >= 0:
            return q_make(a._n ** exp, a._d ** exp)
        if a._n == 0:
            raise ZeroDivisionError("0 cannot be raised to a negative power")
        num = a._d ** (-exp)
        den = a._n ** (-exp)
        if den < 0:
            num = -num
            den = -den
        return q_make(num, den)

    def __neg__(self):
        return q_make(-self._n, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        if self._n < 0:
            return q_make(-self._n, self._d)
        return self

    def __bool__(self):
        return self._n != 0

    def __float__(self):
        return self._n / self._d

    def __hash__(self):
        if self._d == 1:
            return hash(self._n)
        return hash((self._n, self._d))

    def __eq__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return a._n == b._n and a._d == b._d
        if isinstance(other, int):
            return a._d == 1 and a._n == other
        return NotImplemented

    def __lt__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return a._n * b._d < b._n * a._d
        if isinstance(other, int):
            return a._n < other * a._d
        return NotImplemented

    def __le__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return a._n * b._d <= b._n * a._d
        if isinstance(other, int):
            return a._n <= other * a._d
        return NotImplemented

    def __gt__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return a._n * b._d > b._n * a._d
        if isinstance(other, int):
            return a._n > other * a._d
        return NotImplemented

    def __ge__(self, other):
        cdef Q a = <Q> self
        cdef Q b
        if isinstance(other, Q):
            b = <Q> other
            return a._n * b._d >= b._n * a._d
        if isinstance(other, int):
            return a._n >= other * a._d
        return NotImplemented

    def __str__(self):
        if self._d == 1:
            return str(self._n)
        return f"{self._n}/{self._d}"

    def __repr__(self):
        return f"Q({self._n}, {self._d})"

    def __reduce__(self):
        return (Q, (self._n, self._d))
