"""Finitely presented nowhere-dense subsets of the rationals.

A set is finitely many isolated points plus finitely many geometric
tails; a tail with limit L, coefficient c and ratio r in (0,1) is the
term set {L + c*r^k : k >= 0}.  Such sets are closed under union and
under images of piecewise-linear maps, membership (also in the closure)
is decidable, and every open interval contains a rational closed
subinterval disjoint from the closure -- which `find_gap` produces
deterministically.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from .plmaps import PLMap
from .rationals import Interval, Q, rat, rat_str, simplest_between


def _min_pow_lt(r: Q, bound: Q, strict: bool = True) -> Optional[int]:
    """Minimal k >= 0 with r**k < bound (<= when strict=False); None if no k."""
    if bound <= 0:
        return None
    one = Q(1)
    if (one < bound) if strict else (one <= bound):
        return 0
    # exponential then binary search on the exponent
    hi = 1
    while not ((r ** hi < bound) if strict else (r ** hi <= bound)):
        hi *= 2
        if hi > 1 << 40:
            raise OverflowError("power search exponent out of range")
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if (r ** mid < bound) if strict else (r ** mid <= bound):
            hi = mid
        else:
            lo = mid
    return hi


def _pow_matching_denominator(base_den: int, target_den: int) -> Optional[int]:
    """d >= 0 with base_den**d == target_den, or None."""
    d = 0
    v = 1
    while v < target_den:
        v *= base_den
        d += 1
    return d if v == target_den else None


def _exact_log(r: Q, t: Q) -> Optional[int]:
    """Integer e (any sign) with r**e == t, for 0 < r < 1 and t > 0."""
    if t == 1:
        return 0
    if t < 1:
        d = _pow_matching_denominator(r.denominator, t.denominator)
        return d if d is not None and d > 0 and r ** d == t else None
    inv = 1 / t
    d = _pow_matching_denominator(r.denominator, inv.denominator)
    return -d if d is not None and d > 0 and r ** d == inv else None


class GeomTail:
    """Geometric term sequence limit + coeff * ratio**k, k >= 0.

    A nonzero head_drop passed to the constructor is folded into the
    coefficient, so stored tails always start at exponent 0.
    """

    __slots__ = ("limit", "coeff", "ratio")

    def __init__(self, limit, coeff, ratio, head_drop: int = 0):
        limit, coeff, ratio = rat(limit), rat(coeff), rat(ratio)
        if coeff == 0:
            raise ValueError("tail coefficient must be nonzero")
        if not (0 < ratio < 1):
            raise ValueError("tail ratio must lie strictly between 0 and 1")
        if head_drop < 0:
            raise ValueError("head drop must be nonnegative")
        if head_drop:
            coeff = coeff * ratio ** head_drop
        object.__setattr__(self, "limit", limit)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "ratio", ratio)

    def __setattr__(self, name, value):
        raise AttributeError("GeomTail is immutable")

    def _key(self):
        return (self.limit, self.coeff, self.ratio)

    def __eq__(self, other):
        return isinstance(other, GeomTail) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"GeomTail({rat_str(self.limit)}, {rat_str(self.coeff)}, "
                f"{rat_str(self.ratio)})")

    def term(self, k: int) -> Q:
        return self.limit + self.coeff * self.ratio ** k

    def contains(self, q: Q) -> bool:
        t = (q - self.limit) / self.coeff
        if t <= 0:
            return False
        # t == ratio**k demands matching prime powers of the reduced forms
        k = _pow_matching_denominator(self.ratio.denominator, t.denominator)
        if k is None:
            return False
        return self.ratio.numerator ** k == t.numerator

    def min_k_term_below(self, x: Q) -> Optional[int]:
        """For coeff > 0: minimal k with term(k) < x (terms decrease)."""
        return _min_pow_lt(self.ratio, (x - self.limit) / self.coeff)

    def min_k_term_above(self, x: Q) -> Optional[int]:
        """For coeff < 0: minimal k with term(k) > x (terms increase)."""
        return _min_pow_lt(self.ratio, (x - self.limit) / self.coeff)

    def nearest_term_below(self, q: Q) -> Optional[Q]:
        """Largest closure point of the tail strictly below q.

        Must not be called with q equal to a limit the terms approach
        from below (there is no largest such point).
        """
        if self.coeff > 0:
            if q <= self.limit:
                return None
            k = self.min_k_term_below(q)
            return self.term(k)
        if q > self.limit:
            return self.limit
        if q == self.limit:
            raise ValueError("no largest tail point below its own limit")
        if q <= self.term(0):
            return None
        # the first index whose term reaches q; its predecessor is the
        # largest term still below
        k_up = _min_pow_lt(self.ratio, (q - self.limit) / self.coeff,
                           strict=False)
        return self.term(k_up - 1) if k_up > 0 else None

    def nearest_term_above(self, q: Q) -> Optional[Q]:
        """Smallest closure point of the tail strictly above q."""
        if self.coeff < 0:
            if q >= self.limit:
                return None
            k = self.min_k_term_above(q)
            return self.term(k)
        if q < self.limit:
            return self.limit
        if q == self.limit:
            raise ValueError("no smallest tail point above its own limit")
        if q >= self.term(0):
            return None
        k_up = _min_pow_lt(self.ratio, (q - self.limit) / self.coeff,
                           strict=False)
        return self.term(k_up - 1) if k_up > 0 else None

    def closure_meets_closed(self, a: Q, b: Q) -> Optional[Q]:
        """Some closure point of the tail in [a, b], or None."""
        if a <= self.limit <= b:
            return self.limit
        if self.coeff > 0:
            # terms live in (limit, term(0)]
            if b <= self.limit or a > self.term(0):
                return None
            k = 0 if b >= self.term(0) else _min_pow_lt(
                self.ratio, (b - self.limit) / self.coeff, strict=False)
            t = self.term(k)  # largest term <= b
            return t if t >= a else None
        # terms live in [term(0), limit)
        if a >= self.limit or b < self.term(0):
            return None
        k = 0 if a <= self.term(0) else _min_pow_lt(
            self.ratio, (a - self.limit) / self.coeff, strict=False)
        t = self.term(k)  # smallest term >= a
        return t if t <= b else None


def tail_final_piece(f: PLMap, t: GeomTail):
    """First exponent k0 whose terms all sit in one linear piece of f
    adjacent to the tail's limit, together with that piece's slope.

    Terms with k >= k0 then map through f(limit) + slope*(term - limit).
    """
    if t.coeff > 0:
        x_star = f.next_breakpoint_above(t.limit)
        slope = f.slope_right_of(t.limit)
        cut = None if x_star is None else t.min_k_term_below(x_star)
    else:
        x_star = f.next_breakpoint_below(t.limit)
        slope = f.slope_left_of(t.limit)
        cut = None if x_star is None else t.min_k_term_above(x_star)
    return (0 if cut is None else cut), slope


class SubsetVerdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class SubsetResult:
    __slots__ = ("verdict", "witness")

    def __init__(self, verdict: SubsetVerdict, witness: Optional[Q] = None):
        self.verdict = verdict
        self.witness = witness

    def __repr__(self):
        w = f", witness={rat_str(self.witness)}" if self.witness is not None else ""
        return f"SubsetResult({self.verdict.value}{w})"


_AP_SCAN_LIMIT = 64
_AP_MODULUS_CAP = 1 << 20
_HEAD_CAP = 5000


class NDSet:
    """Finite points plus geometric tails, canonically presented."""

    __slots__ = ("points", "tails")

    def __init__(self, points: Iterable = (), tails: Iterable[GeomTail] = ()):
        pts = {rat(p) for p in points}
        # extend each tail backwards through points it abuts, so equal
        # sets get equal presentations no matter how they were assembled
        extended = []
        for t in sorted(set(tails), key=GeomTail._key):
            coeff = t.coeff
            prev = t.limit + coeff / t.ratio
            while prev in pts:
                pts.discard(prev)
                coeff = coeff / t.ratio
                prev = t.limit + coeff / t.ratio
            extended.append(GeomTail(t.limit, coeff, t.ratio))
        tl = sorted(set(extended), key=GeomTail._key)
        pts = {p for p in pts if not any(t.contains(p) for t in tl)}
        object.__setattr__(self, "points", tuple(sorted(pts)))
        object.__setattr__(self, "tails", tuple(tl))

    def __setattr__(self, name, value):
        raise AttributeError("NDSet is immutable")

    def _key(self):
        return (self.points, tuple(t._key() for t in self.tails))

    def __eq__(self, other):
        return isinstance(other, NDSet) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        pts = "{" + ", ".join(rat_str(p) for p in self.points) + "}"
        return f"NDSet({pts}, {list(self.tails)!r})"

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.tails

    @property
    def limits(self) -> Tuple[Q, ...]:
        return tuple(sorted({t.limit for t in self.tails}))

    # -- membership ----------------------------------------------------

    def contains(self, q) -> bool:
        q = rat(q)
        return q in self.points or any(t.contains(q) for t in self.tails)

    def closure_contains(self, q) -> bool:
        q = rat(q)
        return self.contains(q) or any(t.limit == q for t in self.tails)

    # -- algebra --------------------------------------------------------

    def union(self, other: "NDSet") -> "NDSet":
        return NDSet(self.points + other.points, self.tails + other.tails)

    def image(self, f: PLMap) -> "NDSet":
        """Exact image under an increasing piecewise-linear bijection."""
        pts: List[Q] = [f.apply(p) for p in self.points]
        tails: List[GeomTail] = []
        for t in self.tails:
            k0, slope = tail_final_piece(f, t)
            pts.extend(f.apply(t.term(k)) for k in range(k0))
            tails.append(GeomTail(f.apply(t.limit),
                                  slope * t.coeff * t.ratio ** k0, t.ratio))
        return NDSet(pts, tails)

    # -- closure geometry ------------------------------------------------

    def closure_meets_closed(self, a, b) -> Optional[Q]:
        """A closure point inside the closed interval [a, b], or None."""
        a, b = rat(a), rat(b)
        if a > b:
            raise ValueError("interval endpoints out of order")
        for p in self.points:
            if a <= p <= b:
                return p
        for t in self.tails:
            w = t.closure_meets_closed(a, b)
            if w is not None:
                return w
        return None

    def nearest_closure_below(self, q) -> Optional[Q]:
        """Largest closure point strictly below q; requires q off the closure."""
        q = rat(q)
        if self.closure_contains(q):
            raise ValueError("query point lies in the closure")
        best: Optional[Q] = None
        for p in self.points:
            if p < q and (best is None or p > best):
                best = p
        for t in self.tails:
            c = t.nearest_term_below(q)
            if c is not None and (best is None or c > best):
                best = c
        return best

    def nearest_closure_above(self, q) -> Optional[Q]:
        """Smallest closure point strictly above q; requires q off the closure."""
        q = rat(q)
        if self.closure_contains(q):
            raise ValueError("query point lies in the closure")
        best: Optional[Q] = None
        for p in self.points:
            if p > q and (best is None or p < best):
                best = p
        for t in self.tails:
            c = t.nearest_term_above(q)
            if c is not None and (best is None or c < best):
                best = c
        return best

    def gap_around(self, q, window: Interval) -> Interval:
        """Maximal closure-free open interval around q inside the window."""
        lo = self.nearest_closure_below(q)
        hi = self.nearest_closure_above(q)
        if window.lower is not None:
            lo = window.lower if lo is None else max(lo, window.lower)
        if window.upper is not None:
            hi = window.upper if hi is None else min(hi, window.upper)
        return Interval(lo, hi)

    def find_gap(self, interval: Interval) -> Interval:
        """Deterministic rational (a, b) with [a, b] inside the interval
        and disjoint from the closure.

        Probes dyadic subdivision points of the interval left to right
        until one misses the closure, takes the maximal closure-free gap
        around it, brackets the gap's middle third, and snaps the
        endpoints to the simplest rationals in each half of the bracket.
        """
        window = interval.finite_window()
        x, y = window.lower, window.upper
        span = y - x
        level = 1
        while level <= 64:
            step = span / (1 << level)
            for j in range(1, 1 << level, 2):
                m = x + j * step
                if not self.closure_contains(m):
                    gap = self.gap_around(m, window)
                    g, h = gap.lower, gap.upper
                    third = (h - g) / 3
                    mid = (g + h) / 2
                    a = simplest_between(g + third, mid, True, False)
                    b = simplest_between(mid, h - third, False, True)
                    return Interval(a, b)
            level += 1
        raise RuntimeError("no closure gap found; set is not nowhere dense")

    # -- subset of closure ------------------------------------------------

    def _tail_cover_aps(self, t: GeomTail) -> List[Tuple[int, int]]:
        """Arithmetic progressions of exponents k whose terms land in this
        set's tails (start, step): {start + step*j : j >= 0}."""
        out: List[Tuple[int, int]] = []
        for s in self.tails:
            if s.limit != t.limit:
                continue
            if (s.coeff > 0) != (t.coeff > 0):
                continue
            ratio_quot = t.coeff / s.coeff
            if t.ratio == s.ratio:
                e = _exact_log(s.ratio, ratio_quot)
                if e is not None:
                    # term k of t is term k+e of s; need k+e >= 0
                    out.append((max(0, -e), 1))
                continue
            d = _exact_log(s.ratio, t.ratio)
            if d is not None and d >= 2:
                # t.ratio == s.ratio**d: index map j = d*k + e
                e = _exact_log(s.ratio, ratio_quot)
                if e is not None:
                    start = 0
                    while d * start + e < 0:
                        start += 1
                    out.append((start, 1))
                continue
            m = _exact_log(t.ratio, s.ratio)
            if m is not None and m >= 2:
                # s.ratio == t.ratio**m: covered k are m*j - e
                e = _exact_log(t.ratio, ratio_quot)
                if e is not None:
                    k0 = -e
                    while k0 < 0:
                        k0 += m
                    out.append((k0, m))
        return out

    def _tail_subset_of_closure(self, t: GeomTail) -> SubsetResult:
        aps = self._tail_cover_aps(t)
        full = [ap for ap in aps if ap[1] == 1]
        if full:
            head = min(ap[0] for ap in full)
        else:
            head = None
            if aps:
                modulus = 1
                for _, step in aps:
                    modulus = modulus * step // math.gcd(modulus, step)
                    if modulus > _AP_MODULUS_CAP:
                        modulus = None
                        break
                if modulus is not None:
                    residues = set()
                    for start, step in aps:
                        residues.update((start + step * i) % modulus
                                        for i in range(modulus // step))
                    if len(residues) == modulus:
                        head = max(start for start, _ in aps) + modulus
        if head is not None:
            if head > _HEAD_CAP:
                return SubsetResult(SubsetVerdict.UNKNOWN)
            for k in range(head):
                if not self.closure_contains(t.term(k)):
                    return SubsetResult(SubsetVerdict.NO, t.term(k))
            return SubsetResult(SubsetVerdict.YES)
        # no covering family: hunt for an explicit escaped term
        covered = lambda k: any(k >= s and (k - s) % m == 0 for s, m in aps)
        tried = 0
        k = 0
        while tried < _AP_SCAN_LIMIT:
            if not covered(k):
                if not self.closure_contains(t.term(k)):
                    return SubsetResult(SubsetVerdict.NO, t.term(k))
                tried += 1
            k += 1
        return SubsetResult(SubsetVerdict.UNKNOWN)

    def subset_of_closure(self, other: "NDSet") -> SubsetResult:
        """Whether every member of self lies in the closure of other.

        NO always carries a witness point of self outside the closure;
        UNKNOWN can only arise from tail-against-tail comparisons the
        exponent analysis cannot settle.
        """
        for p in self.points:
            if not other.closure_contains(p):
                return SubsetResult(SubsetVerdict.NO, p)
        unknown = False
        for t in self.tails:
            res = other._tail_subset_of_closure(t)
            if res.verdict is SubsetVerdict.NO:
                return res
            if res.verdict is SubsetVerdict.UNKNOWN:
                unknown = True
        return SubsetResult(SubsetVerdict.UNKNOWN if unknown else SubsetVerdict.YES)

    # -- sampling helpers ---------------------------------------------

    def sample_points(self, terms_per_tail: int = 8) -> Tuple[Q, ...]:
        """Presentation points plus leading tail terms, for spot checks."""
        out = list(self.points)
        for t in self.tails:
            out.extend(t.term(k) for k in range(terms_per_tail))
        return tuple(sorted(set(out)))


EMPTY_NDSET = NDSet()


def ndset_points(*values) -> NDSet:
    return NDSet(points=[rat(v) for v in values])


__all__ = [
    "GeomTail", "NDSet", "EMPTY_NDSET", "ndset_points",
    "SubsetResult", "SubsetVerdict", "tail_final_piece",
]
