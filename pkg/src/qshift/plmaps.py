"""Piecewise-linear order automorphisms of the rationals.

A map is finitely many breakpoints (input, output), linear interpolation
between consecutive ones, and ray slopes on both sides.  Data is always
rational and slopes positive, so every map is a strictly increasing
bijection of the rationals onto themselves, and the collection is a group
under composition.

Maps are canonicalized on construction (no breakpoint collinear with its
neighbours; a fully affine map keeps exactly one nominal breakpoint at
input 0), so structural equality coincides with functional equality.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, Sequence, Tuple

from .rationals import Interval, Q, rat, rat_str

BreakpointList = Tuple[Tuple[Q, Q], ...]


class OrderInconsistentTargets(ValueError):
    """Raised when squeeze targets admit no increasing map."""


def _canonicalize(bps, left_slope, right_slope):
    # slope sequence around each breakpoint; drop points where it does
    # not change
    n = len(bps)
    slopes = [left_slope]
    for i in range(n - 1):
        (x0, y0), (x1, y1) = bps[i], bps[i + 1]
        slopes.append((y1 - y0) / (x1 - x0))
    slopes.append(right_slope)
    kept = tuple(bps[i] for i in range(n) if slopes[i] != slopes[i + 1])
    if not kept:
        # affine map: pin the nominal breakpoint at input 0
        x0, y0 = bps[0]
        return ((Q(0), y0 - left_slope * x0),), left_slope, right_slope
    return kept, left_slope, right_slope


class PLMap:
    __slots__ = ("breakpoints", "left_slope", "right_slope", "_xs", "_ys",
                 "_slopes")

    def __init__(self, breakpoints: Iterable, left_slope=1, right_slope=1):
        bps = tuple((rat(x), rat(y)) for x, y in breakpoints)
        ls = rat(left_slope)
        rs = rat(right_slope)
        if not bps:
            raise ValueError("a map needs at least one breakpoint")
        if not (ls > 0 and rs > 0):
            raise ValueError("ray slopes must be positive")
        for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("breakpoints must increase in both coordinates")
        bps, ls, rs = _canonicalize(bps, ls, rs)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "left_slope", ls)
        object.__setattr__(self, "right_slope", rs)
        object.__setattr__(self, "_xs", tuple(x for x, _ in bps))
        object.__setattr__(self, "_ys", tuple(y for _, y in bps))
        seg = tuple((bps[i + 1][1] - bps[i][1]) / (bps[i + 1][0] - bps[i][0])
                    for i in range(len(bps) - 1))
        object.__setattr__(self, "_slopes", seg)

    def __setattr__(self, name, value):
        raise AttributeError("PLMap is immutable")

    # -- factories ---------------------------------------------------

    @staticmethod
    def identity() -> "PLMap":
        return PLMap(((0, 0),))

    @staticmethod
    def translation(offset) -> "PLMap":
        return PLMap(((0, rat(offset)),))

    @staticmethod
    def scaling(factor) -> "PLMap":
        return PLMap(((0, 0),), rat(factor), rat(factor))

    @staticmethod
    def affine(slope, intercept) -> "PLMap":
        return PLMap(((0, rat(intercept)),), rat(slope), rat(slope))

    # -- basics ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PLMap)
                and self.breakpoints == other.breakpoints
                and self.left_slope == other.left_slope
                and self.right_slope == other.right_slope)

    def __hash__(self):
        return hash((self.breakpoints, self.left_slope, self.right_slope))

    def __repr__(self):
        pts = ", ".join(f"({rat_str(x)}, {rat_str(y)})"
                        for x, y in self.breakpoints)
        return (f"PLMap([{pts}], left={rat_str(self.left_slope)}, "
                f"right={rat_str(self.right_slope)})")

    @property
    def is_identity(self) -> bool:
        return (self.breakpoints == ((0, 0),)
                and self.left_slope == 1 and self.right_slope == 1)

    # -- evaluation --------------------------------------------------

    def apply(self, q) -> Q:
        """Exact image of q under the map."""
        q = rat(q)
        xs = self._xs
        if q <= xs[0]:
            return self._ys[0] + self.left_slope * (q - xs[0])
        if q >= xs[-1]:
            return self._ys[-1] + self.right_slope * (q - xs[-1])
        i = bisect_right(xs, q) - 1
        return self._ys[i] + self._slopes[i] * (q - xs[i])

    def apply_inverse(self, q) -> Q:
        """Exact preimage: the x with apply(x) == q."""
        q = rat(q)
        ys = self._ys
        if q <= ys[0]:
            return self._xs[0] + (q - ys[0]) / self.left_slope
        if q >= ys[-1]:
            return self._xs[-1] + (q - ys[-1]) / self.right_slope
        i = bisect_right(ys, q) - 1
        return self._xs[i] + (q - ys[i]) / self._slopes[i]

    def slope_right_of(self, q) -> Q:
        """Slope of the linear piece on (q, q + eps)."""
        q = rat(q)
        xs = self._xs
        if q >= xs[-1]:
            return self.right_slope
        if q < xs[0]:
            return self.left_slope
        return self._slopes[bisect_right(xs, q) - 1]

    def slope_left_of(self, q) -> Q:
        """Slope of the linear piece on (q - eps, q)."""
        q = rat(q)
        xs = self._xs
        if q <= xs[0]:
            return self.left_slope
        if q > xs[-1]:
            return self.right_slope
        # index of the segment ending at or after q
        i = bisect_right(xs, q) - 1
        if xs[i] == q:
            i -= 1
        return self._slopes[i] if i >= 0 else self.left_slope

    def next_breakpoint_above(self, q):
        """Smallest breakpoint input strictly above q, or None."""
        q = rat(q)
        i = bisect_right(self._xs, q)
        return self._xs[i] if i < len(self._xs) else None

    def next_breakpoint_below(self, q):
        """Largest breakpoint input strictly below q, or None."""
        q = rat(q)
        lo = [x for x in self._xs if x < q]
        return lo[-1] if lo else None

    # -- group structure ----------------------------------------------

    def compose(self, other: "PLMap") -> "PLMap":
        """self after other: (self.compose(other))(q) == self(other(q))."""
        xs = set(other._xs)
        xs.update(other.apply_inverse(x) for x in self._xs)
        xs = sorted(xs)
        bps = tuple((x, self.apply(other.apply(x))) for x in xs)
        return PLMap(bps,
                     self.left_slope * other.left_slope,
                     self.right_slope * other.right_slope)

    def invert(self) -> "PLMap":
        bps = tuple((y, x) for x, y in self.breakpoints)
        return PLMap(bps, 1 / self.left_slope, 1 / self.right_slope)


def compose_all(maps: Sequence[PLMap]) -> PLMap:
    """Compose maps left to right: compose_all([f, g]) == f . g."""
    out = PLMap.identity()
    for m in maps:
        out = out.compose(m)
    return out


def squeeze_map(cover: Interval,
                targets: Sequence[Tuple[Tuple[Q, Q], Interval]]) -> PLMap:
    """Increasing map fixing everything outside ``cover`` that sends each
    blocked closed interval into its paired open gap.

    Deterministic rule: blocked endpoints go to the endpoints of the
    gap's middle third (to its midpoint for a degenerate blocked
    interval).  Raises :class:`OrderInconsistentTargets` when the
    requested images cannot be ordered increasingly.
    """
    if not cover.is_finite:
        raise ValueError("cover must have rational endpoints")
    c, d = cover.lower, cover.upper
    prev_v = None
    images = []
    for (u, v), gap in targets:
        u, v = rat(u), rat(v)
        if u > v:
            raise ValueError("blocked interval endpoints out of order")
        if not cover.contains_closed(u, v):
            raise ValueError("blocked interval not strictly inside cover")
        if not gap.is_finite or not cover.contains_open(gap):
            raise ValueError("gap not inside cover")
        if prev_v is not None and not prev_v < u:
            raise ValueError("blocked intervals must be disjoint and sorted")
        prev_v = v
        g, h = gap.lower, gap.upper
        w = h - g
        if u == v:
            images.append(((u, g + w / 2),))
        else:
            images.append(((u, g + w / 3), (v, g + 2 * w / 3)))
    bps = [(c, c)]
    for pair_bps in images:
        bps.extend(pair_bps)
    bps.append((d, d))
    for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
        if not (x0 < x1 and y0 < y1):
            raise OrderInconsistentTargets(
                f"images not increasing near ({rat_str(x0)}, {rat_str(y0)})")
    return PLMap(tuple(bps))


__all__ = ["PLMap", "compose_all", "squeeze_map", "OrderInconsistentTargets"]
