"""Recursive gap-evacuation construction and its independent verifier.

Given an increasing chain of nowhere-dense sets E_0 <= E_1 <= ... (fed as
increments) and the fixed enumeration I_0, I_1, ... of open rational
intervals, the construction produces maps pi_n and gap intervals
J_n <= I_n such that

* pi_n fixes the current shifted set sigma_n``E_n pointwise
  (sigma_0 = id, sigma_{n+1} = pi_n . sigma_n), and
* every shifted set sigma_m``E_m stays closure-disjoint from every
  recorded closed gap [a_k, b_k] -- a closed-interval strengthening that
  is maintained inductively and keeps the running union of shifted sets
  nowhere dense at every finite stage.

The verifier replays a finished trace from the map sequence alone,
re-deriving every shifted set and checking all conditions through the
membership oracles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

from .ndsets import EMPTY_NDSET, NDSet
from .plmaps import PLMap, squeeze_map
from .rationals import Interval, Q, rat_str, simplest_between
from .reporting import Report
from .subgroups import fix_violation

# -- canonical enumerations -------------------------------------------------

_POS_ENUM: List[Q] = []
_POS_DIAG = 2  # next antidiagonal (numerator + denominator) to expand


def _extend_positive_enum() -> None:
    global _POS_DIAG
    s = _POS_DIAG
    nums = range(1, s) if s % 2 == 0 else range(s - 1, 0, -1)
    for a in nums:
        if math.gcd(a, s - a) == 1:
            _POS_ENUM.append(Q(a, s - a))
    _POS_DIAG += 1


def rational_enum(i: int) -> Q:
    """Fixed zig-zag enumeration of all rationals: 0, 1, -1, 2, -2, 1/2, ..."""
    if i < 0:
        raise ValueError("enumeration index must be nonnegative")
    if i == 0:
        return Q(0)
    j, neg = divmod(i - 1, 2)
    while len(_POS_ENUM) <= j:
        _extend_positive_enum()
    q = _POS_ENUM[j]
    return -q if neg else q


def canonical_interval(n: int) -> Interval:
    """Fixed enumeration of open intervals with rational endpoints.

    Unpairs n diagonally into (i, j), decodes both through the rational
    enumeration, and returns the open interval between the two values
    (or (q, q+1) when they coincide).  Every rational-endpoint open
    interval appears at some index; repeats are harmless.
    """
    if n < 0:
        raise ValueError("interval index must be nonnegative")
    t = (math.isqrt(8 * n + 1) - 1) // 2
    j = n - t * (t + 1) // 2
    i = t - j
    qi, qj = rational_enum(i), rational_enum(j)
    if qi == qj:
        return Interval(qi, qi + 1)
    return Interval(min(qi, qj), max(qi, qj))


def pair_index(i: int, j: int) -> int:
    """Inverse of the diagonal unpairing used by canonical_interval."""
    t = i + j
    return t * (t + 1) // 2 + j


# -- streams ----------------------------------------------------------------

class EStream:
    """Increasing chain of nowhere-dense sets, presented as increments.

    Level n is the union of the first n+1 increments; past the last
    increment the chain stays constant (further increments are empty).
    """

    __slots__ = ("increments", "_levels")

    def __init__(self, increments: Sequence[NDSet]):
        object.__setattr__(self, "increments", tuple(increments))
        object.__setattr__(self, "_levels", [])

    def __setattr__(self, name, value):
        raise AttributeError("EStream is immutable")

    def __len__(self):
        return len(self.increments)

    def level(self, n: int) -> NDSet:
        if n < 0:
            raise ValueError("level index must be nonnegative")
        if not self.increments:
            return EMPTY_NDSET
        n = min(n, len(self.increments) - 1)
        while len(self._levels) <= n:
            k = len(self._levels)
            prev = self._levels[k - 1] if k else EMPTY_NDSET
            self._levels.append(prev.union(self.increments[k]))
        return self._levels[n]


# -- evacuation --------------------------------------------------------------

class EvacuationError(ValueError):
    """A blocked interval meets the closure of the set to be fixed."""

    def __init__(self, witness: Q, blocked: Tuple[Q, Q]):
        self.witness = witness
        self.blocked = blocked
        super().__init__(
            f"closure point {rat_str(witness)} lies in blocked interval "
            f"[{rat_str(blocked[0])}, {rat_str(blocked[1])}]")


def _merge_closed(intervals: Sequence[Tuple[Q, Q]]) -> List[Tuple[Q, Q]]:
    out: List[Tuple[Q, Q]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def evacuate(c_fix: NDSet, c_move: NDSet,
             blocked: Sequence[Tuple[Q, Q]]) -> PLMap:
    """Map fixing ``c_fix`` pointwise whose image of ``c_move`` is
    closure-disjoint from every blocked closed interval.

    For each blocked interval, an open cover with rational endpoints is
    chosen whose closure misses the closure of ``c_fix``; covers are
    merged when they overlap.  Inside each cover the blocked intervals
    are squeezed into closure-free gaps of ``c_move`` and the resulting
    map is inverted: pulling a blocked interval into a gap of the moving
    set and inverting moves the set off the blocked interval.
    """
    for a, b in blocked:
        w = c_fix.closure_meets_closed(a, b)
        if w is not None:
            raise EvacuationError(w, (a, b))
    for p in c_fix.sample_points(6):
        if not c_move.contains(p):
            raise ValueError(
                f"set to fix is not part of the moving set: {rat_str(p)}")
    merged_blocked = _merge_closed(blocked)
    if not any(c_move.closure_meets_closed(a, b) is not None
               for a, b in merged_blocked):
        return PLMap.identity()  # nothing to move

    covers: List[Tuple[Q, Q, List[Tuple[Q, Q]]]] = []
    for a, b in merged_blocked:
        below = c_fix.nearest_closure_below(a)
        above = c_fix.nearest_closure_above(b)
        u = a - 1 if below is None else simplest_between(below, a)
        v = b + 1 if above is None else simplest_between(b, above)
        covers.append((u, v, [(a, b)]))
    covers.sort()
    merged: List[Tuple[Q, Q, List[Tuple[Q, Q]]]] = []
    for u, v, blk in covers:
        if merged and u <= merged[-1][1]:
            pu, pv, pblk = merged[-1]
            merged[-1] = (pu, max(pv, v), pblk + blk)
        else:
            merged.append((u, v, blk))

    g = PLMap.identity()
    for u, v, blk in merged:
        cover = Interval(u, v)
        targets = []
        cursor = u
        for a, b in blk:
            gap = c_move.find_gap(Interval(cursor, v))
            targets.append(((a, b), gap))
            cursor = gap.upper
        g = g.compose(squeeze_map(cover, targets))
    return g.invert()


# -- the recursion ------------------------------------------------------------

class ShiftStep:
    __slots__ = ("n", "interval", "gap", "pi", "sigma_next", "shifted")

    def __init__(self, n: int, interval: Interval, gap: Interval,
                 pi: PLMap, sigma_next: PLMap, shifted: NDSet):
        self.n = n
        self.interval = interval
        self.gap = gap
        self.pi = pi
        self.sigma_next = sigma_next
        self.shifted = shifted

    def __eq__(self, other):
        return (isinstance(other, ShiftStep)
                and (self.n, self.interval, self.gap, self.pi,
                     self.sigma_next, self.shifted)
                == (other.n, other.interval, other.gap, other.pi,
                    other.sigma_next, other.shifted))

    def __repr__(self):
        return f"ShiftStep(n={self.n}, J={self.gap!r})"


class ShiftTrace:
    __slots__ = ("steps",)

    def __init__(self, steps: Sequence[ShiftStep]):
        self.steps = tuple(steps)

    def __len__(self):
        return len(self.steps)

    def __eq__(self, other):
        return isinstance(other, ShiftTrace) and self.steps == other.steps

    @property
    def sigmas(self) -> List[PLMap]:
        """sigma_n for n = 0..len: compositions of the recorded maps."""
        out = [PLMap.identity()]
        for step in self.steps:
            out.append(step.pi.compose(out[-1]))
        return out


def run_shift_construction(stream: EStream, upto: int) -> ShiftTrace:
    """Execute the recursion through step ``upto`` inclusive."""
    if upto < 0:
        raise ValueError("step count must be nonnegative")
    sigma = PLMap.identity()
    blocked: List[Tuple[Q, Q]] = []
    steps: List[ShiftStep] = []
    for n in range(upto + 1):
        shifted = stream.level(n).image(sigma)
        interval = canonical_interval(n)
        gap = shifted.find_gap(interval)
        blocked.append((gap.lower, gap.upper))
        moving = stream.level(n + 1).image(sigma)
        pi = evacuate(shifted, moving, blocked)
        sigma = pi.compose(sigma)
        steps.append(ShiftStep(n, interval, gap, pi, sigma, shifted))
    return ShiftTrace(steps)


def witness_subgroup(trace: ShiftTrace) -> NDSet:
    """Union of all recorded shifted sets: the support generating the
    subgroup below every shifted stabilizer of the prefix."""
    out = EMPTY_NDSET
    for step in trace.steps:
        out = out.union(step.shifted)
    return out


def verify_shift_trace(trace: ShiftTrace, stream: EStream,
                       jobs: int = 1) -> Report:
    """Independent replay of a trace.

    Recomputes every composition from the recorded maps, re-derives each
    shifted set from the stream, and checks: the recorded fields match
    the replay, gaps sit inside their enumerated intervals, each map
    fixes its shifted set pointwise, and every shifted set is
    closure-disjoint from every recorded closed gap.  All checks go
    through membership oracles; nothing from the construction's internal
    choices is trusted.
    """
    report = Report()
    sigma = PLMap.identity()
    shifted: List[NDSet] = []
    for step in trace.steps:
        n = step.n
        report.add("step-index", n == len(shifted), n)
        derived = stream.level(n).image(sigma)
        shifted.append(derived)
        report.add("shifted-matches", derived == step.shifted, n)
        report.add("interval-enumeration",
                   step.interval == canonical_interval(n), n)
        report.add("gap-in-interval",
                   step.interval.contains_open(step.gap), n)
        moved = fix_violation(step.pi, derived)
        report.add("fixes-shifted", moved is None, n,
                   detail="pi_n in Fix(shifted_n)" if moved is None
                   else f"pi_n moves {rat_str(moved)}")
        sigma = step.pi.compose(sigma)
        report.add("sigma-telescoping", sigma == step.sigma_next, n)

    gaps = [step.gap for step in trace.steps]

    def disjoint(task):
        m, k = task
        w = shifted[m].closure_meets_closed(gaps[k].lower, gaps[k].upper)
        return (m, k, w)

    tasks = [(m, k) for m in range(len(shifted)) for k in range(len(gaps))]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(disjoint, tasks))
    else:
        results = [disjoint(t) for t in tasks]
    for m, k, w in results:
        report.add("gap-disjoint", w is None, m,
                   detail=f"J_{k}" if w is None
                   else f"J_{k} contains {rat_str(w)}")
    return report


__all__ = [
    "rational_enum", "canonical_interval", "pair_index", "EStream",
    "EvacuationError", "evacuate", "ShiftStep", "ShiftTrace",
    "run_shift_construction", "witness_subgroup", "verify_shift_trace",
]
