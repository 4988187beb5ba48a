"""Seeded random generators for maps, sets, and nested values.

All sampling flows through random.Random instances supplied by the
caller, so identical seeds give identical corpora everywhere (test
suites, CLI property runs, sampled subgroup checks).
"""

from __future__ import annotations

from random import Random
from typing import List

from .hfa import Atom, HFAValue, SeqNode, SetNode
from .ndsets import GeomTail, NDSet
from .plmaps import PLMap
from .rationals import Interval, Q


def rng_rational(rng: Random, span: int = 12) -> Q:
    return Q(rng.randint(-span, span), rng.randint(1, span))


def rng_positive_rational(rng: Random, span: int = 8) -> Q:
    return Q(rng.randint(1, span), rng.randint(1, span))


def rng_distinct_rationals(rng: Random, count: int, span: int = 12) -> List[Q]:
    seen = set()
    while len(seen) < count:
        seen.add(rng_rational(rng, span))
    return sorted(seen)


def rng_plmap(rng: Random, max_breaks: int = 4) -> PLMap:
    k = rng.randint(0, max_breaks)
    if k == 0:
        return PLMap.affine(rng_positive_rational(rng), rng_rational(rng))
    xs = rng_distinct_rationals(rng, k)
    ys = rng_distinct_rationals(rng, k)
    return PLMap(tuple(zip(xs, ys)),
                 rng_positive_rational(rng), rng_positive_rational(rng))


def rng_interval(rng: Random, span: int = 12) -> Interval:
    a, b = rng_distinct_rationals(rng, 2, span)
    return Interval(a, b)


def rng_geomtail(rng: Random) -> GeomTail:
    limit = rng_rational(rng, 8)
    coeff = rng_positive_rational(rng, 4)
    if rng.random() < 0.5:
        coeff = -coeff
    den = rng.randint(2, 6)
    num = rng.randint(1, den - 1)
    return GeomTail(limit, coeff, Q(num, den), head_drop=rng.randint(0, 2))


def rng_ndset(rng: Random, max_points: int = 3, max_tails: int = 2) -> NDSet:
    pts = [rng_rational(rng, 10) for _ in range(rng.randint(0, max_points))]
    tails = [rng_geomtail(rng) for _ in range(rng.randint(0, max_tails))]
    return NDSet(pts, tails)


def rng_hfa(rng: Random, max_depth: int = 3, max_width: int = 3) -> HFAValue:
    if max_depth == 0 or rng.random() < 0.45:
        return Atom(rng_rational(rng, 8))
    width = rng.randint(0, max_width)
    children = [rng_hfa(rng, max_depth - 1, max_width) for _ in range(width)]
    if rng.random() < 0.5:
        return SetNode(children)
    return SeqNode(children)


def bump_in_gap(gap: Interval, rng: Random) -> PLMap:
    """Non-identity map equal to the identity outside the open gap."""
    a, b = gap.lower, gap.upper
    w = b - a
    u = Q(rng.randint(1, 7), 8)
    v = Q(rng.randint(1, 7), 8)
    while v == u:
        v = Q(rng.randint(1, 7), 8)
    return PLMap(((a, a), (a + u * w, a + v * w), (b, b)))


def fix_members(support: NDSet, rng: Random, count: int,
                max_bumps: int = 2) -> List[PLMap]:
    """Sample automorphisms fixing the support pointwise.

    Each sample composes a few bumps supported in closure-free gaps of
    the set, so membership in Fix(support) holds by construction; the
    identity is included occasionally.
    """
    out: List[PLMap] = []
    for _ in range(count):
        if rng.random() < 0.1:
            out.append(PLMap.identity())
            continue
        m = PLMap.identity()
        for _ in range(rng.randint(1, max_bumps)):
            window = rng_interval(rng, 10)
            gap = support.find_gap(window)
            m = m.compose(bump_in_gap(gap, rng))
        out.append(m)
    return out


def mixed_maps(support: NDSet, rng: Random, count: int) -> List[PLMap]:
    """Half unconstrained maps, half members of Fix(support)."""
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(rng_plmap(rng))
        else:
            out.extend(fix_members(support, rng, 1))
    return out


__all__ = [
    "rng_rational", "rng_positive_rational", "rng_distinct_rationals",
    "rng_plmap", "rng_interval", "rng_geomtail", "rng_ndset", "rng_hfa",
    "bump_in_gap", "fix_members", "mixed_maps",
]
