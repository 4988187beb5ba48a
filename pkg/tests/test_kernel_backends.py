"""Conformance between the compiled rational kernel and the pure
fallback, which is stdlib Fraction."""

from fractions import Fraction
from random import Random

import pytest

from qshift._qarith import BACKEND
from qshift._qarith.pure import Q as PureQ

try:
    from qshift._qarith._speedups import Q as FastQ
    HAVE_SPEEDUPS = True
except ImportError:
    HAVE_SPEEDUPS = False

needs_speedups = pytest.mark.skipif(not HAVE_SPEEDUPS,
                                    reason="compiled kernel not built")


def test_backend_reports_something_sane():
    assert BACKEND in ("pure", "speedups")


def test_pure_backend_is_fraction():
    assert PureQ is Fraction


@needs_speedups
def test_construction_and_normalization():
    assert (FastQ(6, 4).numerator, FastQ(6, 4).denominator) == (3, 2)
    assert (FastQ(-6, -4).numerator, FastQ(-6, -4).denominator) == (3, 2)
    assert (FastQ(6, -4).numerator, FastQ(6, -4).denominator) == (-3, 2)
    assert (FastQ(0, 7).numerator, FastQ(0, 7).denominator) == (0, 1)
    assert FastQ(FastQ(2, 3)) == FastQ(2, 3)
    with pytest.raises(ZeroDivisionError):
        FastQ(1, 0)
    with pytest.raises(TypeError):
        FastQ(1.5)


@needs_speedups
def test_random_op_conformance():
    rng = Random(101)

    def pair(a, b):
        return PureQ(a, b), FastQ(a, b)

    values = [pair(rng.randint(-40, 40), rng.randint(1, 40))
              for _ in range(60)]
    for (pa, fa) in values:
        assert (pa.numerator, pa.denominator) == (fa.numerator, fa.denominator)
        assert str(pa) == str(fa)
        assert float(pa) == float(fa)
    for (pa, fa) in values:
        for (pb, fb) in values[:20]:
            for op in ("__add__", "__sub__", "__mul__"):
                pres = getattr(pa, op)(pb)
                fres = getattr(fa, op)(fb)
                assert (pres.numerator, pres.denominator) == \
                    (fres.numerator, fres.denominator), op
            if pb != 0:
                pres, fres = pa / pb, fa / fb
                assert (pres.numerator, pres.denominator) == \
                    (fres.numerator, fres.denominator)
            assert (pa < pb) == (fa < fb)
            assert (pa <= pb) == (fa <= fb)
            assert (pa == pb) == (fa == fb)


@needs_speedups
def test_int_mixing():
    f = FastQ(3, 2)
    assert f + 1 == FastQ(5, 2) and 1 + f == FastQ(5, 2)
    assert f - 2 == FastQ(-1, 2) and 2 - f == FastQ(1, 2)
    assert f * 4 == FastQ(6) and 4 * f == FastQ(6)
    assert f / 3 == FastQ(1, 2) and 3 / f == FastQ(2)
    assert f < 2 and f > 1 and f != 1 and FastQ(4, 2) == 2
    assert hash(FastQ(5)) == hash(5)
    assert bool(FastQ(0)) is False and bool(f) is True


@needs_speedups
def test_powers():
    assert FastQ(2, 3) ** 3 == FastQ(8, 27)
    assert FastQ(2, 3) ** 0 == FastQ(1)
    assert FastQ(2, 3) ** -2 == FastQ(9, 4)
    assert FastQ(-2, 3) ** -3 == FastQ(-27, 8)
    with pytest.raises(ZeroDivisionError):
        FastQ(0) ** -1
    # matches Fraction on a sweep
    for n in range(-6, 7):
        if n >= 0:
            assert str(FastQ(-3, 5) ** n) == str(PureQ(-3, 5) ** n)
        else:
            assert str(FastQ(-3, 5) ** n) == str(PureQ(-3, 5) ** n)


@needs_speedups
def test_sorting_and_sets():
    rng = Random(55)
    raw = [(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(200)]
    pure_sorted = sorted(PureQ(a, b) for a, b in raw)
    fast_sorted = sorted(FastQ(a, b) for a, b in raw)
    assert [str(q) for q in pure_sorted] == [str(q) for q in fast_sorted]
    assert len({FastQ(1, 2), FastQ(2, 4), FastQ(3, 6)}) == 1


def test_forced_backend_env():
    import os
    import subprocess
    import sys
    code = ("from qshift._qarith import BACKEND, Q; "
            "print(BACKEND); print(Q(6, 4))")
    out = subprocess.run([sys.executable, "-c", code],
                         env=dict(os.environ, QSHIFT_BACKEND="pure"),
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["pure", "3/2"]
