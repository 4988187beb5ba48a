from random import Random

import pytest

from qshift.construction import (EStream, rational_enum,
                                 run_shift_construction, witness_subgroup)
from qshift.hfa import Atom, SetNode, atoms_support, in_sym
from qshift.ndsets import (EMPTY_NDSET, GeomTail, NDSet, SubsetVerdict,
                           ndset_points)
from qshift.plmaps import PLMap
from qshift.rationals import Q
from qshift.sampling import fix_members, rng_hfa, rng_ndset, rng_plmap
from qshift.subgroups import (FULL_GROUP, Conj, FilterDescriptor, Fix, Inter,
                              ShiftProblem, Stab, check_shift_witness,
                              fix_leq, member, normalize)


def test_member_full_and_fix_basics():
    rng = Random(2)
    for _ in range(20):
        assert member(FULL_GROUP, rng_plmap(rng))
    assert member(Fix(EMPTY_NDSET), PLMap.translation(5))
    assert not member(Fix(ndset_points(0)), PLMap.translation(1))
    assert member(Fix(ndset_points(0)), PLMap.scaling(2))


def test_member_fix_tail():
    tail_set = NDSet(tails=[GeomTail(0, 1, Q(1, 2))])
    # doubling fixes the limit 0 but no term
    assert not member(Fix(tail_set), PLMap.scaling(2))
    assert member(Fix(tail_set), PLMap.identity())
    # a bump strictly above the whole tail leaves it fixed
    bump = PLMap([(2, 2), (3, Q(5, 2)), (4, 4)])
    assert member(Fix(tail_set), bump)
    # a bump inside (1/2, 1) moves no term either
    inner = PLMap([(Q(1, 2), Q(1, 2)), (Q(3, 4), Q(2, 3)), (1, 1)])
    assert member(Fix(tail_set), inner)
    # but a map with a non-unit slope through the limit fails
    kink = PLMap([(Q(-1), Q(-1))], 1, Q(1, 2))
    assert not member(Fix(tail_set), kink)


def test_member_stab_and_conj():
    x = SetNode([Atom(0), Atom(1)])
    assert member(Stab(x), PLMap.identity())
    assert not member(Stab(Atom(0)), PLMap.translation(1))
    pi = PLMap.translation(5)
    # f stabilizes pi(x) iff pi^-1 f pi stabilizes x
    f = PLMap([(5, 5), (Q(11, 2), Q(21, 4)), (6, 6)])
    assert member(Conj(pi, Stab(x)), f) == in_sym(
        pi.invert().compose(f).compose(pi), x)


def test_member_inter():
    h = Inter([Fix(ndset_points(0)), Fix(ndset_points(1))])
    assert member(h, PLMap([(0, 0), (1, 1)]))
    assert not member(h, PLMap([(0, 0), (1, 2), (3, 3)]))  # moves 1
    assert member(h, PLMap([(0, 0), (1, 1), (2, 3)]))      # moves only 2


def test_normalize_rules():
    e = NDSet([Q(1)], [GeomTail(0, 1, Q(1, 2))])
    pi = PLMap.translation(7)
    assert normalize(Conj(PLMap.identity(), Fix(e))) == Fix(e)
    assert normalize(Conj(pi, Fix(e))) == Fix(e.image(pi))
    assert normalize(Conj(pi, FULL_GROUP)) == FULL_GROUP
    x = SetNode([Atom(0)])
    assert normalize(Conj(pi, Stab(x))) == Stab(SetNode([Atom(7)]))
    rho = PLMap.scaling(2)
    assert normalize(Conj(pi, Conj(rho, Fix(e)))) == \
        normalize(Conj(pi.compose(rho), Fix(e)))
    flat = normalize(Inter([Inter([Fix(e), FULL_GROUP]), Fix(e)]))
    assert flat == Fix(e)
    assert normalize(Inter([])) == FULL_GROUP


def test_normalize_preserves_membership():
    rng = Random(31)
    for _ in range(200):
        e = rng_ndset(rng, max_points=2, max_tails=1)
        pi = rng_plmap(rng)
        h = Conj(pi, Fix(e))
        f = rng_plmap(rng)
        assert member(h, f) == member(normalize(h), f)
        g = fix_members(e.image(pi), rng, 1)[0]
        assert member(h, g) and member(normalize(h), g)


def test_fix_leq_examples():
    e = NDSet(tails=[GeomTail(0, 1, Q(1, 2))])
    assert fix_leq(e, e).verdict is SubsetVerdict.YES
    res = fix_leq(ndset_points(0), ndset_points(1))
    assert res.verdict is SubsetVerdict.NO and res.witness == Q(1)
    # the limit of a fixed tail cannot move
    assert fix_leq(e, ndset_points(0)).verdict is SubsetVerdict.YES
    # sampled confirmation: generated members of Fix(tail) all fix 0
    rng = Random(41)
    for g in fix_members(e, rng, 50):
        assert g.apply(Q(0)) == 0


def test_filter_descriptor():
    finite = FilterDescriptor.FINITE_SUPPORTS
    dense = FilterDescriptor.NOWHERE_DENSE_SUPPORTS
    tail_set = NDSet(tails=[GeomTail(0, 1, Q(1, 2))])
    assert finite.admits_basis(ndset_points(0, 1))
    assert not finite.admits_basis(tail_set)
    assert dense.admits_basis(tail_set)
    # conjugating a basis element stays in the basis
    img = tail_set.image(PLMap.scaling(3))
    assert dense.admits_basis(img)
    assert finite.admits_basis(ndset_points(0, 1).image(PLMap.scaling(3)))


def test_check_shift_witness_trivial():
    problem = ShiftProblem([FULL_GROUP] * 4, [PLMap.identity()] * 3,
                           EMPTY_NDSET)
    report = check_shift_witness(problem, Random(0), samples=10)
    assert report.passed


def _dense_problem(upto=8):
    incs = [ndset_points(rational_enum(i)) for i in range(upto + 2)]
    stream = EStream(incs)
    trace = run_shift_construction(stream, upto)
    groups = [Fix(stream.level(n)) for n in range(upto + 1)]
    pis = [st.pi for st in trace.steps[:-1]]
    return ShiftProblem(groups, pis, witness_subgroup(trace))


def test_check_shift_witness_end_to_end():
    report = check_shift_witness(_dense_problem(), Random(1), samples=20)
    assert report.passed
    # membership checks were exact, not sampled
    assert all(c.mode == "exact" for c in report.by_name("member"))


def test_check_shift_witness_mutation():
    problem = _dense_problem()
    for n in (0, 3, 7):
        pis = list(problem.witness)
        pis[n] = PLMap.translation(10 ** 6).compose(pis[n])
        mutated = ShiftProblem(problem.groups, pis, problem.candidate)
        report = check_shift_witness(mutated, Random(1), samples=5)
        failed = [c.index for c in report.by_name("member") if not c.ok]
        assert failed == [n]


def test_check_shift_witness_stab_groups_sampled():
    # non-Fix groups force the sampled containment path
    rng = Random(6)
    x = rng_hfa(rng, max_depth=2)
    groups = [Stab(x), Stab(x)]
    problem = ShiftProblem(groups, [PLMap.identity()],
                           atoms_support(x))
    report = check_shift_witness(problem, rng, samples=15)
    assert report.passed
    assert any(c.mode == "sampled" for c in report.by_name("candidate-leq"))


def test_shift_problem_validation():
    with pytest.raises(ValueError):
        ShiftProblem([FULL_GROUP], [PLMap.identity()] * 2, EMPTY_NDSET)
