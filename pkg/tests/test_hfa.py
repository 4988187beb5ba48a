from random import Random

import pytest

from qshift.hfa import (Atom, SeqNode, SetNode, act, atom_seq, atoms_support,
                        in_sym)
from qshift.ndsets import NDSet, ndset_points
from qshift.plmaps import PLMap
from qshift.rationals import Q
from qshift.sampling import fix_members, rng_hfa, rng_plmap


def test_extensionality():
    a = Atom(Q(1, 2))
    assert SetNode([a, a]) == SetNode([a])
    assert SetNode([Atom(1), Atom(2)]) == SetNode([Atom(2), Atom(1)])
    assert SeqNode([Atom(1), Atom(2)]) != SeqNode([Atom(2), Atom(1)])
    assert SetNode([]) == SetNode([])
    assert SetNode([]) != SeqNode([])


def test_nested_equality_and_hash():
    x = SetNode([Atom(0), SetNode([Atom(1)])])
    y = SetNode([SetNode([Atom(1)]), Atom(0)])
    assert x == y and hash(x) == hash(y)
    assert len({x, y}) == 1


def test_act_recursion():
    f = PLMap.translation(1)
    x = SetNode([Atom(0), SetNode([Atom(1)])])
    assert act(f, x) == SetNode([Atom(1), SetNode([Atom(2)])])
    assert act(PLMap.identity(), x) == x
    s = SeqNode([Atom(0), Atom(5)])
    assert act(f, s) == SeqNode([Atom(1), Atom(6)])


def test_act_composition_law():
    rng = Random(9)
    for _ in range(200):
        f, g = rng_plmap(rng), rng_plmap(rng)
        x = rng_hfa(rng)
        assert act(f, act(g, x)) == act(f.compose(g), x)


def test_atoms_support():
    assert atoms_support(SetNode([])) == NDSet()
    assert atoms_support(SeqNode([Atom(1), Atom(2)])) == ndset_points(1, 2)
    nested = SetNode([Atom(0), SeqNode([Atom(0), SetNode([Atom(Q(7, 2))])])])
    assert atoms_support(nested) == ndset_points(0, Q(7, 2))


def test_support_equivariance():
    rng = Random(13)
    for _ in range(150):
        f, x = rng_plmap(rng), rng_hfa(rng)
        assert atoms_support(act(f, x)) == atoms_support(x).image(f)


def test_in_sym_basics():
    x = SetNode([Atom(0), Atom(1)])
    assert in_sym(PLMap.identity(), x)
    assert not in_sym(PLMap.translation(1), Atom(0))
    # swapping 0 and 1 is impossible for an increasing map, but fixing
    # both obviously works
    assert in_sym(PLMap([(0, 0), (1, 1)]), x)


def test_support_sufficiency():
    rng = Random(29)
    for _ in range(60):
        x = rng_hfa(rng)
        for f in fix_members(atoms_support(x), rng, 2):
            assert in_sym(f, x)


def test_sym_is_setwise_not_pointwise():
    # a map permuting nothing but moving points between set elements'
    # gaps can still stabilize the set as a whole
    x = SetNode([Atom(0), Atom(1)])
    bump = PLMap([(0, 0), (Q(1, 2), Q(1, 3)), (1, 1)])
    assert in_sym(bump, x)


def test_atom_seq_and_extends():
    s2 = atom_seq([1, 2])
    s3 = atom_seq([1, 2, 3])
    assert s3.extends(s2) and not s2.extends(s3)
    assert s2.extends(s2)
    assert not atom_seq([2, 1]).extends(atom_seq([1]))


def test_rejects_non_hfa():
    with pytest.raises(TypeError):
        SetNode([1])
    with pytest.raises(TypeError):
        SeqNode(["x"])
    with pytest.raises(TypeError):
        act(PLMap.identity(), "atom")
