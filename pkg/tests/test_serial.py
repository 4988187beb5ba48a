import json
from random import Random

import pytest

from qshift.construction import EStream, run_shift_construction
from qshift.hfa import Atom, SeqNode, SetNode
from qshift.ndsets import GeomTail, NDSet, ndset_points
from qshift.plmaps import PLMap
from qshift.rationals import Interval, Q
from qshift.sampling import rng_hfa, rng_ndset, rng_plmap
from qshift.serial import (SerializationError, canon_dumps, hfa_from_obj,
                           hfa_to_obj, interval_from_obj, interval_to_obj,
                           ndset_from_obj, ndset_to_obj, plmap_from_obj,
                           plmap_to_obj, stream_from_obj, stream_hash,
                           stream_to_obj, term_from_obj, term_to_obj,
                           trace_from_obj, trace_to_obj)
from qshift.subgroups import FULL_GROUP, Conj, Fix, Inter, Stab


def test_rational_text_in_json():
    obj = ndset_to_obj(ndset_points(Q(3, 4), Q(-2), Q(5)))
    assert obj["points"] == ["-2", "3/4", "5"]


def test_plmap_roundtrip_corpus():
    rng = Random(19)
    for _ in range(200):
        f = rng_plmap(rng)
        blob = canon_dumps(plmap_to_obj(f))
        assert plmap_from_obj(json.loads(blob)) == f


def test_ndset_roundtrip_corpus():
    rng = Random(20)
    for _ in range(200):
        e = rng_ndset(rng)
        blob = canon_dumps(ndset_to_obj(e))
        assert ndset_from_obj(json.loads(blob)) == e


def test_hfa_roundtrip_and_canonical_order():
    rng = Random(21)
    for _ in range(200):
        x = rng_hfa(rng)
        blob = canon_dumps(hfa_to_obj(x))
        assert hfa_from_obj(json.loads(blob)) == x
    # set elements serialize in canonical order regardless of input order
    a = SetNode([Atom(2), Atom(1)])
    b = SetNode([Atom(1), Atom(2)])
    assert canon_dumps(hfa_to_obj(a)) == canon_dumps(hfa_to_obj(b))


def test_term_roundtrip():
    e = NDSet([Q(1)], [GeomTail(0, 1, Q(1, 2))])
    terms = [
        FULL_GROUP,
        Fix(e),
        Stab(SeqNode([Atom(0), Atom(1)])),
        Conj(PLMap.translation(2), Fix(e)),
        Inter([Fix(e), Stab(Atom(0))]),
    ]
    for t in terms:
        blob = canon_dumps(term_to_obj(t))
        assert term_from_obj(json.loads(blob)) == t


def test_interval_roundtrip():
    for iv in (Interval(0, 1), Interval(None, 5), Interval(Q(-7, 2), None),
               Interval(None, None)):
        assert interval_from_obj(json.loads(canon_dumps(interval_to_obj(iv)))) == iv


def test_trace_roundtrip_bit_exact():
    stream = EStream([ndset_points(0), ndset_points(1), ndset_points(Q(1, 2))])
    trace = run_shift_construction(stream, 2)
    obj = trace_to_obj(trace, stream)
    blob = canon_dumps(obj)
    parsed, recorded_hash, n = trace_from_obj(json.loads(blob))
    assert parsed == trace
    assert recorded_hash == stream_hash(stream)
    assert n == 2
    assert canon_dumps(trace_to_obj(parsed, stream)) == blob


def test_stream_roundtrip_and_hash_stability():
    stream = EStream([ndset_points(0), NDSet(tails=[GeomTail(0, 1, Q(1, 2))])])
    blob = canon_dumps(stream_to_obj(stream))
    again = stream_from_obj(json.loads(blob))
    assert list(again.increments) == list(stream.increments)
    assert stream_hash(again) == stream_hash(stream)


def test_strict_parsing_failures():
    bad_cases = [
        (plmap_from_obj, {"breakpoints": [], "leftSlope": "1", "rightSlope": "1"}),
        (plmap_from_obj, {"breakpoints": [["0", "0"]], "leftSlope": "0",
                          "rightSlope": "1"}),
        (plmap_from_obj, {"breakpoints": [["0"]], "leftSlope": "1",
                          "rightSlope": "1"}),
        (ndset_from_obj, {"points": ["1/0"], "tails": []}),
        (ndset_from_obj, {"points": []}),
        (ndset_from_obj, {"points": [], "tails": [{"limit": "0", "coeff": "1",
                                                   "ratio": "2", "headDrop": 0}]}),
        (hfa_from_obj, {"atom": "x"}),
        (hfa_from_obj, {"pair": []}),
        (term_from_obj, {"fix": {"points": []}}),
        (term_from_obj, "fullish"),
        (interval_from_obj, {"lower": "1", "upper": "0"}),
        (stream_from_obj, {"increments": "nope"}),
    ]
    for fn, obj in bad_cases:
        with pytest.raises(SerializationError):
            fn(obj)


def test_trace_header_validation():
    with pytest.raises(SerializationError):
        trace_from_obj({"streamHash": 5, "N": 0, "steps": []})
    with pytest.raises(SerializationError):
        trace_from_obj({"streamHash": "x", "N": 0})
