"""Canonical JSON forms for every value the package exchanges.

Writers emit canonical presentations (sorted keys, compact separators,
sorted set elements), so serialization is deterministic and golden files
can be compared byte for byte.  Readers are strict: any shape violation
raises SerializationError, which the CLI maps to its I/O exit code.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, List, Tuple

from .construction import EStream, ShiftStep, ShiftTrace
from .hfa import Atom, HFAValue, SeqNode, SetNode
from .ndsets import GeomTail, NDSet
from .plmaps import PLMap
from .rationals import Interval, Q, parse_rational, rat_str
from .subgroups import (FULL_GROUP, Conj, Fix, Inter, Stab, SubgroupTerm,
                        _FullGroup)
from .theorem import BranchCertificate, TreeInstance


class SerializationError(ValueError):
    pass


def canon_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _fail(msg: str) -> "SerializationError":
    return SerializationError(msg)


def _need(obj: Any, keys: Tuple[str, ...], what: str) -> None:
    if not isinstance(obj, dict) or set(obj) != set(keys):
        raise _fail(f"malformed {what}: expected keys {sorted(keys)}")


def _rat_from(o: Any, what: str) -> Q:
    if not isinstance(o, str):
        raise _fail(f"malformed {what}: rational must be a string")
    try:
        return parse_rational(o)
    except ValueError as exc:
        raise _fail(f"malformed {what}: {exc}") from exc


# -- intervals ---------------------------------------------------------------

def interval_to_obj(iv: Interval) -> dict:
    return {
        "lower": None if iv.lower is None else rat_str(iv.lower),
        "upper": None if iv.upper is None else rat_str(iv.upper),
    }


def interval_from_obj(o: Any) -> Interval:
    _need(o, ("lower", "upper"), "interval")
    lo = None if o["lower"] is None else _rat_from(o["lower"], "interval")
    hi = None if o["upper"] is None else _rat_from(o["upper"], "interval")
    try:
        return Interval(lo, hi)
    except ValueError as exc:
        raise _fail(f"malformed interval: {exc}") from exc


# -- maps --------------------------------------------------------------------

def plmap_to_obj(f: PLMap) -> dict:
    return {
        "breakpoints": [[rat_str(x), rat_str(y)] for x, y in f.breakpoints],
        "leftSlope": rat_str(f.left_slope),
        "rightSlope": rat_str(f.right_slope),
    }


def plmap_from_obj(o: Any) -> PLMap:
    _need(o, ("breakpoints", "leftSlope", "rightSlope"), "map")
    if not isinstance(o["breakpoints"], list) or not o["breakpoints"]:
        raise _fail("malformed map: breakpoints must be a nonempty list")
    bps = []
    for item in o["breakpoints"]:
        if not (isinstance(item, list) and len(item) == 2):
            raise _fail("malformed map: breakpoint must be a pair")
        bps.append((_rat_from(item[0], "map"), _rat_from(item[1], "map")))
    try:
        return PLMap(bps, _rat_from(o["leftSlope"], "map"),
                     _rat_from(o["rightSlope"], "map"))
    except ValueError as exc:
        raise _fail(f"malformed map: {exc}") from exc


# -- nowhere-dense sets --------------------------------------------------------

def ndset_to_obj(e: NDSet) -> dict:
    return {
        "points": [rat_str(p) for p in e.points],
        "tails": [{"limit": rat_str(t.limit), "coeff": rat_str(t.coeff),
                   "ratio": rat_str(t.ratio), "headDrop": 0}
                  for t in e.tails],
    }


def ndset_from_obj(o: Any) -> NDSet:
    _need(o, ("points", "tails"), "set")
    if not isinstance(o["points"], list) or not isinstance(o["tails"], list):
        raise _fail("malformed set: points and tails must be lists")
    pts = [_rat_from(p, "set") for p in o["points"]]
    tails = []
    for t in o["tails"]:
        _need(t, ("limit", "coeff", "ratio", "headDrop"), "tail")
        if not isinstance(t["headDrop"], int) or t["headDrop"] < 0:
            raise _fail("malformed tail: headDrop must be a nonnegative int")
        try:
            tails.append(GeomTail(_rat_from(t["limit"], "tail"),
                                  _rat_from(t["coeff"], "tail"),
                                  _rat_from(t["ratio"], "tail"),
                                  head_drop=t["headDrop"]))
        except ValueError as exc:
            raise _fail(f"malformed tail: {exc}") from exc
    return NDSet(pts, tails)


# -- nested values -------------------------------------------------------------

def hfa_to_obj(x: HFAValue) -> dict:
    if isinstance(x, Atom):
        return {"atom": rat_str(x.value)}
    if isinstance(x, SetNode):
        return {"set": [hfa_to_obj(e) for e in x.elements]}
    if isinstance(x, SeqNode):
        return {"seq": [hfa_to_obj(e) for e in x.items]}
    raise _fail(f"not an HFA value: {type(x).__name__}")


def hfa_from_obj(o: Any) -> HFAValue:
    if not isinstance(o, dict) or len(o) != 1:
        raise _fail("malformed value: expected one of atom/set/seq")
    if "atom" in o:
        return Atom(_rat_from(o["atom"], "atom"))
    if "set" in o:
        if not isinstance(o["set"], list):
            raise _fail("malformed value: set must hold a list")
        return SetNode(hfa_from_obj(e) for e in o["set"])
    if "seq" in o:
        if not isinstance(o["seq"], list):
            raise _fail("malformed value: seq must hold a list")
        return SeqNode(hfa_from_obj(e) for e in o["seq"])
    raise _fail("malformed value: expected one of atom/set/seq")


# -- subgroup terms -------------------------------------------------------------

def term_to_obj(t: SubgroupTerm) -> Any:
    if isinstance(t, _FullGroup):
        return "full"
    if isinstance(t, Fix):
        return {"fix": ndset_to_obj(t.support)}
    if isinstance(t, Stab):
        return {"stab": hfa_to_obj(t.obj)}
    if isinstance(t, Conj):
        return {"conj": {"by": plmap_to_obj(t.by), "inner": term_to_obj(t.inner)}}
    if isinstance(t, Inter):
        return {"inter": [term_to_obj(p) for p in t.parts]}
    raise _fail(f"not a subgroup term: {type(t).__name__}")


def term_from_obj(o: Any) -> SubgroupTerm:
    if o == "full":
        return FULL_GROUP
    if not isinstance(o, dict) or len(o) != 1:
        raise _fail("malformed subgroup term")
    if "fix" in o:
        return Fix(ndset_from_obj(o["fix"]))
    if "stab" in o:
        return Stab(hfa_from_obj(o["stab"]))
    if "conj" in o:
        _need(o["conj"], ("by", "inner"), "conjugate")
        return Conj(plmap_from_obj(o["conj"]["by"]),
                    term_from_obj(o["conj"]["inner"]))
    if "inter" in o:
        if not isinstance(o["inter"], list):
            raise _fail("malformed subgroup term: inter must hold a list")
        return Inter([term_from_obj(p) for p in o["inter"]])
    raise _fail("malformed subgroup term")


# -- streams and traces ----------------------------------------------------------

def stream_to_obj(s: EStream) -> dict:
    return {"increments": [ndset_to_obj(d) for d in s.increments]}


def stream_from_obj(o: Any) -> EStream:
    _need(o, ("increments",), "stream")
    if not isinstance(o["increments"], list):
        raise _fail("malformed stream: increments must be a list")
    return EStream([ndset_from_obj(d) for d in o["increments"]])


def stream_hash(s: EStream) -> str:
    return hashlib.sha256(canon_dumps(stream_to_obj(s)).encode()).hexdigest()


def trace_to_obj(trace: ShiftTrace, stream: EStream) -> dict:
    return {
        "streamHash": stream_hash(stream),
        "N": len(trace.steps) - 1,
        "steps": [{
            "n": st.n,
            "I": interval_to_obj(st.interval),
            "J": interval_to_obj(st.gap),
            "pi": plmap_to_obj(st.pi),
            "sigma_next": plmap_to_obj(st.sigma_next),
            "shifted": ndset_to_obj(st.shifted),
        } for st in trace.steps],
    }


def trace_from_obj(o: Any) -> Tuple[ShiftTrace, str, int]:
    _need(o, ("streamHash", "N", "steps"), "trace")
    if not isinstance(o["streamHash"], str) or not isinstance(o["N"], int):
        raise _fail("malformed trace header")
    if not isinstance(o["steps"], list):
        raise _fail("malformed trace: steps must be a list")
    steps: List[ShiftStep] = []
    for s in o["steps"]:
        _need(s, ("n", "I", "J", "pi", "sigma_next", "shifted"), "trace step")
        if not isinstance(s["n"], int):
            raise _fail("malformed trace step: n must be an int")
        steps.append(ShiftStep(
            s["n"],
            interval_from_obj(s["I"]),
            interval_from_obj(s["J"]),
            plmap_from_obj(s["pi"]),
            plmap_from_obj(s["sigma_next"]),
            ndset_from_obj(s["shifted"]),
        ))
    return ShiftTrace(steps), o["streamHash"], o["N"]


# -- theorem instances -------------------------------------------------------------

def instance_to_obj(cert: BranchCertificate, hs) -> dict:
    return {
        "x": [hfa_to_obj(v) for v in cert.x],
        "t": [hfa_to_obj(v) for v in cert.t],
        "tau": [plmap_to_obj(m) for m in cert.tau],
        "H": [term_to_obj(h) for h in hs],
    }


def instance_from_obj(o: Any):
    """Decode a theorem instance; the first declared group must be a
    pointwise stabilizer, whose support doubles as the orbit base."""
    from .subgroups import normalize

    _need(o, ("x", "t", "tau", "H"), "theorem instance")
    for key in ("x", "t", "tau", "H"):
        if not isinstance(o[key], list):
            raise _fail(f"malformed theorem instance: {key} must be a list")
    xs = [hfa_from_obj(v) for v in o["x"]]
    ts = [hfa_from_obj(v) for v in o["t"]]
    taus = [plmap_from_obj(m) for m in o["tau"]]
    hs = [term_from_obj(h) for h in o["H"]]
    if not hs:
        raise _fail("malformed theorem instance: H must not be empty")
    h0 = normalize(hs[0])
    if not isinstance(h0, Fix):
        raise _fail("malformed theorem instance: the first group must "
                    "normalize to Fix form to declare the orbit base")
    try:
        inst = TreeInstance(xs, h0.support)
        cert = BranchCertificate(xs, ts, taus)
    except ValueError as exc:
        raise _fail(f"malformed theorem instance: {exc}") from exc
    return inst, cert, hs


def write_json_file(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canon_dumps(obj))
        fh.write("\n")


def read_json_file(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _fail(f"cannot read {path}: {exc}") from exc


__all__ = [
    "SerializationError", "canon_dumps", "interval_to_obj", "interval_from_obj",
    "plmap_to_obj", "plmap_from_obj", "ndset_to_obj", "ndset_from_obj",
    "hfa_to_obj", "hfa_from_obj", "term_to_obj", "term_from_obj",
    "stream_to_obj", "stream_from_obj", "stream_hash",
    "trace_to_obj", "trace_from_obj", "instance_to_obj", "instance_from_obj",
    "write_json_file", "read_json_file",
]
