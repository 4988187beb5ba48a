"""Command-line interface.

Subcommands:

* ``construct`` -- run the gap-evacuation recursion on a stream spec and
  write a trace file; self-verifies the fresh trace.
* ``verify``    -- independently re-check a trace file against a stream.
* ``theorem``   -- run both certificate directions on a bundled or local
  theorem instance.
* ``props``     -- run the seeded property suites.

Exit codes: 0 all checks passed, 1 a semantic check failed, 2 unreadable
or ill-formed input.  Reports are JSON lines; identical configurations
produce byte-identical files and output.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from random import Random
from typing import Optional

from .construction import run_shift_construction, verify_shift_trace
from .properties import run_properties
from .reporting import Report
from .serial import (SerializationError, canon_dumps, instance_from_obj,
                     read_json_file, stream_from_obj, stream_hash,
                     trace_from_obj, trace_to_obj, write_json_file)
from .theorem import CertificateError, branch_from_shifts, shifts_from_branch

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_IO = 2


def _emit(obj, stream=None) -> None:
    print(canon_dumps(obj), file=stream or sys.stdout)


def _print_report(report: Report, command: str) -> None:
    for check in report.checks:
        _emit(check.to_json_obj())
    _emit({"command": command, "passed": report.passed,
           "checks": len(report.checks), "failures": len(report.failures)})


def _resolve_spec(name: str) -> str:
    import os
    if os.path.exists(name):
        return name
    bundled = resources.files("qshift").joinpath("specs", name)
    if bundled.is_file():
        return str(bundled)
    raise SerializationError(f"no such spec file: {name}")


def cmd_construct(args) -> int:
    stream = stream_from_obj(read_json_file(_resolve_spec(args.stream)))
    trace = run_shift_construction(stream, args.steps)
    write_json_file(args.out, trace_to_obj(trace, stream))
    report = verify_shift_trace(trace, stream, jobs=args.jobs)
    if not report.passed:
        for check in report.failures:
            _emit(check.to_json_obj(), sys.stderr)
        return EXIT_FAIL
    _emit({"command": "construct", "passed": True, "steps": len(trace.steps),
           "out": args.out, "streamHash": stream_hash(stream)})
    return EXIT_OK


def cmd_verify(args) -> int:
    stream = stream_from_obj(read_json_file(_resolve_spec(args.stream)))
    trace, recorded_hash, recorded_n = trace_from_obj(read_json_file(args.out))
    report = Report()
    report.add("stream-hash", recorded_hash == stream_hash(stream),
               detail="trace header matches the supplied stream")
    report.add("step-count", recorded_n == len(trace.steps) - 1,
               detail="trace header matches the step list")
    report.extend(verify_shift_trace(trace, stream, jobs=args.jobs))
    _print_report(report, "verify")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_theorem(args) -> int:
    inst, cert, hs = instance_from_obj(read_json_file(_resolve_spec(args.stream)))
    rng = Random(args.seed)
    report = Report()

    _, _, branch_to_shift = shifts_from_branch(inst, cert, hs, rng,
                                               samples=args.cases)
    report.extend(branch_to_shift)

    upto = len(inst.base)
    stream = inst.induced_stream(upto + 1)
    trace = run_shift_construction(stream, upto + 1)
    report.extend(verify_shift_trace(trace, stream))
    chain = inst.branch_prefixes(upto)
    _, shift_to_branch = branch_from_shifts(inst, chain,
                                            [st.pi for st in trace.steps])
    report.extend(shift_to_branch)

    _print_report(report, "theorem")
    if not report.passed:
        first = report.failures[0]
        _emit({"failedClaim": first.name, "n": first.index}, sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_props(args) -> int:
    results = run_properties(args.seed, args.cases)
    ok = True
    for rec in results:
        ok = ok and rec["ok"]
        _emit(rec)
    _emit({"command": "props", "passed": ok,
           "properties": len(results), "seed": args.seed, "cases": args.cases})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qshift",
        description="exact order-automorphism shift construction and "
                    "certificate checking over the rationals")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="run the recursion, write a trace")
    p.add_argument("--stream", required=True, help="stream spec JSON file")
    p.add_argument("--steps", type=int, required=True, help="last step index")
    p.add_argument("--out", required=True, help="trace output path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="re-check a trace file")
    p.add_argument("--stream", required=True, help="stream spec JSON file")
    p.add_argument("--out", required=True, help="trace file to verify")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("theorem", help="check a theorem instance file")
    p.add_argument("--stream", required=True,
                   help="instance JSON file (bundled name or path)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100,
                   help="samples per sampled check")
    p.set_defaults(fn=cmd_theorem)

    p = sub.add_parser("props", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(fn=cmd_props)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SerializationError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
