import json
import os
import subprocess
import sys
from importlib import resources

from qshift.cli import main

SPECS = resources.files("qshift").joinpath("specs")


def run_cli(*argv):
    return main(list(argv))


def test_construct_empty_stream(tmp_path, capsys):
    out = tmp_path / "trace.json"
    code = run_cli("construct", "--stream", str(SPECS / "empty.json"),
                   "--steps", "3", "--out", str(out))
    assert code == 0
    summary = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert summary["passed"] is True and summary["steps"] == 4
    trace = json.loads(out.read_text())
    assert all(step["pi"]["breakpoints"] == [["0", "0"]]
               for step in trace["steps"])


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "trace.json"
    spec = str(SPECS / "dense_singletons.json")
    assert run_cli("construct", "--stream", spec, "--steps", "8",
                   "--out", str(out)) == 0
    capsys.readouterr()
    assert run_cli("verify", "--stream", spec, "--out", str(out)) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    summary = json.loads(lines[-1])
    assert summary["command"] == "verify" and summary["passed"] is True
    assert summary["checks"] > 100


def test_verify_rejects_corrupted_trace(tmp_path, capsys):
    from fractions import Fraction
    out = tmp_path / "trace.json"
    spec = str(SPECS / "dense_singletons.json")
    run_cli("construct", "--stream", spec, "--steps", "6", "--out", str(out))
    blob = json.loads(out.read_text())
    pi = blob["steps"][3]["pi"]
    # still a valid map, but it translates everything a mile away
    pi["breakpoints"] = [[x, str(Fraction(y) + 10 ** 6)]
                         for x, y in pi["breakpoints"]]
    out.write_text(json.dumps(blob))
    capsys.readouterr()
    code = run_cli("verify", "--stream", spec, "--out", str(out))
    assert code == 1
    lines = capsys.readouterr().out.strip().splitlines()
    failed = [json.loads(l) for l in lines if not json.loads(l).get("ok", True)]
    names = {f["check"] for f in failed}
    assert "fixes-shifted" in names or "sigma-telescoping" in names


def test_verify_unreadable_inputs(tmp_path):
    spec = str(SPECS / "dense_singletons.json")
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run_cli("verify", "--stream", spec, "--out", str(empty)) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run_cli("verify", "--stream", spec, "--out", str(broken)) == 2
    missing_keys = tmp_path / "keys.json"
    missing_keys.write_text('{"steps": []}')
    assert run_cli("verify", "--stream", spec, "--out", str(missing_keys)) == 2
    assert run_cli("construct", "--stream", str(broken), "--steps", "2",
                   "--out", str(tmp_path / "t.json")) == 2


def test_verify_wrong_stream_fails_hash(tmp_path, capsys):
    out = tmp_path / "trace.json"
    run_cli("construct", "--stream", str(SPECS / "dense_singletons.json"),
            "--steps", "5", "--out", str(out))
    capsys.readouterr()
    code = run_cli("verify", "--stream", str(SPECS / "tail_start.json"),
                   "--out", str(out))
    assert code == 1
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert any(rec.get("check") == "stream-hash" and rec["ok"] is False
               for rec in lines)


def test_golden_traces_reproduced(tmp_path):
    cases = [("empty.json", 3, "empty_N3.trace.json"),
             ("dense_singletons.json", 10, "dense_singletons_N10.trace.json")]
    for spec, steps, golden in cases:
        golden_bytes = (SPECS / "golden" / golden).read_bytes()
        for attempt, jobs in ((1, "1"), (2, "1"), (3, "4")):
            out = tmp_path / f"{golden}.{attempt}"
            code = run_cli("construct", "--stream", str(SPECS / spec),
                           "--steps", str(steps), "--out", str(out),
                           "--jobs", jobs)
            assert code == 0
            assert out.read_bytes() == golden_bytes, (spec, attempt)


def test_golden_trace_pure_backend(tmp_path):
    golden_bytes = (SPECS / "golden" /
                    "dense_singletons_N10.trace.json").read_bytes()
    out = tmp_path / "pure.json"
    env = dict(os.environ, QSHIFT_BACKEND="pure")
    proc = subprocess.run(
        [sys.executable, "-m", "qshift.cli", "construct",
         "--stream", str(SPECS / "dense_singletons.json"),
         "--steps", "10", "--out", str(out)],
        env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes() == golden_bytes


def test_theorem_bundled_instances(capsys):
    for name in ("theorem_identity.json", "theorem_translation.json"):
        code = run_cli("theorem", "--stream", name, "--cases", "30")
        assert code == 0, name
        summary = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert summary["passed"] is True


def test_theorem_corrupted_tau(tmp_path, capsys):
    blob = json.loads((SPECS / "theorem_translation.json").read_text())
    blob["tau"][2]["breakpoints"] = [["0", "1"]]  # translation by 1, not 3
    bad = tmp_path / "bad_instance.json"
    bad.write_text(json.dumps(blob))
    code = run_cli("theorem", "--stream", str(bad))
    assert code == 1


def test_theorem_missing_file():
    assert run_cli("theorem", "--stream", "no_such_instance.json") == 2


def test_props_small(capsys):
    code = run_cli("props", "--seed", "0", "--cases", "5")
    assert code == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert lines[-1]["command"] == "props" and lines[-1]["passed"] is True
    assert all(rec["ok"] for rec in lines[:-1])


def test_props_zero_cases_vacuous(capsys):
    assert run_cli("props", "--seed", "3", "--cases", "0") == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert all(rec.get("cases", 0) == 0 for rec in lines[:-1])


def test_props_seed_variation(capsys):
    for seed in ("1", "2", "3"):
        assert run_cli("props", "--seed", seed, "--cases", "8") == 0
        capsys.readouterr()
