import io
import json

import pytest

from ggptheta.errors import UsageError
from ggptheta import sweep
from ggptheta.sweep import CHECKS, Outcome, SweepConfig, run_sweep


def _run(**kw):
    buf = io.StringIO()
    code = run_sweep(SweepConfig(**kw), buf)
    return code, buf.getvalue()


def test_empty_sweep():
    code, text = _run(count=0)
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["summary"]["passed"] == 0


def test_every_check_passes_on_a_small_sweep():
    code, text = _run(primes=(2, 3, 5, 7), count=4, seed=11, checks=tuple(CHECKS), max_dim=6)
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0
    assert lines[-1]["summary"] == {"seed": 11, "count": 4, "checks": list(CHECKS), "primes": [2, 3, 5, 7],
                                    "max_dim": 6, "passed": 4 * len(CHECKS), "failed": 0}
    for line in lines[:-1]:
        assert set(line) >= {"index", "check", "p", "inputs", "verdict", "witness"}
        assert line["verdict"] == "pass"


def test_replay_is_byte_identical():
    config = dict(primes=(3, 5), count=5, seed=3, checks=("seesaw", "prasad", "mp-cocycle"))
    assert _run(**config) == _run(**config)
    assert _run(**config)[1] != _run(**{**config, "seed": 4})[1]


def test_output_file(tmp_path):
    path = tmp_path / "report.jsonl"
    assert run_sweep(SweepConfig(count=2, seed=1, output=str(path))) == 0
    assert path.read_text().splitlines()[-1].startswith('{"summary"')


@pytest.mark.parametrize("kw", [dict(checks=("nope",)), dict(count=-1), dict(max_dim=1)])
def test_bad_configs(kw):
    with pytest.raises(UsageError):
        _run(**kw)


def test_a_failing_check_sets_exit_code_and_witness(monkeypatch):
    monkeypatch.setitem(sweep.CHECKS, "seesaw", lambda rng, p, d: Outcome(False, {"rep": "1"}, "boom"))
    code, text = _run(count=2)
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 1
    assert lines[0]["verdict"] == "fail" and lines[0]["witness"] == "boom"
    assert lines[-1]["summary"]["failed"] == 2
