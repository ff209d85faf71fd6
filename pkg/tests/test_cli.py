import json
import subprocess
import sys

import pytest

from defaultga.cli import ProblemSpec, main, run, trial_seed
from defaultga.ga import GAParams

from conftest import EX1_W1D1, EX1_W2D2, EX1_W3D3


@pytest.fixture
def theory_file(tmp_path):
    def write(text, name="t.dl"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_solve_file(theory_file, capsys):
    code = main(["solve", theory_file(EX1_W1D1), "--pop-size", "20", "--max-gens", "50", "--json"])
    rep = _json(capsys)
    assert code == 0
    assert rep["successes"] == 1
    assert rep["extension"] == {"generating_default_ids": [0, 2], "consequent_formulas": ["d", "g"]}
    assert set(rep) >= {"problem", "params", "trials", "successes", "ng_mean", "per_trial",
                        "extension", "wall_time_mean"}
    assert set(rep["per_trial"][0]) == {"seed", "outcome", "generations", "penalty_trace_len"}


def test_no_extension_exhausts(theory_file, capsys):
    code = main(["solve", theory_file(EX1_W3D3), "--pop-size", "10", "--max-gens", "5",
                 "--trials", "3", "--json"])
    rep = _json(capsys)
    assert code == 2
    assert rep["successes"] == 0 and rep["ng_mean"] is None
    assert [t["outcome"] for t in rep["per_trial"]] == ["exhausted"] * 3


def test_oracle_mode(theory_file, capsys):
    assert main(["solve", theory_file(EX1_W2D2), "--oracle", "--json"]) == 0
    assert len(_json(capsys)["extensions"]) == 2
    assert main(["solve", theory_file(EX1_W3D3), "--oracle"]) == 3


def test_oracle_bound_is_an_error(capsys):
    assert main(["solve", "--people", "boy", "--oracle"]) == 1
    assert "exceed" in capsys.readouterr().err


def test_verify_mode(theory_file, capsys):
    path = theory_file("W: a.\nD: a : b / c. a : ~c / ~b. d : e / f.")
    assert main(["solve", path, "--verify", "100011"]) == 0
    assert "certified" in capsys.readouterr().out
    assert main(["solve", path, "--verify", "101011", "--json"]) == 2
    assert _json(capsys)["reason"] == "penalty"
    assert main(["solve", path, "--verify", "10"]) == 1


def test_inconsistent_facts_short_circuit(theory_file, capsys):
    code = main(["solve", theory_file("W: a. ~a.\nD: a : b / b."), "--trials", "2", "--json"])
    rep = _json(capsys)
    assert code == 0
    assert rep["inconsistent_facts"] is True
    assert rep["successes"] == 2
    assert rep["extension"]["generating_default_ids"] == []


def test_hamilton(capsys):
    code = main(["solve", "--hamilton", "3", "--edges", "0-1,1-2,2-0", "--pop-size", "30",
                 "--max-gens", "200", "--json"])
    rep = _json(capsys)
    assert code == 0
    assert rep["problem"] == "hamilton:3:0-1,1-2,2-0"
    assert "use_0_1" in " ".join(rep["extension"]["consequent_formulas"])


def test_errors(theory_file, capsys):
    assert main(["solve", "/nonexistent/file.dl"]) == 1
    assert main(["solve", theory_file("W: a &.")]) == 1
    assert "line 1" in capsys.readouterr().err
    assert main(["solve", "--people", "dog"]) == 1
    with pytest.raises(SystemExit):
        main(["solve", "--hamilton", "3"])


def test_zero_trials():
    agg = run(ProblemSpec("people", variant="woman"), GAParams(), 0)
    assert agg.trials == 0 and agg.per_trial == [] and agg.ng_mean is None


def test_trial_seeds_are_stable_and_distinct():
    seeds = [trial_seed(7, i) for i in range(50)]
    assert len(set(seeds)) == 50
    assert all(0 <= s < 2 ** 64 for s in seeds)
    assert seeds == [trial_seed(7, i) for i in range(50)]


def test_reports_are_reproducible(theory_file):
    path = theory_file(EX1_W2D2)
    outs = []
    for _ in range(3):
        proc = subprocess.run([sys.executable, "-m", "defaultga", "solve", path, "--trials", "4",
                               "--pop-size", "12", "--max-gens", "30", "--seed", "5", "--json"],
                              capture_output=True, text=True, check=True)
        rep = json.loads(proc.stdout)
        rep.pop("wall_time_mean")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1] == outs[2]
