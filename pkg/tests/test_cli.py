import io
import json

from qbc import cli
from qbc import identities as I


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_verify_cauchy_report(tmp_path):
    path = tmp_path / "r.json"
    code, text = run(["verify", "cauchy", "--m", "2", "--n", "1", "--seed", "7", "--trials", "5", "--report", str(path)])
    assert code == 0 and "PASS" in text
    rep = json.loads(path.read_text(encoding="utf-8"))
    assert rep["suite"] == "cauchy" and rep["config"]["seed"] == 7
    (check,) = rep["checks"]
    assert check["anchor"] == "Cauchy-type kernel identity"
    assert check["residuals"] == ["0/1"] * 5 and len(check["points"]) == 5
    assert set(check) >= {"id", "anchor", "sizes", "seed", "trials", "pass", "residuals", "points", "time_ms"}


def test_koornwinder_print():
    code, text = run(["koornwinder", "--m", "2", "--lambda", "1,1", "--seed", "3", "--print"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0].startswith("point ")
    assert lines[-1] == "m(1, 1): 1/1"
    assert any(line.startswith("m(): ") for line in lines)


def test_eigen_command(tmp_path):
    code, text = run(["eigen", "--m", "1", "--lambda", "2", "--trials", "2"])
    assert code == 0 and text.count("PASS") == 1


def test_orders_and_options():
    code, text = run(["verify", "coeff-rel", "--m", "2", "--n", "2", "--trials", "1"])
    assert code == 0 and text.count("PASS") == 3
    code, text = run(["verify", "h-d-relation", "--m", "1", "--n", "2", "--order", "2", "--trials", "1"])
    assert code == 0 and text.count("PASS") == 1
    code, _ = run(["verify", "transform-bc", "--alpha", "1,1", "--beta", "1", "--trials", "1"])
    assert code == 0
    code, _ = run(["verify", "duality", "--lambda", "1", "--mu", "1", "--trials", "1"])
    assert code == 0


def test_config_errors():
    assert run(["verify", "cauchy", "--m", "5"])[0] == 2
    assert run(["verify", "cauchy", "--n", "4"])[0] == 2
    assert run(["verify", "eigen", "--lambda", "4,3"])[0] == 2
    assert run(["verify", "eigen", "--lambda", "1,2"])[0] == 2
    assert run(["verify", "transform-c", "--alpha", "4"])[0] == 2
    assert run(["verify", "transform-bc", "--alpha", "2,2", "--beta", "2", "--budget", "10"])[0] == 2
    assert run(["verify", "cauchy", "--trials", "0"])[0] == 2
    assert run(["verify", "nonsense"])[0] == 2
    assert run([])[0] == 2


def test_seed_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("QBC_SEED", "5")
    path = tmp_path / "r.json"
    assert run(["verify", "milne", "--m", "2", "--trials", "1", "--report", str(path)])[0] == 0
    assert json.loads(path.read_text())["checks"][0]["seed"] == 5
    monkeypatch.setenv("QBC_SEED", "oops")
    assert run(["verify", "milne", "--m", "2"])[0] == 2


def _fake(status):
    def verifier(**kwargs):
        rep = I.VerificationReport("cauchy", "Cauchy-type kernel identity", {}, kwargs["seed"], kwargs["trials"])
        rep.status = status
        rep.passed = status == "pass"
        return rep
    return verifier


def test_exit_codes_for_failure_and_singularity(monkeypatch):
    monkeypatch.setitem(cli.VERIFIERS, "cauchy", _fake("fail"))
    assert run(["verify", "cauchy"])[0] == 1
    monkeypatch.setitem(cli.VERIFIERS, "cauchy", _fake("singular"))
    assert run(["verify", "cauchy"])[0] == 3


def test_acceptance_jobs_cover_all_checks():
    ids = {job[0] for job in cli.acceptance_jobs()}
    assert ids == set(cli.CHECK_IDS)
