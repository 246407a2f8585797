import json

import pytest
from click.testing import CliRunner

from latmod.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_toric_check_torus_true_exit0(runner):
    res = runner.invoke(main, ["toric", "check-torus", "--n", "2", "--r", "1", "--N", "1"])
    assert res.exit_code == 0
    assert res.output.strip().endswith("true")


def test_toric_s_set_count(runner):
    res = runner.invoke(main, ["toric", "s-set", "--n", "2", "--r", "1", "--N", "1"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["count"] == 7


def test_toric_chi(runner):
    res = runner.invoke(main, ["toric", "chi", "--n", "2", "--r", "1", "--N", "1"])
    doc = json.loads(res.output)
    assert sum(doc["chi"]) == 0
    assert len(doc["support"]) == 3


def test_res_sigma_fiber_prints_count(runner):
    res = runner.invoke(main, ["res", "sigma-fiber", "--g", "2"])
    assert res.exit_code == 0
    assert res.output.strip() == "5"


def test_unknown_flag_exits_2(runner):
    res = runner.invoke(main, ["toric", "s-set", "--frobnicate", "1"])
    assert res.exit_code == 2


def test_missing_required_exits_2(runner):
    res = runner.invoke(main, ["mu", "build", "--n", "2"])
    assert res.exit_code == 2


def test_mu_build_artifact(runner, tmp_path):
    out = tmp_path / "mu.json"
    res = runner.invoke(
        main,
        ["mu", "build", "--n", "2", "--r", "1", "--N", "1", "--out", str(out)],
    )
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["field"] == "QQ"
    assert len(doc["generators"]) == 4


def test_chain_normal_form_roundtrip(runner, tmp_path):
    out = tmp_path / "nf.json"
    args = [
        "chain", "normal-form",
        "--n", "2", "--r", "1", "--N", "1", "--d", "1,1",
        "--q", "5", "--tau", "0", "--seed", "11", "--out", str(out),
    ]
    res = runner.invoke(main, args)
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["verified"] is True
    assert len(doc["psi"]) == 2


def test_byte_identical_reruns(runner, tmp_path):
    """Same inputs and seeds reproduce artifacts byte for byte."""
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        res = runner.invoke(
            main,
            [
                "chain", "normal-form",
                "--n", "2", "--r", "1", "--N", "1", "--d", "1,1",
                "--q", "7", "--tau", "3", "--seed", "99", "--out", str(out),
            ],
        )
        assert res.exit_code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_verify_run_small_config(runner, tmp_path):
    config = {
        "checks": [
            {"name": "sigma_fiber", "params": {"g": 1}},
            {"name": "torus_kernel", "params": {"n": 2, "r": 1, "N": 1}},
            {"name": "s_set_count", "params": {"n": 2, "r": 1, "N": 1, "expected": 7}},
        ]
    }
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "report.json"
    res = runner.invoke(
        main,
        [
            "verify", "run",
            "--config", str(cfg),
            "--out", str(out),
            "--no-timestamp",
        ],
    )
    assert res.exit_code == 0, res.output
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["total"] == 3
    for row in report["results"]:
        assert {"check", "spec", "verdict", "witness_digest", "runtime_ms"} <= set(row)
    # CSV mirror exists
    csv_text = (tmp_path / "report.csv").read_text()
    assert csv_text.splitlines()[0] == "check,spec,verdict,witness_digest,runtime_ms"


def test_verify_run_reproducible_no_timestamp(runner, tmp_path):
    """Byte-identical reports when the wall-clock fields are suppressed."""
    config = {
        "checks": [
            {"name": "sigma_fiber", "params": {"g": 1}},
            {
                "name": "chain_roundtrip",
                "params": {"n": 2, "r": 1, "N": 1, "d": [1, 1], "q": 5, "trials": 5},
                "seed": 4242,
            },
        ]
    }
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps(config))
    blobs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        res = runner.invoke(
            main,
            ["verify", "run", "--config", str(cfg), "--out", str(out), "--no-timestamp"],
        )
        assert res.exit_code == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_verify_empty_config_passes(runner, tmp_path):
    cfg = tmp_path / "empty.json"
    cfg.write_text(json.dumps({"checks": []}))
    res = runner.invoke(main, ["verify", "run", "--config", str(cfg)])
    assert res.exit_code == 0


def test_verify_unknown_check_is_usage_error(runner, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"checks": [{"name": "nonsense", "params": {}}]}))
    res = runner.invoke(main, ["verify", "run", "--config", str(cfg)])
    assert res.exit_code == 2


def test_sym_check_shift(runner):
    res = runner.invoke(main, ["sym", "check-shift", "--n", "2", "--r", "1", "--N", "1"])
    assert res.exit_code == 0
    assert res.output.strip() == "true"


def test_sym_check_involution(runner):
    res = runner.invoke(main, ["sym", "check-involution", "--g", "1", "--N", "1"])
    assert res.exit_code == 0
    assert res.output.strip() == "true"


def test_res_kill_torsion_pipeline(runner, tmp_path):
    src = tmp_path / "in.json"
    doc = {
        "field": "QQ",
        "variables": ["x", "t"],
        "order": "grevlex",
        "generators": ["t*x"],
        "provenance": "test",
        "inverses": [],
        "meta": {},
    }
    src.write_text(json.dumps(doc))
    out = tmp_path / "out.json"
    res = runner.invoke(
        main, ["res", "kill-torsion", "--in", str(src), "--out", str(out)]
    )
    assert res.exit_code == 0
    result = json.loads(out.read_text())
    assert result["generators"] == ["x"]


def test_res_blowup_pipeline(runner, tmp_path):
    src = tmp_path / "plane.json"
    doc = {
        "field": "QQ",
        "variables": ["x", "y"],
        "order": "grevlex",
        "generators": [],
        "provenance": "plane",
        "inverses": [],
        "meta": {},
    }
    src.write_text(json.dumps(doc))
    out = tmp_path / "bl.json"
    res = runner.invoke(
        main,
        ["res", "blowup", "--in", str(src), "--center", "x,y", "--chart", "0", "--out", str(out)],
    )
    assert res.exit_code == 0
    result = json.loads(out.read_text())
    assert result["empty"] is False
    assert len(result["generators"]) == 1


def test_lm_build(runner):
    res = runner.invoke(
        main, ["lm", "build", "--n", "2", "--r", "1", "--N", "1", "--d", "1,1"]
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["variables"] == ["w0_2_1", "w1_2_1", "t"]


def test_sigma_build(runner):
    res = runner.invoke(main, ["sigma", "build", "--g", "1", "--N", "1"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert "J0_1_1_1" in doc["variables"]
