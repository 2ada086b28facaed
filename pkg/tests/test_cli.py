import json

import pytest

from ksw.cli import main
from ksw.suite import RunReport, exit_code_from_checks, load_config


SPACE_JSON = {"dim": 3, "gram": [["2", "0", "0"], ["0", "8", "0"], ["0", "0", "-1"]]}
PERIOD_JSON = {"alpha": ["2", "0", "0"], "beta": ["0", "1", "0"]}

SMALL_SUITE = {
    "linalg": {"trials": 3, "max_size": 4},
    "qspace": {"h_range": [2, 3], "scrambles": 2},
    "clifford": {"h_range": [2, 4], "pair_trials": 10, "triple_trials": 5, "element_h": 3},
    "ks": {"h_range": [3, 4], "instances_per_h": 1, "commutator_samples": 1},
    "sympow": {
        "decompose": [[3, 2]],
        "level": [[3, 3]],
        "isotropic": [[3, 2]],
        "block_level": [[3, 3]],
    },
    "weil": {"conjugations": 1},
    "corr": {"b3": 4, "n": [2], "sign_rule": "koszul", "negative_control": True},
}


@pytest.fixture
def fixture_dir(tmp_path):
    (tmp_path / "space.json").write_text(json.dumps(SPACE_JSON))
    (tmp_path / "period.json").write_text(json.dumps(PERIOD_JSON))
    return tmp_path


def _json_output(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_betti_bound_kummer(capsys):
    assert main(["betti", "bound", "--b2", "7", "--json"]) == 0
    report = _json_output(capsys)
    assert report["data"]["k"] == 3
    assert report["data"]["bound"] == 8
    assert report["exit_code"] == 0


def test_betti_bound_div4(capsys):
    assert main(["betti", "bound", "--b2", "8", "--div4-improve", "--json"]) == 0
    assert _json_output(capsys)["data"]["bound"] == 16


def test_betti_bound_too_small(capsys):
    assert main(["betti", "bound", "--b2", "2"]) == 2


def test_betti_audit_default_catalog(capsys):
    assert main(["betti", "audit", "--json"]) == 0
    report = _json_output(capsys)
    assert all(
        row["b3"]["status"] == "tight" for row in report["data"]["entries"]
    )


def test_betti_audit_custom_catalog(tmp_path, capsys):
    catalog = [
        {"name": "violator", "dim2n": 4, "b2": 7, "b3": 4},
    ]
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(catalog))
    assert main(["betti", "audit", "--catalog", str(path), "--json"]) == 1
    report = _json_output(capsys)
    assert report["data"]["entries"][0]["b3"]["status"] == "fail"


def test_corr_verify_pass_and_broken(capsys):
    assert main(["corr", "verify", "--b3", "8", "--n", "2", "--json"]) == 0
    report = _json_output(capsys)
    assert report["data"]["pairs"] == 28
    assert report["data"]["uniform"] is True
    assert report["data"]["coefficient"] not in (None, "0")

    assert main(["corr", "verify", "--b3", "8", "--n", "2", "--broken-sign"]) == 1


def test_qform_inspect(fixture_dir, capsys):
    path = str(fixture_dir / "space.json")
    assert main(["qform", "inspect", "-f", path, "--json"]) == 0
    report = _json_output(capsys)
    assert report["data"]["dim"] == 3
    assert report["data"]["signature"] == [2, 1]
    assert report["data"]["discriminant_square_class"] == -1


def test_ks_build_report(fixture_dir, capsys):
    args = [
        "ks",
        "build",
        "-f",
        str(fixture_dir / "space.json"),
        "-p",
        str(fixture_dir / "period.json"),
        "--json",
    ]
    assert main(args) == 0
    report = _json_output(capsys)
    assert report["data"]["dims"] == {
        "h": 3,
        "cliff": 8,
        "c_plus": 4,
        "torus_complex_dim": 2,
    }
    assert report["data"]["e"] == {"terms": [{"mask": [1, 2], "coef": "1/4"}]}
    assert len(report["data"]["j_checksum"]) == 64
    assert {c["name"] for c in report["checks"]} == {
        "ks.e_square",
        "ks.j_square",
        "ks.commutators",
    }


def test_ks_build_byte_stable(fixture_dir, capsys):
    args = [
        "ks",
        "build",
        "-f",
        str(fixture_dir / "space.json"),
        "-p",
        str(fixture_dir / "period.json"),
        "--json",
    ]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second


def test_ks_verify(fixture_dir, capsys):
    args = [
        "ks",
        "verify",
        "-f",
        str(fixture_dir / "space.json"),
        "-p",
        str(fixture_dir / "period.json"),
        "--json",
    ]
    assert main(args) == 0
    report = _json_output(capsys)
    names = {c["name"] for c in report["checks"]}
    assert "ks.endo_rank" in names
    assert "ks.endo_sign_laws" in names
    assert "ks.odd_even_iso" in names
    assert any(name.startswith("ks.commutators.rotation") for name in names)


def test_ks_build_invalid_period(fixture_dir, capsys):
    bad = fixture_dir / "bad_period.json"
    bad.write_text(json.dumps({"alpha": ["1", "0", "0"], "beta": ["1", "1", "0"]}))
    args = [
        "ks",
        "build",
        "-f",
        str(fixture_dir / "space.json"),
        "-p",
        str(bad),
    ]
    assert main(args) == 2


def test_weil_analyze(tmp_path, capsys):
    j_rows = []
    phi_rows = []
    j0 = [[0, -1], [1, 0]]
    for i in range(8):
        j_rows.append(
            [str(j0[i % 2][k % 2]) if i // 2 == k // 2 else "0" for k in range(8)]
        )
        phi_rows.append(
            [
                str((1 if i < 4 else -1) * j0[i % 2][k % 2]) if i // 2 == k // 2 else "0"
                for k in range(8)
            ]
        )
    (tmp_path / "weight1.json").write_text(json.dumps({"dim": 8, "J": j_rows}))
    (tmp_path / "phi.json").write_text(json.dumps({"phi": phi_rows}))
    args = [
        "weil",
        "analyze",
        "-f",
        str(tmp_path / "weight1.json"),
        "--phi",
        str(tmp_path / "phi.json"),
        "--json",
    ]
    assert main(args) == 0
    report = _json_output(capsys)
    assert report["data"]["mult_plus"] == 2
    assert report["data"]["mult_minus"] == 2
    assert report["data"]["is_weil"] is True
    assert report["data"]["weil_space_dim"] == 2
    assert report["data"]["all_weil_classes_22"] is True


def test_weil_analyze_non_fourfold_omits_class_space(tmp_path, capsys):
    # dim-4 input: multiplicities are reported, the class-space fields stay null
    phi = [["0", "-2", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-2"], ["0", "0", "1", "0"]]
    j = [["0", "0", "-1", "0"], ["0", "0", "0", "-1"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]]
    (tmp_path / "weight1.json").write_text(json.dumps({"dim": 4, "J": j}))
    (tmp_path / "phi.json").write_text(json.dumps({"phi": phi}))
    args = [
        "weil",
        "analyze",
        "-f",
        str(tmp_path / "weight1.json"),
        "--phi",
        str(tmp_path / "phi.json"),
        "--json",
    ]
    assert main(args) == 0
    report = _json_output(capsys)
    assert report["data"]["mult_plus"] == report["data"]["mult_minus"] == 1
    assert report["data"]["is_weil"] is True
    assert report["data"]["weil_space_dim"] is None
    assert report["data"]["all_weil_classes_22"] is None


def test_weil_analyze_rejects_non_endo(tmp_path):
    j0 = [[0, -1], [1, 0]]
    j_rows = [
        [str(j0[i % 2][k % 2]) if i // 2 == k // 2 else "0" for k in range(8)]
        for i in range(8)
    ]
    (tmp_path / "weight1.json").write_text(json.dumps({"dim": 8, "J": j_rows}))
    (tmp_path / "phi.json").write_text(
        json.dumps({"phi": [["1" if i == k else "0" for k in range(8)] for i in range(8)]})
    )
    assert (
        main(
            [
                "weil",
                "analyze",
                "-f",
                str(tmp_path / "weight1.json"),
                "--phi",
                str(tmp_path / "phi.json"),
            ]
        )
        == 2
    )


def test_sym_decompose(fixture_dir, capsys):
    args = [
        "sym",
        "decompose",
        "--gram",
        str(fixture_dir / "space.json"),
        "--k",
        "3",
        "-p",
        str(fixture_dir / "period.json"),
        "--json",
    ]
    assert main(args) == 0
    report = _json_output(capsys)
    assert report["data"]["dim"] == 10
    assert [b["dim"] for b in report["data"]["blocks"]] == [7, 3]
    assert [b["level"] for b in report["data"]["blocks"]] == [6, 2]
    names = {c["name"] for c in report["checks"]}
    assert "sympow.level_filtration" in names


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["qform", "inspect", "-f", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "not valid JSON" in err


def test_missing_file_exits_2(tmp_path):
    assert main(["qform", "inspect", "-f", str(tmp_path / "nope.json")]) == 2


def test_usage_error_exits_2(capsys):
    assert main(["betti"]) == 2
    assert main(["nonsense"]) == 2


def test_suite_small_config(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(SMALL_SUITE))
    assert main(["suite", "--config", str(cfg), "--json"]) == 0
    report = _json_output(capsys)
    assert report["exit_code"] == 0
    assert report["counts"]["pass"] > 10
    assert report["seed"] == load_config()["seed"]


def test_suite_negative_control_config(tmp_path, capsys):
    broken = dict(SMALL_SUITE)
    broken["corr"] = {
        "b3": 4,
        "n": [2],
        "sign_rule": "broken",
        "negative_control": False,
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(broken))
    assert main(["suite", "--config", str(cfg), "--json"]) == 1
    report = _json_output(capsys)
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert any(c["name"].startswith("corr.uniform_coefficient") for c in failed)


def test_suite_cap_exceeded_is_skipped(tmp_path, capsys):
    capped = dict(SMALL_SUITE)
    capped["cap_h"] = 3
    capped["clifford"] = dict(SMALL_SUITE["clifford"], h_range=[2, 5], element_h=3)
    capped["ks"] = dict(SMALL_SUITE["ks"], h_range=[3, 3])
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(capped))
    assert main(["suite", "--config", str(cfg), "--json"]) == 0
    report = _json_output(capsys)
    skipped = [c for c in report["checks"] if c["status"] == "skipped"]
    assert skipped
    assert report["exit_code"] == 0


def test_suite_byte_stable(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(SMALL_SUITE))
    main(["suite", "--config", str(cfg), "--json"])
    first = capsys.readouterr().out
    main(["suite", "--config", str(cfg), "--json"])
    second = capsys.readouterr().out
    assert first == second


def test_env_cap_override(fixture_dir, monkeypatch):
    monkeypatch.setenv("KSW_CAP_H", "2")
    args = [
        "ks",
        "build",
        "-f",
        str(fixture_dir / "space.json"),
        "-p",
        str(fixture_dir / "period.json"),
    ]
    assert main(args) == 2  # cap below h = 3 surfaces as an input error
    monkeypatch.setenv("KSW_CAP_H", "junk")
    assert main(args) == 2


def test_exit_code_semantics():
    checks = [
        {"name": "a", "status": "pass", "detail": ""},
        {"name": "b", "status": "vacuous", "detail": ""},
        {"name": "c", "status": "skipped", "detail": ""},
    ]
    assert exit_code_from_checks(checks) == 0
    checks.append({"name": "d", "status": "fail", "detail": ""})
    assert exit_code_from_checks(checks) == 1


def test_run_report_counts():
    report = RunReport(
        command="x",
        inputs={},
        checks=[{"name": "a", "status": "pass", "detail": ""}],
        exit_code=0,
    )
    payload = report.to_dict()
    assert payload["counts"] == {"pass": 1}
    assert "seed" not in payload
