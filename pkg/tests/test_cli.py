import json

import pytest

from setgrad_leibniz.cli import run
from setgrad_leibniz.commands import REPORT_SECTIONS
from setgrad_leibniz.services.corpus import gen_abelian
from setgrad_leibniz.services.fileformat import dump_algebra
from setgrad_leibniz.utils.config import reset_settings


def run_json(capsys, *argv):
    code = run([*argv, "--json"])
    report = json.loads(capsys.readouterr().out)
    assert report["exit_code"] == code
    return code, report


def test_validate_ok(capsys, examples_dir):
    code, report = run_json(capsys, "validate", str(examples_dir / "n2.json"))
    assert code == 0
    assert report["success"]
    assert report["input_digest"].startswith("sha256:")
    assert list(report)[:7] == [
        "command", "input_digest", "success", "exit_code", "results", "checks", "wall_time_ms",
    ]


def test_validate_rejects_perturbed(capsys, examples_dir):
    code, report = run_json(capsys, "validate", str(examples_dir / "n2_perturbed.json"))
    assert code == 1
    assert not report["success"]
    assert not report["results"]["valid"]


def test_other_commands_refuse_invalid_algebra(capsys, examples_dir):
    code, report = run_json(capsys, "decompose", str(examples_dir / "n2_perturbed.json"))
    assert code == 1
    assert "error" in report


def test_parse_failure(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code, report = run_json(capsys, "validate", str(bad))
    assert code == 2
    assert not report["success"]
    code, _ = run_json(capsys, "support", str(tmp_path / "missing.json"))
    assert code == 2


def test_field_flag_rejected(capsys, examples_dir):
    assert run(["validate", str(examples_dir / "n2.json"), "--field", "GF5"]) == 2
    assert "--field" in capsys.readouterr().err


def test_decompose_sum(capsys, examples_dir):
    code, report = run_json(capsys, "decompose", str(examples_dir / "n2_sum.json"))
    assert code == 0
    assert len(report["results"]["ideals"]) == 2
    assert report["results"]["direct"]


def test_star(capsys, examples_dir):
    code, report = run_json(capsys, "star", str(examples_dir / "n2.json"), "b", "a~")
    assert code == 0
    assert report["results"]["star"] == ["a"]


def test_simplicity_n2(capsys, examples_dir):
    code, report = run_json(capsys, "simplicity", str(examples_dir / "n2.json"), "--mode", "oracle")
    assert code == 0
    assert report["results"]["oracle"]["verdict"] == "Simple"
    assert "theorem" not in report["results"]


def test_theorem_mode_requires_maximal_length(capsys, tmp_path):
    wide = tmp_path / "wide.json"
    wide.write_text(json.dumps({
        "field": "Q",
        "basis": [
            {"name": "u", "label": "a", "parity": 0},
            {"name": "v", "label": "a", "parity": 0},
        ],
        "products": [],
    }), encoding="utf-8")
    code, report = run_json(capsys, "simplicity", str(wide), "--mode", "theorem")
    assert code == 1
    assert not report["success"]
    code, report = run_json(capsys, "simplicity", str(wide), "--mode", "both")
    assert code == 0
    assert report["results"]["theorem"]["applicable"] is False


def test_report_is_deterministic(capsys, examples_dir):
    path = str(examples_dir / "hsd_so3.json")
    _, first = run_json(capsys, "report", path, "--seed", "3")
    _, second = run_json(capsys, "report", path, "--seed", "3")
    first.pop("wall_time_ms")
    second.pop("wall_time_ms")
    assert first == second


def test_text_output(capsys, examples_dir):
    assert run(["center", str(examples_dir / "n2.json")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("== center ==")
    assert "exit: 0" in out


@pytest.mark.parametrize("name", ["so3.json", "cyclic.json", "n2_distinguished.json"])
def test_report_examples(capsys, examples_dir, name):
    code, report = run_json(capsys, "report", str(examples_dir / name))
    assert code == 0
    assert report["success"]


def test_generate(capsys, tmp_path):
    out = tmp_path / "corpus"
    code, report = run_json(capsys, "generate", str(out), "--seed", "1")
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert len(manifest) == report["results"]["count"]
    assert all((out / item["file"]).exists() for item in manifest)
    assert sum(not item["expected_valid"] for item in manifest) == 20


def test_generate_uses_configured_seed(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("CORPUS_SEED", "2")
    reset_settings()
    out = tmp_path / "corpus"
    code, _ = run_json(capsys, "generate", str(out))
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    seeds = {item["seed"] for item in manifest if item["family"] in ("Abelian", "DirectSum")}
    assert seeds == {2}


def test_report_section_headers(capsys, examples_dir):
    code, report = run_json(capsys, "report", str(examples_dir / "n2.json"))
    assert code == 0
    assert list(report["results"]) == [header for header, _ in REPORT_SECTIONS]
    assert report["results"]["理想 𝕴"]["frak_I"]["dim"] == 1
    assert report["results"]["𝔖-乘性"]["holds"]


def test_report_on_wide_algebra(capsys, tmp_path):
    wide = tmp_path / "wide.json"
    dump_algebra(gen_abelian({"a": [0, 0]}), wide)
    _, report = run_json(capsys, "report", str(wide))
    assert report["results"]["𝔖-乘性"] == {"maximal_length": False}
