import json
import shutil

import pytest
from conftest import FIXTURES

from blobsmell.cli import main
from blobsmell.evaluation import MixEntry, generate_fixtures


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def panel_dir(tmp_path):
    target = tmp_path / "panel"
    shutil.copytree(FIXTURES / "panel", target)
    return target


def test_detect_json_report(capsys):
    code, out, _ = run(capsys, "detect", FIXTURES / "handlers", "--format", "json")
    assert code == 1
    report = json.loads(out)
    assert report["schema_version"] == 1 and report["threshold"] == 3
    ctrl = next(d for d in report["listeners"] if d["path"] == "AController.java")
    assert ctrl["cmd"] == 3 and ctrl["is_blob"] and ctrl["blob_type"] == "MultiObjectMultiCommand"
    assert [c["line"] for c in ctrl["commands"]] == [25, 27, 29]
    assert report["summary"]["blobs"] == 6


def test_detect_exit_codes(capsys, tmp_path, panel_dir):
    assert run(capsys, "detect", panel_dir)[0] == 0
    code, out, _ = run(capsys, "detect", panel_dir, "--threshold", "2")
    assert code == 1 and "BLOB MultiObjectMultiCommand" in out
    code, _, err = run(capsys, "detect", tmp_path / "empty_dir_missing")
    assert code == 2
    (tmp_path / "empty").mkdir()
    code, _, err = run(capsys, "detect", tmp_path / "empty")
    assert code == 2 and "no sources" in err
    code, _, err = run(capsys, "detect", panel_dir, "--threshold", "1")
    assert code == 2 and "threshold" in err


def test_parse_and_catalog_errors(capsys, tmp_path, panel_dir):
    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "X.java").write_text("class X { void f() { ")
    code, _, err = run(capsys, "detect", bad)
    assert code == 2 and "X.java" in err
    cat = tmp_path / "cat.txt"
    cat.write_text("nonsense\n")
    code, _, err = run(capsys, "detect", panel_dir, "--catalog", cat)
    assert code == 2 and "cat.txt" in err


def test_exclude_and_out(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "detect", FIXTURES / "handlers", "--exclude", "Paged*",
                       "--format", "json", "--out", out_file, "--jobs", "2")
    assert out == ""
    paths = {d["path"] for d in json.loads(out_file.read_text())["listeners"]}
    assert paths and not any(p.startswith("Paged") for p in paths)


def test_refactor_diff_then_write(capsys, panel_dir):
    code, diff, _ = run(capsys, "refactor", panel_dir, "--threshold", "2")
    assert code == 0
    assert diff.startswith("--- a/Panel.java\n+++ b/Panel.java\n")
    code, again, _ = run(capsys, "refactor", panel_dir, "--threshold", "2", "--write")
    assert again == diff
    written = (panel_dir / "Panel.java").read_text()
    assert written == (FIXTURES / "panel_expected" / "Panel.java").read_text()
    code, nothing, _ = run(capsys, "refactor", panel_dir, "--threshold", "2")
    assert code == 0 and nothing == ""


def test_refactor_json_and_text(capsys):
    code, out, _ = run(capsys, "refactor", FIXTURES / "handlers", "--threshold", "2", "--format", "json")
    data = json.loads(out)
    assert data["schema_version"] == 1 and data["style"] == "lambda"
    assert data["successes"] == 1 and data["failures"] == 8
    copy = next(o for o in data["outcomes"] if o["path"] == "AttributeCopy.java")
    assert copy["reason"] == "ManualAttributeCopy" and copy["needs_confirmation"]
    code, out, _ = run(capsys, "refactor", FIXTURES / "handlers", "--threshold", "2", "--format", "text",
                       "--confirm-attribute-copy", "--style", "anonymous")
    assert out.rstrip().endswith("successes 1, failures 8")


def test_key_listener_corpus_gives_no_diffs(capsys, tmp_path):
    corpus = generate_fixtures([MixEntry("Class", "SwitchCase", 3, 4)], seed=3)
    for path, text in corpus.files.items():
        (tmp_path / path).parent.mkdir(parents=True, exist_ok=True)
        (tmp_path / path).write_text(text)
    code, diff, _ = run(capsys, "refactor", tmp_path)
    assert diff == ""
    code, out, _ = run(capsys, "refactor", tmp_path, "--format", "json")
    reasons = {o["reason"] for o in json.loads(out)["outcomes"]}
    assert reasons == {"SingleObjectMultiCommand"}


def test_fixtures_then_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", tmp_path, "--seed", "7", "--count", "1", "--max-commands", "3")
    assert code == 0 and (tmp_path / "truth.txt").is_file()
    code, table, _ = run(capsys, "eval", tmp_path, "--truth", tmp_path / "truth.txt")
    assert code == 0
    assert table.splitlines()[0].split()[:3] == ["Detected", "FN", "FP"]
    assert all(line.split()[-2:] == ["100.00", "100.00"] for line in table.splitlines()[1:])
    code, _, err = run(capsys, "eval", tmp_path, "--truth", tmp_path / "absent.txt")
    assert code == 2 and "not found" in err


def test_fixture_mix_errors(capsys, tmp_path):
    code, _, err = run(capsys, "fixtures", tmp_path, "--mix", "Class:WholeBody:2")
    assert code == 2
    code, _, err = run(capsys, "fixtures", tmp_path, "--mix", "Class:Property")
    assert code == 2


def test_reports_are_deterministic(capsys):
    outs = {run(capsys, "detect", FIXTURES / "handlers", "--format", "json", "--jobs", str(j))[1]
            for j in (1, 3)}
    assert len(outs) == 1
