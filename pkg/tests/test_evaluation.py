import json

import pytest
from conftest import diagnoses

from blobsmell.blobs import BlobType
from blobsmell.evaluation import (CorpusMismatch, GroundTruth, MixEntry, SpecError, TruthFormatError,
                                  all_mixes, cyclomatic_complexity, duplicated_lines, evaluate_project,
                                  generate_fixtures, loc, metrics_delta, parse_truth, score_blobs,
                                  score_commands, scores_from_counts)
from blobsmell.project import Project

# -- truth sidecar -------------------------------------------------------------------


def test_truth_round_trip():
    text = """# comment
file Empty.java
listener A.java 3 ActionListener 2 type1
command A.java 5 7   # trailing comment
command A.java 5 *
"""
    truth = parse_truth(text)
    assert truth.files == {"A.java", "Empty.java"}
    assert truth.commands == [("A.java", 5, 7), ("A.java", 5, "*")]
    assert [l.key for l in truth.blobs(2)] == [("A.java", 3, "ActionListener")]
    assert truth.blobs(3) == []
    again = parse_truth(truth.dumps())
    assert again.files == truth.files and again.listeners == truth.listeners
    assert sorted(map(str, again.commands)) == sorted(map(str, truth.commands))


@pytest.mark.parametrize("line", [
    "listener A.java x ActionListener 2 type1",
    "listener A.java 3 ActionListener 2 type3",
    "command A.java 0 4",
    "command A.java 4",
    "bogus",
])
def test_truth_format_errors(line):
    with pytest.raises(TruthFormatError):
        parse_truth(line)


# -- scoring --------------------------------------------------------------------------


def test_empty_denominator_conventions():
    assert scores_from_counts(0, 0, 0) == (100.0, 100.0)
    assert scores_from_counts(0, 5, 0) == (0.0, 0.0)
    assert scores_from_counts(0, 0, 3) == (100.0, 0.0)
    with pytest.raises(ValueError):
        scores_from_counts(-1, 0, 0)


def test_score_commands_counts_and_rows():
    truth = parse_truth("command A.java 5 7\ncommand A.java 5 9\ncommand B.java 2 *\n")
    detected = [("A.java", 5, 7), ("A.java", 5, 11), ("B.java", 2, "*")]
    report = score_commands(detected, truth)
    row = report.rows["commands"]
    assert (row.ok, row.fn, row.fp) == (2, 1, 1)
    assert row.missed == [("A.java", 5, 9)] and row.spurious == [("A.java", 5, 11)]
    assert report.recall_cmd == pytest.approx(200 / 3)
    assert report.precision_cmd == pytest.approx(200 / 3)


def test_scores_do_not_depend_on_order():
    truth = parse_truth("command A.java 1 2\ncommand B.java 1 2\n")
    a = score_commands([("A.java", 1, 2), ("C.java", 1, 1)], truth)
    b = score_commands([("C.java", 1, 1), ("A.java", 1, 2)], truth)
    assert a.to_json() == b.to_json()


def test_corpus_mismatch():
    truth = parse_truth("file A.java\n")
    with pytest.raises(CorpusMismatch):
        score_commands([], truth, files=["A.java", "B.java"])


def test_report_serialization():
    truth = parse_truth("listener A.java 1 ActionListener 3 type1\n")
    report = score_blobs([("A.java", 1, "ActionListener")], truth, 3)
    data = json.loads(report.to_json())
    assert data["schema_version"] == 1 and data["threshold"] == 3
    assert data["blobs"]["recall"] == 100.0
    header = report.to_table().splitlines()[0].split()
    assert header == ["Detected", "FN", "FP", "Recall", "(%)", "Precision", "(%)"]
    with pytest.raises(KeyError):
        report.recall_cmd


def test_raised_threshold_with_empty_truth_is_perfect():
    report = score_blobs([], GroundTruth(), 10)
    assert (report.recall_blob, report.precision_blob) == (100.0, 100.0)


# -- metrics --------------------------------------------------------------------------

CODE = """
class A {
  // comment only

  void f(int x) {
    if (x > 0 && x < 9) { g(); }
    for (int i = 0; i < x; i++) { h(i > 2 ? 1 : 2); }
    switch (x) { case 1: case 2: break; default: break; }
  }
  void g() { }
}
"""


def test_loc_ignores_blank_and_comment_lines():
    assert loc(CODE) == 8
    assert loc("/* a\n b */\n\n") == 0


def test_cyclomatic_complexity():
    # f: 1 + if + && + for + ?: + two case labels; g: 1
    assert cyclomatic_complexity(CODE) == 7 + 1


def test_metrics_delta_on_identical_corpora():
    corpus = {"A.java": CODE}
    assert tuple(vars(metrics_delta(corpus, corpus)).values()) == (0, 0, 0)
    with pytest.raises(ValueError):
        metrics_delta(corpus, {})


def test_duplicated_lines_count_new_listener_bodies_only():
    before = "class A { void f() { } }"
    after = """class A { void f() {
      a.on(e -> { String n = d.name(); d.save(n); });
      b.on(e -> { String n = d.name(); d.close(n); });
    } }"""
    assert duplicated_lines(before, after) == 1
    assert duplicated_lines(after, after) == 0


# -- generator ------------------------------------------------------------------------


def test_generation_is_deterministic():
    a = generate_fixtures(all_mixes(3, 2), seed=4)
    b = generate_fixtures(all_mixes(3, 2), seed=4)
    c = generate_fixtures(all_mixes(3, 2), seed=5)
    assert a.files == b.files and a.truth.dumps() == b.truth.dumps()
    assert a.files != c.files


@pytest.mark.parametrize("entry", [
    MixEntry("Class", "Property", 0),
    MixEntry("Class", "WholeBody", 2),
    MixEntry("Class", "TypeCheck", 8),
    MixEntry("Widget", "Property", 2),
    MixEntry("Class", "Guess", 2),
])
def test_impossible_mixes(entry):
    with pytest.raises(SpecError):
        generate_fixtures([entry])


def test_ten_property_listeners_are_ten_blobs():
    corpus = generate_fixtures([MixEntry("Class", "Property", 3, 10)], seed=1)
    assert len(corpus.truth.blobs(3)) == 10
    flagged = [d for d in diagnoses(Project.from_corpus(corpus.files), 3) if d.is_blob]
    assert len(flagged) == 10


def test_key_switches_are_single_object_blobs():
    mix = [MixEntry(style, "SwitchCase", 2, 1) for style in ("Class", "Anonymous", "Lambda")]
    mix.append(MixEntry("Class", "SwitchCase", 3, 2))
    corpus = generate_fixtures(mix, seed=2)
    found = [d.blob_type for d in diagnoses(Project.from_corpus(corpus.files), 2) if d.is_blob]
    assert found == [BlobType.SINGLE_OBJECT] * 5


def test_closed_loop_small():
    corpus = generate_fixtures(all_mixes(4, 1), seed=9)
    report = evaluate_project(Project.from_corpus(corpus.files), corpus.truth)
    assert report.recall_cmd == report.precision_cmd == 100.0
    assert report.recall_blob == report.precision_blob == 100.0
