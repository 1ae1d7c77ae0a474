from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from conftest import applied
from path_oracle import handler_paths, leaves, oracle_main, oracle_whole_body

from blobsmell.blobs import BlobType
from blobsmell.evaluation import MixEntry, evaluate_project, generate_fixtures, loc, parse_truth, score_commands
from blobsmell.evaluation.fixtures import STYLES, VARIANTS
from blobsmell.frontend import TextEdit, apply_edits
from blobsmell.project import Project, body_statements
from blobsmell.refactor import analyze, refactor_project

keys = st.tuples(st.sampled_from(["A.java", "B.java"]), st.integers(1, 20),
                 st.one_of(st.integers(1, 40), st.just("*")))


@given(st.sets(keys), st.sets(keys))
def test_score_arithmetic(detected, correct):
    truth = parse_truth("".join(f"command {p} {h} {a}\n" for p, h, a in correct))
    row = score_commands(list(detected), truth).rows["commands"]
    assert row.ok + row.fp == len(detected)
    assert row.ok + row.fn == len(correct)
    assert 0 <= row.recall <= 100 and 0 <= row.precision <= 100


@st.composite
def edits_on(draw):
    text = draw(st.text(alphabet="ab\n ", min_size=0, max_size=40))
    cuts = sorted(draw(st.sets(st.integers(0, len(text)), max_size=8)))
    edits = []
    for a, b in zip(cuts[::2], cuts[1::2]):
        edits.append(TextEdit(a, b, draw(st.text(alphabet="xy", max_size=3))))
    return text, edits


@given(edits_on())
def test_edits_apply_like_right_to_left_splicing(case):
    text, edits = case
    expected = text
    for e in sorted(edits, reverse=True):
        expected = expected[:e.start] + e.replacement + expected[e.end:]
    assert apply_edits(text, edits) == expected


@given(st.lists(st.sampled_from(["", "   ", "// note", "/* c */"]), max_size=6))
def test_loc_ignores_padding(extra):
    base = "class A {\n  void f() { g(); }\n}\n"
    assert loc(base + "\n".join(extra)) == loc(base) == 3


mixes = st.lists(
    st.builds(MixEntry, st.sampled_from(STYLES), st.sampled_from(VARIANTS[:4]), st.integers(1, 5),
              st.integers(1, 2)),
    min_size=1, max_size=4)


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(mixes, st.integers(0, 10_000))
def test_closed_loop_on_random_mixes(mix, seed):
    corpus = generate_fixtures(mix, seed)
    report = evaluate_project(Project.from_corpus(corpus.files), corpus.truth, threshold=2)
    assert report.recall_cmd == report.precision_cmd == 100.0
    assert report.recall_blob == report.precision_blob == 100.0


@settings(max_examples=15, deadline=None)
@given(mixes, st.integers(0, 10_000))
def test_main_statements_match_path_oracle(mix, seed):
    corpus = generate_fixtures(mix, seed)
    _, results = analyze(Project.from_corpus(corpus.files), 2)
    for diag, _ in results:
        for cmd in diag.commands:
            paths = handler_paths(cmd.handler.node)
            if cmd.is_whole_body:
                expected = oracle_whole_body(paths)
            else:
                expected = oracle_main(paths, cmd.identification.anchor)
            assert set(leaves(cmd.main)) == expected


@settings(max_examples=10, deadline=None)
@given(st.lists(st.builds(MixEntry, st.just("Class"), st.sampled_from(["Property", "TypeCheck", "Reference"]),
                          st.integers(2, 5)), min_size=1, max_size=3),
       st.integers(0, 10_000))
def test_type1_refactoring_is_complete_and_idempotent(mix, seed):
    corpus = generate_fixtures(mix, seed)
    report = refactor_project(Project.from_corpus(corpus.files), 2)
    assert report.failures == 0
    after = applied(corpus.files, report.edits)
    project = Project.from_corpus(after)
    assert not [d for d, _ in analyze(project, 2)[1] if d.blob_type is BlobType.MULTI_OBJECT]
    assert refactor_project(project, 2).edits == {}


def test_oracle_sees_statements_after_the_chain_as_shared():
    corpus = {"A.java": """
import java.awt.event.*;
class A implements ActionListener {
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { x(); } else if (e.getSource() == b) { y(); }
    z();
  }
}
"""}
    _, results = analyze(Project.from_corpus(corpus), 2)
    (diag, _), = results
    handler = diag.commands[0].handler.node
    paths = handler_paths(handler)
    z = leaves(body_statements(handler))[-1]
    assert all(z not in oracle_main(paths, c.identification.anchor) for c in diag.commands)
    assert len(paths) == 3
