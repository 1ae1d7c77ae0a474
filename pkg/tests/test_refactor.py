import pytest
from conftest import applied, corpus_of, diagnoses, project_of, structurally_equal

from blobsmell.blobs import BlobType
from blobsmell.frontend import parse
from blobsmell.project import Project
from blobsmell.refactor import (Reason, Style, emit_edits, find_all_interactive_objects,
                                refactor_project, unused_import_edits)


def run(corpus, threshold=2, **kw):
    report = refactor_project(Project.from_corpus(corpus), threshold, **kw)
    return report, applied(corpus, report.edits)


def reasons(report):
    return {(o.blob.listener.file.path, o.blob.listener.spec.simple_name): o.reason
            for o in report.outcomes}


@pytest.fixture(scope="module")
def panel():
    return corpus_of("panel"), corpus_of("panel_expected")["Panel.java"]


def test_panel_lambda_output_matches_expected(panel):
    before, expected = panel
    report, after = run(before)
    assert report.successes == 1 and report.failures == 0
    assert after["Panel.java"] == expected
    assert structurally_equal(after["Panel.java"], expected)


def test_panel_anonymous_style(panel):
    before, _ = panel
    _, after = run(before, style=Style.ANONYMOUS)
    text = after["Panel.java"]
    assert text.count("new ActionListener() {") == 2
    assert "import java.awt.event.ActionListener;" in text
    assert "implements" not in text
    parse(text)


def test_refactoring_is_idempotent(panel):
    before, _ = panel
    _, after = run(before)
    again, _ = run(after)
    assert again.edits == {} and again.outcomes == []


def test_handler_fixture_reasons():
    report, after = run(corpus_of("handlers"), confirm_attribute_copy=True)
    got = reasons(report)
    assert got[("AController.java", "ActionListener")] is None
    assert got[("KeySwitch.java", "KeyListener")] is Reason.SINGLE_OBJECT
    assert got[("IconPaneMouseListener.java", "MouseListener")] is Reason.SINGLE_OBJECT
    assert got[("MapController.java", "ActionListener")] is Reason.NO_WIDGET
    assert got[("AttributeCopy.java", "ActionListener")] is Reason.MANUAL_COPY
    # re-analysis of the result finds no multi-object blob
    remaining = [d for d in diagnoses(Project.from_corpus(after), 2)
                 if d.blob_type is BlobType.MULTI_OBJECT]
    assert sorted(d.listener.file.path for d in remaining) == [
        "FormController.java", "MapController.java", "MenuListener.java", "SliceExample.java"]


def test_controller_output():
    _, after = run({"AController.java": corpus_of("handlers")["AController.java"]})
    text = after["AController.java"]
    assert "implements" not in text and "actionPerformed" not in text
    assert "AbstractButton" not in text  # import made unused by the edit
    assert text.count("addActionListener(e -> {") == 3
    # m3's action command is still set: "three" also labels the menu item
    assert 'm3.setActionCommand("three");' in text


def test_attribute_copy_needs_confirmation():
    corpus = {k: v for k, v in corpus_of("handlers").items() if k.startswith("Attribute")}
    report, after = run(corpus)
    (outcome,) = report.outcomes
    assert outcome.reason is Reason.MANUAL_COPY and outcome.needs_confirmation
    assert report.edits == {} and after == corpus

    report, after = run(corpus, confirm_attribute_copy=True)
    host = after["AttributeHost.java"]
    assert "import javax.swing.JFileChooser;" in host
    assert "c = new JFileChooser();" in host and "c.showDialog" in host
    assert "setActionCommand" not in host
    assert "actionPerformed" not in after["AttributeCopy.java"]


def test_shared_command_uses_one_listener_constant():
    report, after = run(corpus_of("shared"))
    text = after["Editor.java"]
    assert "final ActionListener button_menu_listener = e -> {" in text
    assert text.count("addActionListener(button_menu_listener)") == 2
    assert text.count("String name = doc.getName();") == 2
    assert "setActionCommand" not in text


def _reason_of(src):
    report, _ = run({"A.java": src})
    (outcome,) = report.outcomes
    return outcome.reason


HEADER = """
import java.awt.event.*;
import javax.swing.*;
class A implements ActionListener {
  JButton a = new JButton(), b = new JButton();
  JMenuItem m = new JMenuItem();
"""


def test_type_only_ambiguity():
    src = HEADER + """
  A() { a.addActionListener(this); b.addActionListener(this); m.addActionListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() instanceof JButton) { x(); }
    else if (e.getSource() instanceof JMenuItem) { y(); }
  } }
"""
    assert _reason_of(src) is Reason.AMBIGUOUS


def test_else_attached_command_is_ambiguous():
    src = HEADER + """
  A() { a.addActionListener(this); b.addActionListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { x(); }
    else if (e.getSource() == b) { y(); }
    else { z(); }
  } }
"""
    assert _reason_of(src) is Reason.AMBIGUOUS


def test_uncovered_registrant_is_ambiguous():
    src = HEADER + """
  A() { a.addActionListener(this); b.addActionListener(this); m.addActionListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { x(); }
    else if (e.getSource() == b) { y(); }
  } }
"""
    assert _reason_of(src) is Reason.AMBIGUOUS


def test_missing_widget():
    src = HEADER + """
  A() { a.addActionListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { x(); }
    else if (e.getSource() == b) { y(); }
  } }
"""
    assert _reason_of(src) is Reason.NO_WIDGET


def test_early_return_in_the_middle_needs_manual_copy():
    src = HEADER + """
  A() { a.addActionListener(this); b.addActionListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { if (busy) { return; } x(); }
    else if (e.getSource() == b) { y(); }
  } }
"""
    assert _reason_of(src) is Reason.MANUAL_COPY


def test_two_listener_blobs_in_one_class_merge_implements():
    src = """
import java.awt.event.*;
import javax.swing.*;
class A implements ActionListener, ItemListener, Runnable {
  JButton a = new JButton(), b = new JButton();
  A() { a.addActionListener(this); b.addActionListener(this);
        a.addItemListener(this); b.addItemListener(this); }
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == a) { x(); } else if (e.getSource() == b) { y(); }
  }
  public void itemStateChanged(ItemEvent e) {
    if (e.getSource() == a) { p(); } else if (e.getSource() == b) { q(); }
  }
  public void run() { }
}
"""
    report, after = run({"A.java": src})
    assert report.successes == 2
    text = after["A.java"]
    assert "class A implements Runnable {" in text
    assert "ActionEvent" not in text and "ItemEvent" not in text
    parse(text)


def test_emit_edits_per_file(panel):
    before, _ = panel
    project = Project.from_corpus(before)
    report = refactor_project(project, 2)
    (outcome,) = report.outcomes
    edits = emit_edits(outcome.plan)
    assert set(edits) == {"Panel.java"}
    assert all(a.end <= b.start for a, b in zip(edits["Panel.java"], edits["Panel.java"][1:]))


def test_interactive_objects():
    project = project_of(corpus_of("handlers")["AController.java"], "AController.java")
    widgets = {w.name: w for w in find_all_interactive_objects(project)}
    assert set(widgets) == {"b1", "b2", "m3"}
    assert widgets["m3"].identity_values == {"three"}


def test_unused_import_edits_only_touch_what_edits_made_unused():
    before = "import a.X;\nimport a.Y;\nimport a.Z;\nclass A { X x; Y y; }\n"
    after = "import a.X;\nimport a.Y;\nimport a.Z;\nclass A { Y y; }\n"
    edits = unused_import_edits("A.java", before, after)
    assert [before[e.start:e.end] for e in edits] == ["import a.X;\n"]
