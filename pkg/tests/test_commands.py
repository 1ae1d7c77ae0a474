import pytest
from conftest import project_of

from blobsmell.commands import Variant, detect_commands, event_flow, find_conditionals
from blobsmell.frontend import nodes as n
from blobsmell.frontend import parse
from blobsmell.listeners import find_ui_listeners


def commands_by_file(project, **kw):
    out = {}
    for listener in find_ui_listeners(project):
        out.setdefault(listener.file.path, []).extend(detect_commands(listener, project, **kw))
    return out


@pytest.fixture(scope="module")
def fixture_cmds(handlers_project):
    return commands_by_file(handlers_project)


@pytest.mark.parametrize("path, count, variant", [
    ("AController.java", 3, None),
    ("PagedView.java", 2, None),
    ("IconPaneMouseListener.java", 3, None),
    ("PagedLambdaView.java", 2, None),
    ("FormController.java", 4, Variant.TYPE_CHECK),
    ("MapController.java", 6, Variant.REFERENCE),
    ("KeySwitch.java", 2, Variant.SWITCH_CASE),
    ("MouseBlob.java", 3, Variant.PROPERTY),
    ("TwoWidgets.java", 1, Variant.PROPERTY),
])
def test_command_counts_and_variants(fixture_cmds, path, count, variant):
    cmds = fixture_cmds[path]
    assert len(cmds) == count
    if variant is not None:
        assert {c.identification.variant for c in cmds} == {variant}


def test_controller_mixes_reference_and_property(fixture_cmds):
    variants = [c.identification.variant for c in fixture_cmds["AController.java"]]
    assert variants == [Variant.REFERENCE, Variant.REFERENCE, Variant.PROPERTY]


def test_menu_counts_per_interface(fixture_cmds):
    by_iface = {}
    for c in fixture_cmds["MenuListener.java"]:
        by_iface.setdefault(c.listener.spec.simple_name, []).append(c)
    assert len(by_iface["ActionListener"]) == 3
    assert [c.is_whole_body for c in by_iface["CaretListener"]] == [True]


def test_identity_flag(fixture_cmds):
    assert all(c.identification.identity for c in fixture_cmds["MapController.java"])
    assert all(c.identification.identity for c in fixture_cmds["FormController.java"])
    # event attributes that are not widget identities
    assert not any(c.identification.identity for c in fixture_cmds["MouseBlob.java"])
    assert not any(c.identification.identity for c in fixture_cmds["KeySwitch.java"])


def test_slices(handlers_project, fixture_cmds):
    text = handlers_project.text_of
    copy, cut = fixture_cmds["SliceExample.java"]
    assert [text(s) for s in copy.before] == ["Object src = evt.getSource();",
                                              'String s = evt.getActionCommand();']
    assert [text(s) for s in cut.main] == ["output.cut();"]
    assert [text(s) for s in cut.after] == ["output.done();"]
    assert text(copy.main[0]).startswith("if(selectedText)")


def test_outer_non_identifying_guard_is_not_an_anchor(fixture_cmds):
    # MenuListener's outer instanceof test encloses the three command anchors
    lines = [c.line for c in fixture_cmds["MenuListener.java"] if not c.is_whole_body]
    assert lines == [19, 22, 24]


def test_default_case_is_not_a_command(fixture_cmds):
    assert [c.line for c in fixture_cmds["KeySwitch.java"]] == [11, 14]


def test_whole_body_when_nothing_depends_on_the_event(fixture_cmds):
    second = fixture_cmds["PagedView.java"][1]
    assert second.is_whole_body and second.line == second.handler_line == 19


HANDLER = """
import java.awt.event.*;
class C implements ActionListener {
  public void actionPerformed(ActionEvent e) {
    route(e.getActionCommand());
  }
  void route(String cmd) {
    if (cmd.equals("a")) { a(); }
    else if (cmd.equals("b")) { b(); }
  }
}
"""


def test_commands_inside_dispatch_methods():
    project = project_of(HANDLER)
    (cmds,) = commands_by_file(project).values()
    assert [c.line for c in cmds] == [8, 9]
    assert all(c.handler_line == 4 for c in cmds)
    assert [[d.method.name for d in c.dispatch_chain] for c in cmds] == [["route"], ["route"]]


def test_dispatch_depth_zero_keeps_one_command():
    project = project_of(HANDLER)
    (cmds,) = commands_by_file(project, dispatch_depth=0).values()
    assert len(cmds) == 1 and cmds[0].is_whole_body


def test_recursive_dispatch_terminates():
    src = """
import java.awt.event.*;
class C implements ActionListener {
  public void actionPerformed(ActionEvent e) { loop(e); }
  void loop(ActionEvent x) { loop(x); }
}
"""
    (cmds,) = commands_by_file(project_of(src)).values()
    assert len(cmds) == 1


def test_plain_else_attaches_to_last_anchor():
    src = """
import java.awt.event.*;
class C implements ActionListener {
  public void actionPerformed(ActionEvent e) {
    if (e.getActionCommand().equals("a")) { a(); }
    else { other(); }
  }
}
"""
    (cmds,) = commands_by_file(project_of(src)).values()
    assert len(cmds) == 1 and cmds[0].else_attached
    assert len(cmds[0].main) == 2


def test_empty_anchor_bodies_are_skipped():
    src = """
import java.awt.event.*;
class C implements ActionListener {
  public void actionPerformed(ActionEvent e) {
    if (e.getSource() == x) { }
    else if (e.getSource() == y) { y(); }
  }
}
"""
    (cmds,) = commands_by_file(project_of(src)).values()
    assert [c.line for c in cmds] == [6]


def test_event_flow_follows_local_chains():
    tree = parse("""class A { void f(E e) {
      Object s = e.getSource();
      Object t = s;
      String k = ((Button) t).getName();
      int unrelated = 3;
    } }""")
    method = next(x for x in tree.walk() if isinstance(x, n.MethodDecl))
    flow = event_flow(method.body.statements, "e", {"getSource"}, {"getName"})
    assert {"e", "s", "t", "k"} <= flow.tainted
    assert "unrelated" not in flow.tainted
    assert {"s", "t"} <= flow.sources
    assert "k" in flow.identities


def test_find_conditionals_includes_nested_and_skips_default():
    tree = parse("""class A { void f(int k) {
      if (a) { if (b) { } }
      switch (k) { case 1: break; default: break; }
    } }""")
    method = next(x for x in tree.walk() if isinstance(x, n.MethodDecl))
    conds = find_conditionals(method.body.statements)
    assert [type(c).__name__ for c in conds] == ["If", "If", "SwitchCase"]
