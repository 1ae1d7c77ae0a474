"""Fragmenting blob listeners into one listener per widget.

The pipeline is: find widgets and their initialization usages, associate each
command with the widgets that trigger it, plan the new listeners, then turn
the plan into text edits.
"""
from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .blobs import BlobDiagnosis, BlobType, classify, DEFAULT_THRESHOLD
from .commands import (Command, Variant, defined_names, detect_commands, names_in,
                       variable_names, walk_statements, DEFAULT_DISPATCH_DEPTH)
from .frontend import SourceFile, TextEdit, apply_edits, parse, tokenize
from .frontend.edits import check_disjoint, line_extent
from .frontend import nodes as n
from .listeners import ListenerImpl, ListenerKind, Registration, find_ui_listeners
from .project import Project


class Style(enum.Enum):
    LAMBDA = "lambda"
    ANONYMOUS = "anonymous"


class Technique(enum.Enum):
    REFERENCE = "ReferenceComparison"
    PROPERTY = "PropertyMatch"
    TYPE_ONLY = "TypeOnly"
    REGISTRATION = "RegistrationSite"


class Reason(enum.Enum):
    SINGLE_OBJECT = "SingleObjectMultiCommand"
    NO_WIDGET = "NoWidgetFound"
    AMBIGUOUS = "AmbiguousAssociation"
    MANUAL_COPY = "ManualAttributeCopy"


class NoWidgetFound(Exception):
    def __init__(self, command: Command, message: str):
        super().__init__(message)
        self.command = command


# -- widgets -----------------------------------------------------------------------

@dataclass(frozen=True)
class IdentitySetter:
    setter: str
    value: str
    statement: n.Node


@dataclass(eq=False)
class WidgetDecl:
    name: str
    type_name: str
    decl: n.VarDeclarator
    kind: str  # "field" or "local"
    file: SourceFile
    owner: Optional[n.Node]  # declaring class (field) or method (local)
    usages: list[n.Node] = field(default_factory=list)
    identities: list[IdentitySetter] = field(default_factory=list)
    registrations: list[n.MethodCall] = field(default_factory=list)

    @property
    def identity_values(self) -> set[str]:
        return {s.value for s in self.identities}

    def __repr__(self) -> str:
        return f"WidgetDecl({self.name}: {self.type_name})"


def _receiver(expr: n.Node) -> Optional[n.Node]:
    """The variable an expression statement operates on (call target or assignment lhs)."""
    if isinstance(expr, n.ExprStmt):
        expr = expr.expr
    if isinstance(expr, n.Assign):
        return expr.target
    if isinstance(expr, n.MethodCall):
        return expr.target
    return None


def string_value(project: Project, expr: n.Node) -> Optional[str]:
    """Literal or constant string value of an expression."""
    if isinstance(expr, n.StringLit):
        return expr.value
    if isinstance(expr, (n.Name, n.FieldAccess)):
        binding = project.resolve_variable(expr)
        if binding is not None and binding.kind == "field" and isinstance(binding.owner, n.ClassDecl):
            key = f"{binding.owner.name}.{binding.name}"
            if key in project.constants:
                return project.constants[key]
        name = expr.id if isinstance(expr, n.Name) else expr.name
        owner = None
        if isinstance(expr, n.FieldAccess) and isinstance(expr.target, n.Name):
            owner = expr.target.id
        return project.constants.lookup(name, owner)
    return None


def find_all_interactive_objects(project: Project) -> list[WidgetDecl]:
    """Fields and locals of widget types, with usages, identities and registrations."""
    widgets: list[WidgetDecl] = []
    by_decl: dict[n.Node, WidgetDecl] = {}
    for f in project.files:
        for node in f.tree.walk():
            if isinstance(node, n.FieldDecl):
                kind = "field"
            elif isinstance(node, n.LocalVar):
                kind = "local"
            else:
                continue
            if project.widget_spec(node.type.name, node) is None:
                continue
            owner = project.enclosing_class(node) if kind == "field" else project.enclosing_callable(node)
            for d in node.declarators:
                w = WidgetDecl(d.name, node.type.simple, d, kind, f, owner)
                widgets.append(w)
                by_decl[d] = w
    if not by_decl:
        return widgets
    getters = project.catalog.identity_setters
    for f in project.files:
        for stmt in f.tree.walk():
            if not isinstance(stmt, n.ExprStmt):
                continue
            target = _receiver(stmt)
            if target is None:
                continue
            binding = project.resolve_variable(target)
            w = by_decl.get(binding.decl) if binding else None
            if w is None:
                continue
            w.usages.append(stmt)
            call = stmt.expr
            if isinstance(call, n.MethodCall):
                if call.name in getters and len(call.args) == 1:
                    value = string_value(project, call.args[0])
                    if value is not None:
                        w.identities.append(IdentitySetter(call.name, value, stmt))
                if project.catalog.is_registration(call.name) and call.args:
                    w.registrations.append(call)
    return widgets


class WidgetIndex:
    def __init__(self, project: Project, widgets: Sequence[WidgetDecl]):
        self.project = project
        self.widgets = list(widgets)
        self._by_decl = {w.decl: w for w in widgets}

    def resolve(self, expr: Optional[n.Node]) -> Optional[WidgetDecl]:
        if expr is None:
            return None
        if isinstance(expr, n.Cast):
            return self.resolve(expr.expr)
        binding = self.project.resolve_variable(expr)
        return self._by_decl.get(binding.decl) if binding else None

    def of_registration(self, reg: Registration) -> Optional[WidgetDecl]:
        return self.resolve(reg.widget)


# -- association -----------------------------------------------------------------

@dataclass(eq=False)
class Association:
    command: Command
    widgets: list[WidgetDecl]
    techniques: dict[WidgetDecl, Technique]
    ambiguous: bool = False


def associate(command: Command, widgets: WidgetIndex, registrations: Sequence[Registration]) -> Association:
    """Widgets that trigger ``command``, cross-checked against the listener's registrants."""
    project = widgets.project
    registrants = [w for w in (widgets.of_registration(r) for r in registrations) if w is not None]
    ident = command.identification
    found: dict[WidgetDecl, Technique] = {}
    if ident is None:
        if len(registrations) == 1 and registrants:
            found[registrants[0]] = Technique.REGISTRATION
    elif ident.variant is Variant.REFERENCE:
        for comp in ident.comparators:
            w = widgets.resolve(comp)
            if w is not None:
                found[w] = Technique.REFERENCE
    elif ident.variant is Variant.TYPE_CHECK:
        type_name = ident.comparator.simple if isinstance(ident.comparator, n.TypeRef) else None
        for w in registrants:
            if _is_of_type(project, w.type_name, type_name):
                found[w] = Technique.TYPE_ONLY
    elif ident.identity:
        for comp in ident.comparators:
            if isinstance(comp, n.MethodCall) and comp.name in project.catalog.identity_getters:
                w = widgets.resolve(comp.target)
                if w is not None:
                    found[w] = Technique.REFERENCE
                continue
            value = string_value(project, comp)
            if value is None:
                continue
            for w in widgets.widgets:
                if value in w.identity_values:
                    found[w] = Technique.PROPERTY
    allowed = set(registrants)
    picked = [w for w in found if w in allowed]
    if not picked:
        raise NoWidgetFound(command, f"no registered widget matches the command at line {command.line}")
    picked.sort(key=lambda w: (w.file.path, w.decl.start))
    techniques = {w: found[w] for w in picked}
    ambiguous = any(t is Technique.TYPE_ONLY for t in techniques.values()) and len(picked) > 1
    return Association(command, picked, techniques, ambiguous)


def _is_of_type(project: Project, type_name: str, wanted: Optional[str]) -> bool:
    if wanted is None:
        return False
    if type_name == wanted:
        return True
    cls = project.find_class(type_name)
    if cls is None:
        return False
    return any(ref.simple == wanted for c in [cls, *project.superclasses(cls)] for ref in c.extends)


# -- plan ---------------------------------------------------------------------

@dataclass(eq=False)
class NewListener:
    command: Command
    widgets: list[WidgetDecl]
    registrations: list[n.MethodCall]
    statements: list[n.Node]  # statements to copy, guards and trailing exits removed
    shared_name: Optional[str] = None  # constant field holding a shared listener


@dataclass(eq=False)
class AttributeCopy:
    member: n.Node  # FieldDecl or MethodDecl of the blob class
    init_statements: list[n.Node]
    target_class: n.ClassDecl


@dataclass(eq=False)
class RefactorPlan:
    blob: BlobDiagnosis
    listeners: list[NewListener]
    handler_removals: list[n.MethodDecl]
    identity_removals: list[n.Node]
    attribute_copies: list[AttributeCopy]
    style: Style
    project: Project


@dataclass(eq=False)
class RefactorOutcome:
    blob: BlobDiagnosis
    plan: Optional[RefactorPlan] = None
    reason: Optional[Reason] = None
    diagnostic: str = ""
    spans: list[tuple[str, int, int]] = field(default_factory=list)  # (path, start, end)

    @property
    def refactored(self) -> bool:
        return self.reason is None

    @property
    def needs_confirmation(self) -> bool:
        return self.reason is Reason.MANUAL_COPY and self.plan is not None


def _fail(blob: BlobDiagnosis, reason: Reason, message: str, nodes: Iterable[n.Node] = (),
          plan: Optional[RefactorPlan] = None) -> RefactorOutcome:
    f = blob.listener.file
    spans = [(f.path, x.start, x.end) for x in nodes] or [(f.path, blob.listener.node.start,
                                                          blob.listener.node.end)]
    return RefactorOutcome(blob, plan, reason, message, spans)


def _copied_statements(cmd: Command) -> tuple[list[n.Node], bool]:
    """Statements of a command as they go into the new listener.

    Trailing ``return``/``break`` are dropped, and backward-sliced statements
    that no longer feed anything once the guards are gone are removed.
    Returns the statements and whether an early exit remains inside them.
    """
    main = list(cmd.main)
    while main and (isinstance(main[-1], n.Break) or (isinstance(main[-1], n.Return) and main[-1].value is None)):
        main.pop()
    kept = main + list(cmd.after)
    used: set[str] = set()
    for s in kept:
        used |= variable_names(s)
    before = []
    for s in reversed(cmd.before):
        if defined_names(s) & used:
            before.append(s)
            used |= variable_names(s)
    stmts = sorted(list(reversed(before)) + kept, key=lambda s: s.start)
    early = any(isinstance(s, (n.Return, n.Break)) for s in walk_statements(stmts)
                if not _inside_loop_or_switch(s, stmts))
    return stmts, early


def _inside_loop_or_switch(target: n.Node, stmts: list[n.Node]) -> bool:
    if not isinstance(target, n.Break):
        return False
    for s in walk_statements(stmts):
        if isinstance(s, (n.For, n.ForEach, n.While, n.Switch)) and s.start < target.start and target.end <= s.end:
            return True
    return False


def _member_refs(project: Project, cmd: Command, stmts: list[n.Node], blob_cls: n.ClassDecl) -> list[n.Node]:
    """Fields and methods of the blob class that the statements depend on."""
    out: list[n.Node] = []
    for s in stmts:
        for sub in s.walk():
            member = None
            if isinstance(sub, (n.Name, n.FieldAccess)):
                if isinstance(sub, n.FieldAccess) and not (isinstance(sub.target, n.Name) and sub.target.id == "this"):
                    continue
                b = project.resolve_variable(sub)
                if b is not None and b.kind == "field" and b.owner is not None and \
                        isinstance(b.owner, n.ClassDecl) and project.is_subclass(blob_cls, b.owner):
                    member = project.parent(b.decl)
            elif isinstance(sub, n.MethodCall) and (sub.target is None or
                                                    (isinstance(sub.target, n.Name) and sub.target.id == "this")):
                m = project.find_method(blob_cls, sub.name, len(sub.args))
                if m is not None:
                    member = m
            if member is not None and member not in out:
                out.append(member)
    return out


def plan(blob: BlobDiagnosis, associations: Sequence[Association], style: Style = Style.LAMBDA,
         project: Optional[Project] = None, widgets: Optional[WidgetIndex] = None) -> RefactorOutcome:
    """Plan the fragmentation of one blob into atomic listeners."""
    listener = blob.listener
    if project is None:
        raise ValueError("plan needs the project")
    if not blob.is_blob:
        return _fail(blob, Reason.SINGLE_OBJECT, "listener is not a blob")
    if blob.blob_type is not BlobType.MULTI_OBJECT:
        return _fail(blob, Reason.SINGLE_OBJECT,
                     "one interactive object produces several commands; manual refactoring required")
    by_cmd = {a.command: a for a in associations}
    for cmd in blob.commands:
        if cmd not in by_cmd:
            return _fail(blob, Reason.NO_WIDGET, f"no widget found for command at line {cmd.line}",
                         [cmd.identification.anchor] if cmd.identification else [])
    for a in associations:
        if a.ambiguous:
            names = ", ".join(w.name for w in a.widgets)
            return _fail(blob, Reason.AMBIGUOUS, f"type check matches several widgets ({names})",
                         [a.command.identification.anchor])
    for cmd in blob.commands:
        if cmd.else_attached:
            return _fail(blob, Reason.AMBIGUOUS,
                         f"else branch of the command at line {cmd.line} has no widget of its own",
                         [cmd.identification.anchor])
    owner_of: dict[WidgetDecl, Command] = {}
    for a in associations:
        for w in a.widgets:
            if w in owner_of and owner_of[w] is not a.command:
                return _fail(blob, Reason.AMBIGUOUS,
                             f"widget {w.name} is associated with several commands",
                             [a.command.identification.anchor])
            owner_of[w] = a.command
    index = widgets or WidgetIndex(project, find_all_interactive_objects(project))
    reg_calls: dict[WidgetDecl, list[n.MethodCall]] = defaultdict(list)
    for reg in listener.registrations:
        w = index.of_registration(reg)
        if w is None:
            return _fail(blob, Reason.AMBIGUOUS, "listener is registered on an unresolved widget", [reg.call])
        if w not in owner_of:
            return _fail(blob, Reason.AMBIGUOUS,
                         f"widget {w.name} registers the listener but no command is associated with it",
                         [reg.call])
        reg_calls[w].append(reg.call)

    news: list[NewListener] = []
    copies: list[AttributeCopy] = []
    manual: list[str] = []
    blob_cls = listener.node if isinstance(listener.node, n.ClassDecl) else None
    for cmd in blob.commands:
        a = by_cmd[cmd]
        stmts, early = _copied_statements(cmd)
        if cmd.dispatch_chain:
            manual.append(f"command at line {cmd.line} is spread over dispatch methods")
        if early:
            manual.append(f"command at line {cmd.line} exits early")
        calls = [c for w in a.widgets for c in reg_calls.get(w, [])]
        news.append(NewListener(cmd, list(a.widgets), calls, stmts))
        if blob_cls is not None:
            for call in calls:
                target_cls = project.enclosing_class_decl(call)
                if target_cls is None or project.is_subclass(target_cls, blob_cls):
                    continue
                for member in _member_refs(project, cmd, stmts, blob_cls):
                    if any(c.member is member and c.target_class is target_cls for c in copies):
                        continue
                    copies.append(AttributeCopy(member, _init_statements(project, member, blob_cls), target_cls))
    _name_shared(news, project)

    removals = [h.node for h in listener.active_handlers if isinstance(h.node, n.MethodDecl)]
    removals += [h.node for h in listener.handlers if h.is_empty and isinstance(h.node, n.MethodDecl)]
    identity = _dead_identity_setters(project, listener, news, removals)
    result = RefactorPlan(blob, news, removals, identity, copies, style, project)
    if manual:
        return _fail(blob, Reason.MANUAL_COPY, "; ".join(manual))
    if copies:
        names = ", ".join(_member_name(c.member) for c in copies)
        return _fail(blob, Reason.MANUAL_COPY,
                     f"commands use members of {listener.enclosing_class} ({names}); "
                     "they are copied to the registering class and need review", [], plan=result)
    return RefactorOutcome(blob, result)


def _member_name(member: n.Node) -> str:
    if isinstance(member, n.MethodDecl):
        return member.name + "()"
    return ", ".join(d.name for d in member.declarators)


def _init_statements(project: Project, member: n.Node, blob_cls: n.ClassDecl) -> list[n.Node]:
    """Constructor statements of the blob class operating on a copied field."""
    if not isinstance(member, n.FieldDecl):
        return []
    names = {d.name for d in member.declarators}
    out = []
    for m in project.methods_of(blob_cls):
        if not m.is_constructor or m.body is None:
            continue
        for s in m.body.statements:
            target = _receiver(s)
            while isinstance(target, n.FieldAccess) and not (isinstance(target.target, n.Name)
                                                              and target.target.id == "this"):
                target = target.target
            if isinstance(target, n.Name) and target.id in names:
                out.append(s)
            elif isinstance(target, n.FieldAccess) and target.name in names:
                out.append(s)
    return out


def _name_shared(news: list[NewListener], project: Project) -> None:
    taken: set[str] = set()
    for cls in project.classes:
        for m in cls.members:
            if isinstance(m, n.FieldDecl):
                taken.update(d.name for d in m.declarators)
    for nl in news:
        if len(nl.registrations) < 2:
            continue
        base = "_".join(w.name for w in nl.widgets) + "_listener"
        name, k = base, 2
        while name in taken:
            name, k = f"{base}{k}", k + 1
        taken.add(name)
        nl.shared_name = name


def _dead_identity_setters(project: Project, listener: ListenerImpl, news: list[NewListener],
                           removed: list[n.Node]) -> list[n.Node]:
    """Identity setters of the plan's widgets whose value nothing else reads."""
    getters = project.catalog.identity_getters
    plan_widgets = {w.name for nl in news for w in nl.widgets}
    for nl in news:
        watched = plan_widgets | {nl.command.event_param or ""}
        for s in nl.statements:
            for x in s.walk():
                if isinstance(x, n.MethodCall) and x.name in getters and names_in(x.target) & watched:
                    return []
    setters = [ident for nl in news for w in nl.widgets for ident in w.identities]
    if not setters:
        return []
    dead = set(removed) | {s.statement for s in setters}
    out = []
    for value in sorted({s.value for s in setters}):
        if not _value_referenced(project, value, dead):
            out.extend(s.statement for s in setters if s.value == value)
    return sorted(set(out), key=lambda s: (project.file_of(s).path, s.start))


def _value_referenced(project: Project, value: str, dead: set[n.Node]) -> bool:
    for f in project.files:
        for node in f.tree.walk():
            if not isinstance(node, (n.StringLit, n.Name, n.FieldAccess)):
                continue
            parent = project.parent(node)
            if isinstance(parent, n.VarDeclarator):
                continue  # the constant's own initializer
            if isinstance(parent, n.FieldAccess) and parent.target is node:
                continue
            if any(anc in dead for anc in project.ancestors(node)):
                continue
            if isinstance(node, n.StringLit):
                if node.value == value:
                    return True
            elif string_value(project, node) == value:
                return True
    return False


# -- edits --------------------------------------------------------------------------

def _line_start(text: str, pos: int) -> int:
    return text.rfind("\n", 0, pos) + 1


def _indent_at(text: str, pos: int) -> str:
    start = _line_start(text, pos)
    i = start
    while i < len(text) and text[i] in " \t":
        i += 1
    return text[start:i]


def _column(text: str, pos: int) -> int:
    return pos - _line_start(text, pos)


def _indent_unit(cmd: Command) -> str:
    text = cmd.listener.file.text
    method = cmd.handler.node
    stmts = cmd.handler.statements
    if isinstance(method, n.MethodDecl) and stmts:
        outer = _indent_at(text, method.start)
        inner = _indent_at(text, stmts[0].start)
        if inner.startswith(outer) and len(inner) > len(outer):
            return inner[len(outer):]
    return "    "


def _rename(stmt: n.Node, text: str, old: str, new: str) -> str:
    """Text of ``stmt`` with references to local ``old`` renamed."""
    if old == new:
        return text[stmt.start:stmt.end]
    edits = []
    for sub in stmt.walk():
        if isinstance(sub, n.Name) and sub.id == old:
            edits.append((sub.start, sub.end, new))
        elif isinstance(sub, n.Opaque) and old in sub.idents:
            for m in re.finditer(rf"\b{re.escape(old)}\b", text[sub.start:sub.end]):
                edits.append((sub.start + m.start(), sub.start + m.end(), new))
    out = text[stmt.start:stmt.end]
    for s, e, r in sorted(edits, reverse=True):
        out = out[:s - stmt.start] + r + out[e - stmt.start:]
    return out


def _reindent(stmt_text: str, orig_col: int, indent: str) -> list[str]:
    lines = stmt_text.split("\n")
    out = [indent + lines[0]]
    for line in lines[1:]:
        strip = 0
        while strip < orig_col and strip < len(line) and line[strip] in " \t":
            strip += 1
        out.append(indent + line[strip:] if line.strip() else "")
    return out


def _fresh_event_name(project: Project, call: n.MethodCall, wanted: str) -> str:
    def clash(name: str) -> bool:
        b = project.resolve_name(name, call)
        return b is not None and b.kind in ("local", "param")
    if not clash(wanted):
        return wanted
    for cand in ["evt"] + [f"evt{i}" for i in range(2, 100)]:
        if not clash(cand):
            return cand
    return wanted


def _listener_text(nl: NewListener, style: Style, event: str, indent: str, unit: str,
                   project: Project) -> str:
    cmd = nl.command
    text = (cmd.file or cmd.listener.file).text
    original = cmd.event_param or event
    if indent.endswith("\t"):
        unit = "\t"  # follow the destination's tab indentation
    body_indent = indent + unit * (1 if style is Style.LAMBDA else 2)
    lines: list[str] = []
    for s in nl.statements:
        lines.extend(_reindent(_rename(s, text, original, event), _column(text, s.start), body_indent))
    spec = cmd.listener.spec
    if style is Style.LAMBDA and spec.is_functional:
        return f"{event} -> {{\n" + "\n".join(lines) + f"\n{indent}}}"
    handler = cmd.handler.node
    event_type = handler.params[0].type.name if isinstance(handler, n.MethodDecl) and handler.params[0].type \
        else (spec.event_type(cmd.handler.name) or "Object")
    type_name = spec.simple_name
    adapters = [a for (tk, a), specs in project.catalog.adapters.items()
                if tk == spec.toolkit and specs == (spec,) or (tk == spec.toolkit and spec in specs
                                                              and len(spec.handlers) > 1)]
    others = [h for h in spec.handler_names if h != cmd.handler.name]
    if others and adapters:
        type_name = adapters[0].rsplit(".", 1)[-1]
        others = []
    out = [f"new {type_name}() {{"]
    mind = indent + unit
    out.append(f"{mind}@Override")
    out.append(f"{mind}public void {cmd.handler.name}({event_type} {event}) {{")
    out.extend(lines)
    out.append(f"{mind}}}")
    for other in others:
        other_type = spec.event_type(other) or event_type
        out.append(f"{mind}@Override")
        out.append(f"{mind}public void {other}({other_type} {event}) {{")
        out.append(f"{mind}}}")
    out.append(f"{indent}}}")
    return "\n".join(out)


def emit_edits(plan: RefactorPlan, style: Optional[Style] = None,
               include_implements: bool = True) -> dict[str, list[TextEdit]]:
    """Text edits per file realizing the plan."""
    style = style or plan.style
    project = plan.project
    if not plan.listeners:
        return {}
    edits: dict[str, list[TextEdit]] = defaultdict(list)
    listener = plan.blob.listener
    unit = _indent_unit(plan.listeners[0].command)
    shared_inserts: dict[tuple[str, int], list[str]] = defaultdict(list)

    for nl in plan.listeners:
        event = nl.command.event_param or "e"
        if nl.shared_name is None:
            for call in nl.registrations:
                f = project.file_of(call)
                arg = call.args[-1]
                name = _fresh_event_name(project, call, event)
                text = _listener_text(nl, style, name, _indent_at(f.text, call.start), unit, project)
                edits[f.path].append(TextEdit(arg.start, arg.end, text))
            continue
        first = nl.registrations[0]
        f = project.file_of(first)
        member = _enclosing_member(project, first)
        indent = _indent_at(f.text, member.start)
        value = _listener_text(nl, style, event, indent, unit, project)
        spec = nl.command.listener.spec
        decl = f"{indent}final {spec.simple_name} {nl.shared_name} = {value};\n\n"
        shared_inserts[(f.path, _line_start(f.text, member.start))].append(decl)
        for call in nl.registrations:
            cf = project.file_of(call)
            arg = call.args[-1]
            edits[cf.path].append(TextEdit(arg.start, arg.end, nl.shared_name))
    for (path, pos), decls in shared_inserts.items():
        edits[path].append(TextEdit(pos, pos, "".join(decls)))

    for copy in plan.attribute_copies:
        _copy_edits(project, copy, plan, edits)

    f = listener.file
    for method in plan.handler_removals:
        start, end = line_extent(f.text, method.start, method.end)
        prev = f.text.rfind("\n", 0, start - 1) + 1 if start > 0 else 0
        if start > 0 and not f.text[prev:start].strip():
            start = prev
        edits[f.path].append(TextEdit(start, end, ""))
    for stmt in plan.identity_removals:
        sf = project.file_of(stmt)
        start, end = line_extent(sf.text, stmt.start, stmt.end)
        edits[sf.path].append(TextEdit(start, end, ""))
    if include_implements:
        cls = listener.node
        if isinstance(cls, n.ClassDecl):
            edit = implements_edit(project, cls, [listener.spec.simple_name])
            if edit is not None:
                edits[f.path].append(edit)
    return {p: sorted(es) for p, es in edits.items()}


def _enclosing_member(project: Project, node: n.Node) -> n.Node:
    prev = node
    for anc in project.ancestors(node):
        if isinstance(anc, n.ClassDecl):
            return prev
        prev = anc
    return prev


def _copy_edits(project: Project, copy: AttributeCopy, plan: RefactorPlan,
                edits: dict[str, list[TextEdit]]) -> None:
    src = project.file_of(copy.member)
    dst = project.file_of(copy.target_class)
    target = copy.target_class
    member_text = src.text[copy.member.start:copy.member.end]
    col = _column(src.text, copy.member.start)
    first_member = target.members[0] if target.members else None
    if first_member is not None:
        indent = _indent_at(dst.text, first_member.start)
        pos = _line_start(dst.text, first_member.start)
    else:
        indent = "    "
        pos = target.body_start + 1
    lines = _reindent(member_text, col, indent)
    edits[dst.path].append(TextEdit(pos, pos, "\n".join(lines) + "\n"))
    if not copy.init_statements:
        return
    calls = [c for nl in plan.listeners for c in nl.registrations
             if project.enclosing_class_decl(c) is target]
    if not calls:
        return
    stmt = _enclosing_statement(project, calls[0])
    indent = _indent_at(dst.text, stmt.start)
    pos = _line_start(dst.text, stmt.start)
    text = []
    for s in copy.init_statements:
        text.extend(_reindent(src.text[s.start:s.end], _column(src.text, s.start), indent))
    method = project.enclosing_method(stmt)
    if method is not None and method.body is not None and method.body.statements:
        pos = _line_start(dst.text, method.body.statements[0].start)
    edits[dst.path].append(TextEdit(pos, pos, "\n".join(text) + "\n"))


def _enclosing_statement(project: Project, node: n.Node) -> n.Node:
    for anc in [node, *project.ancestors(node)]:
        if isinstance(anc, tuple(n.STATEMENT_KINDS)):
            return anc
    return node


def implements_edit(project: Project, cls: n.ClassDecl, removed: Sequence[str]) -> Optional[TextEdit]:
    """Edit dropping the named interfaces from a class's implements clause."""
    if cls.implements_span is None:
        return None
    refs = cls.implements
    gone = [r for r in refs if r.simple in removed]
    if not gone:
        return None
    f = project.file_of(cls)
    text = f.text
    if len(gone) == len(refs):
        start = cls.implements_span[0]
        while start > 0 and text[start - 1] in " \t\n\r":
            start -= 1
        return TextEdit(start, cls.implements_span[1], "")
    keep = [r for r in refs if r not in gone]
    return TextEdit(refs[0].start, refs[-1].end, ", ".join(text[r.start:r.end] for r in keep))


def _used_identifiers(text: str) -> set[str]:
    """Identifiers outside import declarations."""
    used = set()
    in_import = False
    for t in tokenize(text):
        if t.text == "import":
            in_import = True
        elif t.text == ";" and in_import:
            in_import = False
        elif not in_import and t.kind == "ident":
            used.add(t.text)
    return used


def unused_import_edits(path: str, before: str, after: str, names: Iterable[str] = ()) -> list[TextEdit]:
    """Edits (on ``before``) deleting imports that ``after`` no longer uses.

    Only imports the edits made unused are touched: those used in ``before``,
    plus ``names`` (the listener and event types of removed handlers).
    """
    used_before = _used_identifiers(before)
    used_after = _used_identifiers(after)
    candidates = set(names) | used_before
    out = []
    for imp in parse(before).root.imports:
        simple = imp.name.rsplit(".", 1)[-1]
        if imp.wildcard or imp.is_static or simple not in candidates or simple in used_after:
            continue
        start, end = line_extent(before, imp.start, imp.end)
        out.append(TextEdit(start, end, ""))
    return out


def missing_import_edits(dst: SourceFile, sources: Sequence[SourceFile],
                         edits: Sequence[TextEdit]) -> list[TextEdit]:
    """Imports that text inserted into ``dst`` needs, taken from the files it came from."""
    have = {imp.rsplit(".", 1)[-1] for imp in dst.tree.imports}
    wanted: dict[str, str] = {}
    for src in sources:
        if src.path == dst.path:
            continue
        by_simple = {imp.rsplit(".", 1)[-1]: imp for imp in src.tree.imports}
        for e in edits:
            for t in tokenize(e.replacement):
                if t.kind == "ident" and t.text in by_simple and t.text not in have:
                    wanted.setdefault(t.text, by_simple[t.text])
    if not wanted:
        return []
    root = dst.tree.root
    lines = "".join(f"import {q};\n" for q in sorted(set(wanted.values())))
    if root.imports:
        pos = dst.text.find("\n", root.imports[-1].end) + 1
    elif root.package is not None:
        pos = dst.text.find("\n", root.package.end) + 1
        lines = "\n" + lines
    else:
        pos, lines = 0, lines + "\n"
    return [TextEdit(pos, pos, lines)]


# -- project-level driver ---------------------------------------------------------

@dataclass
class RefactorReport:
    outcomes: list[RefactorOutcome]
    edits: dict[str, list[TextEdit]]

    @property
    def successes(self) -> int:
        return sum(1 for o in self.outcomes if o.refactored)

    @property
    def failures(self) -> int:
        return len(self.outcomes) - self.successes


def analyze(project: Project, threshold: int = DEFAULT_THRESHOLD,
            dispatch_depth: int = DEFAULT_DISPATCH_DEPTH):
    """Listeners, their commands, diagnoses and associations for a project."""
    index = WidgetIndex(project, find_all_interactive_objects(project))
    results = []
    for listener in find_ui_listeners(project):
        commands = detect_commands(listener, project, dispatch_depth)
        assocs: list[Association] = []
        per_cmd: dict[Command, frozenset] = {}
        for cmd in commands:
            try:
                a = associate(cmd, index, listener.registrations)
            except NoWidgetFound:
                continue
            assocs.append(a)
            per_cmd[cmd] = frozenset(a.widgets)
        diag = classify(listener, commands, per_cmd, threshold)
        results.append((diag, assocs))
    return index, results


def refactor_project(project: Project, threshold: int = DEFAULT_THRESHOLD, style: Style = Style.LAMBDA,
                     dispatch_depth: int = DEFAULT_DISPATCH_DEPTH,
                     confirm_attribute_copy: bool = False) -> RefactorReport:
    """Plan and emit edits for every blob of the project.

    Implements-clause edits are merged per class, and unused listener and
    event imports are dropped from the touched files.
    """
    index, results = analyze(project, threshold, dispatch_depth)
    outcomes = []
    merged: dict[str, list[TextEdit]] = defaultdict(list)
    removed_ifaces: dict[n.ClassDecl, list[str]] = defaultdict(list)
    import_names: dict[str, set[str]] = defaultdict(set)
    origins: dict[str, set[str]] = defaultdict(set)
    for diag, assocs in results:
        if not diag.is_blob:
            continue
        outcome = plan(diag, assocs, style, project, index)
        outcomes.append(outcome)
        apply = outcome.refactored or (outcome.needs_confirmation and confirm_attribute_copy)
        if not apply or outcome.plan is None:
            continue
        for path, es in emit_edits(outcome.plan, style, include_implements=False).items():
            merged[path].extend(es)
            origins[path].add(diag.listener.file.path)
        listener = diag.listener
        if isinstance(listener.node, n.ClassDecl):
            removed_ifaces[listener.node].append(listener.spec.simple_name)
        names = import_names[listener.file.path]
        names.add(listener.spec.simple_name)
        for h in listener.handlers:
            if isinstance(h.node, n.MethodDecl) and h.node.params and h.node.params[0].type:
                names.add(h.node.params[0].type.simple)
    for cls, ifaces in removed_ifaces.items():
        edit = implements_edit(project, cls, ifaces)
        if edit is not None:
            merged[project.file_of(cls).path].append(edit)
    texts = {f.path: f for f in project.files}
    for path, es in list(merged.items()):
        check_disjoint(es)
        before = texts[path].text
        after = apply_edits(before, es)
        es.extend(unused_import_edits(path, before, after, import_names.get(path, ())))
        es.extend(missing_import_edits(texts[path], [texts[o] for o in sorted(origins[path])], es))
        merged[path] = sorted(es)
    return RefactorReport(outcomes, dict(sorted(merged.items())))
