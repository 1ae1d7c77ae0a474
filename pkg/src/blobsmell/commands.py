"""UI command detection inside listener handlers.

A handler is split into commands at its *source object identification*
conditionals: the innermost conditionals whose condition depends on the
event.  Each command gets the anchor's block as main statements, plus the
statements before and after it that it depends on or that depend on it.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .frontend import SourceFile
from .frontend import nodes as n
from .listeners import Handler, ListenerImpl
from .project import Project, body_statements

Conditional = Union[n.If, n.SwitchCase]

DEFAULT_DISPATCH_DEPTH = 3
_TYPE_NAME = re.compile(r"^[A-Z][a-z0-9]")


class Variant(enum.Enum):
    PROPERTY = "PropertyComparison"
    TYPE_CHECK = "TypeCheck"
    REFERENCE = "ReferenceComparison"
    SWITCH_CASE = "SwitchCase"


@dataclass(eq=False)
class SourceObjectIdentification:
    anchor: Conditional
    variant: Variant
    event_expr: Optional[n.Node]
    comparators: list[n.Node]
    guards: list[n.Node] = field(default_factory=list)  # conditions evaluated on the way
    identity: bool = False  # identifies the widget rather than an event attribute

    @property
    def comparator(self) -> Optional[n.Node]:
        return self.comparators[0] if self.comparators else None


@dataclass(eq=False)
class DispatchMethod:
    method: n.MethodDecl
    arg_index: int
    call: n.MethodCall
    file: SourceFile

    @property
    def param(self) -> str:
        return self.method.params[self.arg_index].name


@dataclass(eq=False)
class Command:
    listener: ListenerImpl
    handler: Handler
    identification: Optional[SourceObjectIdentification]
    main: list[n.Node]
    before: list[n.Node] = field(default_factory=list)
    after: list[n.Node] = field(default_factory=list)
    dispatch_chain: list[DispatchMethod] = field(default_factory=list)
    file: Optional[SourceFile] = None
    else_attached: bool = False
    event_param: Optional[str] = None  # event name in scope of the statements

    @property
    def statements(self) -> list[n.Node]:
        return sorted(self.before + self.main + self.after, key=lambda s: s.start)

    @property
    def line(self) -> int:
        """Anchor line, or the handler line for whole-body commands."""
        f = self.file or self.listener.file
        if self.identification is not None:
            return f.tree.line_of(self.identification.anchor)
        return self.handler_line

    @property
    def handler_line(self) -> int:
        """Line of the handler's name (past any annotations), or of a lambda."""
        node = self.handler.node
        offset = node.name_start if isinstance(node, n.MethodDecl) and node.name_start else node.start
        return self.listener.file.tree.line_of(offset)

    @property
    def is_whole_body(self) -> bool:
        return self.identification is None


# -- statement-level helpers -----------------------------------------------------

def child_statements(stmt: n.Node) -> list[n.Node]:
    """Direct sub-statements of a compound statement."""
    if isinstance(stmt, n.Block):
        return list(stmt.statements)
    if isinstance(stmt, n.If):
        return [stmt.then] + ([stmt.orelse] if stmt.orelse is not None else [])
    if isinstance(stmt, n.Switch):
        return list(stmt.cases)
    if isinstance(stmt, n.SwitchCase):
        return list(stmt.body)
    if isinstance(stmt, (n.For, n.ForEach, n.While)):
        return [stmt.body]
    if isinstance(stmt, n.Try):
        return [stmt.body]
    return []


def walk_statements(stmts: Iterable[n.Node]) -> Iterator[n.Node]:
    """Pre-order walk of statements, not entering expressions."""
    for s in stmts:
        yield s
        yield from walk_statements(child_statements(s))


def expressions_of(stmt: n.Node) -> list[n.Node]:
    """Expressions owned by a statement itself (not by its sub-statements)."""
    if isinstance(stmt, n.If):
        return [stmt.cond]
    if isinstance(stmt, n.Switch):
        return [stmt.selector]
    if isinstance(stmt, n.SwitchCase):
        return list(stmt.labels)
    if isinstance(stmt, n.For):
        return list(stmt.init) + ([stmt.cond] if stmt.cond else []) + list(stmt.update)
    if isinstance(stmt, n.ForEach):
        return [stmt.iterable]
    if isinstance(stmt, n.While):
        return [stmt.cond]
    if isinstance(stmt, (n.Block, n.Try)):
        return []
    return [stmt]


def names_in(node: Optional[n.Node]) -> set[str]:
    """Identifiers read or written anywhere below ``node``."""
    out: set[str] = set()
    if node is None:
        return out
    for sub in node.walk():
        if isinstance(sub, n.Name):
            out.add(sub.id)
        elif isinstance(sub, n.Opaque):
            out.update(sub.idents)
        elif isinstance(sub, n.VarDeclarator):
            out.add(sub.name)
    return out


def variable_names(node: Optional[n.Node]) -> set[str]:
    """Like :func:`names_in` minus ``this``/``super`` and type-like names."""
    return {x for x in names_in(node) if x not in ("this", "super") and not _TYPE_NAME.match(x)}


def defined_names(stmt: n.Node) -> set[str]:
    """Variables a statement (or anything nested in it) may assign."""
    out: set[str] = set()
    for sub in stmt.walk():
        if isinstance(sub, n.VarDeclarator):
            out.add(sub.name)
        elif isinstance(sub, n.Assign):
            out.update(_assigned(sub.target))
        elif isinstance(sub, n.Unary) and sub.op in ("++", "--"):
            out.update(_assigned(sub.operand))
        elif isinstance(sub, n.ForEach):
            out.add(sub.var.name)
        elif isinstance(sub, n.Opaque):
            out.update(sub.idents)
        elif isinstance(sub, n.MethodCall) and sub.target is not None:
            # a call on a variable may mutate it (e.g. list.add)
            out.update(_assigned(sub.target))
    return out


def _assigned(target: n.Node) -> set[str]:
    if isinstance(target, n.Name):
        return {target.id}
    if isinstance(target, n.FieldAccess):
        if isinstance(target.target, n.Name) and target.target.id == "this":
            return {target.name}
        return _assigned(target.target)
    if isinstance(target, n.ArrayAccess):
        return _assigned(target.target)
    return set()


def mentions(node: Optional[n.Node], names: set[str]) -> bool:
    return bool(names_in(node) & names)


# -- event data flow --------------------------------------------------------------

@dataclass
class EventFlow:
    """Locals that carry the event, its source widget, or its identity property."""
    event: str
    tainted: set[str]
    sources: set[str]
    identities: set[str]


def _local_defs(stmts: list[n.Node]) -> Iterator[tuple[str, n.Node]]:
    declared = set()
    for s in walk_statements(stmts):
        if isinstance(s, n.LocalVar):
            for d in s.declarators:
                declared.add(d.name)
                if d.init is not None:
                    yield d.name, d.init
        elif isinstance(s, n.ForEach):
            declared.add(s.var.name)
            yield s.var.name, s.iterable
        for expr in expressions_of(s):
            for sub in expr.walk():
                if isinstance(sub, n.Assign) and isinstance(sub.target, n.Name) and sub.target.id in declared:
                    yield sub.target.id, sub.value
                elif isinstance(sub, n.InstanceOf) and sub.binding:
                    yield sub.binding, sub.expr


def event_flow(stmts: list[n.Node], event: str, catalog_sources: frozenset[str] | set[str] = frozenset(),
               identity_getters: frozenset[str] | set[str] = frozenset()) -> EventFlow:
    flow = EventFlow(event, {event}, set(), set())
    defs = list(_local_defs(stmts))
    changed = True
    while changed:
        changed = False
        for name, value in defs:
            if name not in flow.tainted and mentions(value, flow.tainted):
                flow.tainted.add(name)
                changed = True
            if name not in flow.sources and is_source_expr(value, flow, catalog_sources):
                flow.sources.add(name)
                changed = True
            if name not in flow.identities and is_identity_expr(value, flow, identity_getters):
                flow.identities.add(name)
                changed = True
    return flow


def is_source_expr(expr: n.Node, flow: EventFlow, sources: Iterable[str]) -> bool:
    sources = set(sources)
    if isinstance(expr, n.Cast):
        return is_source_expr(expr.expr, flow, sources)
    if isinstance(expr, n.Name):
        return expr.id in flow.sources
    if isinstance(expr, n.MethodCall):
        return expr.name in sources and not expr.args and mentions(expr.target, flow.tainted)
    if isinstance(expr, n.FieldAccess):
        return expr.name in sources and mentions(expr.target, flow.tainted)
    return False


def is_identity_expr(expr: n.Node, flow: EventFlow, getters: Iterable[str]) -> bool:
    if isinstance(expr, n.Cast):
        return is_identity_expr(expr.expr, flow, getters)
    if isinstance(expr, n.Name):
        return expr.id in flow.identities
    if isinstance(expr, n.MethodCall):
        return expr.name in set(getters) and not expr.args and mentions(expr.target, flow.tainted)
    return False


# -- Algorithm steps --------------------------------------------------------------

def find_conditionals(body: list[n.Node]) -> list[Conditional]:
    """All ifs and labelled switch cases in the body, nested ones included."""
    out: list[Conditional] = []
    for s in walk_statements(body):
        if isinstance(s, n.If):
            out.append(s)
        elif isinstance(s, n.SwitchCase) and not s.is_default:
            out.append(s)
    return out


class _BodyIndex:
    """Statement-level parents and containing lists within one body."""

    def __init__(self, body: list[n.Node]):
        self.body = body
        self.parent: dict[n.Node, Optional[n.Node]] = {}
        self.container: dict[n.Node, tuple[list[n.Node], int]] = {}
        self._index(None, body)

    def _index(self, owner: Optional[n.Node], stmts: list[n.Node]) -> None:
        for i, s in enumerate(stmts):
            self.parent[s] = owner
            self.container[s] = (stmts, i)
            self._children(s)

    def _children(self, s: n.Node) -> None:
        if isinstance(s, n.Block):
            self._index(s, s.statements)
        elif isinstance(s, n.SwitchCase):
            self._index(s, s.body)
        elif isinstance(s, n.Switch):
            for c in s.cases:
                self.parent[c] = s
                self._children(c)
        else:
            for c in child_statements(s):
                self.parent[c] = s
                self._children(c)

    def chain(self, node: n.Node) -> Iterator[n.Node]:
        cur = self.parent.get(node)
        while cur is not None:
            yield cur
            cur = self.parent.get(cur)


def _switch_of(case: n.SwitchCase, index: _BodyIndex) -> n.Switch:
    sw = index.parent[case]
    assert isinstance(sw, n.Switch)
    return sw


def filter_event_dependent(conds: list[Conditional], event_param: str,
                           body: Optional[list[n.Node]] = None) -> list[Conditional]:
    """Conditionals reading the event directly or through local def-use chains."""
    if body is None:
        body = [c for c in conds]
    flow = event_flow(body, event_param)
    index = _BodyIndex(body)
    return [c for c in conds if _depends(c, flow.tainted, index)]


def _depends(c: Conditional, tainted: set[str], index: _BodyIndex) -> bool:
    if isinstance(c, n.If):
        return mentions(c.cond, tainted)
    sw = index.parent.get(c)
    return isinstance(sw, n.Switch) and mentions(sw.selector, tainted)


def _inside(inner: n.Node, outer: n.Node) -> bool:
    return outer.start <= inner.start and inner.end <= outer.end and inner is not outer


def _innermost(dependent: list[Conditional]) -> list[Conditional]:
    anchors = []
    for c in dependent:
        region = c.then if isinstance(c, n.If) else None
        if region is not None:
            nested = any(_inside(d, region) or d is region for d in dependent)
        else:
            nested = any(any(_inside(d, s) or d is s for s in c.body) for d in dependent)
        if not nested:
            anchors.append(c)
    return anchors


def select_command_anchors(conds: list[Conditional], flow: Optional[EventFlow] = None,
                           body: Optional[list[n.Node]] = None,
                           identity_getters: Iterable[str] = (),
                           sources: Iterable[str] = ("getSource",)) -> list[SourceObjectIdentification]:
    """Innermost event-dependent conditionals, each classified by variant."""
    body = body if body is not None else list(conds)
    index = _BodyIndex(body)
    if flow is None:
        flow = EventFlow("", set(), set(), set())
    out = []
    for c in _innermost(conds):
        out.append(_identify(c, flow, index, set(identity_getters), set(sources)))
    return out


def _guards(c: Conditional, index: _BodyIndex) -> list[n.Node]:
    guards: list[n.Node] = []
    if isinstance(c, n.If):
        guards.append(c.cond)
    for anc in index.chain(c):
        if isinstance(anc, n.If):
            guards.append(anc.cond)
        elif isinstance(anc, n.Switch):
            guards.append(anc.selector)
            if isinstance(c, n.SwitchCase):
                guards.extend(c.labels)
        elif isinstance(anc, n.While):
            guards.append(anc.cond)
    return guards


def _identify(c: Conditional, flow: EventFlow, index: _BodyIndex, getters: set[str],
              sources: set[str]) -> SourceObjectIdentification:
    guards = _guards(c, index)
    if isinstance(c, n.SwitchCase):
        selector = _switch_of(c, index).selector
        return SourceObjectIdentification(c, Variant.SWITCH_CASE, selector, list(c.labels), guards,
                                          identity=is_identity_expr(selector, flow, getters))
    found: dict[Variant, tuple[n.Node, n.Node]] = {}
    for sub in c.cond.walk():
        if isinstance(sub, (n.Lambda, n.New)):
            continue
        pair = None
        if isinstance(sub, n.Binary) and sub.op in ("==", "!="):
            pair = _split(sub.left, sub.right, flow)
        elif isinstance(sub, n.MethodCall) and sub.name in ("equals", "equalsIgnoreCase", "contentEquals") \
                and len(sub.args) == 1 and sub.target is not None:
            pair = _split(sub.target, sub.args[0], flow)
        elif isinstance(sub, n.InstanceOf) and mentions(sub.expr, flow.tainted):
            found.setdefault(Variant.TYPE_CHECK, (sub.expr, sub.type))
            continue
        if pair is None:
            continue
        event_side, other = pair
        if isinstance(other, n.Literal) and other.text == "null":
            continue
        variant = Variant.REFERENCE if is_source_expr(event_side, flow, sources) else Variant.PROPERTY
        if variant is Variant.PROPERTY and variant in found and not is_identity_expr(
                found[variant][0], flow, getters) and is_identity_expr(event_side, flow, getters):
            found[variant] = (event_side, other)
        found.setdefault(variant, (event_side, other))
    for variant in (Variant.REFERENCE, Variant.PROPERTY, Variant.TYPE_CHECK):
        if variant in found:
            event_side, other = found[variant]
            comparators = [other]
            if variant is Variant.REFERENCE:
                comparators = [o for v, (e, o) in _all_pairs(c.cond, flow, sources) if v is variant]
            identity = variant is not Variant.PROPERTY or is_identity_expr(event_side, flow, getters)
            return SourceObjectIdentification(c, variant, event_side, comparators, guards, identity)
    event_side = next((s for s in c.cond.walk() if isinstance(s, n.Name) and s.id in flow.tainted), None)
    return SourceObjectIdentification(c, Variant.PROPERTY, event_side, [], guards, False)


def _all_pairs(cond: n.Node, flow: EventFlow, sources: set[str]):
    for sub in cond.walk():
        if isinstance(sub, n.Binary) and sub.op == "==":
            pair = _split(sub.left, sub.right, flow)
            if pair and is_source_expr(pair[0], flow, sources):
                yield Variant.REFERENCE, pair


def _split(a: n.Node, b: n.Node, flow: EventFlow) -> Optional[tuple[n.Node, n.Node]]:
    ta, tb = mentions(a, flow.tainted), mentions(b, flow.tainted)
    if ta and not tb:
        return a, b
    if tb and not ta:
        return b, a
    return None


# -- command extraction ----------------------------------------------------------

@dataclass
class _Body:
    statements: list[n.Node]
    event: str
    owner: n.Node  # handler node or dispatch method
    file: SourceFile
    chain: list[DispatchMethod]


def _branch(stmt: n.Node) -> list[n.Node]:
    return list(stmt.statements) if isinstance(stmt, n.Block) else [stmt]


def _strip_anchors(stmts: list[n.Node], anchors: list[Conditional]) -> list[n.Node]:
    out = []
    for s in stmts:
        if any(a is s for a in anchors):
            continue
        if any(_inside(a, s) for a in anchors):
            out.extend(_strip_anchors(child_statements(s), anchors))
        else:
            out.append(s)
    return out


def _attached_else(anchor: n.If, dependent: list[Conditional], anchors: list[Conditional]) -> list[n.Node]:
    orelse = anchor.orelse
    if orelse is None:
        return []
    if isinstance(orelse, n.If) and any(orelse is d for d in dependent):
        return []
    return _strip_anchors(_branch(orelse), anchors)


def extract_command(anchor: SourceObjectIdentification, body: list[n.Node],
                    all_anchors: Optional[list[Conditional]] = None,
                    dependent: Optional[list[Conditional]] = None) -> Command:
    """Main statements plus backward and forward slices for one anchor.

    The returned command has no owner set; :func:`detect_commands` fills it.
    """
    all_anchors = all_anchors if all_anchors is not None else [anchor.anchor]
    dependent = dependent if dependent is not None else all_anchors
    index = _BodyIndex(body)
    c = anchor.anchor
    if isinstance(c, n.If):
        main = _branch(c.then)
        attached = _attached_else(c, dependent, all_anchors)
    else:
        main = list(c.body)
        attached = []
    main = main + attached
    others = [a for a in all_anchors if a is not c]
    before = _backward(c, main, anchor.guards, index, others)
    after = _forward(c, main, index, others)
    cmd = Command(None, None, anchor, main, before, after)  # type: ignore[arg-type]
    cmd.else_attached = bool(attached)
    return cmd


def _preceding(node: n.Node, index: _BodyIndex) -> list[n.Node]:
    out: list[n.Node] = []
    cur: Optional[n.Node] = node
    while cur is not None:
        if cur in index.container:
            lst, i = index.container[cur]
            out.extend(lst[:i])
        cur = index.parent.get(cur)
    return out


def _chain_top(c: Conditional, index: _BodyIndex) -> n.Node:
    top: n.Node = c
    while True:
        p = index.parent.get(top)
        if isinstance(p, n.If) and p.orelse is top:
            top = p
        elif isinstance(top, n.SwitchCase) and isinstance(p, n.Switch):
            top = p
        else:
            return top


def _following(node: n.Node, index: _BodyIndex) -> list[n.Node]:
    out: list[n.Node] = []
    cur: Optional[n.Node] = _chain_top(node, index) if isinstance(node, (n.If, n.SwitchCase)) else node
    while cur is not None:
        if cur in index.container:
            lst, i = index.container[cur]
            out.extend(lst[i + 1:])
        cur = index.parent.get(cur)
        if isinstance(cur, (n.If, n.SwitchCase)):
            cur = _chain_top(cur, index)
    return out


def _touches(stmt: n.Node, anchors: list[Conditional]) -> bool:
    return any(a is stmt or _inside(a, stmt) for a in anchors)


def _backward(c: Conditional, main: list[n.Node], guards: list[n.Node], index: _BodyIndex,
              others: list[Conditional]) -> list[n.Node]:
    used: set[str] = set()
    for s in main:
        used |= variable_names(s)
    for g in guards:
        used |= variable_names(g)
    picked = []
    candidates = sorted(_preceding(c, index), key=lambda s: s.start, reverse=True)
    for s in candidates:
        if _touches(s, others + [c]):
            continue
        if defined_names(s) & used:
            picked.append(s)
            used |= variable_names(s)
    return sorted(picked, key=lambda s: s.start)


def _forward(c: Conditional, main: list[n.Node], index: _BodyIndex,
             others: list[Conditional]) -> list[n.Node]:
    names: set[str] = set()
    for s in main:
        names |= variable_names(s)
    picked = []
    for s in sorted(_following(c, index), key=lambda s: s.start):
        if _touches(s, others):
            continue
        if isinstance(s, n.Opaque) and s.idents & names:
            picked.append(s)
            continue
        if variable_names(s) & names:
            picked.append(s)
            names |= defined_names(s)
    return picked


# -- dispatch methods -------------------------------------------------------------

def _calls_in(stmts: list[n.Node]) -> Iterator[n.MethodCall]:
    for s in walk_statements(stmts):
        for expr in expressions_of(s):
            yield from _calls_expr(expr)


def _calls_expr(expr: n.Node) -> Iterator[n.MethodCall]:
    if isinstance(expr, (n.Lambda,)) or (isinstance(expr, n.New) and expr.is_anonymous):
        return
    if isinstance(expr, n.MethodCall):
        yield expr
    for child in expr.children():
        yield from _calls_expr(child)


def find_dispatch_methods(handler: Union[Handler, _Body], project: Project) -> list[DispatchMethod]:
    """Project methods the handler forwards the event (or something derived from it) to."""
    if isinstance(handler, Handler):
        stmts, event, owner = handler.statements, handler.event_param, handler.node
    else:
        stmts, event, owner = handler.statements, handler.event, handler.owner
    if event is None:
        return []
    flow = event_flow(stmts, event)
    out = []
    for call in _calls_in(stmts):
        idx = next((i for i, a in enumerate(call.args) if mentions(a, flow.tainted)), None)
        if idx is None:
            continue
        target = _resolve_call(project, call)
        if target is None or target is owner:
            continue
        out.append(DispatchMethod(target, idx, call, project.file_of(target)))
    return out


def _resolve_call(project: Project, call: n.MethodCall) -> Optional[n.MethodDecl]:
    arity = len(call.args)
    t = call.target
    if t is None or (isinstance(t, n.Name) and t.id == "this"):
        cls = project.enclosing_class(call)
        while cls is not None:
            m = project.find_method(cls, call.name, arity)
            if m is not None:
                return m
            cls = project.enclosing_class(cls)
        return None
    if isinstance(t, n.Name) and t.id == "super":
        cls = project.enclosing_class_decl(call)
        if cls is None:
            return None
        for ref in cls.extends:
            m = project.find_method(project.find_class(ref.name), call.name, arity)
            if m is not None:
                return m
        return None
    owner = project.find_class(project.static_type(t))
    if owner is None and isinstance(t, n.Name) and project.resolve_name(t.id, t) is None:
        owner = project.find_class(t.id)  # static call
    return project.find_method(owner, call.name, arity)


# -- driver ---------------------------------------------------------------------

def _analyze(body: _Body, project: Project, depth: int,
             visited: set[n.Node]) -> tuple[list[Command], list[DispatchMethod]]:
    """Anchored commands of a body (recursing into dispatch methods) and reached dispatches."""
    catalog = project.catalog
    flow = event_flow(body.statements, body.event, catalog.sources, catalog.identity_getters)
    index = _BodyIndex(body.statements)
    conds = find_conditionals(body.statements)
    dependent = [c for c in conds if _depends(c, flow.tainted, index)]
    anchors = _innermost(dependent)
    anchor_nodes = list(anchors)
    commands: list[Command] = []
    for c in anchors:
        ident = _identify(c, flow, index, set(catalog.identity_getters), set(catalog.sources))
        cmd = extract_command(ident, body.statements, anchor_nodes, dependent)
        if not cmd.main:
            continue
        cmd.file = body.file
        cmd.dispatch_chain = list(body.chain)
        cmd.event_param = body.event
        commands.append(cmd)

    reached: list[DispatchMethod] = []
    if depth <= 0:
        return commands, reached
    for dm in find_dispatch_methods(body, project):
        if dm.method in visited or dm.method.body is None:
            continue
        reached.append(dm)
        owner_cmd = next((cmd for cmd in commands
                          if any(s.start <= dm.call.start and dm.call.end <= s.end for s in cmd.main)), None)
        sub = _Body(body_statements(dm.method), dm.param, dm.method, dm.file, body.chain + [dm])
        sub_cmds, sub_reached = _analyze(sub, project, depth - 1, visited | {dm.method})
        if owner_cmd is not None:
            owner_cmd.dispatch_chain.append(dm)
            owner_cmd.dispatch_chain.extend(sub_reached)
            continue
        commands.extend(sub_cmds)
        reached.extend(sub_reached)
    return commands, reached


def detect_commands(listener: ListenerImpl, project: Project,
                    dispatch_depth: int = DEFAULT_DISPATCH_DEPTH) -> list[Command]:
    """Commands of every non-empty handler of the listener."""
    out: list[Command] = []
    for handler in listener.active_handlers:
        if handler.event_param is None:
            continue
        body = _Body(handler.statements, handler.event_param, handler.node, listener.file, [])
        commands, reached = _analyze(body, project, dispatch_depth, {handler.node})
        if not commands:
            whole = Command(listener, handler, None, list(handler.statements),
                            dispatch_chain=reached, file=listener.file,
                            event_param=handler.event_param)
            commands = [whole]
        for cmd in commands:
            cmd.listener = listener
            cmd.handler = handler
        out.extend(commands)
    return out
