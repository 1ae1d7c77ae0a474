"""Discovery of UI listeners: listener classes, anonymous classes and lambdas."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .catalog import ListenerSpec
from .frontend import SourceFile
from .frontend import nodes as n
from .project import Project, body_statements


class ListenerKind(enum.Enum):
    CLASS = "Class"
    ANONYMOUS = "Anonymous"
    LAMBDA = "Lambda"


@dataclass(eq=False)
class Handler:
    node: Union[n.MethodDecl, n.Lambda]
    event_param: Optional[str]
    name: str

    @property
    def statements(self) -> list[n.Node]:
        return body_statements(self.node)

    @property
    def is_empty(self) -> bool:
        return not self.statements


@dataclass(eq=False)
class Registration:
    widget: Optional[n.Node]  # None: implicit ``this`` receiver
    call: n.MethodCall
    file: SourceFile


@dataclass(eq=False)
class ListenerImpl:
    kind: ListenerKind
    spec: ListenerSpec
    handlers: list[Handler]
    enclosing_class: str
    file: SourceFile
    node: n.Node  # ClassDecl, anonymous New, or Lambda
    registrations: list[Registration] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def line(self) -> int:
        return self.file.tree.line_of(self.node)

    @property
    def active_handlers(self) -> list[Handler]:
        return [h for h in self.handlers if not h.is_empty]

    def describe(self) -> str:
        return f"{self.file.path}:{self.line} {self.kind.value} {self.spec.simple_name}"


def _handlers(methods: list[n.MethodDecl], spec: ListenerSpec) -> list[Handler]:
    found = []
    for m in methods:
        if m.name in spec.handler_names and len(m.params) == 1 and m.body is not None:
            found.append(Handler(m, m.params[0].name, m.name))
    return found


def _class_specs(project: Project, cls: n.ClassDecl) -> tuple[list[ListenerSpec], list[str]]:
    """Listener specs of a class, with the names of project classes they come through."""
    specs: list[ListenerSpec] = []
    via: list[str] = []
    chain = [cls] + list(project.superclasses(cls))
    for c in chain:
        imports = project.imports_of(c)
        for ref in c.extends + c.implements:
            if project.find_class(ref.name) is not None:
                continue
            for spec in project.catalog.listener_specs_for_type(ref.name, imports):
                if spec not in specs:
                    specs.append(spec)
                    if c is not cls:
                        via.append(c.name)
    return specs, via


def _registration_of(project: Project, node: n.Node) -> Optional[tuple[n.MethodCall, ListenerSpec]]:
    """Registration call receiving ``node`` as its listener (last) argument."""
    call = project.parent(node)
    if not isinstance(call, n.MethodCall) or not call.args or call.args[-1] is not node:
        return None
    spec = project.catalog.registration(call.name, project.imports_of(node))
    return (call, spec) if spec is not None else None


def find_ui_listeners(project: Project) -> list[ListenerImpl]:
    """Every listener in the project, registrations included, in source order."""
    found: list[ListenerImpl] = []
    for cls in project.classes:
        if cls.is_interface:
            continue
        f = project.file_of(cls)
        specs, via = _class_specs(project, cls)
        methods = project.methods_of(cls)
        for spec in specs:
            handlers = _handlers(methods, spec)
            if not handlers:
                continue
            impl = ListenerImpl(ListenerKind.CLASS, spec, handlers, cls.name, f, cls)
            if via:
                impl.warnings.append(
                    f"listener inheritance: {cls.name} overrides handlers of {', '.join(via)}")
            found.append(impl)
    for f in project.files:
        for node in f.tree.walk():
            if isinstance(node, n.New) and node.is_anonymous:
                impl = _anonymous(project, f, node)
            elif isinstance(node, n.Lambda):
                impl = _lambda(project, f, node)
            else:
                continue
            if impl is not None:
                found.append(impl)
    for impl in found:
        if impl.kind is ListenerKind.CLASS:
            impl.registrations = find_registrations(project, impl)
    found.sort(key=lambda l: (l.file.path, l.node.start, l.spec.interface))
    return found


def _enclosing_name(project: Project, node: n.Node) -> str:
    cls = project.enclosing_class_decl(node)
    return cls.name if cls else ""


def _anonymous(project: Project, f: SourceFile, node: n.New) -> Optional[ListenerImpl]:
    reg = _registration_of(project, node)
    if reg is None:
        return None
    call, spec = reg
    imports = project.imports_of(node)
    specs = list(project.catalog.listener_specs_for_type(node.type.name, imports))
    local = project.find_class(node.type.name)
    if local is not None:
        specs += _class_specs(project, local)[0]
    if spec not in specs:
        return None
    handlers = _handlers(project.methods_of(node), spec)
    impl = ListenerImpl(ListenerKind.ANONYMOUS, spec, handlers, _enclosing_name(project, node), f, node)
    impl.registrations = [Registration(call.target, call, f)]
    return impl


def _lambda(project: Project, f: SourceFile, node: n.Lambda) -> Optional[ListenerImpl]:
    reg = _registration_of(project, node)
    if reg is None:
        return None
    call, spec = reg
    if not spec.is_functional or len(node.params) != 1:
        return None
    handler = Handler(node, node.params[0].name, spec.handler_names[0])
    impl = ListenerImpl(ListenerKind.LAMBDA, spec, [handler], _enclosing_name(project, node), f, node)
    impl.registrations = [Registration(call.target, call, f)]
    return impl


def _refers_to_class(project: Project, arg: n.Node, cls: n.ClassDecl) -> bool:
    if isinstance(arg, n.Name) and arg.id == "this":
        here = project.enclosing_class(arg)
        return isinstance(here, n.ClassDecl) and project.is_subclass(here, cls) and (
            here is cls or not any(m.name in _handler_names(project, cls) for m in project.methods_of(here)))
    if isinstance(arg, n.FieldAccess) and arg.name == "this":
        return isinstance(arg.target, n.Name) and arg.target.id == cls.name
    if isinstance(arg, n.New) and not arg.is_anonymous:
        return arg.type.simple == cls.name
    if isinstance(arg, n.Cast):
        return _refers_to_class(project, arg.expr, cls)
    type_name = project.static_type(arg)
    return type_name == cls.name


def _handler_names(project: Project, cls: n.ClassDecl) -> set[str]:
    names: set[str] = set()
    for spec in _class_specs(project, cls)[0]:
        names.update(spec.handler_names)
    return names


def find_registrations(project: Project, listener: ListenerImpl) -> list[Registration]:
    """Registration calls whose listener argument is an instance of the listener class."""
    cls = listener.node
    if not isinstance(cls, n.ClassDecl):
        return list(listener.registrations)
    out = []
    for f in project.files:
        for node in f.tree.walk():
            if not isinstance(node, n.MethodCall) or not node.args:
                continue
            spec = project.catalog.registration(node.name, f.tree.imports)
            if spec is None or spec.interface != listener.spec.interface:
                continue
            if _refers_to_class(project, node.args[-1], cls):
                out.append(Registration(node.target, node, f))
    return out
