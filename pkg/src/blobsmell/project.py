"""Cross-file index over parsed sources: classes, scopes, and name bindings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .catalog import Catalog, WidgetSpec, default_catalog
from .frontend import ConstantTable, SourceFile, load_sources, resolve_constants
from .frontend import nodes as n

ClassLike = Union[n.ClassDecl, n.New]  # New: anonymous class body


@dataclass(frozen=True)
class Binding:
    """What a simple name refers to at some point in the code."""
    name: str
    kind: str  # "local", "param", "field"
    type: Optional[n.TypeRef]
    decl: n.Node
    owner: Optional[ClassLike] = None  # declaring class, for fields
    scope: Optional[n.Node] = None  # method or lambda, for locals and params

    @property
    def type_name(self) -> Optional[str]:
        return self.type.simple if self.type is not None else None


def body_statements(node: n.Node) -> list[n.Node]:
    """Statements of a method/lambda body or of a branch statement."""
    if isinstance(node, n.MethodDecl):
        return list(node.body.statements) if node.body else []
    if isinstance(node, n.Lambda):
        return body_statements(node.body) if isinstance(node.body, n.Block) else [node.body]
    if isinstance(node, n.Block):
        return list(node.statements)
    return [node]


class Project:
    def __init__(self, files: Iterable[SourceFile], catalog: Optional[Catalog] = None):
        self.files: list[SourceFile] = sorted(files, key=lambda f: f.path)
        self.catalog = catalog or default_catalog()
        self._constants: Optional[ConstantTable] = None
        self._file_of: dict[n.Node, SourceFile] = {}
        self.classes: list[n.ClassDecl] = []
        self.classes_by_name: dict[str, list[n.ClassDecl]] = {}
        for f in self.files:
            for node in f.tree.walk():
                self._file_of[node] = f
                if isinstance(node, n.ClassDecl):
                    self.classes.append(node)
                    self.classes_by_name.setdefault(node.name, []).append(node)

    @classmethod
    def from_corpus(cls, corpus: Mapping[str, str], catalog: Optional[Catalog] = None,
                    jobs: int = 1) -> "Project":
        return cls(load_sources(corpus, jobs=jobs), catalog)

    # -- basic lookups ---------------------------------------------------------

    @property
    def constants(self) -> ConstantTable:
        if self._constants is None:
            self._constants = resolve_constants(f.tree for f in self.files)
        return self._constants

    def file_of(self, node: n.Node) -> SourceFile:
        return self._file_of[node]

    def parent(self, node: n.Node) -> Optional[n.Node]:
        return self.file_of(node).tree.parent(node)

    def ancestors(self, node: n.Node) -> Iterator[n.Node]:
        return self.file_of(node).tree.ancestors(node)

    def imports_of(self, node: n.Node) -> list[str]:
        return self.file_of(node).tree.imports

    def line_of(self, node: n.Node) -> int:
        return self.file_of(node).tree.line_of(node)

    def text_of(self, node: n.Node) -> str:
        return self.file_of(node).tree.text_of(node)

    def enclosing_class(self, node: n.Node) -> Optional[ClassLike]:
        for anc in self.ancestors(node):
            if isinstance(anc, n.ClassDecl) or (isinstance(anc, n.New) and anc.is_anonymous
                                                and not _within(node, anc.args)):
                return anc
        return None

    def enclosing_class_decl(self, node: n.Node) -> Optional[n.ClassDecl]:
        for anc in self.ancestors(node):
            if isinstance(anc, n.ClassDecl):
                return anc
        return None

    def enclosing_callable(self, node: n.Node) -> Optional[n.Node]:
        for anc in self.ancestors(node):
            if isinstance(anc, (n.MethodDecl, n.Lambda)):
                return anc
            if isinstance(anc, n.ClassDecl):
                return None
        return None

    def enclosing_method(self, node: n.Node) -> Optional[n.MethodDecl]:
        for anc in self.ancestors(node):
            if isinstance(anc, n.MethodDecl):
                return anc
        return None

    # -- class hierarchy -------------------------------------------------------

    def find_class(self, name: Optional[str]) -> Optional[n.ClassDecl]:
        if not name:
            return None
        found = self.classes_by_name.get(name.rsplit(".", 1)[-1])
        return found[0] if found else None

    def superclasses(self, cls: n.ClassDecl) -> Iterator[n.ClassDecl]:
        """Project superclasses and superinterfaces, transitively."""
        seen = {cls}
        stack = [cls]
        while stack:
            cur = stack.pop()
            for ref in cur.extends + cur.implements:
                sup = self.find_class(ref.name)
                if sup is not None and sup not in seen:
                    seen.add(sup)
                    yield sup
                    stack.append(sup)

    def is_subclass(self, cls: n.ClassDecl, ancestor: n.ClassDecl) -> bool:
        return cls is ancestor or any(s is ancestor for s in self.superclasses(cls))

    def widget_spec(self, type_name: Optional[str], at: Optional[n.Node] = None) -> Optional[WidgetSpec]:
        """Catalog widget spec for a type, following project subclasses."""
        if not type_name:
            return None
        imports = self.imports_of(at) if at is not None else ()
        spec = self.catalog.widget(type_name, imports)
        if spec is not None:
            return spec
        cls = self.find_class(type_name)
        if cls is None:
            return None
        for ref in cls.extends:
            spec = self.catalog.widget(ref.name, self.imports_of(cls))
            if spec is not None:
                return spec
            sup = self.find_class(ref.name)
            if sup is not None and sup is not cls:
                return self.widget_spec(sup.name, sup)
        return None

    def methods_of(self, cls: ClassLike) -> list[n.MethodDecl]:
        members = cls.members if isinstance(cls, n.ClassDecl) else (cls.body or [])
        return [m for m in members if isinstance(m, n.MethodDecl)]

    def find_method(self, cls: Optional[ClassLike], name: str, arity: int) -> Optional[n.MethodDecl]:
        if cls is None:
            return None
        for m in self.methods_of(cls):
            if m.name == name and len(m.params) == arity and m.body is not None:
                return m
        if isinstance(cls, n.ClassDecl):
            for sup in self.superclasses(cls):
                for m in self.methods_of(sup):
                    if m.name == name and len(m.params) == arity and m.body is not None:
                        return m
        return None

    def field_binding(self, cls: Optional[ClassLike], name: str) -> Optional[Binding]:
        if cls is None:
            return None
        candidates = [cls]
        if isinstance(cls, n.ClassDecl):
            candidates += list(self.superclasses(cls))
        for c in candidates:
            members = c.members if isinstance(c, n.ClassDecl) else (c.body or [])
            for m in members:
                if isinstance(m, n.FieldDecl):
                    for d in m.declarators:
                        if d.name == name:
                            return Binding(name, "field", m.type, d, owner=c)
        return None

    # -- name resolution -------------------------------------------------------

    def resolve_name(self, name: str, at: n.Node) -> Optional[Binding]:
        """Binding of the simple name ``name`` as seen from node ``at``.

        Locals are looked up flow-insensitively in every enclosing block;
        then parameters, then fields of enclosing classes (inner to outer,
        including project superclasses).
        """
        prev = at
        scope: Optional[n.Node] = None
        for anc in self.ancestors(at):
            if isinstance(anc, (n.MethodDecl, n.Lambda)) and scope is None:
                scope = anc
            found = _local_in(anc, name, prev)
            if found is not None:
                kind, vtype, decl = found
                return Binding(name, kind, vtype, decl, scope=self._scope_of(anc, at))
            if isinstance(anc, n.ClassDecl) or (isinstance(anc, n.New) and anc.is_anonymous
                                                and not _within(at, anc.args)):
                field = self.field_binding(anc, name)
                if field is not None:
                    return field
                scope = None
            prev = anc
        return None

    def _scope_of(self, anc: n.Node, at: n.Node) -> Optional[n.Node]:
        if isinstance(anc, (n.MethodDecl, n.Lambda)):
            return anc
        for a in self.ancestors(anc):
            if isinstance(a, (n.MethodDecl, n.Lambda)):
                return a
        return None

    def static_type(self, expr: n.Node) -> Optional[str]:
        """Declared simple type name of a variable-like expression, if known."""
        if isinstance(expr, n.Name):
            if expr.id == "this":
                cls = self.enclosing_class(expr)
                return cls.name if isinstance(cls, n.ClassDecl) else None
            binding = self.resolve_name(expr.id, expr)
            return binding.type_name if binding else None
        if isinstance(expr, n.FieldAccess):
            binding = self.resolve_field_access(expr)
            return binding.type_name if binding else None
        if isinstance(expr, n.Cast):
            return expr.type.simple
        if isinstance(expr, n.New):
            return expr.type.simple
        return None

    def resolve_field_access(self, expr: n.FieldAccess) -> Optional[Binding]:
        target = expr.target
        if isinstance(target, n.Name) and target.id == "this":
            return self.field_binding(self.enclosing_class(expr), expr.name)
        if isinstance(target, n.FieldAccess) and target.name == "this":
            return self.field_binding(self.find_class(_dotted(target.target)), expr.name)
        owner = self.find_class(self.static_type(target))
        if owner is None and isinstance(target, n.Name):
            owner = self.find_class(target.id)  # static access: Class.FIELD
        return self.field_binding(owner, expr.name)

    def resolve_variable(self, expr: n.Node) -> Optional[Binding]:
        """Binding for a Name or field-access expression."""
        if isinstance(expr, n.Name) and expr.id not in ("this", "super"):
            return self.resolve_name(expr.id, expr)
        if isinstance(expr, n.FieldAccess):
            return self.resolve_field_access(expr)
        return None


def _dotted(expr: n.Node) -> Optional[str]:
    if isinstance(expr, n.Name):
        return expr.id
    if isinstance(expr, n.FieldAccess):
        head = _dotted(expr.target)
        return f"{head}.{expr.name}" if head else None
    return None


def _within(node: n.Node, others: Iterable[n.Node]) -> bool:
    return any(o.start <= node.start and node.end <= o.end for o in others)


def _local_in(scope: n.Node, name: str, child: n.Node):
    """Declaration of local ``name`` directly owned by ``scope``."""
    if isinstance(scope, (n.MethodDecl, n.Lambda)):
        for p in scope.params:
            if p.name == name:
                return "param", p.type, p
        return None
    statements: list[n.Node] = []
    if isinstance(scope, n.Block):
        statements = scope.statements
    elif isinstance(scope, n.SwitchCase):
        statements = scope.body
    elif isinstance(scope, n.Switch):
        statements = [s for case in scope.cases for s in case.body]
    elif isinstance(scope, n.For):
        statements = scope.init
    elif isinstance(scope, n.ForEach):
        if scope.var.name == name:
            return "local", scope.var.type, scope.var
    elif isinstance(scope, n.If):
        for sub in scope.cond.walk():
            if isinstance(sub, n.InstanceOf) and sub.binding == name:
                return "local", sub.type, sub
    for stmt in statements:
        if isinstance(stmt, n.LocalVar):
            for d in stmt.declarators:
                if d.name == name:
                    return "local", stmt.type, d
    return None
