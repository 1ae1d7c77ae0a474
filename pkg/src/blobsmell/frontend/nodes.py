"""Syntax tree node kinds.

Every node carries a ``[start, end)`` character span into the source text.
Nodes compare by identity so they can be used as dict keys and set members.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional


@dataclass(eq=False)
class Node:
    start: int
    end: int

    def children(self) -> Iterator["Node"]:
        for f in fields(self):
            if f.name in ("start", "end"):
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, list):
                for item in value:
                    if isinstance(item, Node):
                        yield item

    def walk(self) -> Iterator["Node"]:
        """Pre-order traversal including ``self``."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))

    @property
    def kind(self) -> str:
        return type(self).__name__


# -- declarations -----------------------------------------------------------

@dataclass(eq=False)
class TypeRef(Node):
    """A type use; ``name`` drops generic arguments and array brackets."""
    name: str
    dims: int = 0

    @property
    def simple(self) -> str:
        return self.name.rsplit(".", 1)[-1]


@dataclass(eq=False)
class PackageDecl(Node):
    name: str


@dataclass(eq=False)
class ImportDecl(Node):
    name: str
    is_static: bool = False
    wildcard: bool = False


@dataclass(eq=False)
class CompilationUnit(Node):
    package: Optional[PackageDecl]
    imports: list[ImportDecl]
    types: list[Node]


@dataclass(eq=False)
class ClassDecl(Node):
    name: str
    modifiers: tuple[str, ...]
    extends: list[TypeRef]
    implements: list[TypeRef]
    members: list[Node]
    is_interface: bool = False
    # span of the whole ``implements A, B`` clause, keyword included
    implements_span: Optional[tuple[int, int]] = None
    body_start: int = 0  # offset of '{'


@dataclass(eq=False)
class VarDeclarator(Node):
    name: str
    init: Optional[Node] = None


@dataclass(eq=False)
class FieldDecl(Node):
    modifiers: tuple[str, ...]
    type: TypeRef
    declarators: list[VarDeclarator]


@dataclass(eq=False)
class Param(Node):
    type: Optional[TypeRef]
    name: str


@dataclass(eq=False)
class MethodDecl(Node):
    modifiers: tuple[str, ...]
    return_type: Optional[TypeRef]
    name: str
    params: list[Param]
    body: Optional["Block"]
    is_constructor: bool = False
    name_start: int = 0


# -- statements -------------------------------------------------------------

@dataclass(eq=False)
class Block(Node):
    statements: list[Node]


@dataclass(eq=False)
class If(Node):
    cond: Node
    then: Node
    orelse: Optional[Node] = None


@dataclass(eq=False)
class SwitchCase(Node):
    labels: list[Node]
    body: list[Node]
    is_default: bool = False


@dataclass(eq=False)
class Switch(Node):
    selector: Node
    cases: list[SwitchCase]


@dataclass(eq=False)
class For(Node):
    init: list[Node]
    cond: Optional[Node]
    update: list[Node]
    body: Node


@dataclass(eq=False)
class ForEach(Node):
    var: Param
    iterable: Node
    body: Node


@dataclass(eq=False)
class While(Node):
    cond: Node
    body: Node
    is_do: bool = False


@dataclass(eq=False)
class Return(Node):
    value: Optional[Node] = None


@dataclass(eq=False)
class Break(Node):
    pass


@dataclass(eq=False)
class LocalVar(Node):
    type: TypeRef
    declarators: list[VarDeclarator]
    modifiers: tuple[str, ...] = ()


@dataclass(eq=False)
class ExprStmt(Node):
    expr: Node


@dataclass(eq=False)
class Try(Node):
    body: Block
    clauses: list["Opaque"] = field(default_factory=list)


@dataclass(eq=False)
class Opaque(Node):
    """Unsupported construct, kept only as the identifiers it mentions."""
    idents: frozenset[str] = frozenset()


# -- expressions ------------------------------------------------------------

@dataclass(eq=False)
class Name(Node):
    id: str


@dataclass(eq=False)
class FieldAccess(Node):
    target: Node
    name: str


@dataclass(eq=False)
class MethodCall(Node):
    target: Optional[Node]
    name: str
    args: list[Node]
    name_start: int = 0


@dataclass(eq=False)
class New(Node):
    type: TypeRef
    args: list[Node]
    body: Optional[list[Node]] = None  # class body of an anonymous class

    @property
    def is_anonymous(self) -> bool:
        return self.body is not None


@dataclass(eq=False)
class Lambda(Node):
    params: list[Param]
    body: Node  # Block or expression


@dataclass(eq=False)
class Binary(Node):
    op: str
    left: Node
    right: Node


@dataclass(eq=False)
class Unary(Node):
    op: str
    operand: Node
    postfix: bool = False


@dataclass(eq=False)
class Assign(Node):
    op: str
    target: Node
    value: Node


@dataclass(eq=False)
class Conditional(Node):
    cond: Node
    then: Node
    orelse: Node


@dataclass(eq=False)
class InstanceOf(Node):
    expr: Node
    type: TypeRef
    binding: Optional[str] = None


@dataclass(eq=False)
class Cast(Node):
    type: TypeRef
    expr: Node


@dataclass(eq=False)
class ArrayAccess(Node):
    target: Node
    index: Node


@dataclass(eq=False)
class StringLit(Node):
    value: str


@dataclass(eq=False)
class Literal(Node):
    text: str


STATEMENT_KINDS = (Block, If, Switch, SwitchCase, For, ForEach, While, Return, Break,
                   LocalVar, ExprStmt, Try, Opaque)
COMPOUND_KINDS = (Block, If, Switch, SwitchCase, For, ForEach, While, Try)
