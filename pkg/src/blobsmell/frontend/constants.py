"""Project-wide table of final String constants."""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Optional

from . import nodes as n
from .parser import SyntaxTree


class ConstantTable(Mapping[str, str]):
    """Maps ``Class.FIELD`` to the literal value of a final String field.

    Lookups by simple field name succeed when the name is unambiguous in the
    project, or when ``owner`` names the class declaring it.
    """

    def __init__(self, values: Optional[dict[str, str]] = None):
        self._values = dict(values or {})
        self._by_simple: dict[str, set[str]] = {}
        for qualified, value in self._values.items():
            self._by_simple.setdefault(qualified.rsplit(".", 1)[-1], set()).add(value)

    def __getitem__(self, key: str) -> str:
        return self._values[key]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def lookup(self, name: str, owner: Optional[str] = None) -> Optional[str]:
        if name in self._values:
            return self._values[name]
        if owner is not None and f"{owner}.{name}" in self._values:
            return self._values[f"{owner}.{name}"]
        simple = name.rsplit(".", 1)[-1]
        candidates = self._by_simple.get(simple, set())
        if len(candidates) == 1 and (name == simple or any(
                q.endswith("." + name) for q in self._values)):
            return next(iter(candidates))
        return None

    def __repr__(self) -> str:
        return f"ConstantTable({self._values!r})"


def _assigned_names(trees: Iterable[SyntaxTree]) -> Counter:
    counts: Counter = Counter()
    for tree in trees:
        for node in tree.walk():
            target = None
            if isinstance(node, n.Assign):
                target = node.target
            elif isinstance(node, n.Unary) and node.op in ("++", "--"):
                target = node.operand
            if isinstance(target, n.Name):
                counts[target.id] += 1
            elif isinstance(target, n.FieldAccess):
                counts[target.name] += 1
    return counts


def _value(expr: n.Node, owner: str, values: dict[str, str]) -> Optional[str]:
    """Literal value of ``expr`` given the constants resolved so far."""
    if isinstance(expr, n.StringLit):
        return expr.value
    if isinstance(expr, n.Name):
        return values.get(f"{owner}.{expr.id}")
    if isinstance(expr, n.FieldAccess) and isinstance(expr.target, n.Name):
        return values.get(f"{expr.target.id}.{expr.name}")
    if isinstance(expr, n.Binary) and expr.op == "+":
        left = _value(expr.left, owner, values)
        right = _value(expr.right, owner, values)
        if left is not None and right is not None:
            return left + right
    return None


def resolve_constants(trees: Iterable[SyntaxTree]) -> ConstantTable:
    """Final String fields whose initializer folds to a literal.

    Initializers may refer to other such constants, in the same class by
    simple name or elsewhere as ``Class.FIELD``, and may concatenate them.
    """
    trees = list(trees)
    reassigned = _assigned_names(trees)
    pending: list[tuple[str, str, n.Node]] = []
    for tree in trees:
        for cls in tree.classes():
            for member in cls.members:
                if not isinstance(member, n.FieldDecl):
                    continue
                if "final" not in member.modifiers and not cls.is_interface:
                    continue
                if member.type.simple != "String" or member.type.dims:
                    continue
                for decl in member.declarators:
                    if decl.init is not None and not reassigned[decl.name]:
                        pending.append((cls.name, decl.name, decl.init))
    values: dict[str, str] = {}
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for owner, name, init in pending:
            value = _value(init, owner, values)
            if value is None:
                rest.append((owner, name, init))
            else:
                values[f"{owner}.{name}"] = value
                progress = True
        pending = rest
    return ConstantTable(values)
