"""Brute-force guard-path oracle for command main statements.

Every execution path through a handler body is enumerated: both outcomes of
each ``if``, each case of a ``switch`` (plus the no-match path), zero or one
iteration of each loop. A simple statement belongs to the main part of an
anchor when every path that executes it takes that anchor. This shares no
code with the slicer; it only walks the syntax tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from blobsmell.frontend import nodes as n
from blobsmell.project import body_statements

NORMAL, BREAK, RETURN = "normal", "break", "return"


@dataclass(frozen=True)
class Path:
    executed: tuple[n.Node, ...]
    decisions: tuple[tuple[n.Node, bool], ...]
    status: str = NORMAL

    def extend(self, other: "Path") -> "Path":
        return Path(self.executed + other.executed, self.decisions + other.decisions, other.status)


_EMPTY = Path((), ())


def _seq(stmts: Iterable[n.Node]) -> list[Path]:
    partial = [_EMPTY]
    for s in stmts:
        nxt = []
        for p in partial:
            if p.status != NORMAL:
                nxt.append(p)
                continue
            nxt.extend(p.extend(q) for q in _stmt(s))
        partial = nxt
    return partial


def _loop_body(body: n.Node) -> list[Path]:
    out = [_EMPTY]
    for p in _stmt(body):
        out.append(Path(p.executed, p.decisions, NORMAL if p.status == BREAK else p.status))
    return out


def _stmt(s: n.Node) -> list[Path]:
    if isinstance(s, n.Block):
        return _seq(s.statements)
    if isinstance(s, n.If):
        taken = [Path((), ((s, True),)).extend(p) for p in _stmt(s.then)]
        skipped = Path((), ((s, False),))
        rest = [skipped.extend(p) for p in _stmt(s.orelse)] if s.orelse is not None else [skipped]
        return taken + rest
    if isinstance(s, n.Switch):
        labelled = [c for c in s.cases if not c.is_default]
        out = []
        starts = [(i, c) for i, c in enumerate(s.cases) if not c.is_default]
        default = next((i for i, c in enumerate(s.cases) if c.is_default), None)
        for i, case in starts + [(default, None)]:
            decisions = tuple((c, c is case) for c in labelled)
            if i is None:
                out.append(Path((), decisions))
                continue
            body = [x for c in s.cases[i:] for x in c.body]
            for p in _seq(body):
                status = NORMAL if p.status == BREAK else p.status
                out.append(Path(p.executed, decisions + p.decisions, status))
        return out
    if isinstance(s, n.For):
        init = _seq(s.init)
        return [a.extend(b) for a in init for b in _loop_body(s.body)]
    if isinstance(s, (n.ForEach, n.While)):
        return _loop_body(s.body)
    if isinstance(s, n.Try):
        return _stmt(s.body)
    if isinstance(s, n.Return):
        return [Path((s,), (), RETURN)]
    if isinstance(s, n.Break):
        return [Path((s,), (), BREAK)]
    return [Path((s,), ())]


def handler_paths(handler_node: n.Node) -> list[Path]:
    return _seq(body_statements(handler_node))


def leaves(stmts: Iterable[n.Node]) -> list[n.Node]:
    """Simple statements inside ``stmts``, in source order."""
    out: list[n.Node] = []
    for s in stmts:
        if isinstance(s, n.Block):
            out += leaves(s.statements)
        elif isinstance(s, n.If):
            out += leaves([s.then] + ([s.orelse] if s.orelse is not None else []))
        elif isinstance(s, n.Switch):
            out += leaves([x for c in s.cases for x in c.body])
        elif isinstance(s, n.For):
            out += leaves(list(s.init) + [s.body])
        elif isinstance(s, (n.ForEach, n.While)):
            out += leaves([s.body])
        elif isinstance(s, n.Try):
            out += leaves([s.body])
        else:
            out.append(s)
    return out


def oracle_main(paths: list[Path], anchor: n.Node) -> set[n.Node]:
    """Simple statements executed only on paths that take ``anchor``."""
    seen: dict[n.Node, bool] = {}
    for p in paths:
        taken = dict(p.decisions).get(anchor) is True
        for s in p.executed:
            seen[s] = seen.get(s, True) and taken
    return {s for s, only_taken in seen.items() if only_taken}


def oracle_whole_body(paths: list[Path]) -> set[n.Node]:
    return {s for p in paths for s in p.executed}
