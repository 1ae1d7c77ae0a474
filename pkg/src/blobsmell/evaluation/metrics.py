"""Code metrics compared before and after refactoring: LoC, CC and duplication."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping

from ..frontend import nodes as n
from ..frontend import parse, tokenize

_DECISIONS = (n.If, n.For, n.ForEach, n.While, n.Conditional)


def loc(text: str) -> int:
    """Lines holding at least one token; blank and comment-only lines do not count."""
    lines = set()
    row = 1
    pos = 0
    for tok in tokenize(text):
        if tok.kind == "eof":
            break
        row += text.count("\n", pos, tok.start)
        pos = tok.start
        lines.add(row)
    return len(lines)


def _decisions(node: n.Node) -> int:
    """Decision points below ``node``, not entering nested method declarations."""
    count = 0
    for child in node.children():
        if isinstance(child, n.MethodDecl):
            continue
        if isinstance(child, _DECISIONS):
            count += 1
        elif isinstance(child, n.SwitchCase) and not child.is_default:
            count += max(1, len(child.labels))
        elif isinstance(child, n.Binary) and child.op in ("&&", "||"):
            count += 1
        count += _decisions(child)
    return count


def cyclomatic_complexity(text: str) -> int:
    """Sum over methods and constructors of one plus their decision points."""
    tree = parse(text)
    return sum(1 + _decisions(m) for m in tree.root.walk()
               if isinstance(m, n.MethodDecl) and m.body is not None)


_TRIVIAL = {"", "{", "}", "};", "});", ")", ");", "return;", "break;", "@Override"}


def _listener_bodies(text: str) -> Iterator[list[str]]:
    """Normalized statement lines of every lambda and anonymous-class body."""
    tree = parse(text)
    for node in tree.root.walk():
        if isinstance(node, n.Lambda):
            stmts = node.body.statements if isinstance(node.body, n.Block) else [node.body]
        elif isinstance(node, n.New) and node.is_anonymous:
            stmts = [s for m in node.body or [] if isinstance(m, n.MethodDecl) and m.body
                     for s in m.body.statements]
        else:
            continue
        lines = []
        for s in stmts:
            for line in tree.text_of(s).splitlines():
                norm = " ".join(line.split())
                if norm not in _TRIVIAL and not norm.startswith("//"):
                    lines.append(norm)
        yield lines


def duplicated_lines(before: str, after: str) -> int:
    """Distinct lines shared by at least two listener bodies that are new in ``after``."""
    old = {tuple(b) for b in _listener_bodies(before)} if before else set()
    inserted = [b for b in _listener_bodies(after) if tuple(b) not in old]
    seen: Counter = Counter()
    for body in inserted:
        seen.update(set(body))
    return sum(1 for c in seen.values() if c >= 2)


@dataclass(frozen=True)
class MetricsDelta:
    loc: int
    cc: int
    dup: int


def metrics_delta(before: Mapping[str, str], after: Mapping[str, str]) -> MetricsDelta:
    """Differences (after minus before) summed over a corpus; DUP counts new duplication."""
    if set(before) != set(after):
        raise ValueError("before and after corpora must contain the same files")
    d_loc = d_cc = dup = 0
    for path in sorted(before):
        a, b = before[path], after[path]
        if a == b:
            continue
        d_loc += loc(b) - loc(a)
        d_cc += cyclomatic_complexity(b) - cyclomatic_complexity(a)
        dup += duplicated_lines(a, b)
    return MetricsDelta(d_loc, d_cc, dup)
