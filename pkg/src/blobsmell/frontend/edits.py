"""Span-anchored text edits and unified diffs."""
from __future__ import annotations

import difflib
from dataclasses import dataclass
from typing import Iterable


class OverlapError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TextEdit:
    """Replace ``text[start:end]`` with ``replacement``."""
    start: int
    end: int
    replacement: str = ""

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span [{self.start}, {self.end})")

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end


def _conflict(a: TextEdit, b: TextEdit) -> bool:
    if a.start < b.end and b.start < a.end:
        return True
    # two insertions at the same point have no defined order
    return a.start == a.end == b.start == b.end


def check_disjoint(edits: Iterable[TextEdit]) -> list[TextEdit]:
    ordered = sorted(edits)
    for a, b in zip(ordered, ordered[1:]):
        if _conflict(a, b):
            raise OverlapError(f"edits [{a.start}, {a.end}) and [{b.start}, {b.end}) overlap")
    return ordered


def apply_edits(text: str, edits: Iterable[TextEdit]) -> str:
    """Apply non-overlapping edits; bytes outside the edited spans are kept."""
    ordered = check_disjoint(edits)
    if ordered and ordered[-1].end > len(text):
        raise ValueError("edit span past end of text")
    out = []
    cursor = 0
    for edit in ordered:
        out.append(text[cursor:edit.start])
        out.append(edit.replacement)
        cursor = edit.end
    out.append(text[cursor:])
    return "".join(out)


def unified_diff(path: str, before: str, after: str) -> str:
    lines = difflib.unified_diff(before.splitlines(keepends=True),
                                 after.splitlines(keepends=True),
                                 fromfile=f"a/{path}", tofile=f"b/{path}")
    out = []
    for line in lines:
        out.append(line if line.endswith("\n") else line + "\n\\ No newline at end of file\n")
    return "".join(out)


def line_extent(text: str, start: int, end: int) -> tuple[int, int]:
    """Widen ``[start, end)`` to whole lines when nothing else shares them.

    Used for deletions so that removing a statement does not leave a blank
    line behind.
    """
    line_start = text.rfind("\n", 0, start) + 1
    if text[line_start:start].strip():
        return start, end
    line_end = text.find("\n", end)
    line_end = len(text) if line_end < 0 else line_end
    if text[end:line_end].strip():
        return start, end
    return line_start, min(line_end + 1, len(text))
