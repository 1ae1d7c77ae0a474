from __future__ import annotations

import fnmatch
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .lexer import LexError
from .parser import ParseError, SyntaxTree, parse


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str
    tree: SyntaxTree

    @classmethod
    def from_text(cls, path: str, text: str) -> "SourceFile":
        try:
            return cls(path, text, parse(text))
        except (LexError, ParseError) as exc:
            exc.args = (f"{path}: {exc}",)
            raise


def discover_sources(root: Path, exclude: Iterable[str] = ()) -> list[Path]:
    """All ``*.java`` files under ``root``, sorted, minus ``exclude`` globs."""
    root = Path(root)
    patterns = list(exclude)
    found = []
    for path in sorted(root.rglob("*.java")):
        rel = path.relative_to(root).as_posix()
        if any(fnmatch.fnmatch(rel, pat) for pat in patterns):
            continue
        found.append(path)
    return found


def load_sources(corpus: Mapping[str, str], jobs: int = 1) -> list[SourceFile]:
    """Parse a ``{path: text}`` corpus; results are sorted by path."""
    items = sorted(corpus.items())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda kv: SourceFile.from_text(*kv), items))
    return [SourceFile.from_text(path, text) for path, text in items]


def read_corpus(root: Path, exclude: Iterable[str] = ()) -> dict[str, str]:
    root = Path(root)
    return {p.relative_to(root).as_posix(): p.read_text(encoding="utf-8")
            for p in discover_sources(root, exclude)}
