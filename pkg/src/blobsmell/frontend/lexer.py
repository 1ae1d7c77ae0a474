"""Tokenizer for the Java subset understood by the parser."""
from __future__ import annotations

import bisect
from dataclasses import dataclass

KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue default
do double else enum extends final finally float for goto if implements import
instanceof int interface long native new package private protected public
return short static strictfp super switch synchronized this throw throws
transient try void volatile while true false null
""".split())

PRIMITIVES = frozenset("boolean byte char short int long float double void".split())

# Longest first. '>' is never merged with a following '>' so that nested
# generics lex cleanly; the parser re-joins adjacent '>' for shifts.
_OPERATORS = sorted("""
<<= ... -> :: ++ -- && || == != <= >= += -= *= /= &= |= ^= %= <<
( ) { } [ ] ; , . @ = > < ! ~ ? : + - * / & | ^ %
""".split(), key=len, reverse=True)


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # ident, keyword, string, char, number, op, eof
    text: str
    start: int
    end: int

    def is_op(self, *ops: str) -> bool:
        return self.kind == "op" and self.text in ops

    def is_kw(self, *words: str) -> bool:
        return self.kind == "keyword" and self.text in words


class LineIndex:
    """Maps character offsets to 1-based (line, column) pairs."""

    def __init__(self, text: str):
        self.starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.starts.append(i + 1)

    def line(self, offset: int) -> int:
        return bisect.bisect_right(self.starts, offset)

    def position(self, offset: int) -> tuple[int, int]:
        line = self.line(offset)
        return line, offset - self.starts[line - 1] + 1


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(text: str, *, keep_comments: bool = False) -> list[Token]:
    """Split ``text`` into tokens; the list always ends with an ``eof`` token.

    Comments are dropped unless ``keep_comments`` is set, in which case they
    appear with kind ``comment``.
    """
    tokens: list[Token] = []
    index = None
    n = len(text)
    i = 0

    def fail(msg: str, at: int):
        nonlocal index
        index = index or LineIndex(text)
        raise LexError(msg, *index.position(at))

    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f":
            i += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j < 0 else j
            if keep_comments:
                tokens.append(Token("comment", text[i:j], i, j))
            i = j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                fail("unterminated comment", i)
            if keep_comments:
                tokens.append(Token("comment", text[i:j + 2], i, j + 2))
            i = j + 2
            continue
        if text.startswith('"""', i):
            j = text.find('"""', i + 3)
            if j < 0:
                fail("unterminated text block", i)
            tokens.append(Token("string", text[i:j + 3], i, j + 3))
            i = j + 3
            continue
        if ch == '"' or ch == "'":
            j = i + 1
            while j < n and text[j] != ch:
                if text[j] == "\\":
                    j += 1
                elif text[j] == "\n":
                    fail("unterminated literal", i)
                j += 1
            if j >= n:
                fail("unterminated literal", i)
            tokens.append(Token("string" if ch == '"' else "char", text[i:j + 1], i, j + 1))
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            hexadecimal = text.startswith(("0x", "0X"), i)
            j = i + 1
            while j < n:
                c = text[j]
                if _is_ident_part(c):
                    j += 1
                elif c == "." and j + 1 < n and text[j + 1].isdigit():
                    j += 1
                elif c in "+-" and (text[j - 1] in "pP" or
                                    (text[j - 1] in "eE" and not hexadecimal)):
                    j += 1
                else:
                    break
            tokens.append(Token("number", text[i:j], i, j))
            i = j
            continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            tokens.append(Token("keyword" if word in KEYWORDS else "ident", word, i, j))
            i = j
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, i, i + len(op)))
                i += len(op)
                break
        else:
            fail(f"unexpected character {ch!r}", i)
    tokens.append(Token("eof", "", n, n))
    return tokens


def identifiers(tokens) -> frozenset[str]:
    return frozenset(t.text for t in tokens if t.kind == "ident")
