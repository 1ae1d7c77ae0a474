"""Java-subset lexer, parser, constant resolution, and span edits."""
from .constants import ConstantTable, resolve_constants
from .edits import OverlapError, TextEdit, apply_edits, unified_diff
from .lexer import LexError, tokenize
from .parser import ParseError, SyntaxTree, parse
from .source import SourceFile, discover_sources, load_sources, read_corpus

__all__ = [
    "ConstantTable", "LexError", "OverlapError", "ParseError", "SourceFile", "SyntaxTree",
    "TextEdit", "apply_edits", "discover_sources", "load_sources", "parse",
    "read_corpus", "resolve_constants", "tokenize", "unified_diff",
]
