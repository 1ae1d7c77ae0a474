"""Recursive-descent parser for a Java subset.

Constructs outside the supported node kinds become :class:`Opaque` nodes as
long as brackets balance, so analysis degrades instead of failing.
"""
from __future__ import annotations

from typing import Optional

from . import nodes as n
from .lexer import PRIMITIVES, LexError, LineIndex, Token, identifiers, tokenize

_MODIFIERS = frozenset("""public protected private static final abstract native
synchronized transient volatile strictfp default sealed non-sealed""".split())

_ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>= >>>=".split())

_BINARY_PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7,
    "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}

# tokens that may start the operand of a cast
_CAST_FOLLOWERS = frozenset(("ident", "string", "char", "number"))

_CLOSERS = {"(": ")", "[": "]", "{": "}"}


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} at line {line}, column {column}" if line else message)
        self.line = line
        self.column = column


class _Backtrack(Exception):
    """Internal: a speculative or statement-level parse failed."""


class SyntaxTree:
    """Parsed compilation unit plus helpers over the source text."""

    def __init__(self, root: n.CompilationUnit, text: str):
        self.root = root
        self.text = text
        self.lines = LineIndex(text)
        self._parents: Optional[dict[n.Node, n.Node]] = None

    def walk(self):
        return self.root.walk()

    def text_of(self, node: n.Node) -> str:
        return self.text[node.start:node.end]

    def line_of(self, node_or_offset) -> int:
        offset = node_or_offset if isinstance(node_or_offset, int) else node_or_offset.start
        return self.lines.line(offset)

    @property
    def parents(self) -> dict[n.Node, n.Node]:
        if self._parents is None:
            parents = {}
            for node in self.root.walk():
                for child in node.children():
                    parents[child] = node
            self._parents = parents
        return self._parents

    def parent(self, node: n.Node) -> Optional[n.Node]:
        return self.parents.get(node)

    def ancestors(self, node: n.Node):
        node = self.parent(node)
        while node is not None:
            yield node
            node = self.parent(node)

    def classes(self) -> list[n.ClassDecl]:
        return [node for node in self.root.walk() if isinstance(node, n.ClassDecl)]

    @property
    def imports(self) -> list[str]:
        return [imp.name for imp in self.root.imports]


def check_balance(text: str, tokens: list[Token]) -> None:
    stack: list[Token] = []
    lines = None
    for tok in tokens:
        if tok.kind != "op":
            continue
        if tok.text in _CLOSERS:
            stack.append(tok)
        elif tok.text in (")", "]", "}"):
            if not stack or _CLOSERS[stack[-1].text] != tok.text:
                lines = lines or LineIndex(text)
                raise ParseError(f"unbalanced {tok.text!r}", *lines.position(tok.start))
            stack.pop()
    if stack:
        lines = lines or LineIndex(text)
        raise ParseError(f"unclosed {stack[-1].text!r}", *lines.position(stack[-1].start))


def parse(text: str) -> SyntaxTree:
    """Parse one compilation unit.

    Raises :class:`LexError` or :class:`ParseError` (with line and column)
    when brackets are unbalanced or a top-level declaration is unreadable.
    """
    tokens = tokenize(text)
    check_balance(text, tokens)
    return SyntaxTree(_Parser(text, tokens).compilation_unit(), text)


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.toks = tokens
        self.pos = 0
        self._lines: Optional[LineIndex] = None

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    @property
    def prev_end(self) -> int:
        return self.toks[self.pos - 1].end if self.pos else 0

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, *ops: str) -> bool:
        return self.tok.is_op(*ops)

    def at_kw(self, *words: str) -> bool:
        return self.tok.is_kw(*words)

    def accept(self, op: str) -> bool:
        if self.tok.is_op(op):
            self.pos += 1
            return True
        return False

    def expect(self, op: str) -> Token:
        if not self.tok.is_op(op):
            self.fail(f"expected {op!r}, found {self.tok.text or 'end of file'!r}")
        return self.advance()

    def expect_kw(self, word: str) -> Token:
        if not self.tok.is_kw(word):
            self.fail(f"expected {word!r}")
        return self.advance()

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail(f"expected identifier, found {self.tok.text or 'end of file'!r}")
        return self.advance()

    def fail(self, message: str):
        raise _Backtrack(message, self.tok.start)

    def error(self, message: str, offset: int) -> ParseError:
        self._lines = self._lines or LineIndex(self.text)
        return ParseError(message, *self._lines.position(offset))

    def matching(self, index: int) -> int:
        """Index of the bracket closing the one at ``index``."""
        depth = 0
        for i in range(index, len(self.toks)):
            t = self.toks[i]
            if t.kind == "op":
                if t.text in _CLOSERS:
                    depth += 1
                elif t.text in (")", "]", "}"):
                    depth -= 1
                    if depth == 0:
                        return i
        return len(self.toks) - 1

    def skip_balanced(self) -> None:
        self.pos = self.matching(self.pos) + 1

    def opaque(self, first: int) -> n.Opaque:
        toks = self.toks[first:self.pos]
        return n.Opaque(start=toks[0].start, end=toks[-1].end, idents=identifiers(toks))

    def skip_construct(self, continuations=("else", "catch", "finally", "while")) -> None:
        """Skip one statement or member: up to a depth-0 ';' or a closing brace."""
        depth = 0
        first = self.pos
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "op" and t.text in _CLOSERS:
                depth += 1
            elif t.kind == "op" and t.text in (")", "]", "}"):
                if depth == 0:
                    break  # enclosing block ends here
                depth -= 1
                self.pos += 1
                if depth == 0 and t.text == "}":
                    nxt = self.tok
                    if not (nxt.is_op(";", ")", ",", ".", "[") or nxt.is_kw(*continuations)):
                        return
                continue
            elif t.is_op(";") and depth == 0:
                self.pos += 1
                return
            self.pos += 1
        if self.pos == first:
            self.pos += 1

    # -- compilation unit --------------------------------------------------

    def compilation_unit(self) -> n.CompilationUnit:
        package = None
        imports: list[n.ImportDecl] = []
        types: list[n.Node] = []
        start = self.tok.start
        try:
            self.skip_annotations()
            if self.at_kw("package"):
                s = self.advance().start
                name = self.qualified_name()
                self.expect(";")
                package = n.PackageDecl(start=s, end=self.prev_end, name=name)
            while self.at_kw("import"):
                s = self.advance().start
                static = False
                if self.at_kw("static"):
                    self.advance()
                    static = True
                name = self.qualified_name()
                wildcard = False
                if self.accept("."):
                    self.expect("*")
                    wildcard = True
                self.expect(";")
                imports.append(n.ImportDecl(start=s, end=self.prev_end, name=name,
                                            is_static=static, wildcard=wildcard))
            while self.tok.kind != "eof":
                if self.accept(";"):
                    continue
                types.append(self.type_declaration())
        except _Backtrack as exc:
            raise self.error(f"unreadable top-level declaration ({exc.args[0]})",
                             exc.args[1]) from None
        return n.CompilationUnit(start=min(start, self.tok.start), end=len(self.text),
                                 package=package, imports=imports, types=types)

    def qualified_name(self) -> str:
        parts = [self.ident().text]
        while self.at(".") and self.peek().kind == "ident":
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts)

    def skip_annotations(self) -> list[str]:
        names = []
        while self.at("@") and not self.peek().is_kw("interface"):
            self.advance()
            names.append("@" + self.qualified_name())
            if self.at("("):
                self.skip_balanced()
        return names

    def modifiers(self) -> tuple[str, ...]:
        mods: list[str] = []
        while True:
            if self.at("@") and not self.peek().is_kw("interface"):
                mods.extend(self.skip_annotations())
            elif (self.tok.kind in ("keyword", "ident") and self.tok.text in _MODIFIERS
                  and not (self.tok.text == "default" and self.peek().is_op(":"))):
                mods.append(self.advance().text)
            else:
                return tuple(mods)

    def type_declaration(self) -> n.Node:
        first = self.pos
        mods = self.modifiers()
        if self.at_kw("class", "interface"):
            return self.class_declaration(first, mods)
        if self.at_kw("enum") or (self.tok.kind == "ident" and self.tok.text == "record") \
                or self.at("@"):
            self.skip_construct()
            return self.opaque(first)
        self.fail("expected class or interface declaration")

    def class_declaration(self, first: int, mods: tuple[str, ...]) -> n.ClassDecl:
        is_interface = self.advance().text == "interface"
        name = self.ident().text
        if self.at("<"):
            self.skip_type_args()
        extends: list[n.TypeRef] = []
        implements: list[n.TypeRef] = []
        implements_span = None
        if self.at_kw("extends"):
            self.advance()
            extends.append(self.type_ref())
            while self.accept(","):
                extends.append(self.type_ref())
        if self.at_kw("implements"):
            s = self.advance().start
            implements.append(self.type_ref())
            while self.accept(","):
                implements.append(self.type_ref())
            implements_span = (s, self.prev_end)
        if self.tok.kind == "ident" and self.tok.text == "permits":
            self.advance()
            self.type_ref()
            while self.accept(","):
                self.type_ref()
        body_start = self.expect("{").start
        members = self.class_body()
        self.expect("}")
        return n.ClassDecl(start=self.toks[first].start, end=self.prev_end, name=name,
                           modifiers=mods, extends=extends, implements=implements,
                           members=members, is_interface=is_interface,
                           implements_span=implements_span, body_start=body_start)

    def class_body(self) -> list[n.Node]:
        members: list[n.Node] = []
        while not self.at("}") and self.tok.kind != "eof":
            if self.accept(";"):
                continue
            first = self.pos
            try:
                members.append(self.member(first))
            except _Backtrack:
                self.pos = first
                self.skip_construct()
                members.append(self.opaque(first))
        return members

    def member(self, first: int) -> n.Node:
        mods = self.modifiers()
        if self.at_kw("class", "interface"):
            return self.class_declaration(first, mods)
        if self.at_kw("enum") or self.at("{", "@") or (
                self.tok.kind == "ident" and self.tok.text == "record" and self.peek().kind == "ident"):
            raise _Backtrack("unsupported member", self.tok.start)
        if self.at("<"):
            self.skip_type_args()
        start = self.toks[first].start
        if self.tok.kind == "ident" and self.peek().is_op("("):
            name_tok = self.advance()
            return self.method_rest(start, mods, None, name_tok, constructor=True)
        rtype = self.type_ref()
        name_tok = self.ident()
        if self.at("("):
            return self.method_rest(start, mods, rtype, name_tok, constructor=False)
        declarators = self.declarators(name_tok)
        self.expect(";")
        return n.FieldDecl(start=start, end=self.prev_end, modifiers=mods, type=rtype,
                           declarators=declarators)

    def method_rest(self, start, mods, rtype, name_tok: Token, constructor: bool) -> n.MethodDecl:
        self.expect("(")
        params: list[n.Param] = []
        if not self.at(")"):
            params.append(self.formal_param())
            while self.accept(","):
                params.append(self.formal_param())
        self.expect(")")
        while self.at("["):
            self.advance()
            self.expect("]")
        if self.at_kw("throws"):
            self.advance()
            self.type_ref()
            while self.accept(","):
                self.type_ref()
        body = None
        if self.at("{"):
            body = self.block()
        elif self.at_kw("default"):
            self.skip_construct()
        else:
            self.expect(";")
        return n.MethodDecl(start=start, end=self.prev_end, modifiers=mods, return_type=rtype,
                            name=name_tok.text, params=params, body=body,
                            is_constructor=constructor, name_start=name_tok.start)

    def formal_param(self) -> n.Param:
        s = self.tok.start
        self.modifiers()
        ptype = self.type_ref()
        if self.accept("..."):
            ptype.dims += 1
        name = self.ident()
        while self.at("["):
            self.advance()
            self.expect("]")
        return n.Param(start=s, end=self.prev_end, type=ptype, name=name.text)

    def declarators(self, name_tok: Token) -> list[n.VarDeclarator]:
        result = [self.declarator_rest(name_tok)]
        while self.accept(","):
            result.append(self.declarator_rest(self.ident()))
        return result

    def declarator_rest(self, name_tok: Token) -> n.VarDeclarator:
        while self.at("["):
            self.advance()
            self.expect("]")
        init = None
        if self.accept("="):
            init = self.array_init() if self.at("{") else self.expression()
        return n.VarDeclarator(start=name_tok.start, end=self.prev_end, name=name_tok.text,
                               init=init)

    def array_init(self) -> n.Opaque:
        first = self.pos
        self.skip_balanced()
        return self.opaque(first)

    # -- types ---------------------------------------------------------------

    def skip_type_args(self) -> None:
        self.expect("<")
        depth = 1
        while depth and self.tok.kind != "eof":
            t = self.advance()
            if t.is_op("<"):
                depth += 1
            elif t.is_op(">"):
                depth -= 1
            elif t.is_op(";", "{", "}", "(", ")", "=", "&&", "||"):
                self.fail("malformed type arguments")

    def type_ref(self) -> n.TypeRef:
        s = self.tok.start
        if self.tok.kind == "keyword" and self.tok.text in PRIMITIVES:
            name = self.advance().text
        else:
            self.skip_annotations()
            parts = [self.ident().text]
            if self.at("<"):
                self.skip_type_args()
            while self.at(".") and self.peek().kind == "ident":
                self.advance()
                parts.append(self.advance().text)
                if self.at("<"):
                    self.skip_type_args()
            name = ".".join(parts)
        dims = 0
        while self.at("[") and self.peek().is_op("]"):
            self.advance()
            self.advance()
            dims += 1
        return n.TypeRef(start=s, end=self.prev_end, name=name, dims=dims)

    # -- statements ----------------------------------------------------------

    def block(self) -> n.Block:
        s = self.expect("{").start
        stmts = []
        while not self.at("}") and self.tok.kind != "eof":
            stmts.append(self.statement_or_opaque())
        self.expect("}")
        return n.Block(start=s, end=self.prev_end, statements=stmts)

    def statement_or_opaque(self) -> n.Node:
        first = self.pos
        try:
            return self.statement()
        except _Backtrack:
            self.pos = first
            self.skip_construct()
            return self.opaque(first)

    def statement(self) -> n.Node:
        t = self.tok
        s = t.start
        if t.is_op("{"):
            return self.block()
        if t.is_op(";"):
            self.advance()
            return n.Opaque(start=s, end=self.prev_end)
        if t.kind == "keyword":
            word = t.text
            if word == "if":
                self.advance()
                cond = self.paren_expression()
                then = self.statement_or_opaque()
                orelse = None
                if self.at_kw("else"):
                    self.advance()
                    orelse = self.statement_or_opaque()
                return n.If(start=s, end=self.prev_end, cond=cond, then=then, orelse=orelse)
            if word == "switch":
                return self.switch_statement()
            if word == "for":
                return self.for_statement()
            if word == "while":
                self.advance()
                cond = self.paren_expression()
                body = self.statement_or_opaque()
                return n.While(start=s, end=self.prev_end, cond=cond, body=body)
            if word == "do":
                self.advance()
                body = self.statement_or_opaque()
                self.expect_kw("while")
                cond = self.paren_expression()
                self.expect(";")
                return n.While(start=s, end=self.prev_end, cond=cond, body=body, is_do=True)
            if word == "return":
                self.advance()
                value = None if self.at(";") else self.expression()
                self.expect(";")
                return n.Return(start=s, end=self.prev_end, value=value)
            if word == "break":
                self.advance()
                if not self.at(";"):
                    self.fail("labeled break")
                self.advance()
                return n.Break(start=s, end=self.prev_end)
            if word == "try":
                return self.try_statement()
            if word in ("throw", "continue", "synchronized", "assert", "class",
                        "interface", "enum", "abstract", "static"):
                self.fail(f"unsupported statement {word!r}")
        if t.kind == "ident" and self.peek().is_op(":"):
            self.fail("labeled statement")
        if t.kind == "ident" and t.text in ("yield", "record") and self.peek().kind == "ident":
            self.fail("unsupported statement")
        local = self.try_local_var()
        if local is not None:
            return local
        expr = self.expression()
        self.expect(";")
        return n.ExprStmt(start=s, end=self.prev_end, expr=expr)

    def try_local_var(self) -> Optional[n.LocalVar]:
        first = self.pos
        s = self.tok.start
        try:
            mods = self.modifiers()
            if self.at_kw("class", "interface", "enum"):
                self.fail("local class")
            if not (self.tok.kind == "ident" or
                    (self.tok.kind == "keyword" and self.tok.text in PRIMITIVES)):
                raise _Backtrack("not a declaration", self.tok.start)
            vtype = self.type_ref()
            if self.tok.kind != "ident" or not self.peek().is_op("=", ";", ",", "[", ":"):
                raise _Backtrack("not a declaration", self.tok.start)
        except _Backtrack:
            self.pos = first
            return None
        declarators = self.declarators(self.ident())
        self.expect(";")
        return n.LocalVar(start=s, end=self.prev_end, type=vtype, declarators=declarators,
                          modifiers=mods)

    def paren_expression(self) -> n.Node:
        self.expect("(")
        expr = self.expression()
        self.expect(")")
        return expr

    def switch_statement(self) -> n.Switch:
        s = self.advance().start
        selector = self.paren_expression()
        self.expect("{")
        cases: list[n.SwitchCase] = []
        while not self.at("}"):
            cs = self.tok.start
            labels: list[n.Node] = []
            is_default = False
            while self.at_kw("case", "default"):
                if self.advance().text == "default":
                    is_default = True
                else:
                    labels.append(self.ternary())
                    while self.accept(","):
                        labels.append(self.ternary())
                if not self.at(":"):
                    self.fail("unsupported switch label")
                self.advance()
            if not labels and not is_default:
                self.fail("expected case label")
            body = []
            while not self.at("}") and not self.at_kw("case", "default"):
                body.append(self.statement_or_opaque())
            cases.append(n.SwitchCase(start=cs, end=self.prev_end, labels=labels, body=body,
                                      is_default=is_default))
        self.expect("}")
        return n.Switch(start=s, end=self.prev_end, selector=selector, cases=cases)

    def for_statement(self) -> n.Node:
        s = self.advance().start
        self.expect("(")
        first = self.pos
        # enhanced for
        try:
            ps = self.tok.start
            self.modifiers()
            vtype = self.type_ref()
            name = self.ident()
            if not self.at(":"):
                raise _Backtrack("classic for", self.tok.start)
            self.advance()
            var = n.Param(start=ps, end=name.end, type=vtype, name=name.text)
            iterable = self.expression()
            self.expect(")")
            body = self.statement_or_opaque()
            return n.ForEach(start=s, end=self.prev_end, var=var, iterable=iterable, body=body)
        except _Backtrack:
            self.pos = first
        init: list[n.Node] = []
        if not self.at(";"):
            local = self.try_local_var_no_semicolon()
            if local is not None:
                init.append(local)
            else:
                init.append(self.expression())
                while self.accept(","):
                    init.append(self.expression())
        self.expect(";")
        cond = None if self.at(";") else self.expression()
        self.expect(";")
        update: list[n.Node] = []
        if not self.at(")"):
            update.append(self.expression())
            while self.accept(","):
                update.append(self.expression())
        self.expect(")")
        body = self.statement_or_opaque()
        return n.For(start=s, end=self.prev_end, init=init, cond=cond, update=update, body=body)

    def try_local_var_no_semicolon(self) -> Optional[n.LocalVar]:
        first = self.pos
        s = self.tok.start
        try:
            mods = self.modifiers()
            vtype = self.type_ref()
            if self.tok.kind != "ident" or not self.peek().is_op("=", ",", ";"):
                raise _Backtrack("not a declaration", self.tok.start)
        except _Backtrack:
            self.pos = first
            return None
        declarators = self.declarators(self.ident())
        return n.LocalVar(start=s, end=self.prev_end, type=vtype, declarators=declarators,
                          modifiers=mods)

    def try_statement(self) -> n.Try:
        s = self.advance().start
        clauses: list[n.Opaque] = []
        if self.at("("):
            first = self.pos
            self.skip_balanced()
            clauses.append(self.opaque(first))
        body = self.block()
        while self.at_kw("catch", "finally"):
            first = self.pos
            self.advance()
            if self.at("("):
                self.skip_balanced()
            self.expect("{")
            self.pos -= 1
            self.skip_balanced()
            clauses.append(self.opaque(first))
        return n.Try(start=s, end=self.prev_end, body=body, clauses=clauses)

    # -- expressions ---------------------------------------------------------

    def expression(self) -> n.Node:
        lam = self.try_lambda()
        if lam is not None:
            return lam
        s = self.tok.start
        left = self.ternary()
        op = self.assign_op()
        if op:
            value = self.expression()
            return n.Assign(start=s, end=self.prev_end, op=op, target=left, value=value)
        return left

    def assign_op(self) -> Optional[str]:
        t = self.tok
        if t.kind != "op":
            return None
        if t.text in _ASSIGN_OPS:
            self.advance()
            return t.text
        # '>>=' and '>>>=' arrive as adjacent '>' ... '>=' tokens
        if t.text == ">":
            k = 1
            while self.peek(k).is_op(">") and self.peek(k).start == self.peek(k - 1).end:
                k += 1
            last = self.peek(k)
            if k <= 2 and last.is_op(">=") and last.start == self.peek(k - 1).end:
                self.pos += k + 1
                return ">" * k + ">="
        return None

    def try_lambda(self) -> Optional[n.Lambda]:
        t = self.tok
        s = t.start
        params: list[n.Param] = []
        if t.kind == "ident" and self.peek().is_op("->"):
            self.advance()
            params.append(n.Param(start=t.start, end=t.end, type=None, name=t.text))
        elif t.is_op("("):
            close = self.matching(self.pos)
            if not self.toks[close + 1].is_op("->"):
                return None
            self.advance()
            if not self.at(")"):
                params.append(self.lambda_param())
                while self.accept(","):
                    params.append(self.lambda_param())
            self.expect(")")
        else:
            return None
        self.expect("->")
        body = self.block() if self.at("{") else self.expression()
        return n.Lambda(start=s, end=self.prev_end, params=params, body=body)

    def lambda_param(self) -> n.Param:
        s = self.tok.start
        if self.tok.kind == "ident" and self.peek().is_op(",", ")"):
            t = self.advance()
            return n.Param(start=s, end=t.end, type=None, name=t.text)
        self.modifiers()
        ptype = self.type_ref()
        name = self.ident()
        return n.Param(start=s, end=self.prev_end, type=ptype, name=name.text)

    def ternary(self) -> n.Node:
        s = self.tok.start
        cond = self.binary(1)
        if self.at("?"):
            self.advance()
            then = self.expression()
            self.expect(":")
            orelse = self.try_lambda() or self.ternary()
            return n.Conditional(start=s, end=self.prev_end, cond=cond, then=then, orelse=orelse)
        return cond

    def binary_op(self) -> Optional[tuple[str, int]]:
        """Operator at the cursor and the number of tokens it spans."""
        t = self.tok
        if t.is_kw("instanceof"):
            return "instanceof", 1
        if t.kind != "op":
            return None
        if t.text == ">":
            k = 1
            while k < 3 and self.peek(k).is_op(">") and self.peek(k).start == self.peek(k - 1).end:
                k += 1
            nxt = self.peek(k)
            if nxt.is_op(">=", "=") and nxt.start == self.peek(k - 1).end:
                return None  # compound shift assignment
            return ">" * k, k
        if t.text in _BINARY_PRECEDENCE:
            return t.text, 1
        return None

    def binary(self, min_prec: int) -> n.Node:
        s = self.tok.start
        left = self.unary()
        while True:
            found = self.binary_op()
            if found is None:
                return left
            op, width = found
            prec = _BINARY_PRECEDENCE[op]
            if prec < min_prec:
                return left
            self.pos += width
            if op == "instanceof":
                final = self.at_kw("final")
                if final:
                    self.advance()
                itype = self.type_ref()
                binding = None
                if self.tok.kind == "ident" and not self.peek().is_op("(", "."):
                    binding = self.advance().text
                left = n.InstanceOf(start=s, end=self.prev_end, expr=left, type=itype,
                                    binding=binding)
                continue
            right = self.binary(prec + 1)
            left = n.Binary(start=s, end=self.prev_end, op=op, left=left, right=right)

    def unary(self) -> n.Node:
        t = self.tok
        s = t.start
        if t.kind == "op" and t.text in ("!", "~", "-", "+", "++", "--"):
            self.advance()
            operand = self.unary()
            return n.Unary(start=s, end=self.prev_end, op=t.text, operand=operand)
        if t.is_op("("):
            cast = self.try_cast()
            if cast is not None:
                return cast
        return self.postfix(self.primary())

    def try_cast(self) -> Optional[n.Cast]:
        first = self.pos
        s = self.tok.start
        self.advance()
        try:
            primitive = self.tok.kind == "keyword" and self.tok.text in PRIMITIVES
            ctype = self.type_ref()
            while self.accept("&"):
                self.type_ref()
            self.expect(")")
        except _Backtrack:
            self.pos = first
            return None
        nxt = self.tok
        ok = (nxt.kind in _CAST_FOLLOWERS or nxt.is_op("(", "!", "~") or
              nxt.is_kw("this", "super", "new", "true", "false", "null") or
              (nxt.kind == "keyword" and nxt.text in PRIMITIVES))
        if primitive and nxt.is_op("-", "+", "++", "--"):
            ok = True
        if not ok:
            self.pos = first
            return None
        lam = self.try_lambda()
        operand = lam if lam is not None else self.unary()
        return n.Cast(start=s, end=self.prev_end, type=ctype, expr=operand)

    def arguments(self) -> list[n.Node]:
        self.expect("(")
        args: list[n.Node] = []
        if not self.at(")"):
            args.append(self.expression())
            while self.accept(","):
                args.append(self.expression())
        self.expect(")")
        return args

    def primary(self) -> n.Node:
        t = self.tok
        s = t.start
        if t.kind == "string":
            self.advance()
            return n.StringLit(start=s, end=t.end, value=_unquote(t.text))
        if t.kind in ("number", "char") or t.is_kw("true", "false", "null"):
            self.advance()
            return n.Literal(start=s, end=t.end, text=t.text)
        if t.is_op("("):
            self.advance()
            inner = self.expression()
            self.expect(")")
            inner.start, inner.end = s, self.prev_end
            return inner
        if t.is_kw("this", "super"):
            self.advance()
            if self.at("("):
                args = self.arguments()
                return n.MethodCall(start=s, end=self.prev_end, target=None, name=t.text,
                                    args=args, name_start=s)
            return n.Name(start=s, end=t.end, id=t.text)
        if t.is_kw("new"):
            return self.creator()
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                args = self.arguments()
                return n.MethodCall(start=s, end=self.prev_end, target=None, name=t.text,
                                    args=args, name_start=s)
            return n.Name(start=s, end=t.end, id=t.text)
        if t.kind == "keyword" and t.text in PRIMITIVES:
            first = self.pos
            self.type_ref()
            if self.at(".") and self.peek().is_kw("class"):
                self.advance()
                self.advance()
                return self.opaque(first)
        if t.is_kw("switch"):
            self.fail("switch expression")
        self.fail(f"unexpected {t.text or 'end of file'!r}")

    def creator(self) -> n.Node:
        first = self.pos
        s = self.advance().start
        if self.at("<"):
            self.skip_type_args()
        ctype = self.type_ref()
        if self.at("["):
            while self.at("["):
                self.skip_balanced()
            if self.at("{"):
                self.skip_balanced()
            return self.opaque(first)
        if self.at("{"):  # new int[] {..} already consumed dims into type_ref
            self.skip_balanced()
            return self.opaque(first)
        args = self.arguments()
        body = None
        if self.at("{"):
            self.advance()
            body = self.class_body()
            self.expect("}")
        return n.New(start=s, end=self.prev_end, type=ctype, args=args, body=body)

    def postfix(self, expr: n.Node) -> n.Node:
        s = expr.start
        while True:
            if self.at("."):
                self.advance()
                if self.at("<"):
                    self.skip_type_args()
                t = self.tok
                if t.kind == "ident":
                    self.advance()
                    if self.at("("):
                        args = self.arguments()
                        expr = n.MethodCall(start=s, end=self.prev_end, target=expr,
                                            name=t.text, args=args, name_start=t.start)
                    else:
                        expr = n.FieldAccess(start=s, end=self.prev_end, target=expr, name=t.text)
                elif t.is_kw("class", "this", "super"):
                    self.advance()
                    if t.text == "super" and self.at("."):
                        continue
                    expr = n.FieldAccess(start=s, end=self.prev_end, target=expr, name=t.text)
                elif t.is_kw("new"):
                    inner = self.creator()
                    expr = n.Opaque(start=s, end=inner.end,
                                    idents=frozenset(_idents_of(expr) | _idents_of(inner)))
                else:
                    self.fail("bad member access")
            elif self.at("["):
                self.advance()
                index = self.expression()
                self.expect("]")
                expr = n.ArrayAccess(start=s, end=self.prev_end, target=expr, index=index)
            elif self.at("++", "--"):
                op = self.advance().text
                expr = n.Unary(start=s, end=self.prev_end, op=op, operand=expr, postfix=True)
            elif self.at("::"):
                first = self.pos
                self.advance()
                name = self.advance()
                expr = n.Opaque(start=s, end=name.end,
                                idents=frozenset(_idents_of(expr) | identifiers(
                                    self.toks[first:self.pos])))
            else:
                return expr


def _idents_of(node: n.Node) -> set[str]:
    found: set[str] = set()
    for sub in node.walk():
        if isinstance(sub, n.Name):
            found.add(sub.id)
        elif isinstance(sub, n.Opaque):
            found |= sub.idents
    return found


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "0": "\0",
            "\\": "\\", "'": "'", '"': '"', "s": " "}


def _unquote(literal: str) -> str:
    if literal.startswith('"""'):
        return literal[3:-3]
    body = literal[1:-1]
    if "\\" not in body:
        return body
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


__all__ = ["parse", "ParseError", "LexError", "SyntaxTree", "check_balance"]
