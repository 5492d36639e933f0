"""Function-free first-order logic with a TPTP FOF text syntax.

Terms are variables and constants only. Equality atoms exist in the AST but
the text parser rejects them unless explicitly enabled, and the internal
prover refuses them; they are carried so external TPTP provers could be fed
equational input if a caller constructs it deliberately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Union

from ..errors import ParseError, UnknownConstruct
from ..kernel import Kind, Logic, Role, Sentence, Signature, Symbol, Theory
from ._scan import TokenCursor, scan

Term = Union["FVar", "FConst"]
FolAst = Union[
    "FTrue", "FFalse", "FAtom", "FEq", "FNot", "FBin", "FQuant"
]


@dataclass(frozen=True)
class FVar:
    name: str


@dataclass(frozen=True)
class FConst:
    origin: str
    name: str


@dataclass(frozen=True)
class FTrue:
    pass


@dataclass(frozen=True)
class FFalse:
    pass


@dataclass(frozen=True)
class FAtom:
    origin: str
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class FEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class FNot:
    body: FolAst


@dataclass(frozen=True)
class FBin:
    op: str  # "and" | "or" | "impl" | "iff"
    left: FolAst
    right: FolAst


@dataclass(frozen=True)
class FQuant:
    quant: str  # "forall" | "exists"
    var: str
    body: FolAst


def forall(variables: Iterable[str], body: FolAst) -> FolAst:
    for v in reversed(list(variables)):
        body = FQuant("forall", v, body)
    return body


def exists(variables: Iterable[str], body: FolAst) -> FolAst:
    for v in reversed(list(variables)):
        body = FQuant("exists", v, body)
    return body


# -- TPTP name sanitization ----------------------------------------------------

_PLAIN_LOWER_WORD = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


def sanitize_tptp_name(name: str) -> str:
    """Map an arbitrary symbol name to a TPTP lower word, injectively.

    Names that already are lower words pass through unchanged unless they
    start with the reserved escape prefix "q_". Everything else becomes
    "q_" + escaped name, where "_" doubles and any other character outside
    [A-Za-z0-9] becomes "_0<hex>_". Plain outputs never start with "q_",
    escaped outputs always do, and the escape stream decodes uniquely, so
    distinct names never collide.
    """
    if _PLAIN_LOWER_WORD.match(name) and not name.startswith("q_"):
        return name
    pieces = ["q_"]
    for ch in name:
        if ch == "_":
            pieces.append("__")
        elif ch.isascii() and ch.isalnum():
            pieces.append(ch)
        else:
            pieces.append("_0%x_" % ord(ch))
    return "".join(pieces)


def _symbol_tptp_name(origin: str, name: str, prefixes: Mapping[str, str] | None) -> str:
    if origin and prefixes:
        for pfx, iri in prefixes.items():
            if iri == origin:
                return sanitize_tptp_name(f"{pfx}:{name}")
    return sanitize_tptp_name(f"{origin}:{name}" if origin else name)


_VAR_WORD = re.compile(r"[A-Z][a-zA-Z0-9_]*\Z")


def _var_tptp_name(name: str) -> str:
    if _VAR_WORD.match(name):
        return name
    cleaned = "".join(ch if (ch.isascii() and ch.isalnum()) else "_" for ch in name)
    return "V_" + cleaned


# -- printing --------------------------------------------------------------------


def print_fol(ast: FolAst, prefixes: Mapping[str, str] | None = None) -> str:
    """Render a formula in TPTP FOF syntax (binary connectives parenthesized)."""
    return _print(ast, prefixes)


def _print_term(t: Term, prefixes: Mapping[str, str] | None) -> str:
    if isinstance(t, FVar):
        return _var_tptp_name(t.name)
    return _symbol_tptp_name(t.origin, t.name, prefixes)


def _print(ast: FolAst, prefixes: Mapping[str, str] | None) -> str:
    if isinstance(ast, FTrue):
        return "$true"
    if isinstance(ast, FFalse):
        return "$false"
    if isinstance(ast, FAtom):
        head = _symbol_tptp_name(ast.origin, ast.name, prefixes)
        if not ast.args:
            return head
        return head + "(" + ", ".join(_print_term(a, prefixes) for a in ast.args) + ")"
    if isinstance(ast, FEq):
        return f"({_print_term(ast.left, prefixes)} = {_print_term(ast.right, prefixes)})"
    if isinstance(ast, FNot):
        body = _print(ast.body, prefixes)
        if isinstance(ast.body, (FAtom, FTrue, FFalse, FBin, FEq)):
            # FBin/FEq already come parenthesized
            return "~" + body
        return "~(" + body + ")"
    if isinstance(ast, FBin):
        op = {"and": "&", "or": "|", "impl": "=>", "iff": "<=>"}[ast.op]
        return f"({_print(ast.left, prefixes)} {op} {_print(ast.right, prefixes)})"
    if isinstance(ast, FQuant):
        sigil = "!" if ast.quant == "forall" else "?"
        return f"{sigil}[{_var_tptp_name(ast.var)}]: {_print(ast.body, prefixes)}"
    raise TypeError(f"not a FOL ast: {ast!r}")


def print_tptp(
    sentence: Sentence | FolAst,
    name: str,
    role: str,
    prefixes: Mapping[str, str] | None = None,
) -> str:
    """One TPTP FOF annotated formula: `fof(name, role, formula).`"""
    ast = sentence.ast if isinstance(sentence, Sentence) else sentence
    return f"fof({sanitize_tptp_name(name)}, {role}, {_print(ast, prefixes)})."


# -- parsing ---------------------------------------------------------------------

_TOKENS = re.compile(
    r"(?P<WS>\s+)"
    r"|(?P<COMMENT>%[^\n]*)"
    r"|(?P<IFF><=>)"
    r"|(?P<IMPL>=>)"
    r"|(?P<NEQ>!=)"
    r"|(?P<DOLLAR>\$(?:true|false))"
    r"|(?P<LOWER>[a-z][a-zA-Z0-9_]*)"
    r"|(?P<UPPER>[A-Z][a-zA-Z0-9_]*)"
    r"|(?P<PUNCT>[()\[\],.:!?~&|=])"
)


class _FofParser:
    def __init__(self, cur: TokenCursor, origin: str, allow_equality: bool):
        self.cur = cur
        self.origin = origin
        self.allow_equality = allow_equality
        self.bound: list[str] = []

    def document(self) -> list[tuple[str, Role, FolAst]]:
        out = []
        while not self.cur.at("EOF"):
            out.append(self.statement())
        return out

    def statement(self) -> tuple[str, Role, FolAst]:
        self.cur.expect("LOWER", "fof", what="fof")
        self.cur.expect("PUNCT", "(")
        name = self.cur.expect("LOWER", what="formula name").text
        self.cur.expect("PUNCT", ",")
        role_tok = self.cur.expect("LOWER", what="formula role")
        if role_tok.text in ("axiom", "hypothesis", "definition", "lemma"):
            role = Role.AXIOM
        elif role_tok.text == "conjecture":
            role = Role.CONJECTURE
        else:
            raise UnknownConstruct(
                f"unsupported formula role {role_tok.text!r}", role_tok.line, role_tok.col
            )
        self.cur.expect("PUNCT", ",")
        ast = self.formula()
        self.cur.expect("PUNCT", ")")
        self.cur.expect("PUNCT", ".")
        return name, role, ast

    def formula(self) -> FolAst:
        left = self.impl()
        if self.cur.at("IFF"):
            self.cur.advance()
            return FBin("iff", left, self.formula())
        return left

    def impl(self) -> FolAst:
        left = self.disj()
        if self.cur.at("IMPL"):
            self.cur.advance()
            return FBin("impl", left, self.impl())
        return left

    def disj(self) -> FolAst:
        ast = self.conj()
        while self.cur.at("PUNCT", "|"):
            self.cur.advance()
            ast = FBin("or", ast, self.conj())
        return ast

    def conj(self) -> FolAst:
        ast = self.unary()
        while self.cur.at("PUNCT", "&"):
            self.cur.advance()
            ast = FBin("and", ast, self.unary())
        return ast

    def unary(self) -> FolAst:
        if self.cur.at("PUNCT", "~"):
            self.cur.advance()
            return FNot(self.unary())
        if self.cur.at("PUNCT", "!") or self.cur.at("PUNCT", "?"):
            quant = "forall" if self.cur.advance().text == "!" else "exists"
            self.cur.expect("PUNCT", "[")
            names = [self.cur.expect("UPPER", what="variable").text]
            while self.cur.at("PUNCT", ","):
                self.cur.advance()
                names.append(self.cur.expect("UPPER", what="variable").text)
            self.cur.expect("PUNCT", "]")
            self.cur.expect("PUNCT", ":")
            self.bound.extend(names)
            body = self.unary()
            del self.bound[-len(names):]
            for v in reversed(names):
                body = FQuant(quant, v, body)
            return body
        if self.cur.at("PUNCT", "("):
            self.cur.advance()
            ast = self.formula()
            self.cur.expect("PUNCT", ")")
            return ast
        if self.cur.at("DOLLAR"):
            return FTrue() if self.cur.advance().text == "$true" else FFalse()
        if self.cur.at("UPPER"):
            left = self.term()
            return self.equality(left)
        if self.cur.at("LOWER"):
            tok = self.cur.advance()
            if self.cur.at("PUNCT", "("):
                self.cur.advance()
                args = [self.term()]
                while self.cur.at("PUNCT", ","):
                    self.cur.advance()
                    args.append(self.term())
                self.cur.expect("PUNCT", ")")
                return FAtom(self.origin, tok.text, tuple(args))
            if self.cur.at("PUNCT", "=") or self.cur.at("NEQ"):
                return self.equality(FConst(self.origin, tok.text))
            return FAtom(self.origin, tok.text, ())
        raise self.cur.error("expected a formula", "atom", "~", "!", "?", "(")

    def equality(self, left: Term) -> FolAst:
        negated = self.cur.at("NEQ")
        tok = self.cur.cur
        if not negated:
            self.cur.expect("PUNCT", "=", what="=")
        else:
            self.cur.advance()
        if not self.allow_equality:
            raise UnknownConstruct("equality atoms are not enabled", tok.line, tok.col)
        right = self.term()
        eq = FEq(left, right)
        return FNot(eq) if negated else eq

    def term(self) -> Term:
        if self.cur.at("UPPER"):
            tok = self.cur.advance()
            if tok.text not in self.bound:
                raise ParseError(f"unbound variable {tok.text!r}", tok.line, tok.col)
            return FVar(tok.text)
        tok = self.cur.expect("LOWER", what="term")
        if self.cur.at("PUNCT", "("):
            raise UnknownConstruct("function terms are not supported", tok.line, tok.col)
        return FConst(self.origin, tok.text)


def parse_fof_document(
    text: str, origin: str = "", allow_equality: bool = False
) -> list[tuple[str, Role, FolAst]]:
    """Parse a sequence of `fof(name, role, formula).` statements."""
    cur = TokenCursor(scan(text, _TOKENS))
    return _FofParser(cur, origin, allow_equality).document()


def parse_fof_formula(text: str, origin: str = "", allow_equality: bool = False) -> FolAst:
    """Parse a bare FOF formula (no `fof(...)` wrapper)."""
    cur = TokenCursor(scan(text, _TOKENS))
    parser = _FofParser(cur, origin, allow_equality)
    ast = parser.formula()
    if not cur.at("EOF"):
        raise cur.error(f"trailing input {cur.cur.text!r}", "end of formula")
    return ast


# -- logic registration ------------------------------------------------------------


class FolLogic(Logic):
    id = "FOL"
    admitted_kinds = frozenset({Kind.PREDICATE, Kind.INDIVIDUAL})

    def symbols_of_ast(self, ast: Any) -> frozenset[Symbol]:
        out: set[Symbol] = set()
        _collect(ast, out)
        return frozenset(out)

    def rename_ast(self, ast: Any, mapping: Mapping[Symbol, Symbol]) -> Any:
        return _rename(ast, mapping)

    def print_sentence(self, ast: Any, prefixes: Mapping[str, str] | None = None) -> str:
        return print_fol(ast, prefixes)

    def parse_theory(
        self,
        text: str,
        name: str,
        origin: str = "",
        prefixes: Mapping[str, str] | None = None,
        label_base: str | None = None,
    ) -> Theory:
        sentences: list[Sentence] = []
        labels: set[str] = set()
        for fof_name, role, ast in parse_fof_document(text, origin):
            if fof_name in labels:
                raise ParseError(f"duplicate formula name {fof_name!r}", 1, 1)
            labels.add(fof_name)
            sentences.append(Sentence(self.id, ast, fof_name, role))
        symbols = (
            frozenset().union(*(self.symbols_of_ast(s.ast) for s in sentences))
            if sentences
            else frozenset()
        )
        return Theory(name, Signature(self.id, symbols), tuple(sentences))

    def print_theory(self, t: Theory, prefixes: Mapping[str, str] | None = None) -> str:
        lines = []
        for i, s in enumerate(t.sentences, 1):
            role = "conjecture" if s.role is Role.CONJECTURE else "axiom"
            lines.append(print_tptp(s, s.label or f"ax{i}", role, prefixes))
        return "".join(line + "\n" for line in lines)


def _collect(ast: FolAst, out: set[Symbol]) -> None:
    if isinstance(ast, FAtom):
        out.add(Symbol(ast.origin, ast.name, Kind.PREDICATE, len(ast.args)))
        for a in ast.args:
            if isinstance(a, FConst):
                out.add(Symbol(a.origin, a.name, Kind.INDIVIDUAL, 0))
    elif isinstance(ast, FEq):
        for a in (ast.left, ast.right):
            if isinstance(a, FConst):
                out.add(Symbol(a.origin, a.name, Kind.INDIVIDUAL, 0))
    elif isinstance(ast, FNot):
        _collect(ast.body, out)
    elif isinstance(ast, FBin):
        _collect(ast.left, out)
        _collect(ast.right, out)
    elif isinstance(ast, FQuant):
        _collect(ast.body, out)


def _rename_term(t: Term, mapping: Mapping[Symbol, Symbol]) -> Term:
    if isinstance(t, FConst):
        image = mapping[Symbol(t.origin, t.name, Kind.INDIVIDUAL, 0)]
        return FConst(image.origin, image.name)
    return t


def _rename(ast: FolAst, mapping: Mapping[Symbol, Symbol]) -> FolAst:
    if isinstance(ast, FAtom):
        image = mapping[Symbol(ast.origin, ast.name, Kind.PREDICATE, len(ast.args))]
        return FAtom(image.origin, image.name, tuple(_rename_term(a, mapping) for a in ast.args))
    if isinstance(ast, FEq):
        return FEq(_rename_term(ast.left, mapping), _rename_term(ast.right, mapping))
    if isinstance(ast, FNot):
        return FNot(_rename(ast.body, mapping))
    if isinstance(ast, FBin):
        return FBin(ast.op, _rename(ast.left, mapping), _rename(ast.right, mapping))
    if isinstance(ast, FQuant):
        return FQuant(ast.quant, ast.var, _rename(ast.body, mapping))
    return ast
