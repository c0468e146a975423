"""Hand-written lexer and recursive-descent parser for openQASM 2.0."""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass

from . import ast
from .ast import Pos
from .stdlib import QELIB1


class ParseError(Exception):
    def __init__(self, message: str, pos: Pos | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def __str__(self) -> str:
        if self.pos is None:
            return self.message
        return f"{self.pos}: error: {self.message}"


KEYWORDS = {
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "oracle",
    "ancilla", "dirty", "measure", "reset", "barrier", "if", "pi", "U", "CX",
}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<real>(?:[0-9]+\.[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?|[0-9]+[eE][-+]?[0-9]+)
  | (?P<int>[0-9]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>->|==|[;,()\[\]{}+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # real int id kw string sym eof
    text: str
    pos: Pos


def tokenize(src: str, filename: str = "<stdin>") -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", Pos(line, col, filename))
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            if kind == "id" and text in KEYWORDS:
                kind = "kw"
            elif kind == "string":
                text = text[1:-1]
            toks.append(Token(kind, text, Pos(line, col, filename)))
        nl = text.count("\n") if kind in ("ws",) else 0
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += m.end() - i
        i = m.end()
    toks.append(Token("eof", "", Pos(line, col, filename)))
    return toks


class Parser:
    def __init__(self, src: str, filename: str = "<stdin>", include_dir: str | None = None):
        self.toks = tokenize(src, filename)
        self.i = 0
        self.filename = filename
        self.include_dir = include_dir

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("kw", "sym")

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected '{text}'")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.error(f"expected {what}")
        return self.advance()

    def error(self, msg: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else f"'{t.text}'"
        raise ParseError(f"{msg}, found {found}", t.pos)

    # -- program

    def program(self, header: bool = True) -> ast.Program:
        version = "2.0"
        start = self.tok.pos
        if header or self.at("OPENQASM"):
            self.expect("OPENQASM")
            v = self.tok
            if v.kind not in ("real", "int"):
                self.error("expected version number")
            self.advance()
            version = v.text
            self.expect(";")
        body = []
        while self.tok.kind != "eof":
            body.append(self.statement())
        return ast.Program(version, tuple(body), start)

    def statement(self):
        t = self.tok
        if self.at("include"):
            self.advance()
            path = self.expect_kind("string", "file name").text
            self.expect(";")
            return ast.Include(path, self.resolve(path, t.pos), t.pos)
        if self.at("qreg") or self.at("creg"):
            kw = self.advance().text
            name = self.ident()
            self.expect("[")
            size = int(self.expect_kind("int", "register size").text)
            self.expect("]")
            self.expect(";")
            cls = ast.QReg if kw == "qreg" else ast.CReg
            return cls(name, size, t.pos)
        if self.at("gate"):
            return self.gate_decl()
        if self.at("opaque"):
            self.advance()
            name = self.ident()
            params = self.param_names()
            qparams = self.id_list()
            self.expect(";")
            return ast.Opaque(name, params, qparams, t.pos)
        if self.at("oracle"):
            self.advance()
            name = self.ident()
            qparams = self.id_list()
            self.expect("{")
            path = self.expect_kind("string", "logic file name").text
            self.expect("}")
            return ast.Oracle(name, qparams, path, t.pos)
        return self.qop(top=True)

    def resolve(self, path: str, pos: Pos) -> ast.Program:
        if path == ast.STD_INCLUDE:
            return stdlib_program()
        base = self.include_dir or "."
        full = os.path.join(base, path)
        try:
            with open(full, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot resolve include \"{path}\": {exc.strerror}", pos) from None
        sub = Parser(text, full, os.path.dirname(full))
        return sub.program(header=False)

    def ident(self) -> str:
        return self.expect_kind("id", "identifier").text

    def id_list(self) -> tuple[str, ...]:
        names = [self.ident()]
        while self.at(","):
            self.advance()
            names.append(self.ident())
        return tuple(names)

    def param_names(self) -> tuple[str, ...]:
        if not self.at("("):
            return ()
        self.advance()
        if self.at(")"):
            self.advance()
            return ()
        names = self.id_list()
        self.expect(")")
        return names

    def gate_decl(self) -> ast.GateDecl:
        t = self.expect("gate")
        name = self.ident()
        params = self.param_names()
        qparams = self.id_list()
        self.expect("{")
        body = []
        while not self.at("}"):
            s = self.tok
            if self.at("ancilla") or self.at("dirty"):
                dirty = False
                if self.at("dirty"):
                    self.advance()
                    dirty = True
                self.expect("ancilla")
                aname = self.ident()
                self.expect("[")
                size = int(self.expect_kind("int", "ancilla size").text)
                self.expect("]")
                self.expect(";")
                body.append(ast.Ancilla(aname, size, dirty, s.pos))
            elif self.at("barrier"):
                body.append(self.barrier())
            else:
                body.append(self.gate_app())
        self.expect("}")
        return ast.GateDecl(name, params, qparams, tuple(body), t.pos)

    # -- quantum operations

    def qop(self, top: bool = False):
        t = self.tok
        if self.at("measure"):
            self.advance()
            src = self.arg()
            self.expect("->")
            dst = self.arg()
            self.expect(";")
            return ast.Measure(src, dst, t.pos)
        if self.at("reset"):
            self.advance()
            a = self.arg()
            self.expect(";")
            return ast.Reset(a, t.pos)
        if self.at("barrier"):
            return self.barrier()
        if self.at("if") and top:
            self.advance()
            self.expect("(")
            creg = self.ident()
            self.expect("==")
            value = int(self.expect_kind("int", "integer").text)
            self.expect(")")
            return ast.If(creg, value, self.qop(top=False), t.pos)
        if t.kind == "id" or self.at("U") or self.at("CX"):
            return self.gate_app()
        self.error("expected statement")

    def barrier(self) -> ast.Barrier:
        t = self.expect("barrier")
        args = self.arg_list()
        self.expect(";")
        return ast.Barrier(args, t.pos)

    def gate_app(self) -> ast.Gate:
        t = self.tok
        if self.at("U") or self.at("CX"):
            name = self.advance().text
        else:
            name = self.ident()
        params: tuple = ()
        if self.at("("):
            self.advance()
            if not self.at(")"):
                params = self.expr_list()
            self.expect(")")
        args = self.arg_list()
        self.expect(";")
        return ast.Gate(name, params, args, t.pos)

    def arg(self) -> ast.Arg:
        t = self.tok
        name = self.ident()
        if self.at("["):
            self.advance()
            idx = int(self.expect_kind("int", "index").text)
            self.expect("]")
            return ast.Arg(name, idx, t.pos)
        return ast.Arg(name, None, t.pos)

    def arg_list(self) -> tuple[ast.Arg, ...]:
        args = [self.arg()]
        while self.at(","):
            self.advance()
            args.append(self.arg())
        return tuple(args)

    # -- expressions

    def expr_list(self) -> tuple:
        es = [self.expr()]
        while self.at(","):
            self.advance()
            es.append(self.expr())
        return tuple(es)

    def expr(self):
        e = self.term()
        while self.at("+") or self.at("-"):
            t = self.advance()
            e = ast.BinOp(t.text, e, self.term(), t.pos)
        return e

    def term(self):
        e = self.unary()
        while self.at("*") or self.at("/"):
            t = self.advance()
            e = ast.BinOp(t.text, e, self.unary(), t.pos)
        return e

    def unary(self):
        if self.at("-"):
            t = self.advance()
            return ast.Neg(self.unary(), t.pos)
        return self.power()

    def power(self):
        e = self.atom()
        if self.at("^"):
            t = self.advance()
            e = ast.BinOp("^", e, self.unary(), t.pos)
        return e

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return ast.Int(int(t.text), t.pos)
        if t.kind == "real":
            self.advance()
            return ast.Real(float(t.text), t.pos)
        if self.at("pi"):
            self.advance()
            return ast.Pi(t.pos)
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "id":
            self.advance()
            if t.text in ast.FUNCS and self.at("("):
                self.advance()
                e = self.expr()
                self.expect(")")
                return ast.Call(t.text, e, t.pos)
            return ast.Var(t.text, t.pos)
        self.error("expected expression")


@functools.lru_cache(maxsize=1)
def stdlib_program() -> ast.Program:
    return Parser(QELIB1, ast.STD_INCLUDE).program(header=False)


def parse(source: str, filename: str = "<stdin>", include_dir: str | None = None) -> ast.Program:
    """Parse openQASM source text into a :class:`Program`."""
    if include_dir is None and filename not in ("<stdin>", "<string>"):
        include_dir = os.path.dirname(os.path.abspath(filename))
    return Parser(source, filename, include_dir).program()


def parse_file(path: str) -> ast.Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), path)
