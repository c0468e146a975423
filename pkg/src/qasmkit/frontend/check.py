"""Semantic checking and desugaring of uniform (register-broadcast) gates."""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .ast import Pos

BUILTIN = {"U": (3, 1), "CX": (0, 2)}


@dataclass(frozen=True)
class Diagnostic:
    pos: Pos | None
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        where = str(self.pos) if self.pos is not None else "<unknown>"
        return f"{where}: {self.severity}: {self.message}"


class CheckError(Exception):
    def __init__(self, diags: list[Diagnostic]):
        super().__init__("\n".join(map(str, diags)))
        self.diagnostics = diags


def _signature(decl) -> tuple[int, int]:
    if isinstance(decl, ast.Oracle):
        return 0, len(decl.qparams)
    return len(decl.params), len(decl.qparams)


class _Checker:
    def __init__(self):
        self.diags: list[Diagnostic] = []
        self.qregs: dict[str, int] = {}
        self.cregs: dict[str, int] = {}
        self.gates: dict[str, tuple[int, int]] = dict(BUILTIN)

    def err(self, pos, msg):
        self.diags.append(Diagnostic(pos, msg))

    def run(self, p: ast.Program):
        for n in p.body:
            if isinstance(n, ast.Include):
                if n.program is not None:
                    for d in n.program.body:
                        if isinstance(d, (ast.GateDecl, ast.Opaque, ast.Oracle)):
                            self.gates.setdefault(d.name, _signature(d))
            elif isinstance(n, (ast.QReg, ast.CReg)):
                if n.size < 1:
                    self.err(n.pos, f"register '{n.name}' must have positive size")
                if n.name in self.qregs or n.name in self.cregs:
                    self.err(n.pos, f"redeclaration of register '{n.name}'")
                    continue
                (self.qregs if isinstance(n, ast.QReg) else self.cregs)[n.name] = n.size
            elif isinstance(n, (ast.GateDecl, ast.Opaque, ast.Oracle)):
                self.gate_decl(n)
            else:
                self.stmt(n)
        return self.diags

    # -- declarations

    def gate_decl(self, d):
        if d.name in self.gates:
            self.err(d.pos, f"redeclaration of gate '{d.name}'")
        params = getattr(d, "params", ())
        names = list(params) + list(d.qparams)
        if len(set(names)) != len(names):
            self.err(d.pos, f"duplicate parameter names in declaration of '{d.name}'")
        if not d.qparams:
            self.err(d.pos, f"gate '{d.name}' has no qubit parameters")
        if isinstance(d, ast.GateDecl):
            local: dict[str, int] = {}
            for s in d.body:
                if isinstance(s, ast.Ancilla):
                    if s.size < 1:
                        self.err(s.pos, f"ancilla '{s.name}' must have positive size")
                    if s.name in local or s.name in names:
                        self.err(s.pos, f"redeclaration of '{s.name}'")
                    local[s.name] = s.size
                elif isinstance(s, ast.Barrier):
                    for a in s.args:
                        self.body_arg(a, d, local)
                else:
                    self.gate_app(s, params=set(params), body=(d, local))
        self.gates[d.name] = _signature(d)

    def body_arg(self, a: ast.Arg, d, local) -> int | None:
        """Returns the register length for a local ancilla register, 1 for a
        single qubit, None if invalid."""
        if a.reg in d.qparams:
            if a.index is not None:
                self.err(a.pos, f"cannot index qubit parameter '{a.reg}'")
                return None
            return 1
        if a.reg in local:
            if a.index is None:
                return local[a.reg]
            if not 0 <= a.index < local[a.reg]:
                self.err(a.pos, f"index {a.index} out of bounds for '{a.reg}[{local[a.reg]}]'")
                return None
            return 1
        self.err(a.pos, f"undeclared identifier '{a.reg}' in gate '{d.name}'")
        return None

    # -- statements

    def expr(self, e, params: set[str]):
        for v in ast.free_vars(e):
            if v not in params:
                self.err(e.pos, f"undeclared parameter '{v}'")

    def qarg(self, a: ast.Arg) -> int | None:
        if a.reg not in self.qregs:
            if a.reg in self.cregs:
                self.err(a.pos, f"'{a.reg}' is a classical register, expected qubits")
            else:
                self.err(a.pos, f"undeclared register '{a.reg}'")
            return None
        size = self.qregs[a.reg]
        if a.index is None:
            return size
        if not 0 <= a.index < size:
            self.err(a.pos, f"index {a.index} out of bounds for '{a.reg}[{size}]'")
            return None
        return 1

    def carg(self, a: ast.Arg) -> int | None:
        if a.reg not in self.cregs:
            self.err(a.pos, f"undeclared classical register '{a.reg}'")
            return None
        size = self.cregs[a.reg]
        if a.index is None:
            return size
        if not 0 <= a.index < size:
            self.err(a.pos, f"index {a.index} out of bounds for '{a.reg}[{size}]'")
            return None
        return 1

    def uniform(self, pos, args, lengths, local=None):
        """Check register lengths agree and no qubit is repeated."""
        if any(n is None for n in lengths):
            return
        regs = [n for a, n in zip(args, lengths)
                if a.index is None and (local is None or a.reg in local)]
        if len(set(regs)) > 1:
            self.err(pos, "uniform gate register length mismatch")
            return
        for i, a in enumerate(args):
            for b in args[:i]:
                if a.reg == b.reg and (a.index is None or b.index is None or a.index == b.index):
                    self.err(a.pos, f"qubit '{a}' repeated in gate arguments")
                    return

    def gate_app(self, g: ast.Gate, params: set[str] = frozenset(), body=None):
        if g.name not in self.gates:
            self.err(g.pos, f"undeclared gate '{g.name}'")
        else:
            np_, nq = self.gates[g.name]
            if len(g.params) != np_:
                self.err(g.pos, f"gate '{g.name}' expects {np_} classical argument(s), got {len(g.params)}")
            if len(g.args) != nq:
                self.err(g.pos, f"gate '{g.name}' expects {nq} qubit argument(s), got {len(g.args)}")
        for e in g.params:
            self.expr(e, params)
        if body is None:
            lengths = [self.qarg(a) for a in g.args]
        else:
            d, local = body
            lengths = [self.body_arg(a, d, local) for a in g.args]
            self.uniform(g.pos, g.args, lengths, local)
            return
        self.uniform(g.pos, g.args, lengths)

    def stmt(self, s):
        if isinstance(s, ast.Gate):
            self.gate_app(s)
        elif isinstance(s, ast.Measure):
            n1, n2 = self.qarg(s.src), self.carg(s.dst)
            if n1 is not None and n2 is not None:
                if (s.src.index is None) != (s.dst.index is None) or n1 != n2:
                    self.err(s.pos, "measure argument size mismatch")
        elif isinstance(s, ast.Reset):
            self.qarg(s.arg)
        elif isinstance(s, ast.Barrier):
            for a in s.args:
                self.qarg(a)
        elif isinstance(s, ast.If):
            if s.creg not in self.cregs:
                self.err(s.pos, f"undeclared classical register '{s.creg}'")
            elif not 0 <= s.value < 2 ** self.cregs[s.creg]:
                self.err(s.pos, f"value {s.value} does not fit in '{s.creg}'")
            self.stmt(s.body)


def check(p: ast.Program) -> list[Diagnostic]:
    """Return semantic diagnostics; an empty list means the program is valid."""
    return _Checker().run(p)


def check_or_raise(p: ast.Program) -> ast.Program:
    diags = check(p)
    if diags:
        raise CheckError(diags)
    return p


# ------------------------------------------------------------------ desugar


def _expand(args: tuple[ast.Arg, ...], sizes: dict[str, int]) -> list[tuple[ast.Arg, ...]]:
    width = None
    for a in args:
        if a.index is None and a.reg in sizes:
            width = sizes[a.reg]
            break
    if width is None:
        return [args]
    return [
        tuple(ast.Arg(a.reg, i, a.pos) if a.index is None and a.reg in sizes else a for a in args)
        for i in range(width)
    ]


def _desugar_stmt(s, sizes: dict[str, int]) -> list:
    if isinstance(s, ast.Gate):
        return [ast.Gate(s.name, s.params, args, s.pos) for args in _expand(s.args, sizes)]
    if isinstance(s, ast.Measure):
        return [ast.Measure(a, b, s.pos) for a, b in _expand((s.src, s.dst), sizes)]
    if isinstance(s, ast.Reset):
        return [ast.Reset(a, s.pos) for (a,) in _expand((s.arg,), sizes)]
    if isinstance(s, ast.Barrier):
        flat: list[ast.Arg] = []
        for a in s.args:
            if a.index is None and a.reg in sizes:
                flat += [ast.Arg(a.reg, i, a.pos) for i in range(sizes[a.reg])]
            else:
                flat.append(a)
        return [ast.Barrier(tuple(flat), s.pos)]
    if isinstance(s, ast.If):
        return [ast.If(s.creg, s.value, b, s.pos) for b in _desugar_stmt(s.body, sizes)]
    return [s]


def desugar(p: ast.Program) -> ast.Program:
    """Expand every register-wide argument into per-index statements."""
    sizes = {r.name: r.size for r in p.body if isinstance(r, (ast.QReg, ast.CReg))}
    body = []
    for n in p.body:
        if isinstance(n, ast.GateDecl):
            local = {a.name: a.size for a in n.ancillas}
            new = []
            for s in n.body:
                new += _desugar_stmt(s, local) if local else [s]
            body.append(ast.GateDecl(n.name, n.params, n.qparams, tuple(new), n.pos))
        else:
            body += _desugar_stmt(n, sizes)
    return p.with_body(body)
