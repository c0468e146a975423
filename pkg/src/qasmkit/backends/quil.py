"""Quil emitter."""

from __future__ import annotations

from ..frontend import ast
from ..frontend.printer import expr_str
from ..frontend.stdlib import QELIB1_GATES

# qelib1 gate -> Quil instruction (with modifiers); parameters pass through.
NATIVE = {
    "id": "I", "x": "X", "y": "Y", "z": "Z", "h": "H", "s": "S", "sdg": "DAGGER S",
    "t": "T", "tdg": "DAGGER T", "rx": "RX", "ry": "RY", "rz": "RZ", "u1": "PHASE",
    "cx": "CNOT", "CX": "CNOT", "cz": "CZ", "swap": "SWAP", "ccx": "CCNOT",
    "cswap": "CSWAP", "cu1": "CPHASE", "ch": "CONTROLLED H", "crz": "CONTROLLED RZ",
}
INDENT = "    "


class QuilError(ValueError):
    pass


def _expr(e, formals=()) -> str:
    if formals:
        e = ast.subst_expr(e, {f: ast.Var("%" + f) for f in formals})
    return expr_str(e)


class _Emitter:
    def __init__(self, p: ast.Program):
        self.p = p
        self.qindex: dict[tuple[str, int], int] = {q: i for i, q in enumerate(p.qubits())}
        self.cindex: dict[tuple[str, int], int] = {}
        for r in p.cregs():
            for i in range(r.size):
                self.cindex[(r.name, i)] = len(self.cindex)
        self.csize = {r.name: r.size for r in p.cregs()}
        self.labels = 0

    def gate(self, name, params, args, formals=()) -> list[str]:
        ps = [_expr(e, formals) for e in params]
        if name == "U":
            th, ph, lam = ps
            q = args[0]
            return [f"RZ({lam}) {q}", f"RY({th}) {q}", f"RZ({ph}) {q}"]
        op = NATIVE.get(name, name)
        head = f"{op}({', '.join(ps)})" if ps else op
        return [f"{head} {' '.join(args)}"]

    def stmt(self, s) -> list[str]:
        if isinstance(s, ast.Gate):
            return self.gate(s.name, s.params, [str(self.qindex[(a.reg, a.index)]) for a in s.args])
        if isinstance(s, ast.Measure):
            q = self.qindex[(s.src.reg, s.src.index)]
            return [f"MEASURE {q} ro[{self.cindex[(s.dst.reg, s.dst.index)]}]"]
        if isinstance(s, ast.Reset):
            return [f"RESET {self.qindex[(s.arg.reg, s.arg.index)]}"]
        if isinstance(s, ast.Barrier):
            return []
        if isinstance(s, ast.If):
            if self.csize[s.creg] != 1:
                raise QuilError(f"{s.pos}: Quil cannot branch on the {self.csize[s.creg]}-bit "
                                f"register '{s.creg}'")
            self.labels += 1
            label = f"@skip{self.labels}"
            jump = "JUMP-UNLESS" if s.value else "JUMP-WHEN"
            return ([f"{jump} {label} ro[{self.cindex[(s.creg, 0)]}]"]
                    + self.stmt(s.body) + [f"LABEL {label}"])
        raise QuilError(f"cannot emit {type(s).__name__}")

    def defcircuit(self, d: ast.GateDecl) -> list[str]:
        if d.ancillas:
            raise QuilError(f"{d.pos}: gate '{d.name}' declares local ancillas; inline it first")
        params = f"({', '.join('%' + x for x in d.params)})" if d.params else ""
        lines = [f"DEFCIRCUIT {d.name}{params} {' '.join(d.qparams)}:"]
        for s in d.body:
            if isinstance(s, ast.Gate):
                lines += [INDENT + x for x in
                          self.gate(s.name, s.params, [a.reg for a in s.args], d.params)]
        return lines

    def used_gates(self) -> list[ast.GateDecl]:
        """Declarations needed as DEFCIRCUIT, callees first."""
        table = self.p.gates()
        out: list[ast.GateDecl] = []
        seen: set[str] = set()

        def visit(name):
            if name in seen or name in NATIVE or name == "U":
                return
            seen.add(name)
            d = table.get(name)
            if not isinstance(d, ast.GateDecl):
                raise QuilError(f"gate '{name}' has no definition to emit")
            for s in d.body:
                if isinstance(s, ast.Gate):
                    visit(s.name)
            out.append(d)

        for n in self.p.body:
            if isinstance(n, ast.GateDecl) and n.name not in QELIB1_GATES:
                visit(n.name)
        for s in self.p.statements:
            g = s.body if isinstance(s, ast.If) else s
            if isinstance(g, ast.Gate):
                visit(g.name)
        return out

    def run(self) -> str:
        lines: list[str] = []
        for d in self.used_gates():
            lines += self.defcircuit(d) + [""]
        if self.cindex:
            lines.append(f"DECLARE ro BIT[{len(self.cindex)}]")
        for s in self.p.statements:
            lines += self.stmt(s)
        return "\n".join(lines) + "\n" if lines else ""


def emit_quil(p: ast.Program) -> str:
    """Quil text for a program (desugared first). Qubits and classical bits are
    numbered in declaration order; all bits share one ``ro`` region."""
    from ..frontend.check import desugar

    return _Emitter(desugar(p)).run()
