"""Q# emitter."""

from __future__ import annotations

from ..frontend import ast
from ..frontend.printer import _real

NAMESPACE = "Quantum.qasmkit"
IND = "    "

PRELUDE = """\
open Microsoft.Quantum.Intrinsic;
open Microsoft.Quantum.Convert;
open Microsoft.Quantum.Canon;
open Microsoft.Quantum.Math;

operation U(theta : Double, phi : Double, lambda : Double, q : Qubit) : Unit {
    Rz(lambda, q);
    Ry(theta, q);
    Rz(phi, q);
}
operation u3(theta : Double, phi : Double, lambda : Double, q : Qubit) : Unit {
    U(theta, phi, lambda, q);
}
operation u2(phi : Double, lambda : Double, q : Qubit) : Unit {
    U(PI()/2.0, phi, lambda, q);
}
operation u0(gamma : Double, q : Qubit) : Unit {
    U(0.0, 0.0, 0.0, q);
}
operation cy(a : Qubit, b : Qubit) : Unit {
    (Adjoint S)(b);
    CNOT(a, b);
    S(b);
}
operation swap(a : Qubit, b : Qubit) : Unit {
    CNOT(a, b);
    CNOT(b, a);
    CNOT(a, b);
}
operation cu3(theta : Double, phi : Double, lambda : Double, c : Qubit, t : Qubit) : Unit {
    Rz((lambda-phi)/2.0, t);
    CNOT(c, t);
    u3(-(theta/2.0), 0.0, -((phi+lambda)/2.0), t);
    CNOT(c, t);
    u3(theta/2.0, phi, 0.0, t);
}
"""

# qelib1 gates realized by Q# intrinsics: name -> (callable, controls)
INTRINSIC = {
    "CX": ("CNOT", 0), "cx": ("CNOT", 0), "id": ("I", 0), "x": ("X", 0), "y": ("Y", 0),
    "z": ("Z", 0), "h": ("H", 0), "s": ("S", 0), "sdg": ("(Adjoint S)", 0), "t": ("T", 0),
    "tdg": ("(Adjoint T)", 0), "rx": ("Rx", 0), "ry": ("Ry", 0), "rz": ("Rz", 0),
    "u1": ("R1", 0), "cz": ("CZ", 0), "ccx": ("CCNOT", 0), "ch": ("Controlled H", 1),
    "crz": ("Controlled Rz", 1), "cu1": ("Controlled R1", 1), "cswap": ("Controlled SWAP", 1),
}
PRELUDE_OPS = ("U", "u3", "u2", "u0", "cy", "swap", "cu3")
FUNCS = {"sin": "Sin", "cos": "Cos", "tan": "Tan", "exp": "ExpD", "ln": "Log", "sqrt": "Sqrt"}


class QSharpError(ValueError):
    pass


def expr(e) -> str:
    """Double-valued Q# expression."""
    if isinstance(e, ast.Int):
        return f"{e.value}.0"
    if isinstance(e, ast.Real):
        return _real(e.value)
    if isinstance(e, ast.Pi):
        return "PI()"
    if isinstance(e, ast.Var):
        return e.name
    if isinstance(e, ast.Call):
        return f"{FUNCS[e.func]}({expr(e.arg)})"
    if isinstance(e, ast.Neg):
        return f"-({expr(e.operand)})"
    if isinstance(e, ast.BinOp):
        if e.op == "^":
            return f"PowD({expr(e.left)}, {expr(e.right)})"
        return f"({expr(e.left)}{e.op}{expr(e.right)})"
    raise QSharpError(f"not an expression: {e!r}")


def _arg(a: ast.Arg, local: bool) -> str:
    return a.reg if local and a.index is None else f"{a.reg}[{a.index}]"


def gate_call(g: ast.Gate, local: bool = False) -> str:
    params = [expr(p) for p in g.params]
    qs = [_arg(a, local) for a in g.args]
    if g.name in INTRINSIC:
        op, nctl = INTRINSIC[g.name]
        if nctl:
            target = qs[nctl:] if not params else [f"({', '.join(params + qs[nctl:])})"]
            inner = target[0] if len(target) == 1 else f"({', '.join(target)})"
            return f"{op}([{', '.join(qs[:nctl])}], {inner});"
        return f"{op}({', '.join(params + qs)});"
    return f"{g.name}({', '.join(params + qs)});"


class _Emitter:
    def __init__(self, p: ast.Program):
        self.p = p
        self.csize = {r.name: r.size for r in p.cregs()}

    def stmt(self, s, local: bool = False) -> list[str]:
        if isinstance(s, ast.Gate):
            return [gate_call(s, local)]
        if isinstance(s, ast.Measure):
            return [f"set {s.dst.reg} w/= {s.dst.index} <- M({_arg(s.src, local)});"]
        if isinstance(s, ast.Reset):
            return [f"Reset({_arg(s.arg, local)});"]
        if isinstance(s, ast.Barrier):
            return []
        if isinstance(s, ast.If):
            return ([f"if (ResultArrayAsInt({s.creg}) == {s.value}) {{"]
                    + [IND + x for x in self.stmt(s.body, local)] + ["}"])
        raise QSharpError(f"{getattr(s, 'pos', None)}: cannot emit {type(s).__name__}")

    def operation(self, d: ast.GateDecl) -> list[str]:
        sig = [f"{x} : Double" for x in d.params] + [f"{x} : Qubit" for x in d.qparams]
        head = f"operation {d.name}({', '.join(sig)}) : Unit {{"
        body: list[str] = []
        closers = 0
        for s in d.body:
            if isinstance(s, ast.Ancilla):
                kw = "borrowing" if s.dirty else "using"
                body.append(IND * closers + f"{kw} ({s.name} = Qubit[{s.size}]) {{")
                closers += 1
            else:
                body += [IND * closers + x for x in self.stmt(s, local=True)]
        for k in range(closers - 1, -1, -1):
            body.append(IND * k + "}")
        return [head] + [IND + x for x in body] + ["}"]

    def circuit(self) -> list[str]:
        qregs = self.p.qregs()
        inner = [f"mutable {r.name} = new Result[{r.size}];" for r in self.p.cregs()]
        for s in self.p.statements:
            inner += self.stmt(s)
        lines: list[str] = []
        for k, r in enumerate(qregs):
            lines.append(IND * k + f"using ({r.name} = Qubit[{r.size}]) {{")
        depth = len(qregs)
        lines += [IND * depth + x for x in inner]
        for k in range(depth - 1, -1, -1):
            if k == depth - 1:
                lines.append("")
            lines.append(IND * (k + 1) + f"ResetAll({qregs[k].name});")
            lines.append(IND * k + "}")
        return ["operation Circuit() : Unit {"] + [IND + x if x else "" for x in lines] + ["}"]

    def run(self) -> str:
        ops: list[str] = []
        for n in self.p.body:
            if isinstance(n, ast.GateDecl) and n.name not in PRELUDE_OPS:
                ops += self.operation(n) + [""]
            elif isinstance(n, (ast.Opaque, ast.Oracle)):
                raise QSharpError(f"{n.pos}: '{n.name}' has no definition to emit")
        for s in self.p.statements:
            g = s.body if isinstance(s, ast.If) else s
            if isinstance(g, ast.Gate) and g.name not in INTRINSIC:
                if g.name not in PRELUDE_OPS and not any(
                        isinstance(n, ast.GateDecl) and n.name == g.name for n in self.p.body):
                    raise QSharpError(f"{g.pos}: no Q# translation for gate '{g.name}'")
        body = PRELUDE.splitlines() + [""] + ops + self.circuit()
        lines = [f"namespace {NAMESPACE} {{"]
        lines += [IND + x if x else "" for x in body]
        lines.append("}")
        return "\n".join(lines) + "\n"


def emit_qsharp(p: ast.Program) -> str:
    """Q# namespace with a helper prelude, one operation per declared gate
    and a ``Circuit`` operation for the main body."""
    from ..frontend.check import desugar

    return _Emitter(desugar(p)).run()
