"""Canonical source printer. Output re-parses to a structurally equal tree."""

from __future__ import annotations

from . import ast

INDENT = "  "

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(e) -> int:
    if isinstance(e, ast.BinOp):
        return _PREC[e.op]
    if isinstance(e, ast.Neg):
        return 3
    return 5


def _real(x: float) -> str:
    s = repr(x)
    if "e" in s and "." not in s.split("e")[0]:
        m, ex = s.split("e")
        s = f"{m}.0e{ex}"
    return s


def expr_str(e) -> str:
    if isinstance(e, ast.Int):
        return str(e.value)
    if isinstance(e, ast.Real):
        return _real(e.value)
    if isinstance(e, ast.Pi):
        return "pi"
    if isinstance(e, ast.Var):
        return e.name
    if isinstance(e, ast.Call):
        return f"{e.func}({expr_str(e.arg)})"
    if isinstance(e, ast.Neg):
        inner = expr_str(e.operand)
        return f"-({inner})" if _prec(e.operand) < 3 else f"-{inner}"
    if isinstance(e, ast.BinOp):
        p = _PREC[e.op]
        left, right = expr_str(e.left), expr_str(e.right)
        if e.op == "^":
            if _prec(e.left) <= 4:
                left = f"({left})"
            if _prec(e.right) < 3:
                right = f"({right})"
        else:
            if _prec(e.left) < p:
                left = f"({left})"
            if _prec(e.right) <= p:
                right = f"({right})"
        return f"{left}{e.op}{right}"
    raise TypeError(f"not an expression: {e!r}")


def stmt_str(s) -> str:
    if isinstance(s, ast.Gate):
        params = f"({','.join(expr_str(p) for p in s.params)})" if s.params else ""
        return f"{s.name}{params} {','.join(map(str, s.args))};"
    if isinstance(s, ast.Measure):
        return f"measure {s.src} -> {s.dst};"
    if isinstance(s, ast.Reset):
        return f"reset {s.arg};"
    if isinstance(s, ast.Barrier):
        return f"barrier {','.join(map(str, s.args))};"
    if isinstance(s, ast.If):
        return f"if({s.creg}=={s.value}) {stmt_str(s.body)}"
    if isinstance(s, ast.Ancilla):
        return f"{'dirty ' if s.dirty else ''}ancilla {s.name}[{s.size}];"
    if isinstance(s, ast.QReg):
        return f"qreg {s.name}[{s.size}];"
    if isinstance(s, ast.CReg):
        return f"creg {s.name}[{s.size}];"
    if isinstance(s, ast.Include):
        return f'include "{s.path}";'
    if isinstance(s, ast.Opaque):
        params = f"({','.join(s.params)})" if s.params else ""
        return f"opaque {s.name}{params} {','.join(s.qparams)};"
    if isinstance(s, ast.Oracle):
        return f'oracle {s.name} {",".join(s.qparams)} {{ "{s.path}" }}'
    if isinstance(s, ast.GateDecl):
        params = f"({','.join(s.params)})" if s.params else ""
        lines = [f"gate {s.name}{params} {','.join(s.qparams)} {{"]
        lines += [INDENT + stmt_str(b) for b in s.body]
        lines.append("}")
        return "\n".join(lines)
    raise TypeError(f"cannot print {s!r}")


def print_program(p: ast.Program) -> str:
    lines = [f"OPENQASM {p.version};"]
    lines += [stmt_str(n) for n in p.body]
    return "\n".join(lines) + "\n"
