"""Syntax tree for openQASM 2.0 plus the ``oracle`` / ``ancilla`` extensions.

Nodes are frozen dataclasses. Source positions are carried on every node but
excluded from equality, so two trees compare equal when they have the same
structure regardless of where they came from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..algebra.angle import Angle


@dataclass(frozen=True)
class Pos:
    line: int
    col: int
    file: str = "<stdin>"

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


def _pos():
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Int:
    value: int
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Real:
    value: float
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Pi:
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Call:
    func: str  # sin cos tan exp ln sqrt
    arg: "Expr"
    pos: Pos | None = _pos()


Expr = Union[Int, Real, Pi, Var, BinOp, Neg, Call]

FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}


class EvalError(ValueError):
    pass


# Evaluation keeps three kinds apart: plain rationals, rational multiples of
# pi, and floats. Only the first two stay exact.
_RAT, _PI, _FLT = 0, 1, 2


def _value(e: Expr, env: dict) -> tuple[int, Fraction | float]:
    if isinstance(e, Int):
        return _RAT, Fraction(e.value)
    if isinstance(e, Real):
        return _FLT, e.value
    if isinstance(e, Pi):
        return _PI, Fraction(1)
    if isinstance(e, Var):
        if e.name not in env:
            raise EvalError(f"unbound parameter '{e.name}'")
        v = env[e.name]
        if isinstance(v, Angle):
            return (_PI, v.coeff) if v.coeff is not None else (_FLT, v.radians)
        if isinstance(v, tuple):
            return v
        return _FLT, float(v)
    if isinstance(e, Neg):
        k, x = _value(e.operand, env)
        return k, -x
    if isinstance(e, Call):
        x = _as_float(_value(e.arg, env))
        try:
            return _FLT, FUNCS[e.func](x)
        except (ValueError, OverflowError) as exc:
            raise EvalError(f"{e.func}({x}): {exc}") from None
    if isinstance(e, BinOp):
        a = _value(e.left, env)
        b = _value(e.right, env)
        return _binop(e.op, a, b)
    raise EvalError(f"not an expression: {e!r}")


def _as_float(v) -> float:
    k, x = v
    return float(x) * math.pi if k == _PI else float(x)


def _binop(op, a, b):
    (ka, xa), (kb, xb) = a, b
    if op in "+-":
        sign = 1 if op == "+" else -1
        if ka == kb and ka != _FLT:
            return ka, xa + sign * xb
        if ka != _FLT and kb != _FLT and (xa == 0 or xb == 0):
            if xb == 0:
                return ka, xa
            return kb, sign * xb
        return _FLT, _as_float(a) + sign * _as_float(b)
    if op == "*":
        if ka != _FLT and kb != _FLT and not (ka == _PI and kb == _PI):
            return max(ka, kb), xa * xb
        return _FLT, _as_float(a) * _as_float(b)
    if op == "/":
        if kb != _FLT and xb == 0:
            raise EvalError("division by zero")
        if ka != _FLT and kb == _RAT:
            return ka, xa / xb
        if ka == _PI and kb == _PI:
            return _RAT, xa / xb
        fb = _as_float(b)
        if fb == 0:
            raise EvalError("division by zero")
        return _FLT, _as_float(a) / fb
    if op == "^":
        if ka == _RAT and kb == _RAT and xb.denominator == 1 and (xa != 0 or xb >= 0):
            return _RAT, xa ** int(xb)
        return _FLT, _as_float(a) ** _as_float(b)
    raise EvalError(f"unknown operator {op}")


def eval_float(e: Expr, env: dict | None = None) -> float:
    return _as_float(_value(e, env or {}))


def eval_angle(e: Expr, env: dict | None = None) -> Angle:
    k, x = _value(e, env or {})
    if k == _PI:
        return Angle(x % 2, 0.0)
    if k == _RAT and x == 0:
        return Angle.zero()
    return Angle.of(float(x))


def free_vars(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, BinOp):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, (Neg,)):
        return free_vars(e.operand)
    if isinstance(e, Call):
        return free_vars(e.arg)
    return set()


def subst_expr(e: Expr, env: dict[str, Expr]) -> Expr:
    """Replace parameters by expressions. Substituted expressions are closed
    (they come from the caller's scope), so capture cannot occur."""
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, BinOp):
        return BinOp(e.op, subst_expr(e.left, env), subst_expr(e.right, env), e.pos)
    if isinstance(e, Neg):
        return Neg(subst_expr(e.operand, env), e.pos)
    if isinstance(e, Call):
        return Call(e.func, subst_expr(e.arg, env), e.pos)
    return e


def angle_expr(a: Angle) -> Expr:
    """An expression denoting ``a``; exact angles print as ``k*pi/d`` in
    (-pi, pi], floats are rounded to 15 significant digits."""
    if a.coeff is None:
        x = float(f"{a.radians:.15g}")
        return Neg(Real(-x)) if x < 0 else Real(x)
    c = a.coeff if a.coeff <= 1 else a.coeff - 2
    if c == 0:
        return Int(0)
    num, den = abs(c.numerator), c.denominator
    e: Expr = Pi() if num == 1 else BinOp("*", Int(num), Pi())
    if den != 1:
        e = BinOp("/", e, Int(den))
    return Neg(e) if c < 0 else e


# ----------------------------------------------------------------- statements


@dataclass(frozen=True)
class Arg:
    """A register reference; ``index`` is None for a whole register."""

    reg: str
    index: int | None = None
    pos: Pos | None = _pos()

    def __str__(self) -> str:
        return self.reg if self.index is None else f"{self.reg}[{self.index}]"


@dataclass(frozen=True)
class Gate:
    name: str
    params: tuple[Expr, ...]
    args: tuple[Arg, ...]
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Measure:
    src: Arg
    dst: Arg
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Reset:
    arg: Arg
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Barrier:
    args: tuple[Arg, ...]
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class If:
    creg: str
    value: int
    body: "Stmt"
    pos: Pos | None = _pos()


Stmt = Union[Gate, Measure, Reset, Barrier, If]


# --------------------------------------------------------------- declarations


@dataclass(frozen=True)
class QReg:
    name: str
    size: int
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class CReg:
    name: str
    size: int
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Ancilla:
    """Local ancilla register inside a gate body."""

    name: str
    size: int
    dirty: bool = False
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class GateDecl:
    name: str
    params: tuple[str, ...]
    qparams: tuple[str, ...]
    body: tuple[Union[Gate, Barrier, Ancilla], ...]
    pos: Pos | None = _pos()

    @property
    def ancillas(self) -> tuple[Ancilla, ...]:
        return tuple(s for s in self.body if isinstance(s, Ancilla))


@dataclass(frozen=True)
class Opaque:
    name: str
    params: tuple[str, ...]
    qparams: tuple[str, ...]
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Oracle:
    name: str
    qparams: tuple[str, ...]
    path: str
    pos: Pos | None = _pos()


@dataclass(frozen=True)
class Include:
    path: str
    program: "Program | None" = field(default=None, compare=False, repr=False)
    pos: Pos | None = _pos()


Decl = Union[QReg, CReg, GateDecl, Opaque, Oracle, Include]
Node = Union[Decl, Stmt]

STD_INCLUDE = "qelib1.inc"


@dataclass(frozen=True)
class Program:
    version: str = "2.0"
    body: tuple[Node, ...] = ()
    pos: Pos | None = _pos()

    @property
    def includes(self) -> tuple[Include, ...]:
        return tuple(n for n in self.body if isinstance(n, Include))

    @property
    def statements(self) -> tuple[Stmt, ...]:
        return tuple(n for n in self.body if isinstance(n, (Gate, Measure, Reset, Barrier, If)))

    def with_body(self, body) -> "Program":
        return Program(self.version, tuple(body), self.pos)

    def gates(self) -> dict[str, Union[GateDecl, Opaque, Oracle]]:
        """All visible gate declarations, including those from includes."""
        table: dict = {}
        for n in self.body:
            if isinstance(n, Include) and n.program is not None:
                table.update(n.program.gates())
            elif isinstance(n, (GateDecl, Opaque, Oracle)):
                table[n.name] = n
        return table

    def qregs(self) -> list[QReg]:
        return [n for n in self.body if isinstance(n, QReg)]

    def cregs(self) -> list[CReg]:
        return [n for n in self.body if isinstance(n, CReg)]

    def qubits(self) -> list[tuple[str, int]]:
        """Program qubits in declaration order."""
        return [(r.name, i) for r in self.qregs() for i in range(r.size)]

    def num_qubits(self) -> int:
        return sum(r.size for r in self.qregs())
