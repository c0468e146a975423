"""CNOT-dihedral block resynthesis."""

from __future__ import annotations

from fractions import Fraction

from ..algebra.angle import Angle
from ..frontend import ast
from ..frontend.ast import EvalError
from .blocks import rewrite_blocks
from .depgraph import qubits
from .phasepoly import PHASE_GATES, PhasePolynomial, gray_synth
from .rotfold import Z_NAMES

MEMBERS = {"cx", "x"} | set(PHASE_GATES)


def _phase_angle(g: ast.Gate) -> Angle | None:
    coeff = PHASE_GATES[g.name]
    if coeff is not None:
        return Angle.pi(coeff.numerator, coeff.denominator)
    if ast.free_vars(g.params[0]):
        return None
    try:
        return ast.eval_angle(g.params[0])
    except EvalError:
        return None


def is_member(s) -> bool:
    if not isinstance(s, ast.Gate) or s.name not in MEMBERS:
        return False
    if s.name == "cx":
        return s.args[0] != s.args[1]
    if s.name in PHASE_GATES:
        return _phase_angle(s) is not None
    return True


def block_polynomial(block: list[ast.Gate], wires: list) -> PhasePolynomial:
    index = {w: i for i, w in enumerate(wires)}
    poly = PhasePolynomial(len(wires))
    for g in block:
        qs = [index[(a.reg, a.index)] for a in g.args]
        if g.name == "cx":
            poly.cx(*qs)
        elif g.name == "x":
            poly.x(qs[0])
        else:
            poly.rz(qs[0], _phase_angle(g))
    return poly


def phase_gate(angle: Angle, arg: ast.Arg) -> ast.Gate:
    c = angle.pi_multiple()
    if c is not None and c in Z_NAMES:
        return ast.Gate(Z_NAMES[c], (), (arg,))
    return ast.Gate("rz", (ast.angle_expr(angle),), (arg,))


def to_gates(ops, wires) -> list[ast.Gate]:
    arg = [ast.Arg(r, i) for r, i in wires]
    out = []
    for op in ops:
        if op[0] == "cx":
            out.append(ast.Gate("cx", (), (arg[op[1]], arg[op[2]])))
        elif op[0] == "x":
            out.append(ast.Gate("x", (), (arg[op[1]],)))
        elif not op[2].is_zero():
            out.append(phase_gate(op[2], arg[op[1]]))
    return out


def _cx_count(gates) -> int:
    return sum(1 for g in gates if g.name == "cx")


def resynthesize(block: list[ast.Gate]) -> list[ast.Gate]:
    """Gray-synth replacement for one block, kept only if it is smaller."""
    wires: list = []
    for g in block:
        for q in qubits(g):
            if q not in wires:
                wires.append(q)
    new = to_gates(gray_synth(block_polynomial(block, wires)), wires)
    old_cx, new_cx = _cx_count(block), _cx_count(new)
    if new_cx < old_cx or (new_cx == old_cx and len(new) < len(block)):
        return new
    return list(block)


def resynth_block(stmts: list, cregs: dict) -> list[list]:
    out: list[list] = [[] for _ in stmts]
    members: list[int] = []
    touched: set = set()

    def close():
        if members:
            out[members[-1]] = resynthesize([stmts[k] for k in members])
        members.clear()
        touched.clear()

    for k, s in enumerate(stmts):
        qs = set(qubits(s))
        if is_member(s):
            members.append(k)
            touched.update(qs)
            continue
        if qs & touched or not qs:
            close()
        out[k] = [s]
    close()
    return out


def resynthesize_cnot(p: ast.Program) -> ast.Program:
    """Replace maximal CNOT-dihedral blocks by Gray-synth circuits."""
    return rewrite_blocks(p, resynth_block)
