"""Rotation folding in the Pauli-sum representation.

Every Clifford gate is absorbed into a running frame C (tracked as the map
P -> C^dagger P C), and every axis rotation is rewritten as R(theta, Q) with
Q in the frame of the block input. A rotation merges with the earliest
earlier rotation on the same axis that it can commute back to; the merged
angle is placed at the later gate and the earlier gate is deleted. No gate is
moved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import _kernels
from ..algebra.angle import Angle
from ..algebra.clifford import CLIFFORD_GATES, CliffordTableau
from ..algebra.pauli import PauliString
from ..algebra.rotation import Rotation, merge
from ..frontend import ast
from ..frontend.ast import EvalError
from .blocks import rewrite_blocks
from .depgraph import qubits

# name -> (axis, angle as a multiple of pi, or None when parametric)
ROTATIONS = {
    "rx": ("X", None), "ry": ("Y", None), "rz": ("Z", None), "u1": ("Z", None),
    "z": ("Z", Fraction(1)), "s": ("Z", Fraction(1, 2)), "sdg": ("Z", Fraction(-1, 2)),
    "t": ("Z", Fraction(1, 4)), "tdg": ("Z", Fraction(-1, 4)),
}
# Named Z rotations by coefficient of pi.
Z_NAMES = {Fraction(1): "z", Fraction(1, 2): "s", Fraction(3, 2): "sdg",
           Fraction(1, 4): "t", Fraction(7, 4): "tdg"}


@dataclass
class _Rot:
    pos: int
    qubit: int
    axis: str
    rotation: Rotation
    touched: bool = False


@dataclass
class PauliSumCircuit:
    """Elements of a block in source order, each a Clifford (frame update),
    a rotation in the global frame, or an uninterpreted element carrying the
    global images of X and Z on its support."""

    n: int
    frame: CliffordTableau = None
    phase: Angle = field(default_factory=Angle.zero)
    rotations: dict[int, _Rot] = field(default_factory=dict)
    # Rows of Paulis that block commutation, with the element that owns them.
    _xs: np.ndarray = None
    _zs: np.ndarray = None
    _owner: list[int] = field(default_factory=list)
    _by_axis: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    _row_of: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.frame = self.frame or CliffordTableau.identity(self.n)
        self.words = max(1, (self.n + 63) // 64)
        self._xs = np.zeros((16, self.words), dtype=np.uint64)
        self._zs = np.zeros((16, self.words), dtype=np.uint64)

    def _push_row(self, p: PauliString, owner: int) -> None:
        m = len(self._owner)
        if m == self._xs.shape[0]:
            self._xs = np.concatenate([self._xs, np.zeros_like(self._xs)])
            self._zs = np.concatenate([self._zs, np.zeros_like(self._zs)])
        self._xs[m] = _kernels.pack(p.x, self.words)
        self._zs[m] = _kernels.pack(p.z, self.words)
        self._owner.append(owner)

    def clifford(self, name: str, qs: tuple[int, ...]) -> None:
        self.frame = self.frame.prepend(name, qs)

    def uninterpreted(self, pos: int, qs) -> None:
        for q in qs:
            self._push_row(self.frame.xs[q], pos)
            self._push_row(self.frame.zs[q], pos)

    def rotation(self, pos: int, q: int, axis: str, angle: Angle) -> None:
        local = PauliString.single(self.n, q, axis)
        r = _Rot(pos, q, axis, Rotation(angle, self.frame.conjugate(local)))
        key = (r.rotation.pauli.x, r.rotation.pauli.z)
        m = len(self._owner)
        blocker = _kernels.last_anticommuting(
            self._xs, self._zs,
            _kernels.pack(key[0], self.words), _kernels.pack(key[1], self.words), m)
        bound = self._owner[blocker] if blocker >= 0 else -1
        earlier = next((e for e in self._by_axis.get(key, ()) if e > bound), None)
        if earlier is not None:
            prev = self.rotations.pop(earlier)
            self._by_axis[key].remove(earlier)
            res = merge(r.rotation, prev.rotation)
            r.rotation = res.rotation
            self.phase = self.phase + res.global_phase
            r.touched = True
            self._kill(earlier)
        self.rotations[pos] = r
        self._by_axis.setdefault(key, []).append(pos)
        self._row_of[pos] = len(self._owner)
        self._push_row(r.rotation.pauli, pos)

    def _kill(self, owner: int) -> None:
        # an identity row commutes with everything
        k = self._row_of.pop(owner)
        self._xs[k] = 0
        self._zs[k] = 0


def _param_angle(e) -> Angle | None:
    if ast.free_vars(e):
        return None
    try:
        return ast.eval_angle(e)
    except EvalError:
        return None


def _half_phase(e) -> Angle:
    """-theta/2 for rx(theta) = e^{-i theta/2} R(theta, X)."""
    return ast.eval_angle(ast.Neg(ast.BinOp("/", e, ast.Int(2))))


def _emit(r: _Rot, args: tuple) -> tuple[list, Angle]:
    """Statements for a surviving rotation and the phase they drop."""
    a = r.rotation.angle
    if a.is_zero():
        return [], Angle.zero()
    if r.axis == "Z":
        c = a.pi_multiple()
        if c is not None and c in Z_NAMES:
            return [ast.Gate(Z_NAMES[c], (), args)], Angle.zero()
        return [ast.Gate("rz", (ast.angle_expr(a),), args)], Angle.zero()
    e = ast.angle_expr(a)
    return [ast.Gate("r" + r.axis.lower(), (e,), args)], -_half_phase(e)


def _phase_gates(phase: Angle, arg: ast.Arg) -> list:
    """e^{i phase} I as u1(phase); x; u1(phase); x on one qubit."""
    u = ast.Gate("u1", (ast.angle_expr(phase),), (arg,))
    x = ast.Gate("x", (), (arg,))
    return [u, x, u, x]


def fold_block(stmts: list, cregs: dict, ignore_global_phase: bool = True) -> list[list]:
    index: dict = {}
    for s in stmts:
        for q in qubits(s):
            index.setdefault(q, len(index))
    circ = PauliSumCircuit(len(index))
    for pos, s in enumerate(stmts):
        qs = tuple(index[q] for q in qubits(s))
        if isinstance(s, ast.Gate) and s.name in ROTATIONS:
            axis, coeff = ROTATIONS[s.name]
            angle = Angle.pi(coeff.numerator, coeff.denominator) if coeff is not None else _param_angle(s.params[0])
            if angle is not None:
                if axis != "Z":
                    circ.phase = circ.phase + _half_phase(s.params[0])
                circ.rotation(pos, qs[0], axis, angle)
                continue
        if isinstance(s, ast.Gate) and s.name in CLIFFORD_GATES and len(set(qs)) == len(qs):
            circ.clifford(s.name, qs)
            continue
        circ.uninterpreted(pos, qs)
    out: list[list] = []
    for pos, s in enumerate(stmts):
        r = circ.rotations.get(pos)
        if isinstance(s, ast.Gate) and s.name in ROTATIONS and r is None and _is_folded(s):
            out.append([])
        elif r is not None and (r.touched or r.rotation.angle.is_zero()):
            new, dropped = _emit(r, s.args)
            circ.phase = circ.phase + dropped
            out.append(new)
        elif r is not None and r.axis != "Z":
            circ.phase = circ.phase - _half_phase(s.params[0])
            out.append([s])
        else:
            out.append([s])
    if not ignore_global_phase and not circ.phase.is_zero() and index:
        reg, i = next(iter(index))
        out[-1] = out[-1] + _phase_gates(circ.phase, ast.Arg(reg, i))
    return out


def _is_folded(s: ast.Gate) -> bool:
    axis, coeff = ROTATIONS[s.name]
    return coeff is not None or _param_angle(s.params[0]) is not None


def fold_rotations(p: ast.Program, ignore_global_phase: bool = True) -> ast.Program:
    """Merge rotations across Clifford gates and commuting neighbours."""
    return rewrite_blocks(p, lambda stmts, cregs: fold_block(stmts, cregs, ignore_global_phase))
