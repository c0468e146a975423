"""Dense unitary simulation used as a correctness oracle.

Qubits are numbered in declaration order across all quantum registers and
qubit 0 is the most significant bit of a basis index.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import _kernels
from .frontend import ast

MAX_QUBITS = 10
TOL = 1e-8


class SimulationError(ValueError):
    pass


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -cmath.exp(1j * lam) * s],
         [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c]],
        dtype=np.complex128,
    )


class _Sim:
    def __init__(self, p: ast.Program):
        self.gates = p.gates()
        self.index: dict[tuple[str, int], int] = {}
        for name, i in p.qubits():
            self.index[(name, i)] = len(self.index)
        self.n = len(self.index)
        if self.n > MAX_QUBITS:
            raise SimulationError(f"{self.n} qubits exceeds the simulation limit of {MAX_QUBITS}")
        self.u = np.eye(1 << self.n, dtype=np.complex128)

    def qubit(self, a: ast.Arg) -> int:
        if a.index is None:
            raise SimulationError(f"register argument '{a.reg}' must be desugared first")
        return self.index[(a.reg, a.index)]

    def apply(self, name: str, params: list[float], qs: list[int], depth: int = 0):
        if name == "U":
            _kernels.apply_1q(self.u, u3_matrix(*params), qs[0], self.n)
            return
        if name == "CX":
            _kernels.apply_cx(self.u, qs[0], qs[1], self.n)
            return
        decl = self.gates.get(name)
        if not isinstance(decl, ast.GateDecl):
            raise SimulationError(f"gate '{name}' has no definition to simulate")
        if decl.ancillas:
            raise SimulationError(f"gate '{name}' declares ancillas; inline it first")
        env = dict(zip(decl.params, params))
        binding = dict(zip(decl.qparams, qs))
        for s in decl.body:
            if isinstance(s, ast.Barrier):
                continue
            vals = [ast.eval_float(e, env) for e in s.params]
            self.apply(s.name, vals, [binding[a.reg] for a in s.args], depth + 1)

    def run(self, stmts):
        for s in stmts:
            if isinstance(s, ast.Barrier):
                continue
            if not isinstance(s, ast.Gate):
                raise SimulationError(f"cannot simulate {type(s).__name__.lower()} statement")
            vals = [ast.eval_float(e) for e in s.params]
            self.apply(s.name, vals, [self.qubit(a) for a in s.args])
        return self.u


def unitary(p: ast.Program) -> np.ndarray:
    """The 2^n x 2^n matrix of a measurement-free program."""
    from .frontend.check import desugar

    p = desugar(p)
    return _Sim(p).run(p.statements)


def permutation_matrix(perm: list[int]) -> np.ndarray:
    """Matrix sending qubit ``i`` to position ``perm[i]``."""
    n = len(perm)
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(dim):
        y = 0
        for i in range(n):
            if (x >> (n - 1 - i)) & 1:
                y |= 1 << (n - 1 - perm[i])
        m[y, x] = 1
    return m


def phase_between(a: np.ndarray, b: np.ndarray) -> complex:
    """Unit phase taken from the largest-magnitude entry ratio a/b."""
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[k]) < 1e-12:
        return 1.0
    r = a[k] / b[k]
    return r / abs(r) if abs(r) > 1e-12 else 1.0


def equiv(a: np.ndarray, b: np.ndarray, up_to_phase: bool = True,
          perm: list[int] | None = None, tol: float = TOL) -> bool:
    """True iff a = e^{i phi} P b within ``tol`` (max-norm)."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if perm is not None:
        b = permutation_matrix(perm) @ b
    ph = phase_between(a, b) if up_to_phase else 1.0
    return float(np.max(np.abs(a - ph * b))) < tol


def restrict_ancillas(u: np.ndarray, n_keep: int, n_anc: int, anc_first: bool) -> np.ndarray:
    """Block of ``u`` acting on the subspace where the ancilla qubits start
    and end in zero."""
    idx = np.arange(1 << n_keep)
    if not anc_first:
        idx = idx << n_anc
    return u[np.ix_(idx, idx)]
