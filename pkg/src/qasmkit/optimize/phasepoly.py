"""Phase polynomials of CNOT-dihedral circuits and Gray-synth."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.angle import Angle
from ..algebra.bitmatrix import BitMatrix, gauss, ops_to_cnots

# Diagonal gates of the block, as multiples of pi (None = parametric).
PHASE_GATES = {"z": Fraction(1), "s": Fraction(1, 2), "sdg": Fraction(-1, 2),
               "t": Fraction(1, 4), "tdg": Fraction(-1, 4), "rz": None, "u1": None}


@dataclass
class PhasePolynomial:
    """U|x> = e^{i phase} e^{i sum_f theta_f f(x)} |A x + b>.

    Parities ``f`` are ints over the n inputs (bit j = input j). Row i of
    ``linear`` is the parity held by wire i at the end, and ``flips`` marks the
    wires that end up complemented."""

    n: int
    terms: dict[int, Angle] = field(default_factory=dict)
    linear: BitMatrix = None
    flips: int = 0
    phase: Angle = field(default_factory=Angle.zero)

    def __post_init__(self):
        if self.linear is None:
            self.linear = BitMatrix.identity(self.n)

    def add_term(self, parity: int, angle: Angle) -> None:
        if parity == 0:
            raise ValueError("parity must be nonzero")
        a = self.terms.get(parity, Angle.zero()) + angle
        if a.is_zero():
            self.terms.pop(parity, None)
        else:
            self.terms[parity] = a

    # circuit building, wire-level
    def cx(self, c: int, t: int) -> None:
        self.linear.rows[t] ^= self.linear.rows[c]
        self.flips ^= ((self.flips >> c) & 1) << t

    def x(self, q: int) -> None:
        self.flips ^= 1 << q

    def rz(self, q: int, angle: Angle) -> None:
        """R(angle, Z) on wire q: e^{i angle (f + b)}."""
        if (self.flips >> q) & 1:
            self.phase = self.phase + angle
            angle = -angle
        self.add_term(self.linear.rows[q], angle)


# Circuit ops produced by synthesis: ("cx", c, t), ("rz", q, Angle), ("x", q).


def _emit_matches(q: int, state: list[int], remaining: dict[int, Angle], out: list) -> None:
    a = remaining.pop(state[q], None)
    if a is not None:
        out.append(("rz", q, a))


def gray_synth(poly: PhasePolynomial, router=None) -> list[tuple]:
    """Gray-synth: realize every parity term and finish in ``poly.linear``.

    Sets of pending parities are split recursively on the row with the most
    zeros or ones; CNOTs are added towards the set's target row once some
    other row is all ones. ``router`` (optional) replaces the raw CNOT and
    final linear synthesis for topology-constrained use."""
    n = poly.n
    poly.linear.inverse()  # raises on a singular linear part
    remaining = dict(poly.terms)
    state = [1 << i for i in range(n)]
    out: list[tuple] = []
    if router is not None:
        return router(poly, remaining, state, out)
    for q in range(n):
        _emit_matches(q, state, remaining, out)
    stack: list[tuple[list[int], list[int], int]] = [(list(remaining), list(range(n)), n)]
    while stack:
        cols, rows, i = stack.pop()
        if not cols:
            continue
        if 0 <= i < n:
            again = True
            while again:
                again = False
                for j in range(n):
                    if j != i and all((c >> j) & 1 for c in cols):
                        again = True
                        out.append(("cx", j, i))
                        state[i] ^= state[j]
                        _emit_matches(i, state, remaining, out)
                        _update_sets(stack, cols, j, i)
        if not rows:
            continue
        j = max(rows, key=lambda r: (max(sum((c >> r) & 1 for c in cols),
                                         sum(1 - ((c >> r) & 1) for c in cols)), -rows.index(r)))
        zeros = [c for c in cols if not (c >> j) & 1]
        ones = [c for c in cols if (c >> j) & 1]
        rest = [r for r in rows if r != j]
        stack.append((ones, list(rest), j if i == n else i))
        stack.append((zeros, list(rest), i))
    if remaining:
        raise AssertionError(f"gray-synth left parities unrealized: {sorted(remaining)}")
    out += synth_linear(state, poly.linear.rows)
    out += [("x", q) for q in range(n) if (poly.flips >> q) & 1]
    return out


def _update_sets(stack, cols, j, i) -> None:
    """Row j ^= row i in every pending parity set (after CNOT j -> i)."""
    def upd(cs):
        for k, c in enumerate(cs):
            cs[k] = c ^ (((c >> i) & 1) << j)
    upd(cols)
    for cs, _, _ in stack:
        upd(cs)


def synth_linear(state: list[int], target: list[int]) -> list[tuple]:
    """CNOTs taking wires holding ``state`` to wires holding ``target``."""
    n = len(state)
    s = BitMatrix(n, n, state)
    w = BitMatrix(n, n, target) @ s.inverse()
    _, ops = gauss(w)
    return [("cx", c, t) for c, t in ops_to_cnots(ops)]


def ops_linear(ops, n: int) -> BitMatrix:
    m = BitMatrix.identity(n)
    for op in ops:
        if op[0] == "cx":
            m.rows[op[2]] ^= m.rows[op[1]]
    return m
