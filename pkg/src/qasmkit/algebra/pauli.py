"""Signed Pauli strings in the symplectic (x, z) representation.

Bit ``i`` of ``x``/``z`` describes qubit ``i``; a qubit with both bits set
carries Y. Products track the power of ``i`` internally and only ever
return Hermitian (sign +/-1) results.
"""

from __future__ import annotations

from dataclasses import dataclass

_ones = int.bit_count


def _phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent e (mod 4) with P(x1,z1) P(x2,z2) = i^e P(x1^x2, z1^z2), where
    P(x,z) denotes the tensor product with Y for x=z=1 (no extra sign)."""
    y1, xo1, zo1 = x1 & z1, x1 & ~z1, z1 & ~x1
    y2, xo2, zo2 = x2 & z2, x2 & ~z2, z2 & ~x2
    plus = _ones((y1 & zo2) | (xo1 & y2) | (zo1 & xo2))
    minus = _ones((y1 & xo2) | (xo1 & zo2) | (zo1 & y2))
    return (plus - minus) % 4


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    @staticmethod
    def identity(n: int) -> "PauliString":
        return PauliString(n)

    @staticmethod
    def single(n: int, qubit: int, kind: str, sign: int = 1) -> "PauliString":
        b = 1 << qubit
        return PauliString(n, b if kind in "XY" else 0, b if kind in "ZY" else 0, sign)

    @staticmethod
    def from_label(label: str) -> "PauliString":
        """``"+XIZ"`` style label; character ``i`` is qubit ``i``."""
        sign = 1
        if label[:1] in "+-":
            sign = -1 if label[0] == "-" else 1
            label = label[1:]
        x = z = 0
        for i, ch in enumerate(label):
            if ch in "XY":
                x |= 1 << i
            if ch in "ZY":
                z |= 1 << i
        return PauliString(len(label), x, z, sign)

    def label(self) -> str:
        chars = []
        for i in range(self.n):
            xb, zb = (self.x >> i) & 1, (self.z >> i) & 1
            chars.append("IXZY"[xb | (zb << 1)])
        return ("+" if self.sign > 0 else "-") + "".join(chars)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, -self.sign)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def support(self) -> int:
        return self.x | self.z

    def same_up_to_sign(self, other: "PauliString") -> bool:
        return self.x == other.x and self.z == other.z

    def mul(self, other: "PauliString") -> tuple[int, "PauliString"]:
        """Product self*other as (extra power of i, unsigned-phase result)."""
        e = _phase(self.x, self.z, other.x, other.z)
        e += (0 if self.sign > 0 else 2) + (0 if other.sign > 0 else 2)
        return e % 4, PauliString(self.n, self.x ^ other.x, self.z ^ other.z, 1)

    def __matmul__(self, other: "PauliString") -> "PauliString":
        """Hermitian product of commuting Paulis."""
        e, p = self.mul(other)
        if e % 2:
            raise ValueError("product of anticommuting Paulis is not Hermitian")
        return p if e == 0 else -p

    def __repr__(self) -> str:
        return f"PauliString({self.label()})"


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic product of p and q is even."""
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")
    return (_ones(p.x & q.z) + _ones(p.z & q.x)) % 2 == 0
