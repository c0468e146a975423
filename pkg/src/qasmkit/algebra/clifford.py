"""Clifford tableaux: the images of X_i and Z_i under conjugation."""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliString

CLIFFORD_GATES = {"h", "s", "sdg", "x", "y", "z", "cx", "CX", "cz", "cy", "swap", "id"}

_INVERSE = {"s": "sdg", "sdg": "s"}

# Composite gates as primitive sequences in application order.
_COMPOSITE = {
    "cz": (("h", 1), ("cx", 0, 1), ("h", 1)),
    "cy": (("sdg", 1), ("cx", 0, 1), ("s", 1)),
    "swap": (("cx", 0, 1), ("cx", 1, 0), ("cx", 0, 1)),
}


def _pull_primitive(name: str, qs: tuple[int, ...], n: int) -> dict[tuple[str, int], PauliString]:
    """g^dagger P g for the generators on the support of primitive g."""
    if name in ("cx", "CX"):
        c, t = qs
        bc, bt = 1 << c, 1 << t
        return {
            ("X", c): PauliString(n, bc | bt, 0),
            ("X", t): PauliString(n, bt, 0),
            ("Z", c): PauliString(n, 0, bc),
            ("Z", t): PauliString(n, 0, bc | bt),
        }
    (q,) = qs
    X = PauliString.single(n, q, "X")
    Y = PauliString.single(n, q, "Y")
    Z = PauliString.single(n, q, "Z")
    table = {
        "h": (Z, X),
        "s": (-Y, Z),
        "sdg": (Y, Z),
        "x": (X, -Z),
        "y": (-X, -Z),
        "z": (-X, Z),
        "id": (X, Z),
    }
    ix, iz = table[name]
    return {("X", q): ix, ("Z", q): iz}


@dataclass(frozen=True)
class CliffordTableau:
    n: int
    xs: tuple[PauliString, ...]
    zs: tuple[PauliString, ...]

    @staticmethod
    def identity(n: int) -> "CliffordTableau":
        return CliffordTableau(
            n,
            tuple(PauliString.single(n, i, "X") for i in range(n)),
            tuple(PauliString.single(n, i, "Z") for i in range(n)),
        )

    @staticmethod
    def from_circuit(n: int, gates) -> "CliffordTableau":
        """Tableau of C = g_k ... g_1 for gates given in application order as
        ``(name, qubits)`` pairs."""
        t = CliffordTableau.identity(n)
        for name, qs in reversed(list(gates)):
            t = t.prepend_inverse(name, tuple(qs))
        return t

    def conjugate(self, p: PauliString) -> PauliString:
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: tableau on {self.n} qubits, Pauli on {p.n}")
        e = (p.x & p.z).bit_count() + (0 if p.sign > 0 else 2)
        acc = PauliString(self.n)
        x, z = p.x, p.z
        while x:
            i = (x & -x).bit_length() - 1
            x &= x - 1
            de, acc = acc.mul(self.xs[i])
            e += de
        while z:
            i = (z & -z).bit_length() - 1
            z &= z - 1
            de, acc = acc.mul(self.zs[i])
            e += de
        e %= 4
        if e % 2:
            raise ArithmeticError("tableau is not a valid Clifford conjugation")
        return acc if e == 0 else -acc

    def compose(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of ``self . other`` (apply ``other`` first)."""
        return CliffordTableau(
            self.n,
            tuple(self.conjugate(p) for p in other.xs),
            tuple(self.conjugate(p) for p in other.zs),
        )

    def prepend(self, name: str, qs: tuple[int, ...]) -> "CliffordTableau":
        """The map P -> T(g^dagger P g). Repeated calls in circuit order turn
        the identity into P -> C^dagger P C."""
        if name in _COMPOSITE:
            t = self
            for step in _COMPOSITE[name]:
                t = t.prepend(step[0], tuple(qs[i] for i in step[1:]))
            return t
        pulled = _pull_primitive(name, qs, self.n)
        xs, zs = list(self.xs), list(self.zs)
        for (kind, q), p in pulled.items():
            (xs if kind == "X" else zs)[q] = self.conjugate(p)
        return CliffordTableau(self.n, tuple(xs), tuple(zs))

    def prepend_inverse(self, name: str, qs: tuple[int, ...]) -> "CliffordTableau":
        """The map P -> T(g P g^dagger)."""
        if name in _COMPOSITE:
            t = self
            for step in reversed(_COMPOSITE[name]):
                t = t.prepend_inverse(step[0], tuple(qs[i] for i in step[1:]))
            return t
        return self.prepend(_INVERSE.get(name, name), qs)

    def is_valid(self) -> bool:
        from .pauli import commutes

        gens = list(self.xs) + list(self.zs)
        for i, a in enumerate(gens):
            for j, b in enumerate(gens):
                if j <= i:
                    continue
                anti = j == i + self.n
                if commutes(a, b) == anti:
                    return False
        return True


def conjugate(c: CliffordTableau, p: PauliString) -> PauliString:
    """C P C^dagger."""
    return c.conjugate(p)
