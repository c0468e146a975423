"""Dense GF(2) matrices with word-packed rows."""

from __future__ import annotations

from .. import _kernels


class BitMatrix:
    """Row ``i`` is an int whose bit ``j`` holds entry (i, j). XOR row addition
    is the only in-place mutation."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_strings(cls, rows: list[str]) -> "BitMatrix":
        """``["1000", "0101"]``: character j of string i is entry (i, j)."""
        ncols = len(rows[0]) if rows else 0
        vals = [sum(1 << j for j, ch in enumerate(r) if ch == "1") for r in rows]
        return cls(len(rows), ncols, vals)

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols)) for r in self.rows]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.nrows, self.ncols, self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, BitMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()})"

    def add_row(self, target: int, source: int) -> None:
        self.rows[target] ^= self.rows[source]

    def apply(self, ops) -> "BitMatrix":
        for t, s in ops:
            self.rows[t] ^= self.rows[s]
        return self

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(r == 1 << i for i, r in enumerate(self.rows))

    def column(self, j: int) -> int:
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows, [self.column(j) for j in range(self.ncols)])

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                k = (r & -r).bit_length() - 1
                r &= r - 1
                acc ^= other.rows[k]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, out)

    def rank(self) -> int:
        reduced, _ = gauss(self)
        return sum(1 for r in reduced.rows if r)

    def inverse(self) -> "BitMatrix":
        reduced, ops = gauss(self)
        if not reduced.is_identity():
            raise ValueError("matrix is singular")
        return BitMatrix.identity(self.nrows).apply(ops)


def gauss(m: BitMatrix) -> tuple[BitMatrix, list[tuple[int, int]]]:
    """Gauss-Jordan elimination by row additions only.

    Returns the reduced matrix and the additions ``(target, source)`` in the
    order applied. For invertible ``m`` the result is the identity and the
    additions replayed on the identity give ``m^-1``."""
    rows, ops = _kernels.gf2_gauss(m.rows, m.nrows, m.ncols)
    return BitMatrix(m.nrows, m.ncols, rows), ops


def ops_to_cnots(ops) -> list[tuple[int, int]]:
    """CNOT (control, target) list, in circuit order, implementing the linear
    map whose elimination produced ``ops``."""
    return [(s, t) for t, s in reversed(ops)]
