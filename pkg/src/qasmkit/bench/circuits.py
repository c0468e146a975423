"""Reconstructed multiply-controlled Toffoli and adder benchmarks.

Each Toffoli is written out over {h, t, tdg, cx} (two H, seven T/T-dagger,
six CNOT) so that gate counts do not depend on boxing.
"""

from __future__ import annotations

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def toffoli(a: str, b: str, c: str) -> list[str]:
    return [
        f"h {c};", f"cx {b},{c};", f"tdg {c};", f"cx {a},{c};", f"t {c};", f"cx {b},{c};",
        f"tdg {c};", f"cx {a},{c};", f"t {b};", f"t {c};", f"h {c};", f"cx {a},{b};",
        f"t {a};", f"tdg {b};", f"cx {a},{b};",
    ]


def _program(regs: list[tuple[str, int]], lines: list[str]) -> str:
    decl = "".join(f"qreg {r}[{n}];\n" for r, n in regs)
    return HEADER + decl + "\n".join(lines) + "\n"


def tof(k: int) -> str:
    """k-controlled NOT via a clean-ancilla Toffoli ladder: 2(k-2)+1 Toffolis
    on k controls, k-2 ancillas and one target."""
    if k < 3:
        raise ValueError("need at least three controls")
    c = [f"c[{i}]" for i in range(k)]
    a = [f"a[{i}]" for i in range(k - 2)]
    up = [(c[0], c[1], a[0])] + [(c[i + 2], a[i], a[i + 1]) for i in range(k - 3)]
    mid = (c[k - 1], a[k - 3], "t[0]")
    seq = up + [mid] + up[::-1]
    return _program([("c", k), ("a", k - 2), ("t", 1)], [g for x in seq for g in toffoli(*x)])


def barenco_tof(k: int) -> str:
    """k-controlled NOT with borrowed (dirty) ancillas: 4(k-2) Toffolis."""
    if k < 3:
        raise ValueError("need at least three controls")
    c = [f"c[{i}]" for i in range(k)]
    a = [f"a[{i}]" for i in range(k - 2)]
    top = (c[k - 1], a[k - 3], "t[0]")
    down = [(c[i + 2], a[i], a[i + 1]) for i in range(k - 3)][::-1]
    half = [top] + down + [(c[0], c[1], a[0])] + down[::-1]
    seq = half + half
    return _program([("c", k), ("a", k - 2), ("t", 1)], [g for x in seq for g in toffoli(*x)])


def vbe_adder(n: int) -> str:
    """Ripple-carry adder b <- a + b with carry qubits c (plain carry/sum
    blocks, the last carry landing in b[n])."""
    lines: list[str] = []

    def carry(ci, ai, bi, co, inverse=False):
        seq = [("t", ai, bi, co), ("cx", ai, bi), ("t", ci, bi, co)]
        for g in (seq[::-1] if inverse else seq):
            if g[0] == "t":
                lines.extend(toffoli(*g[1:]))
            else:
                lines.append(f"cx {g[1]},{g[2]};")

    def total(ci, ai, bi):
        lines.extend([f"cx {ai},{bi};", f"cx {ci},{bi};"])

    a = [f"a[{i}]" for i in range(n)]
    b = [f"b[{i}]" for i in range(n + 1)]
    c = [f"c[{i}]" for i in range(n)]
    nxt = c[1:] + [b[n]]
    for i in range(n):
        carry(c[i], a[i], b[i], nxt[i])
    lines.append(f"cx {a[n - 1]},{b[n - 1]};")
    total(c[n - 1], a[n - 1], b[n - 1])
    for i in range(n - 2, -1, -1):
        carry(c[i], a[i], b[i], nxt[i], inverse=True)
        total(c[i], a[i], b[i])
    return _program([("a", n), ("b", n + 1), ("c", n)], lines)


GENERATORS = {
    "tof_3": lambda: tof(3), "tof_4": lambda: tof(4), "tof_5": lambda: tof(5),
    "barenco_tof_3": lambda: barenco_tof(3), "barenco_tof_4": lambda: barenco_tof(4),
    "barenco_tof_5": lambda: barenco_tof(5), "vbe_adder_3": lambda: vbe_adder(3),
}


def write_all(directory: str) -> list[str]:
    import os

    paths = []
    for name, gen in GENERATORS.items():
        path = os.path.join(directory, f"{name}.qasm")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(gen())
        paths.append(path)
    return paths
