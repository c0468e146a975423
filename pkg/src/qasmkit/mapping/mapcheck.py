"""Check that a mapped program respects a device's coupling graph."""

from __future__ import annotations

from ..device import Device
from ..frontend import ast
from .layout import PHYS_REG


def check_mapped(p: ast.Program, d: Device) -> list[str]:
    """Violations, one message per offending statement (empty when valid)."""
    errs: list[str] = []
    regs = p.qregs()
    if len(regs) != 1 or regs[0].name != PHYS_REG or regs[0].size > d.n:
        errs.append(f"expected a single register {PHYS_REG}[<= {d.n}]")
    for s in p.statements:
        g = s.body if isinstance(s, ast.If) else s
        if not isinstance(g, ast.Gate):
            continue
        where = f"{g.pos}: " if g.pos else ""
        if len(g.args) > 2 or (len(g.args) == 2 and g.name not in ("CX", "cx")):
            errs.append(f"{where}gate '{g.name}' on {len(g.args)} qubits is not a device primitive")
        elif len(g.args) == 2:
            c, t = g.args[0].index, g.args[1].index
            if c is None or t is None or not d.coupled(c, t):
                errs.append(f"{where}{g.name} {g.args[0]},{g.args[1]} is not a coupling of {d.name}")
    return errs
