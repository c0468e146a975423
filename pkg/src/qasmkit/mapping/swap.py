"""Routing by swapping CNOT endpoints along shortest paths."""

from __future__ import annotations

from ..device import Device
from ..frontend import ast
from .layout import Layout, MappedProgram, physical_arg, physical_program, relabel_stmt

HALF_PI = ast.BinOp("/", ast.Pi(), ast.Int(2))
H_PARAMS = (HALF_PI, ast.Int(0), ast.Pi())


def h_gate(a: int) -> ast.Gate:
    """Hadamard as U(pi/2, 0, pi)."""
    return ast.Gate("U", H_PARAMS, (physical_arg(a),))


def cx_on(d: Device, c: int, t: int, name: str = "CX") -> list[ast.Gate]:
    """CX c->t on an undirected coupling, flipped with four H when only t->c
    is available."""
    if d.coupled(c, t):
        return [ast.Gate(name, (), (physical_arg(c), physical_arg(t)))]
    if not d.coupled(t, c):
        raise ValueError(f"qubits {c} and {t} are not coupled")
    return [h_gate(c), h_gate(t), ast.Gate(name, (), (physical_arg(t), physical_arg(c))),
            h_gate(c), h_gate(t)]


def swap_on(d: Device, a: int, b: int) -> list[ast.Gate]:
    if not d.coupled(a, b):
        a, b = b, a
    return cx_on(d, a, b) + cx_on(d, b, a) + cx_on(d, a, b)


def map_swap(p: ast.Program, d: Device, layout: Layout) -> MappedProgram:
    """Move one CNOT endpoint towards the other until they are adjacent.
    Swaps are never undone; the final placement is reported."""
    loc = dict(layout.assignment)  # program qubit -> address
    token = list(range(d.n))  # address -> starting address of its state
    at: dict[int, tuple] = {v: k for k, v in loc.items()}
    out: list = []

    def do_swap(a: int, b: int):
        out.extend(swap_on(d, a, b))
        token[a], token[b] = token[b], token[a]
        qa, qb = at.pop(a, None), at.pop(b, None)
        if qa is not None:
            at[b] = qa
            loc[qa] = b
        if qb is not None:
            at[a] = qb
            loc[qb] = a

    for s in p.statements:
        g = s.body if isinstance(s, ast.If) else s
        if isinstance(g, ast.Gate) and len(g.args) == 2 and g.name in ("CX", "cx"):
            c = loc[(g.args[0].reg, g.args[0].index)]
            t = loc[(g.args[1].reg, g.args[1].index)]
            if not d.adjacent(c, t):
                path = d.shortest_path(c, t)
                fwd = d.path_weight(path[:-1])
                back = d.path_weight(path[1:])
                if fwd <= back:
                    for a, b in zip(path, path[1:-1]):
                        do_swap(a, b)
                    c = path[-2]
                else:
                    rev = path[::-1]
                    for a, b in zip(rev, rev[1:-1]):
                        do_swap(a, b)
                    t = path[1]
            gates = cx_on(d, c, t, g.name)
            if isinstance(s, ast.If):
                gates = [ast.If(s.creg, s.value, x, s.pos) for x in gates]
            out.extend(gates)
            continue
        out.append(relabel_stmt(s, loc.__getitem__))
    perm = [0] * d.n
    for addr, start in enumerate(token):
        perm[start] = addr
    return MappedProgram(physical_program(p, d.n, out), perm, layout)
