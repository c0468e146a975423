"""Apply a per-block rewrite to the main body and every gate body."""

from __future__ import annotations

from typing import Callable

from ..frontend import ast

STMT = (ast.Gate, ast.Measure, ast.Reset, ast.Barrier, ast.If)

# A rewrite receives the block's statements and returns, for each input
# position, the statements that replace it.
Rewrite = Callable[[list, dict], list[list]]


def rewrite_blocks(p: ast.Program, fn: Rewrite, gate_bodies: bool = True) -> ast.Program:
    cregs = {r.name: r.size for r in p.cregs()}
    body: list = []
    for n in p.body:
        if isinstance(n, ast.GateDecl) and gate_bodies:
            body.append(ast.GateDecl(n.name, n.params, n.qparams, _apply(n.body, fn, {}), n.pos))
        else:
            body.append(n)
    return p.with_body(_apply(body, fn, cregs))


def _apply(items, fn: Rewrite, cregs: dict) -> tuple:
    idx = [i for i, n in enumerate(items) if isinstance(n, STMT)]
    repl = fn([items[i] for i in idx], cregs)
    at = dict(zip(idx, repl))
    out: list = []
    for i, n in enumerate(items):
        if i in at:
            out += at[i]
        else:
            out.append(n)
    return tuple(out)
