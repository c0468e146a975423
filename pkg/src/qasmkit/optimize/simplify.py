"""Cancellation of adjacent inverse gate pairs."""

from __future__ import annotations

from ..algebra.angle import Angle
from ..frontend import ast
from ..frontend.ast import EvalError
from .blocks import rewrite_blocks
from .depgraph import wires

SELF_INVERSE = {"h", "x", "y", "z", "cx", "CX", "cz", "ccx", "swap", "id"}
SYMMETRIC = {"cz", "swap"}
PAIRS = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t"}
PARAMETRIC = {"rx", "ry", "rz", "u1"}


def _angle(e) -> Angle | None:
    if ast.free_vars(e):
        return None
    try:
        return ast.eval_angle(e)
    except EvalError:
        return None


def _opposite(e1, e2) -> bool:
    a, b = _angle(e1), _angle(e2)
    if a is not None and b is not None:
        return (a + b).is_zero()
    return e1 == ast.Neg(e2) or e2 == ast.Neg(e1)


def is_inverse_pair(a, b) -> bool:
    if not (isinstance(a, ast.Gate) and isinstance(b, ast.Gate)):
        return False
    if a.args != b.args:
        if not (a.name in SYMMETRIC and a.name == b.name and set(a.args) == set(b.args)):
            return False
    if a.name in SELF_INVERSE:
        return a.name == b.name
    if a.name in PAIRS:
        return PAIRS[a.name] == b.name
    if a.name in PARAMETRIC:
        return a.name == b.name and _opposite(a.params[0], b.params[0])
    return False


def _sweep(stmts: list, cregs: dict) -> tuple[list[bool], bool]:
    alive = [True] * len(stmts)
    stacks: dict = {}
    changed = False
    for j, s in enumerate(stmts):
        ws = wires(s, cregs)
        tops = {stacks[w][-1] if stacks.get(w) else None for w in ws}
        if len(tops) == 1:
            (i,) = tops
            if i is not None and set(wires(stmts[i], cregs)) == set(ws) and is_inverse_pair(stmts[i], s):
                alive[i] = alive[j] = False
                changed = True
                for w in ws:
                    stacks[w].pop()
                continue
        for w in ws:
            stacks.setdefault(w, []).append(j)
    return alive, changed


def simplify_block(stmts: list, cregs: dict, fixpoint: bool = True) -> list[list]:
    keep = list(range(len(stmts)))
    while True:
        alive, changed = _sweep([stmts[k] for k in keep], cregs)
        keep = [k for k, a in zip(keep, alive) if a]
        if not (changed and fixpoint):
            break
    kept = set(keep)
    return [[s] if k in kept else [] for k, s in enumerate(stmts)]


def simplify(p: ast.Program, fixpoint: bool = True) -> ast.Program:
    """Remove pairs of inverse gates that are adjacent on all their wires."""
    return rewrite_blocks(p, lambda stmts, cregs: simplify_block(stmts, cregs, fixpoint))
