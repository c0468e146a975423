"""Steepest-descent search over initial layouts."""

from __future__ import annotations

from ..device import Device
from ..frontend import ast
from .layout import Layout
from .steiner import map_steiner

DEFAULT_BUDGET = 500


def steiner_cost(p: ast.Program, d: Device, layout: Layout, cache: dict | None = None) -> int:
    mapped = map_steiner(p, d, layout, cache)
    return sum(1 for s in mapped.program.statements
               if isinstance(s, ast.Gate) and s.name in ("CX", "cx"))


def hillclimb_layout(p: ast.Program, d: Device, init: Layout,
                     budget: int = DEFAULT_BUDGET, cost=steiner_cost) -> Layout:
    """Take the best single transposition of addresses while it lowers the
    cost, for at most ``budget`` steps. Ties go to the first pair (a, b) in
    ascending order, so the search is deterministic."""
    memo: dict = {}
    if cost is steiner_cost:
        cost = lambda p, d, lay: steiner_cost(p, d, lay, memo)  # noqa: E731
    cur = init
    best = cost(p, d, cur)
    for _ in range(budget):
        occupied = set(cur.assignment.values())
        step = None
        for a in range(d.n):
            for b in range(a + 1, d.n):
                if a not in occupied and b not in occupied:
                    continue
                cand = cur.swap(a, b)
                c = cost(p, d, cand)
                if c < best and (step is None or c < step[0]):
                    step = (c, cand)
        if step is None:
            break
        best, cur = step
    return cur
