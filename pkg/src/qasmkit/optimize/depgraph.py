"""Statement dependence graph over qubit and classical-bit wires."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from ..frontend import ast

Wire = tuple[str, str, int | None]


def qubits(s) -> list[tuple[str, int | None]]:
    """Qubit operands of a statement in operand order."""
    if isinstance(s, ast.Gate):
        return [(a.reg, a.index) for a in s.args]
    if isinstance(s, ast.Measure):
        return [(s.src.reg, s.src.index)]
    if isinstance(s, ast.Reset):
        return [(s.arg.reg, s.arg.index)]
    if isinstance(s, ast.Barrier):
        return [(a.reg, a.index) for a in s.args]
    if isinstance(s, ast.If):
        return qubits(s.body)
    return []


def wires(s, creg_sizes: dict[str, int] | None = None) -> list[Wire]:
    """Every wire a statement reads or writes. An ``if`` reads all bits of its
    register."""
    out: list[Wire] = [("q", r, i) for r, i in qubits(s)]
    if isinstance(s, ast.Measure):
        out.append(("c", s.dst.reg, s.dst.index))
    elif isinstance(s, ast.If):
        size = (creg_sizes or {}).get(s.creg, 1)
        out += [("c", s.creg, i) for i in range(size)]
        out += [w for w in wires(s.body, creg_sizes) if w[0] == "c"]
    return out


@dataclass
class DependenceGraph:
    """Edge i -> j when j is the next statement after i on some wire."""

    stmts: list
    preds: list[set[int]] = field(default_factory=list)
    succs: list[set[int]] = field(default_factory=list)

    @classmethod
    def build(cls, stmts, creg_sizes: dict[str, int] | None = None) -> "DependenceGraph":
        g = cls(list(stmts))
        last: dict[Wire, int] = {}
        for j, s in enumerate(g.stmts):
            g.preds.append(set())
            g.succs.append(set())
            for w in wires(s, creg_sizes):
                i = last.get(w)
                if i is not None:
                    g.preds[j].add(i)
                    g.succs[i].add(j)
                last[w] = j
        return g

    def topological_order(self) -> list[int]:
        indeg = [len(p) for p in self.preds]
        ready = [i for i, d in enumerate(indeg) if d == 0]
        order: list[int] = []
        while ready:
            i = heapq.heappop(ready)
            order.append(i)
            for j in self.succs[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(ready, j)
        return order
