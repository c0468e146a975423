"""Gate counts and depth with configurable boxing."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..frontend import ast
from ..frontend.stdlib import QELIB1_GATES
from ..optimize.depgraph import wires
from ..transform import InlineConfig, inline

# Unboxed basis used by the benchmark tables.
BENCH_BASIS = ("u3", "cx", "h", "rx", "ry", "rz")


class ResourceError(ValueError):
    pass


@dataclass(frozen=True)
class BoxConfig:
    """Gate names counted as single units rather than by their bodies."""

    names: frozenset[str] = frozenset(QELIB1_GATES)

    @classmethod
    def of(cls, names) -> "BoxConfig":
        return cls(frozenset(names))


@dataclass
class ResourceReport:
    counts: dict[str, int] = field(default_factory=dict)
    qubits: int = 0
    depth: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, name: str) -> int:
        return self.counts.get(name, 0)

    def format(self) -> str:
        lines = [f"qubits: {self.qubits}", f"gates: {self.total}", f"depth: {self.depth}"]
        lines += [f"  {k}: {v}" for k, v in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"


def _validate(p: ast.Program, box: BoxConfig) -> None:
    known = set(p.gates()) | set(QELIB1_GATES) | {"U", "CX"}
    bad = sorted(box.names - known)
    if bad:
        raise ResourceError(f"cannot box undeclared gate(s): {', '.join(bad)}")


def depth(stmts, creg_sizes: dict[str, int] | None = None) -> int:
    """Longest path with unit weight per gate, measure and reset; barriers
    only synchronize their wires."""
    level: dict = {}
    best = 0
    for s in stmts:
        ws = wires(s, creg_sizes)
        start = max((level.get(w, 0) for w in ws), default=0)
        end = start if isinstance(s, ast.Barrier) else start + 1
        for w in ws:
            level[w] = end
        best = max(best, end)
    return best


def count_resources(p: ast.Program, box: BoxConfig | None = None) -> ResourceReport:
    """Counts after unboxing every gate not in ``box``. Local ancillas are
    hoisted and counted as qubits."""
    from ..frontend.check import desugar

    p = desugar(p)
    box = box or BoxConfig()
    _validate(p, box)
    flat = inline(p, InlineConfig(overrides=box.names))
    counts: Counter = Counter()
    for s in flat.statements:
        g = s.body if isinstance(s, ast.If) else s
        if isinstance(g, ast.Gate):
            counts[g.name] += 1
        elif isinstance(g, ast.Measure):
            counts["measure"] += 1
        elif isinstance(g, ast.Reset):
            counts["reset"] += 1
    sizes = {r.name: r.size for r in flat.cregs()}
    return ResourceReport(dict(counts), flat.num_qubits(), depth(flat.statements, sizes))


def gate_count(p: ast.Program, box: BoxConfig | None = None) -> int:
    """Unitary gates only (measurements and resets excluded)."""
    r = count_resources(p, box)
    return r.total - r.get("measure") - r.get("reset")


def cx_count(p: ast.Program) -> int:
    r = count_resources(p)
    return r.get("cx") + r.get("CX")
