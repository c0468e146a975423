"""Initial placement of program qubits on device addresses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..device import Device
from ..frontend import ast

Qubit = tuple[str, int]
PHYS_REG = "q"


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class Layout:
    """Injective map from program qubits to device addresses."""

    assignment: dict[Qubit, int]

    def __post_init__(self):
        if len(set(self.assignment.values())) != len(self.assignment):
            raise LayoutError("layout is not injective")

    def __getitem__(self, q: Qubit) -> int:
        return self.assignment[q]

    def inverse(self) -> dict[int, Qubit]:
        return {v: k for k, v in self.assignment.items()}

    def as_list(self, qubits: list[Qubit]) -> list[int]:
        return [self.assignment[q] for q in qubits]

    def swap(self, a: int, b: int) -> "Layout":
        """Exchange the program qubits (if any) at addresses a and b."""
        inv = self.inverse()
        new = dict(self.assignment)
        if a in inv:
            new[inv[a]] = b
        if b in inv:
            new[inv[b]] = a
        return Layout(new)


@dataclass
class MappedProgram:
    """``permutation[p]`` is the address where the state that started at
    address ``p`` ends up."""

    program: ast.Program
    permutation: list[int]
    layout: Layout = field(default=None)

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.permutation))


def _check_size(p: ast.Program, d: Device) -> list[Qubit]:
    qs = p.qubits()
    if len(qs) > d.n:
        raise LayoutError(f"program uses {len(qs)} qubits but device '{d.name}' has {d.n}")
    return qs


def _cx_pairs(p: ast.Program) -> list[tuple[Qubit, Qubit]]:
    out = []
    for s in p.statements:
        g = s.body if isinstance(s, ast.If) else s
        if isinstance(g, ast.Gate) and g.name in ("CX", "cx") and len(g.args) == 2:
            c, t = g.args
            if c.index is not None and t.index is not None and c != t:
                out.append(((c.reg, c.index), (t.reg, t.index)))
    return out


def layout_linear(p: ast.Program, d: Device) -> Layout:
    qs = _check_size(p, d)
    return Layout({q: i for i, q in enumerate(qs)})


class _Placer:
    def __init__(self, p: ast.Program, d: Device):
        self.d = d
        self.qs = _check_size(p, d)
        self.place: dict[Qubit, int] = {}
        self.used: set[int] = set()
        self.edges = d.couplings_by_fidelity()

    def free(self, a: int) -> bool:
        return a not in self.used

    def put(self, q: Qubit, a: int) -> None:
        self.place[q] = a
        self.used.add(a)

    def lowest_free(self) -> int:
        return next(a for a in range(self.d.n) if a not in self.used)

    def best_neighbor(self, a: int) -> int:
        """Free address with the highest-fidelity edge to ``a``."""
        for u, v in self.edges:
            if u == a and self.free(v):
                return v
            if v == a and self.free(u):
                return u
        return self.lowest_free()

    def pair(self, c: Qubit, t: Qubit) -> None:
        pc, pt = self.place.get(c), self.place.get(t)
        if pc is not None and pt is not None:
            return
        for u, v in self.edges:
            if (pc is None and not self.free(u)) or (pc is not None and u != pc):
                continue
            if (pt is None and not self.free(v)) or (pt is not None and v != pt):
                continue
            if pc is None and pt is None and u == v:
                continue
            if pc is None:
                self.put(c, u)
            if pt is None:
                self.put(t, v)
            return
        if pc is not None:
            self.put(t, self.best_neighbor(pc))
        elif pt is not None:
            self.put(c, self.best_neighbor(pt))
        else:
            self.put(c, self.lowest_free())
            self.put(t, self.best_neighbor(self.place[c]))

    def finish(self) -> Layout:
        for q in self.qs:
            if q not in self.place:
                self.put(q, self.lowest_free())
        return Layout({q: self.place[q] for q in self.qs})


def layout_eager(p: ast.Program, d: Device) -> Layout:
    """First-come first-serve: each CNOT claims the best compatible coupling."""
    pl = _Placer(p, d)
    for c, t in _cx_pairs(p):
        pl.pair(c, t)
    return pl.finish()


def layout_bestfit(p: ast.Program, d: Device) -> Layout:
    """Pairs with the most CNOTs between them claim the best couplings.
    Pairs are unordered for counting and oriented as first seen."""
    pl = _Placer(p, d)
    counts: Counter = Counter()
    first: dict[frozenset, tuple[Qubit, Qubit]] = {}
    for c, t in _cx_pairs(p):
        key = frozenset((c, t))
        counts[key] += 1
        first.setdefault(key, (c, t))
    order = sorted(first, key=lambda k: -counts[k])  # stable: ties by first occurrence
    for k in order:
        pl.pair(*first[k])
    return pl.finish()


LAYOUTS = {"linear": layout_linear, "eager": layout_eager, "bestfit": layout_bestfit}


def get_layout(name: str, p: ast.Program, d: Device) -> Layout:
    try:
        fn = LAYOUTS[name.replace("-", "")]
    except KeyError:
        raise LayoutError(f"unknown layout '{name}' (expected linear|eager|bestfit)") from None
    return fn(p, d)


# ---------------------------------------------------------------- relabeling


def physical_arg(a: int) -> ast.Arg:
    return ast.Arg(PHYS_REG, a)


def relabel_stmt(s, where):
    """Rewrite qubit arguments through ``where((reg, index)) -> address``."""
    def arg(a: ast.Arg) -> ast.Arg:
        return physical_arg(where((a.reg, a.index)))

    if isinstance(s, ast.Gate):
        return ast.Gate(s.name, s.params, tuple(arg(a) for a in s.args), s.pos)
    if isinstance(s, ast.Measure):
        return ast.Measure(arg(s.src), s.dst, s.pos)
    if isinstance(s, ast.Reset):
        return ast.Reset(arg(s.arg), s.pos)
    if isinstance(s, ast.Barrier):
        return ast.Barrier(tuple(arg(a) for a in s.args), s.pos)
    if isinstance(s, ast.If):
        return ast.If(s.creg, s.value, relabel_stmt(s.body, where), s.pos)
    return s


def physical_program(p: ast.Program, n: int, stmts) -> ast.Program:
    """``p`` with its quantum registers replaced by one register ``q[n]``."""
    head, rest = [], []
    for node in p.body:
        if isinstance(node, ast.Include):
            head.append(node)
        elif isinstance(node, (ast.QReg, ast.GateDecl)) or isinstance(node, _STMTS):
            continue
        else:
            rest.append(node)
    return p.with_body(head + [ast.QReg(PHYS_REG, n)] + rest + list(stmts))


_STMTS = (ast.Gate, ast.Measure, ast.Reset, ast.Barrier, ast.If)


def apply_layout(p: ast.Program, d: Device, layout: Layout) -> ast.Program:
    """Relabel without routing; edges are not enforced."""
    stmts = [relabel_stmt(s, layout.assignment.__getitem__) for s in p.statements]
    return physical_program(p, d.n, stmts)
