"""Gate inlining with hoisted, pooled ancillas."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast
from ..frontend.stdlib import QELIB1_GATES

PRIMITIVES = ("U", "CX")
_STMT_OR_REG = (ast.QReg, ast.CReg, ast.Gate, ast.Measure, ast.Reset, ast.Barrier, ast.If)


class InlineError(ValueError):
    pass


@dataclass(frozen=True)
class InlineConfig:
    overrides: frozenset[str] = frozenset(QELIB1_GATES)
    full: bool = False
    ancilla_prefix: str = "anc"

    @classmethod
    def full_inline(cls) -> "InlineConfig":
        return cls(overrides=frozenset(), full=True)


@dataclass
class AncillaPool:
    """Clean slots of the hoisted register plus the program qubits that may
    be borrowed as dirty ancillas."""

    program_qubits: list[tuple[str, int]]
    slots: list[bool] = field(default_factory=list)  # True = lent out

    def acquire_clean(self, k: int) -> list[int]:
        got = [i for i, busy in enumerate(self.slots) if not busy][:k]
        while len(got) < k:
            self.slots.append(False)
            got.append(len(self.slots) - 1)
        for i in got:
            self.slots[i] = True
        return got

    def release(self, idx: list[int]) -> None:
        for i in idx:
            if not self.slots[i]:
                raise InlineError(f"ancilla slot {i} released twice")
            self.slots[i] = False

    def idle(self, in_use: set[tuple[str, int]], k: int) -> list[tuple[str, int]]:
        """Up to ``k`` program qubits not touched by any active application."""
        return [q for q in self.program_qubits if q not in in_use][:k]

    @property
    def size(self) -> int:
        return len(self.slots)


def callgraph(p: ast.Program) -> list[str]:
    """Gate declarations of ``p`` ordered callees first.

    Only declarations written in ``p`` itself are listed; calls into included
    libraries are leaves. Raises InlineError naming the gates on a cycle."""
    decls = {n.name: n for n in p.body if isinstance(n, ast.GateDecl)}
    order: list[str] = []
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(name: str, stack: list[str]):
        st = state.get(name)
        if st == 2:
            return
        if st == 1:
            cyc = stack[stack.index(name):] + [name]
            raise InlineError("recursive gate definition: " + " -> ".join(cyc))
        state[name] = 1
        stack.append(name)
        for s in decls[name].body:
            if isinstance(s, ast.Gate) and s.name in decls:
                visit(s.name, stack)
        stack.pop()
        state[name] = 2
        order.append(name)

    for name in decls:
        visit(name, [])
    return order


class _Inliner:
    def __init__(self, p: ast.Program, cfg: InlineConfig):
        self.cfg = cfg
        self.gates = p.gates()
        self.pool = AncillaPool(p.qubits())
        taken = {n.name for n in p.body if isinstance(n, (ast.QReg, ast.CReg))}
        name, k = cfg.ancilla_prefix, 0
        while name in taken:
            k += 1
            name = f"{cfg.ancilla_prefix}_{k}"
        self.anc_name = name

    def expands(self, name: str) -> bool:
        if name in PRIMITIVES:
            return False
        if not self.cfg.full and name in self.cfg.overrides:
            return False
        decl = self.gates.get(name)
        if isinstance(decl, ast.GateDecl):
            return True
        if self.cfg.full:
            kind = "oracle" if isinstance(decl, ast.Oracle) else "opaque gate"
            raise InlineError(f"{kind} '{name}' cannot be reduced to U/CX")
        return False

    def gate(self, g: ast.Gate, in_use: set[tuple[str, int]]) -> list:
        if not self.expands(g.name):
            return [g]
        decl = self.gates[g.name]
        env = dict(zip(decl.params, g.params))
        binding: dict[tuple[str, int | None], ast.Arg] = {
            (q, None): a for q, a in zip(decl.qparams, g.args)
        }
        active = set(in_use) | {(a.reg, a.index) for a in g.args}
        clean: list[int] = []
        for anc in decl.ancillas:
            if anc.dirty:
                borrowed = self.pool.idle(active, anc.size)
                active |= set(borrowed)
                slots = self.pool.acquire_clean(anc.size - len(borrowed))
                clean += slots
                targets = [ast.Arg(r, i) for r, i in borrowed]
                targets += [ast.Arg(self.anc_name, i) for i in slots]
            else:
                slots = self.pool.acquire_clean(anc.size)
                clean += slots
                targets = [ast.Arg(self.anc_name, i) for i in slots]
            for i, t in enumerate(targets):
                binding[(anc.name, i)] = t
                active.add((t.reg, t.index))
        out: list = []
        for s in decl.body:
            if isinstance(s, ast.Ancilla):
                continue
            args = tuple(binding[(a.reg, a.index)] for a in s.args)
            if isinstance(s, ast.Barrier):
                out.append(ast.Barrier(args, s.pos))
                continue
            params = tuple(ast.subst_expr(e, env) for e in s.params)
            out += self.gate(ast.Gate(s.name, params, args, s.pos), active)
        self.pool.release(clean)
        return out

    def stmt(self, s) -> list:
        if isinstance(s, ast.Gate):
            return self.gate(s, set())
        if isinstance(s, ast.If) and isinstance(s.body, ast.Gate):
            return [ast.If(s.creg, s.value, g, s.pos) for g in self.gate(s.body, set())]
        return [s]

    def run(self, p: ast.Program) -> ast.Program:
        body: list = []
        for n in p.body:
            if isinstance(n, ast.GateDecl) and self.cfg.full:
                continue
            body += self.stmt(n)
        if self.pool.size:
            at = next((i for i, n in enumerate(body)
                       if isinstance(n, _STMT_OR_REG)), len(body))
            body.insert(at, ast.QReg(self.anc_name, self.pool.size))
        return p.with_body(body)


def inline(p: ast.Program, cfg: InlineConfig | None = None) -> ast.Program:
    """Replace gate applications by their bodies.

    Local ancillas become slots of one hoisted register; a clean slot is
    reused once the application that borrowed it finishes. Dirty ancillas
    borrow program qubits that the enclosing applications do not touch."""
    cfg = cfg or InlineConfig()
    callgraph(p)
    return _Inliner(p, cfg).run(p)
