"""Topology-constrained linear and CNOT-dihedral synthesis.

Row operations are ``(target, source)`` pairs meaning R_target ^= R_source;
every operation produced here joins two coupled addresses.
"""

from __future__ import annotations

import functools

from ..algebra.angle import Angle
from ..algebra.bitmatrix import BitMatrix
from ..device import Device, SteinerTree
from ..frontend import ast
from ..optimize.phasepoly import PhasePolynomial, gray_synth
from .layout import Layout, MappedProgram, physical_arg, physical_program, relabel_stmt
from .swap import cx_on, swap_on

Op = tuple[int, int]


# ------------------------------------------------------------ tree primitives


def fill_flush(tree: SteinerTree) -> list[Op]:
    """Root row added into every tree node: Steiner points first (breadth
    first), then every edge child ^= parent in post-order. Steiner points end
    restored; a terminal gains the rows on its path up to the nearest
    non-Steiner ancestor."""
    steiner = tree.steiner_points
    par = tree.parent()
    fill = [(v, par[v]) for v in tree.bfs()[1:] if v in steiner]
    flush = [(v, par[v]) for v in tree.postorder() if v != tree.root]
    return fill + flush


def parity_fill_flush(tree: SteinerTree) -> list[Op]:
    """Leaves added into the root: Steiner points into their parents
    (breadth first), then every node into its parent in post-order."""
    steiner = tree.steiner_points
    par = tree.parent()
    fill = [(par[v], v) for v in tree.bfs()[1:] if v in steiner]
    flush = [(par[v], v) for v in tree.postorder() if v != tree.root]
    return fill + flush


def accumulate(tree: SteinerTree) -> list[Op]:
    """R_root ^= sum of terminal rows with every other row restored: the
    parity sweep followed by an uncompute of all non-root changes."""
    ops = parity_fill_flush(tree)
    undo = [op for op in reversed(ops) if op[0] != tree.root]
    return ops + undo


def broadcast(tree: SteinerTree) -> list[Op]:
    """R_t ^= R_root for every terminal t, every other row restored. The
    transpose of :func:`accumulate`."""
    return [(s, t) for t, s in reversed(accumulate(tree))]


def apply_ops(m: BitMatrix, ops) -> BitMatrix:
    for t, s in ops:
        m.rows[t] ^= m.rows[s]
    return m


# ---------------------------------------------------------- pivot ordering


def suffix_connected_order(d: Device, nodes=None) -> list[int]:
    """Order such that every suffix induces a connected subgraph: repeatedly
    take the smallest node whose removal leaves the rest connected."""
    left = set(range(d.n) if nodes is None else nodes)
    order: list[int] = []
    while left:
        for v in sorted(left):
            rest = left - {v}
            if _connected(d, rest):
                order.append(v)
                left = rest
                break
        else:  # pragma: no cover - a connected graph always has a non-cut vertex
            raise RuntimeError("no non-cut vertex found")
    return order


def _cached_order(d: Device) -> list[int]:
    order = getattr(d, "_suffix_order", None)
    if order is None:
        order = suffix_connected_order(d)
        d._suffix_order = order
    return order


def _connected(d: Device, nodes: set[int]) -> bool:
    if not nodes:
        return True
    start = min(nodes)
    seen, todo = {start}, [start]
    while todo:
        u = todo.pop()
        for v in d.neighbors(u):
            if v in nodes and v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == len(nodes)


# -------------------------------------------------- constrained elimination


def steiner_gauss(m: BitMatrix, d: Device) -> list[Op]:
    """Reduce an invertible n x n matrix to the identity using row additions
    along device couplings only. ``m`` is modified in place."""
    n = m.nrows
    if n != d.n:
        raise ValueError("matrix size must equal the device size")
    order = _cached_order(d)
    ops: list[Op] = []

    def run(new):
        apply_ops(m, new)
        ops.extend(new)

    # lower part: clear each pivot column in the rows still to be processed
    for k, p in enumerate(order):
        rest = set(order[k:])
        bit = 1 << p
        if not m.rows[p] & bit:
            cands = [r for r in rest if m.rows[r] & bit]
            if not cands:
                raise ValueError("matrix is singular")
            sub = d.subpaths(rest)
            r = min(cands, key=lambda r: sub.label(p, r)[:2] + (r,))
            path = list(sub.label(p, r)[2])
            for a, b in reversed(list(zip(path, path[1:]))):
                if not m.rows[a] & bit:
                    run([(a, b)])
        terms = [r for r in order[k + 1:] if m.rows[r] & bit]
        if terms:
            tree = d.steiner_tree(p, terms, within=rest)
            run(fill_flush(tree))
    # upper part: clear each pivot column above, last pivot first
    for k in range(n - 1, -1, -1):
        p = order[k]
        bit = 1 << p
        terms = [r for r in order[:k] if m.rows[r] & bit]
        if not terms:
            continue
        tree = d.steiner_tree(p, terms)
        cand = fill_flush(tree)
        trial = apply_ops(m.copy(), cand)
        want = m.copy()
        for t in terms:
            want.rows[t] ^= m.rows[p]
        run(cand if trial == want else broadcast(tree))
    if not m.is_identity():  # pragma: no cover - guarded by construction
        raise AssertionError("constrained elimination did not reach the identity")
    return ops


def linear_candidates(w: BitMatrix, d: Device) -> list[list[tuple]]:
    """Circuits for W from eliminating W, its transpose, its inverse and its
    inverse transpose. Row ops (t, s) are CNOTs s -> t; a transposed op
    swaps the two roles."""
    inv = w.inverse()
    a = steiner_gauss(w.copy(), d)
    b = steiner_gauss(w.transpose(), d)
    c = steiner_gauss(inv.copy(), d)
    e = steiner_gauss(inv.transpose(), d)
    return [
        [("cx", s, t) for t, s in reversed(a)],
        [("cx", t, s) for t, s in b],
        [("cx", s, t) for t, s in c],
        [("cx", t, s) for t, s in reversed(e)],
    ]


def synth_linear_constrained(state: list[int], target: list[int], d: Device) -> list[tuple]:
    """CNOTs along couplings taking wires holding ``state`` to ``target``:
    the shortest of the four elimination variants, the plain one on ties."""
    n = len(state)
    w = BitMatrix(n, n, target) @ BitMatrix(n, n, state).inverse()
    if w.is_identity():
        return []
    return min(linear_candidates(w, d), key=len)


# ------------------------------------------------ constrained Gray-synth


def _solve(state: list[int], f: int) -> int:
    """Bitmask J of wires whose current parities sum to ``f``."""
    n = len(state)
    inv = BitMatrix(n, n, state).inverse()
    # f = c . S  =>  c = f . S^-1
    c = 0
    x = f
    while x:
        k = (x & -x).bit_length() - 1
        x &= x - 1
        c ^= inv.rows[k]
    return c


def _partition_order(cols: list[int], n: int) -> list[tuple[int, int]]:
    """Parities in Gray-synth recursion order, each with the target row of
    the partition that isolates it (n when none has been chosen). Rows no
    parity depends on only ever split off an empty set, so they are skipped."""
    out: list[tuple[int, int]] = []
    support = 0
    for c in cols:
        support |= c
    stack = [(cols, [r for r in range(n) if (support >> r) & 1], n)]
    while stack:
        cs, rows, i = stack.pop()
        if not cs:
            continue
        if len(cs) == 1 or not rows:
            out += [(c, i) for c in cs]
            continue
        size = len(cs)
        best = -1
        for r in rows:
            ones = sum((c >> r) & 1 for c in cs)
            score = max(ones, size - ones)
            if score > best:
                best, j = score, r
        rest = [r for r in rows if r != j]
        stack.append(([c for c in cs if (c >> j) & 1], rest, j if i == n else i))
        stack.append(([c for c in cs if not (c >> j) & 1], rest, i))
    return out


def constrained_router(d: Device):
    def route(poly: PhasePolynomial, remaining: dict, state: list[int], out: list):
        for f, i in _partition_order(list(remaining), poly.n):
            angle = remaining.pop(f)
            if f in state:
                out.append(("rz", state.index(f), angle))
                continue
            wires = _solve(state, f)
            members = [w for w in range(poly.n) if (wires >> w) & 1]
            root = i if i in members else members[0]
            tree = d.steiner_tree(root, set(members) - {root})
            for t, s in parity_fill_flush(tree):
                out.append(("cx", s, t))
                state[t] ^= state[s]
            out.append(("rz", root, angle))
        out += synth_linear_constrained(state, poly.linear.rows, d)
        out += [("x", q) for q in range(poly.n) if (poly.flips >> q) & 1]
        return out
    return route


def gray_synth_constrained(poly: PhasePolynomial, d: Device) -> list[tuple]:
    return gray_synth(poly, router=constrained_router(d))


# ------------------------------------------------------------- the mapper


@functools.lru_cache(maxsize=4096)
def _exact_zero(e) -> bool:
    if ast.free_vars(e):
        return False
    a = ast.eval_angle(e)
    return a.exact and a.is_zero()


def _is_member(s) -> bool:
    if not isinstance(s, ast.Gate):
        return False
    if s.name in ("CX", "cx"):
        return s.args[0] != s.args[1]
    return s.name == "U" and _exact_zero(s.params[0])


def _segment_poly(seg: list[ast.Gate], n: int) -> PhasePolynomial:
    poly = PhasePolynomial(n)
    for g in seg:
        qs = [a.index for a in g.args]
        if len(qs) == 2:
            poly.cx(*qs)
        else:
            phi = ast.eval_angle(g.params[1]) + ast.eval_angle(g.params[2])
            poly.rz(qs[0], phi)
    return poly


def _ops_to_gates(ops, d: Device) -> list:
    out: list = []
    for op in ops:
        if op[0] == "cx":
            out += cx_on(d, op[1], op[2])
        elif op[0] == "x":
            out.append(ast.Gate("U", (ast.Pi(), ast.Int(0), ast.Pi()), (physical_arg(op[1]),)))
        elif not op[2].is_zero():
            out.append(_u1(op[2], op[1]))
    return out


def _u1(angle: Angle, q: int) -> ast.Gate:
    return ast.Gate("U", (ast.Int(0), ast.Int(0), ast.angle_expr(angle)), (physical_arg(q),))


def _cx_count(gates) -> int:
    return sum(1 for g in gates if isinstance(g, ast.Gate) and g.name in ("CX", "cx"))


def _valid(seg, d: Device) -> bool:
    return all(d.coupled(g.args[0].index, g.args[1].index) for g in seg if len(g.args) == 2)


def map_steiner(p: ast.Program, d: Device, layout: Layout,
                cache: dict | None = None) -> MappedProgram:
    """Resynthesize every maximal CNOT-dihedral segment against the device.
    Other statements pass through on their placed qubits. No qubit moves, so
    the output permutation is the identity. ``cache`` memoizes segment
    synthesis across calls on the same device."""
    placed = [relabel_stmt(s, layout.assignment.__getitem__) for s in p.statements]
    out: list = []
    seg: list[ast.Gate] = []
    touched: set[int] = set()

    def close():
        if not seg:
            return
        key = tuple(seg)
        if cache is not None and key in cache:
            out.extend(cache[key])
        else:
            new = _ops_to_gates(gray_synth_constrained(_segment_poly(seg, d.n), d), d)
            best = seg[:] if _valid(seg, d) and _cx_count(seg) <= _cx_count(new) else new
            if cache is not None:
                cache[key] = best
            out.extend(best)
        seg.clear()
        touched.clear()

    for s in placed:
        if _is_member(s):
            seg.append(s)
            touched.update(a.index for a in s.args)
            continue
        qs = _stmt_addresses(s)
        if not qs or qs & touched:
            close()
        g = s.body if isinstance(s, ast.If) else s
        if isinstance(g, ast.Gate) and len(g.args) == 2:
            gates = _routed_cx(g, d)
            if isinstance(s, ast.If):
                gates = [ast.If(s.creg, s.value, x, s.pos) if _is_cx(x) else x for x in gates]
            out.extend(gates)
        else:
            out.append(s)
    close()
    return MappedProgram(physical_program(p, d.n, out), list(range(d.n)), layout)


def _stmt_addresses(s) -> set[int]:
    from ..optimize.depgraph import qubits
    return {i for _, i in qubits(s)}


def _is_cx(g) -> bool:
    return isinstance(g, ast.Gate) and g.name in ("CX", "cx")


def _routed_cx(g: ast.Gate, d: Device) -> list:
    """A CX outside any segment (classically controlled): swap the control
    next to the target, apply, and swap back so placement is unchanged."""
    if not _is_cx(g):
        raise ValueError(f"two-qubit gate '{g.name}' must be inlined before mapping")
    c, t = g.args[0].index, g.args[1].index
    path = d.shortest_path(c, t)
    swaps: list = []
    for a, b in zip(path, path[1:-1]):
        swaps += swap_on(d, a, b)
    return swaps + cx_on(d, path[-2], t, g.name) + swaps[::-1]
