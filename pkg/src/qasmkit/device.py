"""Coupling-graph device model.

A device is a digraph on addresses 0..n-1 in which edge (c, t) admits a CNOT
with control c and target t. Paths and Steiner trees run over the underlying
undirected graph with edge weight -ln(fidelity).
"""

from __future__ import annotations

import heapq
import math
import re
import threading
from dataclasses import dataclass, field


class DeviceError(ValueError):
    pass


@dataclass(frozen=True)
class SteinerTree:
    """Edges are (parent, child) pairs oriented away from the root, listed in
    breadth-first order."""

    root: int
    terminals: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    @property
    def nodes(self) -> set[int]:
        return {self.root} | {c for _, c in self.edges}

    @property
    def steiner_points(self) -> set[int]:
        return self.nodes - self.terminals - {self.root}

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.nodes}
        for a, b in self.edges:
            out[a].append(b)
        return out

    def parent(self) -> dict[int, int]:
        return {b: a for a, b in self.edges}

    def bfs(self) -> list[int]:
        """Nodes in breadth-first order from the root."""
        return [self.root] + [c for _, c in self.edges]

    def postorder(self) -> list[int]:
        kids = self.children()
        out: list[int] = []

        def go(v):
            for c in kids[v]:
                go(c)
            out.append(v)
        go(self.root)
        return out


@dataclass(eq=False)
class Device:
    name: str
    n: int
    edges: dict[tuple[int, int], float]
    qubit_fidelity: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.qubit_fidelity:
            self.qubit_fidelity = [1.0] * self.n
        self._validate()
        self._adj: dict[int, dict[int, float]] = {v: {} for v in range(self.n)}
        for (u, v), f in self.edges.items():
            w = -math.log(f)
            for a, b in ((u, v), (v, u)):
                old = self._adj[a].get(b)
                self._adj[a][b] = w if old is None else min(old, w)
        self._paths: list | None = None
        self._lock = threading.Lock()
        self._trees: dict = {}
        self._subpaths: dict = {}

    def __eq__(self, other) -> bool:
        return (isinstance(other, Device) and self.name == other.name and self.n == other.n
                and self.edges == other.edges and self.qubit_fidelity == other.qubit_fidelity)

    def _validate(self):
        if self.n < 1:
            raise DeviceError("device needs at least one qubit")
        for (u, v), f in self.edges.items():
            if u == v:
                raise DeviceError(f"self-loop on qubit {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DeviceError(f"edge ({u},{v}) out of range")
            if not 0 < f <= 1:
                raise DeviceError(f"edge ({u},{v}) fidelity {f} not in (0,1]")
        if len(self.qubit_fidelity) != self.n:
            raise DeviceError("one single-qubit fidelity per qubit is required")
        for i, f in enumerate(self.qubit_fidelity):
            if not 0 < f <= 1:
                raise DeviceError(f"qubit {i} fidelity {f} not in (0,1]")
        seen, todo = {0}, [0]
        und: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            und[u].add(v)
            und[v].add(u)
        while todo:
            for w in und[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != self.n:
            raise DeviceError("coupling graph is disconnected")

    # ------------------------------------------------------------ queries

    def coupled(self, c: int, t: int) -> bool:
        return (c, t) in self.edges

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, u: int) -> list[int]:
        return sorted(self._adj[u])

    def weight(self, u: int, v: int) -> float:
        return self._adj[u][v]

    def fidelity(self, c: int, t: int) -> float:
        return self.edges.get((c, t), 0.0)

    def couplings_by_fidelity(self) -> list[tuple[int, int]]:
        return sorted(self.edges, key=lambda e: (-self.edges[e], e))

    # -------------------------------------------------------------- paths

    def _dijkstra(self, src: int) -> dict[int, tuple]:
        # label = (rounded weight, hops, path); all three compared in order
        best: dict[int, tuple] = {src: (0.0, 0, (src,))}
        heap = [(0.0, 0, (src,))]
        done: set[int] = set()
        while heap:
            w, h, path = heapq.heappop(heap)
            u = path[-1]
            if u in done:
                continue
            done.add(u)
            for v, c in self._adj[u].items():
                if v in done:
                    continue
                lab = (round(w + c, 9), h + 1, path + (v,))
                if v not in best or lab < best[v]:
                    best[v] = lab
                    heapq.heappush(heap, lab)
        return best

    def _all_paths(self) -> list:
        if self._paths is None:
            with self._lock:
                if self._paths is None:
                    self._paths = [self._dijkstra(s) for s in range(self.n)]
        return self._paths

    def shortest_path(self, u: int, v: int) -> list[int]:
        """Minimum-weight path u..v; ties go to fewer hops, then to the
        lexicographically smallest node sequence."""
        return list(self._all_paths()[u][v][2])

    def path_hops(self, u: int, v: int) -> list[tuple[int, int, bool]]:
        """Hops (a, b, forward) of the shortest path, ``forward`` meaning the
        directed edge a->b exists."""
        p = self.shortest_path(u, v)
        return [(a, b, self.coupled(a, b)) for a, b in zip(p, p[1:])]

    def distance(self, u: int, v: int) -> float:
        return self._all_paths()[u][v][0]

    def path_weight(self, path: list[int]) -> float:
        return sum(self.weight(a, b) for a, b in zip(path, path[1:]))

    # ------------------------------------------------------------ steiner

    def steiner_tree(self, root: int, terminals, within: set[int] | None = None) -> SteinerTree:
        """Metric-closure 2-approximation: MST over root and terminals in the
        shortest-path metric, expanded into paths, re-spanned and pruned.

        ``within`` restricts the tree to an induced subgraph (which must be
        connected and contain all required nodes)."""
        terms = frozenset(terminals) - {root}
        if not terms:
            return SteinerTree(root, terms, ())
        region = None if within is None else frozenset(within)
        key = (root, terms, region)
        tree = self._trees.get(key)
        if tree is None:
            tree = self._trees[key] = self._steiner(root, terms, region)
        return tree

    def subpaths(self, within) -> "_SubPaths":
        region = frozenset(within)
        sub = self._subpaths.get(region)
        if sub is None:
            sub = self._subpaths[region] = _SubPaths(self, region)
        return sub

    def _steiner(self, root: int, terms: frozenset[int], within) -> SteinerTree:
        if within is None:
            dist = lambda a, b: self._all_paths()[a][b]
        else:
            dist = self.subpaths(within).label
        req = [root] + sorted(terms)
        # Prim over the metric closure
        in_tree = {root}
        used: set[tuple[int, int]] = set()
        while len(in_tree) < len(req):
            best = None
            for a in sorted(in_tree):
                for b in req:
                    if b in in_tree:
                        continue
                    lab = dist(a, b)
                    key = (lab[0], lab[1], a, b)
                    if best is None or key < best[0]:
                        best = (key, lab[2])
            path = best[1]
            for x, y in zip(path, path[1:]):
                used.add((min(x, y), max(x, y)))
            in_tree.add(path[-1])
        return _span_and_prune(self, root, terms, used)

    def tree_weight(self, t: SteinerTree) -> float:
        return sum(self.weight(a, b) for a, b in t.edges)


class _SubPaths:
    """Shortest paths inside an induced subgraph, computed on demand."""

    def __init__(self, d: Device, nodes: set[int]):
        self.d = d
        self.nodes = set(nodes)
        self.cache: dict[int, dict] = {}

    def label(self, a: int, b: int) -> tuple:
        if a not in self.cache:
            best = {a: (0.0, 0, (a,))}
            heap = [(0.0, 0, (a,))]
            done: set[int] = set()
            while heap:
                w, h, path = heapq.heappop(heap)
                u = path[-1]
                if u in done:
                    continue
                done.add(u)
                for v, c in self.d._adj[u].items():
                    if v in done or v not in self.nodes:
                        continue
                    lab = (round(w + c, 9), h + 1, path + (v,))
                    if v not in best or lab < best[v]:
                        best[v] = lab
                        heapq.heappush(heap, lab)
            self.cache[a] = best
        if b not in self.cache[a]:
            raise DeviceError(f"no path from {a} to {b} in the restricted subgraph")
        return self.cache[a][b]


def _span_and_prune(d: Device, root: int, terms: frozenset[int], used) -> SteinerTree:
    adj: dict[int, list[int]] = {}
    for a, b in used:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    # Prim's MST on the union of paths, rooted at ``root``
    parent: dict[int, int] = {}
    seen = {root}
    heap = [(d.weight(root, v), root, v) for v in adj[root]]
    heapq.heapify(heap)
    while heap:
        _, a, b = heapq.heappop(heap)
        if b in seen:
            continue
        seen.add(b)
        parent[b] = a
        for c in adj[b]:
            if c not in seen:
                heapq.heappush(heap, (d.weight(b, c), b, c))
    keep = set(seen)
    while True:
        kids = {v: 0 for v in keep}
        for v in keep:
            if v != root:
                kids[parent[v]] += 1
        leaves = [v for v in keep if v != root and kids[v] == 0 and v not in terms]
        if not leaves:
            break
        keep -= set(leaves)
    order: list[tuple[int, int]] = []
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for c in sorted(u for u in keep if u != root and parent[u] == v):
                order.append((v, c))
                nxt.append(c)
        frontier = nxt
    return SteinerTree(root, terms, tuple(order))


# ------------------------------------------------------------------ builtins

_SQUARE9 = {
    (0, 1): 0.93, (0, 5): 0.75, (1, 2): 0.75, (1, 4): 0.91, (2, 3): 0.74, (3, 4): 0.76,
    (3, 8): 0.72, (4, 5): 0.77, (4, 7): 0.90, (5, 6): 0.76, (6, 7): 0.89, (7, 8): 0.87,
}

_TOKYO = [
    (0, 1), (0, 5), (1, 2), (1, 6), (1, 7), (2, 6), (3, 8), (4, 8), (4, 9), (5, 6),
    (5, 10), (5, 11), (6, 7), (6, 10), (6, 11), (7, 8), (7, 12), (8, 9), (8, 12),
    (8, 13), (10, 11), (10, 15), (11, 12), (11, 16), (11, 17), (12, 13), (12, 16),
    (13, 14), (13, 18), (13, 19), (14, 18), (14, 19), (15, 16), (16, 17), (17, 18),
]


def _both(pairs) -> dict[tuple[int, int], float]:
    out: dict[tuple[int, int], float] = {}
    for item in pairs:
        (u, v), f = (item, 1.0) if isinstance(item[0], int) else item
        out[(u, v)] = f
        out[(v, u)] = f
    return out


def builtin(name: str) -> Device:
    if name == "square9":
        return Device("square9", 9, _both(_SQUARE9.items()))
    if name == "agave8":
        return Device("agave8", 8, {(i, (i + 1) % 8): 1.0 for i in range(8)})
    if name == "aspen16":
        ring = [(i, (i + 1) % 8) for i in range(8)] + [(8 + i, 8 + (i + 1) % 8) for i in range(8)]
        return Device("aspen16", 16, _both(ring + [(1, 14), (2, 13)]))
    if name == "tokyo20":
        return Device("tokyo20", 20, _both(_TOKYO))
    m = re.fullmatch(r"full(\d+)", name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        return Device(name, n, {(u, v): 1.0 for u in range(n) for v in range(n) if u != v})
    raise DeviceError(f"unknown device '{name}' (expected agave8|aspen16|tokyo20|square9|full<n>)")


BUILTINS = ("agave8", "aspen16", "tokyo20", "square9")


# --------------------------------------------------------------- file format


def print_device(d: Device) -> str:
    lines = [f"device {d.name} {d.n}"]
    for i, f in enumerate(d.qubit_fidelity):
        if f != 1.0:
            lines.append(f"qubit {i} {f!r}")
    for (u, v), f in sorted(d.edges.items()):
        lines.append(f"edge {u} {v} {f!r}")
    return "\n".join(lines) + "\n"


def load_device(text: str) -> Device:
    name, n = None, None
    edges: dict[tuple[int, int], float] = {}
    qf: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "device" and len(parts) == 3:
                name, n = parts[1], int(parts[2])
            elif parts[0] == "edge" and len(parts) in (3, 4):
                f = float(parts[3]) if len(parts) == 4 else 1.0
                edges[(int(parts[1]), int(parts[2]))] = f
            elif parts[0] == "qubit" and len(parts) == 3:
                qf[int(parts[1])] = float(parts[2])
            else:
                raise ValueError
        except ValueError:
            raise DeviceError(f"line {lineno}: malformed device line '{raw.strip()}'") from None
    if name is None:
        raise DeviceError("missing 'device <name> <n>' header")
    if any(not 0 <= i < n for i in qf):
        raise DeviceError("qubit fidelity index out of range")
    return Device(name, n, edges, [qf.get(i, 1.0) for i in range(n)])


def get_device(spec: str) -> Device:
    """A builtin name, or a path to a device file."""
    try:
        return builtin(spec)
    except DeviceError:
        pass
    try:
        with open(spec) as fh:
            return load_device(fh.read())
    except OSError:
        raise DeviceError(f"unknown device '{spec}'") from None
