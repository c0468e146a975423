import itertools
import math
import random

import pytest

from qasmkit.device import (BUILTINS, Device, DeviceError, builtin, get_device, load_device,
                            print_device)


def random_device(rng, n, unit=False, directed=False) -> Device:
    """Random connected graph: a random spanning tree plus extra edges."""
    nodes = list(range(n))
    rng.shuffle(nodes)
    pairs = {tuple(sorted((nodes[i], rng.choice(nodes[:i])))) for i in range(1, n)}
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        pairs.add((min(a, b), max(a, b)))
    edges = {}
    for a, b in pairs:
        f = 1.0 if unit else round(rng.uniform(0.5, 1.0), 2)
        if directed and rng.random() < 0.5:
            a, b = b, a
        edges[(a, b)] = f
        if not directed:
            edges[(b, a)] = f
    return Device("rand", n, edges)


def all_simple_paths(d: Device, u: int, v: int):
    stack = [(u,)]
    while stack:
        path = stack.pop()
        if path[-1] == v:
            yield path
            continue
        for w in d.neighbors(path[-1]):
            if w not in path:
                stack.append(path + (w,))


def mst_weight(d: Device, nodes: set[int], cost) -> float | None:
    """Prim over the induced subgraph; None when disconnected."""
    nodes = set(nodes)
    start = min(nodes)
    seen, total = {start}, 0.0
    while seen != nodes:
        best = None
        for a in seen:
            for b in d.neighbors(a):
                if b in nodes and b not in seen:
                    c = cost(a, b)
                    if best is None or c < best[0]:
                        best = (c, b)
        if best is None:
            return None
        total += best[0]
        seen.add(best[1])
    return total


def exact_steiner(d: Device, required: set[int], cost) -> float:
    others = [v for v in range(d.n) if v not in required]
    best = math.inf
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            w = mst_weight(d, required | set(extra), cost)
            if w is not None:
                best = min(best, w)
    return best


def check_tree(d: Device, t, root, terms):
    nodes = t.nodes
    assert len(t.edges) == len(nodes) - 1
    assert {root} | set(terms) <= nodes
    for a, b in t.edges:
        assert d.adjacent(a, b)
    kids = t.children()
    for v in nodes:
        if v != root and not kids[v]:
            assert v in terms
    # connected from the root
    assert set(t.bfs()) == nodes and len(t.bfs()) == len(nodes)


class TestBuiltins:
    def test_square9(self):
        d = builtin("square9")
        assert d.n == 9
        assert len({tuple(sorted(e)) for e in d.edges}) == 12
        assert d.fidelity(0, 1) == 0.93 and d.fidelity(4, 7) == 0.90 and d.fidelity(8, 3) == 0.72

    def test_full(self):
        d = builtin("full4")
        assert len(d.edges) == 12 and set(d.edges.values()) == {1.0}

    def test_others(self):
        assert builtin("tokyo20").n == 20 and len(builtin("tokyo20").edges) == 70
        agave = builtin("agave8")
        assert agave.n == 8 and len(agave.edges) == 8 and agave.coupled(0, 1) and not agave.coupled(1, 0)
        assert builtin("aspen16").n == 16

    def test_round_trip(self):
        for name in BUILTINS + ("full5",):
            d = builtin(name)
            assert load_device(print_device(d)) == d

    def test_unknown(self):
        with pytest.raises(DeviceError):
            builtin("nope")
        with pytest.raises(DeviceError):
            get_device("/nonexistent/device.txt")


class TestFormat:
    def test_parse(self, tmp_path):
        text = "# line\ndevice line3 3\nqubit 1 0.99\nedge 0 1 0.9\nedge 1 2\n"
        d = load_device(text)
        assert d.name == "line3" and d.qubit_fidelity == [1.0, 0.99, 1.0]
        assert d.edges == {(0, 1): 0.9, (1, 2): 1.0}
        f = tmp_path / "d.txt"
        f.write_text(text)
        assert get_device(str(f)) == d

    @pytest.mark.parametrize("text,needle", [
        ("device a 2\nedge 0 x 0.5\n", "malformed"),
        ("edge 0 1\n", "header"),
        ("device a 3\nedge 0 1\n", "disconnected"),
        ("device a 2\nedge 0 1 1.5\n", "fidelity"),
        ("device a 2\nedge 0 0\n", "self-loop"),
        ("device a 2\nedge 0 1\nqubit 5 0.9\n", "out of range"),
    ])
    def test_errors(self, text, needle):
        with pytest.raises(DeviceError, match=needle):
            load_device(text)


class TestPaths:
    def test_line(self):
        d = load_device("device l 4\nedge 0 1\nedge 1 2\nedge 2 3\n")
        assert d.shortest_path(0, 2) == [0, 1, 2]
        assert d.path_hops(2, 0) == [(2, 1, False), (1, 0, False)]

    def test_square9_fidelity_weighted(self):
        d = builtin("square9")
        assert d.shortest_path(0, 4) == [0, 1, 4]
        assert d.distance(0, 4) == pytest.approx(-math.log(0.93) - math.log(0.91))

    def test_brute_force(self):
        rng = random.Random(41)
        for _ in range(150):
            d = random_device(rng, rng.randint(2, 8), unit=rng.random() < 0.3)
            u, v = rng.sample(range(d.n), 2)
            best = min(all_simple_paths(d, u, v),
                       key=lambda p: (round(d.path_weight(p), 9), len(p), p))
            assert d.shortest_path(u, v) == list(best)

    def test_monotone(self):
        rng = random.Random(42)
        for _ in range(100):
            d = random_device(rng, rng.randint(3, 8))
            u, v = rng.sample(range(d.n), 2)
            path = d.shortest_path(u, v)
            on = {tuple(sorted(e)) for e in zip(path, path[1:])}
            off = [e for e in d.edges if tuple(sorted(e)) not in on]
            if not off:
                continue
            a, b = rng.choice(off)
            edges = dict(d.edges)
            for e in ((a, b), (b, a)):
                if e in edges:
                    edges[e] = min(1.0, edges[e] + 0.2)
            d2 = Device("r", d.n, edges)
            assert d2.distance(u, v) <= d.distance(u, v) + 1e-12


class TestSteiner:
    def test_square9_tree(self):
        t = builtin("square9").steiner_tree(0, {2, 4})
        assert {tuple(sorted(e)) for e in t.edges} == {(0, 1), (1, 2), (1, 4)}
        assert t.steiner_points == {1}

    def test_empty(self):
        t = builtin("square9").steiner_tree(3, set())
        assert t.nodes == {3} and t.edges == ()

    def test_two_approximation(self):
        rng = random.Random(43)
        violations = 0
        for trial in range(300):
            unit = trial % 3 == 0
            d = random_device(rng, rng.randint(2, 8), unit=unit)
            req = rng.sample(range(d.n), rng.randint(2, d.n))
            root, terms = req[0], set(req[1:])
            t = d.steiner_tree(root, terms)
            check_tree(d, t, root, terms)
            cost = (lambda a, b: 1.0) if unit else d.weight
            got = sum(cost(a, b) for a, b in t.edges)
            if got > 2 * exact_steiner(d, set(req), cost) + 1e-9:
                violations += 1
        assert violations == 0

    def test_within(self):
        d = builtin("square9")
        t = d.steiner_tree(0, {4}, within={0, 5, 4})
        assert t.nodes == {0, 5, 4}


class TestCouplings:
    def test_square9_order(self):
        order = builtin("square9").couplings_by_fidelity()
        assert order[0] == (0, 1)
        undirected = []
        for e in order:
            k = tuple(sorted(e))
            if k not in undirected:
                undirected.append(k)
        assert undirected[:3] == [(0, 1), (1, 4), (4, 7)]

    def test_ties(self):
        assert builtin("full3").couplings_by_fidelity() == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]

    def test_random(self):
        rng = random.Random(44)
        for _ in range(100):
            d = random_device(rng, rng.randint(2, 8), directed=True)
            order = d.couplings_by_fidelity()
            assert sorted(order) == sorted(d.edges)
            fs = [d.edges[e] for e in order]
            assert all(a >= b for a, b in zip(fs, fs[1:]))
