import random

import pytest

from oracles import random_invertible, replay_cnots
from randprog import cnot_program, dihedral_program, unitary_program
from qasmkit.algebra.bitmatrix import BitMatrix
from qasmkit.device import builtin, load_device
from qasmkit.frontend import ast, parse
from qasmkit.mapping import (Layout, LayoutError, apply_layout, check_mapped, get_layout,
                             hillclimb_layout, layout_linear, map_steiner, map_swap, steiner_gauss)
from qasmkit.mapping.hillclimb import steiner_cost
from qasmkit.mapping.steiner import (accumulate, apply_ops, broadcast, fill_flush,
                                     gray_synth_constrained, parity_fill_flush,
                                     suffix_connected_order, synth_linear_constrained)
from qasmkit.optimize.phasepoly import PhasePolynomial, ops_linear
from qasmkit.optimize.pipeline import run_pipeline
from qasmkit.simcheck import equiv, unitary

LINE4 = "device line4 4\nedge 0 1\nedge 1 2\nedge 2 3\n"
SIX = "device six 6\nedge 0 1\nedge 0 5\nedge 1 2\nedge 1 4\nedge 2 3\nedge 3 4\nedge 4 5\n"
FIG7 = "device fig7 4\nedge 0 2\nedge 1 2\nedge 1 3\n"


def lowered(text: str) -> ast.Program:
    return run_pipeline(parse(text), ["inline-full"])


def addr(layout: Layout) -> dict[int, int]:
    return {i: a for (_, i), a in layout.assignment.items()}


def cx_edges(p: ast.Program) -> list[tuple[int, int]]:
    return [(s.args[0].index, s.args[1].index) for s in p.statements
            if isinstance(s, ast.Gate) and s.name in ("CX", "cx")]


def linear_of(p: ast.Program, n: int) -> BitMatrix:
    return ops_linear([("cx", c, t) for c, t in cx_edges(p)], n)


class TestLayouts:
    def test_linear(self, layout_circuit):
        assert addr(layout_linear(layout_circuit, builtin("square9"))) == {i: i for i in range(9)}

    def test_eager(self, layout_circuit):
        got = addr(get_layout("eager", layout_circuit, builtin("square9")))
        assert got == {0: 8, 1: 1, 2: 0, 3: 6, 4: 3, 5: 2, 6: 4, 7: 5, 8: 7}

    def test_bestfit(self, layout_circuit):
        got = addr(get_layout("best-fit", layout_circuit, builtin("square9")))
        assert got == {0: 8, 1: 7, 2: 6, 3: 4, 4: 5, 5: 0, 6: 2, 7: 1, 8: 3}

    def test_errors(self, layout_circuit):
        with pytest.raises(LayoutError):
            get_layout("nope", layout_circuit, builtin("square9"))
        with pytest.raises(LayoutError):
            layout_linear(layout_circuit, builtin("full4"))
        with pytest.raises(LayoutError):
            Layout({("q", 0): 1, ("q", 1): 1})

    def test_injective_random(self):
        rng = random.Random(50)
        for _ in range(100):
            n = rng.randint(2, 9)
            p = lowered(cnot_program(rng, n, rng.randint(1, 15)))
            for name in ("linear", "eager", "bestfit"):
                for dev in ("square9", "tokyo20"):
                    lay = get_layout(name, p, builtin(dev))
                    vals = list(lay.assignment.values())
                    assert len(vals) == len(set(vals)) == n
                    assert all(0 <= v < builtin(dev).n for v in vals)


class TestTreePrimitives:
    def test_fill_flush_line(self):
        d = load_device(LINE4)
        m = BitMatrix.from_strings(["1000", "0101", "1110", "1011"])
        ops = fill_flush(d.steiner_tree(0, {2}))
        assert ops == [(1, 0), (2, 1), (1, 0)]
        assert apply_ops(m, ops).to_strings() == ["1000", "0101", "0011", "1011"]

    def test_fill_flush_six(self):
        d = load_device(SIX)
        m = BitMatrix.from_strings(["100101", "010011", "110000", "001000", "110100", "000001"])
        ops = fill_flush(d.steiner_tree(0, {2, 4}))
        assert ops == [(1, 0), (2, 1), (4, 1), (1, 0)]
        assert apply_ops(m, ops).to_strings() == [
            "100101", "010011", "000110", "001000", "000010", "000001"]

    def test_parity_fill_flush_square9(self):
        tree = builtin("square9").steiner_tree(0, {2, 4, 8})
        ops = parity_fill_flush(tree)
        assert ops == [(0, 1), (4, 7), (1, 2), (7, 8), (4, 7), (1, 4), (0, 1)]
        rows = apply_ops(BitMatrix.identity(9), ops).to_strings()
        assert rows[0] == "101010001"
        assert rows[1] == "011010001" and rows[4] == "000010001" and rows[7] == "000000011"
        ident = BitMatrix.identity(9).to_strings()
        assert all(rows[i] == ident[i] for i in (2, 3, 5, 6, 8))

    def test_accumulate_broadcast(self):
        rng = random.Random(51)
        for _ in range(100):
            d = builtin(rng.choice(["square9", "tokyo20", "aspen16"]))
            req = rng.sample(range(d.n), rng.randint(2, 6))
            tree = d.steiner_tree(req[0], set(req[1:]))
            for ops, fn in ((accumulate(tree), "acc"), (broadcast(tree), "bc")):
                m = apply_ops(BitMatrix.identity(d.n), ops)
                want = BitMatrix.identity(d.n)
                for t in req[1:]:
                    if fn == "acc":
                        want.rows[req[0]] ^= want.rows[t]
                    else:
                        want.rows[t] ^= want.rows[req[0]]
                assert m == want
                assert all(d.adjacent(a, b) for a, b in ops)

    def test_suffix_order(self):
        for name in ("square9", "tokyo20", "agave8", "aspen16"):
            d = builtin(name)
            order = suffix_connected_order(d)
            assert sorted(order) == list(range(d.n))
            for k in range(d.n):
                rest = set(order[k:])
                seen, todo = {order[k]}, [order[k]]
                while todo:
                    u = todo.pop()
                    for v in d.neighbors(u):
                        if v in rest and v not in seen:
                            seen.add(v)
                            todo.append(v)
                assert seen == rest


class TestConstrainedSynthesis:
    def test_steiner_gauss_random(self):
        rng = random.Random(52)
        for _ in range(200):
            d = builtin(rng.choice(["square9", "agave8", "aspen16", "full5"]))
            m = BitMatrix(d.n, d.n, random_invertible(rng, d.n))
            work = m.copy()
            ops = steiner_gauss(work, d)
            assert work.is_identity()
            assert all(d.adjacent(t, s) for t, s in ops)
            assert apply_ops(m.copy(), ops).is_identity()

    def test_singular(self):
        d = load_device(LINE4)
        with pytest.raises(ValueError):
            steiner_gauss(BitMatrix.from_strings(["1100", "1100", "0010", "0001"]), d)

    def test_synth_linear(self):
        rng = random.Random(53)
        for _ in range(100):
            d = builtin(rng.choice(["square9", "aspen16"]))
            state = random_invertible(rng, d.n)
            target = random_invertible(rng, d.n)
            ops = synth_linear_constrained(list(state), list(target), d)
            cur = list(state)
            for _, c, t in ops:
                assert d.adjacent(c, t)
                cur[t] ^= cur[c]
            assert cur == list(target)

    def test_gray_synth_constrained_parity(self):
        d = builtin("square9")
        poly = PhasePolynomial(9)
        from qasmkit.algebra.angle import Angle
        poly.add_term(0b100010101, Angle.pi(1, 4))  # x0 + x2 + x4 + x8
        ops = gray_synth_constrained(poly, d)
        cx = [op for op in ops if op[0] == "cx"]
        assert all(d.adjacent(c, t) for _, c, t in cx)
        assert ops_linear(ops, 9).is_identity()
        assert sum(op[0] == "rz" for op in ops) == 1


class TestSwap:
    def test_three_hop_cnot(self):
        d = load_device(FIG7)
        p = parse('OPENQASM 2.0;\nqreg q[4];\nCX q[0],q[3];\n')
        mp = map_swap(p, d, layout_linear(p, d))
        assert mp.permutation == [1, 2, 0, 3]
        assert check_mapped(mp.program, d) == []
        last = mp.program.statements[-1]
        assert (last.args[0].index, last.args[1].index) == (1, 3)
        ref = unitary(apply_layout(p, d, mp.layout))
        assert equiv(unitary(mp.program), ref, perm=mp.permutation)

    def test_flip_directed(self):
        d = load_device("device two 2\nedge 1 0\n")
        p = parse('OPENQASM 2.0;\nqreg q[2];\nCX q[0],q[1];\n')
        mp = map_swap(p, d, layout_linear(p, d))
        assert [s.name for s in mp.program.statements] == ["U", "U", "CX", "U", "U"]
        assert equiv(unitary(mp.program), unitary(p))

    def test_random_semantics(self):
        rng = random.Random(54)
        d = builtin("square9")
        for i in range(200):
            n = rng.randint(2, 9)
            p = lowered(unitary_program(rng, n, rng.randint(1, 14)))
            lay = get_layout(("linear", "eager", "bestfit")[i % 3], p, d)
            mp = map_swap(p, d, lay)
            assert check_mapped(mp.program, d) == []
            assert equiv(unitary(mp.program), unitary(apply_layout(p, d, lay)), perm=mp.permutation)


class TestSteinerMapping:
    def test_random_cnot(self):
        rng = random.Random(55)
        for i in range(200):
            d = builtin(("square9", "tokyo20", "full6")[i % 3])
            n = rng.randint(2, min(d.n, 10))
            text = cnot_program(rng, n, rng.randint(1, 25))
            p = lowered(text)
            lay = get_layout(("linear", "eager", "bestfit")[i % 3], p, d)
            mp = map_steiner(p, d, lay)
            assert mp.is_identity and check_mapped(mp.program, d) == []
            want = replay_cnots(cx_edges(apply_layout(p, d, lay)), d.n)
            assert linear_of(mp.program, d.n).rows == want

    def test_random_dihedral_semantics(self):
        rng = random.Random(56)
        d = builtin("square9")
        for i in range(60):
            p = lowered(dihedral_program(rng, rng.randint(2, 6), rng.randint(1, 20)))
            lay = get_layout(("linear", "eager", "bestfit")[i % 3], p, d)
            mp = map_steiner(p, d, lay)
            assert check_mapped(mp.program, d) == []
            assert equiv(unitary(mp.program), unitary(apply_layout(p, d, lay)))

    def test_random_general_semantics(self):
        rng = random.Random(57)
        d = builtin("square9")
        for _ in range(60):
            p = lowered(unitary_program(rng, rng.randint(2, 6), rng.randint(1, 14)))
            mp = map_steiner(p, d, layout_linear(p, d))
            assert check_mapped(mp.program, d) == []
            assert equiv(unitary(mp.program), unitary(apply_layout(p, d, mp.layout)))

    def test_directed_device(self):
        rng = random.Random(61)
        d = builtin("agave8")
        for i in range(30):
            p = lowered(cnot_program(rng, rng.randint(2, 6), rng.randint(1, 12)))
            lay = get_layout(("linear", "eager", "bestfit")[i % 3], p, d)
            for mapper in (map_steiner, map_swap):
                mp = mapper(p, d, lay)
                assert check_mapped(mp.program, d) == []
                assert equiv(unitary(mp.program), unitary(apply_layout(p, d, lay)),
                             perm=mp.permutation)

    def test_full_device_is_noop_for_cx(self):
        rng = random.Random(58)
        for _ in range(30):
            p = lowered(cnot_program(rng, 5, 10))
            d = builtin("full5")
            mp = map_steiner(p, d, layout_linear(p, d))
            assert len(cx_edges(mp.program)) <= len(cx_edges(p))
            sw = map_swap(p, d, layout_linear(p, d))
            assert sw.is_identity and cx_edges(sw.program) == cx_edges(p)

    def test_classical_control_routed(self):
        p = lowered('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\ncreg c[1];\n'
                    'measure q[0] -> c[0];\nif(c==1) cx q[0],q[2];\n')
        d = load_device("device l 3\nedge 0 1\nedge 1 2\n")
        mp = map_steiner(p, d, layout_linear(p, d))
        assert check_mapped(mp.program, d) == []


class TestMapcheck:
    def test_violations(self):
        d = load_device(LINE4)
        p = parse('OPENQASM 2.0;\nqreg q[4];\nCX q[0],q[2];\nCX q[0],q[1];\n')
        errs = check_mapped(p, d)
        assert len(errs) == 1 and "q[0],q[2]" in errs[0]

    def test_wrong_register(self):
        p = parse('OPENQASM 2.0;\nqreg r[2];\nCX r[0],r[1];\n')
        assert check_mapped(p, load_device(LINE4))

    @pytest.mark.parametrize("dev", ["square9", "tokyo20"])
    @pytest.mark.parametrize("mapper", [map_swap, map_steiner])
    @pytest.mark.parametrize("lay", ["linear", "eager", "bestfit"])
    def test_grid(self, dev, mapper, lay, mux, teleport):
        d = builtin(dev)
        rng = random.Random(59)
        progs = [mux, teleport] + [parse(unitary_program(rng, 6, 20)) for _ in range(5)]
        for p in progs:
            p = run_pipeline(p, ["inline-full"])
            mp = mapper(p, d, get_layout(lay, p, d))
            assert check_mapped(mp.program, d) == []


class TestHillclimb:
    def test_monotone(self):
        rng = random.Random(60)
        d = builtin("square9")
        for _ in range(15):
            p = lowered(cnot_program(rng, rng.randint(3, 6), 12))
            init = layout_linear(p, d)
            out = hillclimb_layout(p, d, init, budget=5)
            assert steiner_cost(p, d, out) <= steiner_cost(p, d, init)
            assert set(out.assignment) == set(init.assignment)

    def test_zero_budget(self, layout_circuit):
        d = builtin("square9")
        init = layout_linear(layout_circuit, d)
        assert hillclimb_layout(layout_circuit, d, init, budget=0) == init
