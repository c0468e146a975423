import random

import pytest

from programs import ANCILLA, TELEPORT
from randprog import full_program, unitary_program
from qasmkit.frontend import ast, check, desugar, parse, print_program
from qasmkit.simcheck import equiv, restrict_ancillas, unitary
from qasmkit.transform import AncillaPool, InlineConfig, InlineError, callgraph, inline

# The pooled rewrite assumes this body for bar.
ANCILLA_AFTER_BODY = ANCILLA.replace("  cx a,b[0];\n  cx a,c[0];\n}", "  cx a,c[0];\n  cx c[0],b[0];\n}")


def main_lines(p: ast.Program) -> list[str]:
    text = print_program(p.with_body([n for n in p.body if not isinstance(n, ast.GateDecl)]))
    return [ln for ln in text.splitlines()[1:] if not ln.startswith("include")]


def measurement_free_prefix(p: ast.Program) -> ast.Program:
    body = []
    for n in p.body:
        if isinstance(n, (ast.Measure, ast.If, ast.Reset)):
            break
        body.append(n)
    return p.with_body(body)


class TestAncillas:
    def test_pool_sharing(self):
        p = inline(desugar(parse(ANCILLA_AFTER_BODY)))
        assert main_lines(p) == [
            "qreg anc[1];", "qreg x[2];",
            "cx x[0],anc[0];", "cx x[0],x[1];", "cx x[1],anc[0];"]

    def test_shared_body_as_written(self):
        p = inline(desugar(parse(ANCILLA)))
        regs = [(r.name, r.size) for r in p.qregs()]
        assert regs == [("anc", 1), ("x", 2)]
        assert main_lines(p)[2:] == ["cx x[0],anc[0];", "cx x[0],anc[0];", "cx x[0],x[1];"]
        assert check(p) == []

    def test_dirty_falls_back_to_slot(self):
        src = ('OPENQASM 2.0;\ninclude "qelib1.inc";\n'
               "gate g a { dirty ancilla d[2]; cx a,d[0]; cx a,d[1]; }\nqreg q[2];\ng q[0];\n")
        p = inline(desugar(parse(src)))
        # one idle program qubit (q[1]) plus one fresh slot
        assert [(r.name, r.size) for r in p.qregs()] == [("anc", 1), ("q", 2)]
        assert main_lines(p)[2:] == ["cx q[0],q[1];", "cx q[0],anc[0];"]

    def test_name_collision(self):
        src = ('OPENQASM 2.0;\ninclude "qelib1.inc";\n'
               "gate g a { ancilla b[1]; cx a,b[0]; }\nqreg anc[1];\ng anc[0];\n")
        p = inline(desugar(parse(src)))
        names = [r.name for r in p.qregs()]
        assert len(set(names)) == 2 and "anc" in names
        assert check(p) == []

    def test_pool(self):
        pool = AncillaPool([("q", 0), ("q", 1)])
        a = pool.acquire_clean(2)
        assert a == [0, 1] and pool.size == 2
        pool.release([0])
        assert pool.acquire_clean(2) == [0, 2]
        pool.release([1])
        with pytest.raises(InlineError):
            pool.release([1])
        assert pool.idle({("q", 0)}, 3) == [("q", 1)]

    def test_clean_ancilla_semantics(self):
        src = ('OPENQASM 2.0;\ninclude "qelib1.inc";\n'
               "gate maj a,b { ancilla t[1]; cx a,t[0]; cx b,t[0]; z t[0]; cx b,t[0]; cx a,t[0]; }\n"
               "qreg q[2];\nh q[0];\nh q[1];\nmaj q[0],q[1];\n")
        p = desugar(parse(src))
        out = inline(p, InlineConfig.full_inline())
        u = restrict_ancillas(unitary(out), 2, 1, anc_first=True)
        # a Z on the parity wire is Z (x) Z on the inputs
        ref = parse('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[0];\nh q[1];\n'
                    "z q[0];\nz q[1];\n")
        assert equiv(unitary(ref), u)


class TestInline:
    def test_keeps_qelib1_by_default(self, teleport):
        p = inline(desugar(teleport))
        assert "bellPrep" not in {s.name for s in p.statements if isinstance(s, ast.Gate)}
        assert {s.name for s in p.statements if isinstance(s, ast.Gate)} == {"h", "cx"}

    def test_full_inline_primitives(self, teleport):
        p = inline(desugar(teleport), InlineConfig.full_inline())
        for s in p.statements:
            g = s.body if isinstance(s, ast.If) else s
            if isinstance(g, ast.Gate):
                assert g.name in ("U", "CX")
        assert not any(isinstance(n, ast.GateDecl) for n in p.body)

    def test_full_inline_teleport_prefix(self, teleport):
        d = desugar(teleport)
        before = measurement_free_prefix(d)
        after = measurement_free_prefix(inline(d, InlineConfig.full_inline()))
        assert equiv(unitary(before), unitary(after))

    def test_overrides(self, teleport):
        p = inline(desugar(teleport), InlineConfig(overrides=frozenset({"bellPrep"})))
        assert p.statements[0].name == "bellPrep"

    def test_no_declarations_unchanged(self):
        p = desugar(parse('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n'))
        assert inline(p) == p

    def test_idempotent(self):
        for seed in range(100):
            p = desugar(parse(full_program(random.Random(seed))))
            if any(isinstance(n, ast.Oracle) for n in p.body):
                continue
            once = inline(p, InlineConfig.full_inline())
            assert inline(once, InlineConfig.full_inline()) == once

    def test_random_semantics(self):
        rng = random.Random(21)
        for _ in range(40):
            p = parse(unitary_program(rng, rng.randint(1, 4), 12))
            assert equiv(unitary(p), unitary(inline(desugar(p), InlineConfig.full_inline())),
                         tol=1e-10)

    def test_capture_avoiding(self):
        src = ('OPENQASM 2.0;\ninclude "qelib1.inc";\n'
               "gate inner(a) x { rz(a) x; }\ngate outer(a,b) x,y { inner(b) x; inner(a) y; }\n"
               "qreg q[2];\nouter(0.25,0.5) q[1],q[0];\n")
        p = inline(desugar(parse(src)), InlineConfig(overrides=frozenset({"rz"})))
        got = [(s.args[0].index, ast.eval_float(s.params[0])) for s in p.statements]
        assert got == [(1, 0.5), (0, 0.25)]

    def test_oracle_full_inline_fails(self):
        src = 'OPENQASM 2.0;\noracle f a,b { "f.v" }\nqreg q[2];\nf q[0],q[1];\n'
        with pytest.raises(InlineError, match="oracle"):
            inline(desugar(parse(src)), InlineConfig.full_inline())


class TestCallgraph:
    def test_teleport(self):
        assert callgraph(parse(TELEPORT)) == ["bellPrep"]

    def test_empty(self):
        assert callgraph(parse("OPENQASM 2.0;")) == []

    def test_order(self):
        src = "OPENQASM 2.0;\ngate a x { U(0,0,0) x; }\ngate b x { a x; }\ngate c x { b x; a x; }\n"
        order = callgraph(parse(src))
        assert order.index("a") < order.index("b") < order.index("c")

    def test_cycle(self):
        src = "OPENQASM 2.0;\ngate g1 x { g2 x; }\ngate g2 x { g1 x; }\n"
        with pytest.raises(InlineError) as e:
            callgraph(parse(src))
        assert "g1" in str(e.value) and "g2" in str(e.value)
