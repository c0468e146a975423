import io
import json
import random
import shutil
import subprocess
import sys

import pytest

from programs import LAYOUT_CIRCUIT, MUX, TELEPORT
from randprog import full_program, unitary_program
from qasmkit.cli import tools
from qasmkit.cli.main import main

TOOL_FOR = {
    "simplify": (tools.qasm_simplify, []),
    "simplify-once": (tools.qasm_simplify, ["--once"]),
    "rotation-fold": (tools.qasm_rotfold, []),
    "cnot-resynth": (tools.qasm_cnotsynth, []),
    "inline": (tools.qasm_inline, []),
    "map": (tools.qasm_map, ["-d", "square9", "-l", "bestfit", "-M", "steiner"]),
}
FLAG_FOR = {"simplify": "-s", "simplify-once": "-S", "rotation-fold": "-r",
            "cnot-resynth": "-c", "inline": "-i", "map": "-m"}
MAP_FLAGS = ["-d", "square9", "-l", "bestfit", "-M", "steiner"]


def call(fn, argv, stdin, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    status = fn(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.fixture
def run(capsys, monkeypatch):
    return lambda fn, argv, stdin="": call(fn, argv, stdin, capsys, monkeypatch)


class TestMain:
    def test_o1_equals_explicit(self, run, tmp_path):
        f = tmp_path / "mux.qasm"
        f.write_text(MUX)
        a = run(main, ["-s", "-r", "-s", str(f)])
        b = run(main, ["-O1", str(f)])
        assert a[0] == b[0] == 0 and a[1] == b[1] and a[1]

    def test_o2_equals_explicit(self, run):
        a = run(main, ["-s", "-r", "-s", "-c", "-s"], MUX)
        b = run(main, ["-O", "2"], MUX)
        assert a == b and a[0] == 0

    def test_no_passes_desugars(self, run):
        status, out, _ = run(main, [], TELEPORT)
        assert status == 0
        assert "cx q[0],q[1];" in out or "CX q[0],q[1];" in out
        again = run(main, [], out)
        assert again[1] == out

    def test_parse_error(self, run):
        status, out, err = run(main, [], "OPENQASM 2.0;\nqreg q[1]\nh q[0];\n")
        assert status == 1 and out == ""
        assert "<stdin>:3:1:" in err and "error" in err

    def test_semantic_error(self, run):
        status, out, err = run(main, [], "OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n")
        assert status == 1 and out == "" and "3:" in err

    def test_bad_flag(self, run):
        with pytest.raises(SystemExit) as e:
            run(main, ["--bogus"])
        assert e.value.code == 2

    def test_bad_device(self, run):
        status, out, err = run(main, ["-m", "-d", "nowhere"], TELEPORT)
        assert status == 1 and out == "" and "nowhere" in err

    def test_formats(self, run):
        for fmt, needle in [("quil", "MEASURE"), ("qsharp", "operation Circuit"),
                            ("resources", "qubits: 3")]:
            status, out, _ = run(main, ["-f", fmt], TELEPORT)
            assert status == 0 and needle in out

    def test_output_and_perm(self, run, tmp_path):
        out, perm = tmp_path / "o.qasm", tmp_path / "p.json"
        status, text, _ = run(main, ["-m", "-d", "square9", "-o", str(out),
                                     "--perm-out", str(perm)], LAYOUT_CIRCUIT)
        assert status == 0 and text == ""
        data = json.loads(perm.read_text())
        assert sorted(data["permutation"]) == list(range(9))
        assert out.read_text().startswith("OPENQASM 2.0;")

    def test_deterministic(self, run):
        a = run(main, ["-O2", "-m", "-M", "steiner", "-l", "eager"], MUX)
        b = run(main, ["-O2", "-m", "-M", "steiner", "-l", "eager"], MUX)
        assert a == b


class TestTools:
    def test_desugar_identity(self, run):
        _, once, _ = run(tools.qasm_desugar, [], TELEPORT)
        _, twice, _ = run(tools.qasm_desugar, [], once)
        assert once == twice

    def test_mapcheck_fig6(self, run):
        status, mapped, _ = run(tools.qasm_map,
                                ["--device", "square9", "--layout", "bestfit", "--mapper", "steiner"],
                                LAYOUT_CIRCUIT)
        assert status == 0
        assert run(tools.qasm_mapcheck, ["--device", "square9"], mapped)[0] == 0

    def test_mapcheck_rejects(self, run):
        status, out, err = run(tools.qasm_mapcheck, ["-d", "square9"],
                               "OPENQASM 2.0;\nqreg q[9];\nCX q[0],q[8];\n")
        assert status == 1 and out == "" and "violation" in err

    def test_count(self, run):
        status, out, _ = run(tools.qasm_count, ["--box", "ccx"],
                             'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\nccx q[0],q[1],q[2];\n')
        assert status == 0 and "gates: 1" in out

    def test_translators(self, run):
        assert run(tools.qasm2quil, [], TELEPORT)[1].count("MEASURE") == 2
        assert "operation Circuit" in run(tools.qasm2qsharp, [], TELEPORT)[1]

    def test_check(self, run):
        assert run(tools.qasm_check, [], TELEPORT)[0] == 0
        status, out, err = run(tools.qasm_check, [], "OPENQASM 2.0;\nqreg q[1];\nh q[3];\n")
        assert status == 1 and out == "" and err

    def test_unitary_equiv(self, run, tmp_path):
        a, b, c = tmp_path / "a.qasm", tmp_path / "b.qasm", tmp_path / "c.qasm"
        head = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\n'
        a.write_text(head + "h q[0];\nh q[0];\n")
        b.write_text(head)
        c.write_text(head + "x q[1];\n")
        assert run(tools.qasm_unitary_equiv, [str(a), str(b)])[0] == 0
        assert run(tools.qasm_unitary_equiv, [str(a), str(c)])[0] == 1

    def test_pipe_equals_monolith(self, run):
        rng = random.Random(80)
        names = list(TOOL_FOR)
        for k in range(50):
            if k % 2:
                src = unitary_program(rng, rng.randint(2, 5), rng.randint(3, 25))
            else:
                src = full_program(rng)
            seq = [rng.choice(names) for _ in range(rng.randint(1, 4))]
            if "map" in seq:
                src = unitary_program(rng, rng.randint(2, 5), rng.randint(3, 25))
            status, text, err = run(tools.qasm_desugar, [], src)
            assert status == 0, err
            for name in seq:
                fn, argv = TOOL_FOR[name]
                status, text, err = run(fn, argv, text)
                assert status == 0, err
            flags = [FLAG_FOR[n] for n in seq] + (MAP_FLAGS if "map" in seq else [])
            status, mono, err = run(main, flags, src)
            assert status == 0, err
            assert text == mono, (seq, src)


@pytest.mark.skipif(shutil.which("qasm-simplify") is None, reason="console scripts not installed")
class TestShell:
    def test_real_pipeline(self, tmp_path):
        f = tmp_path / "mux.qasm"
        f.write_text(MUX)
        piped = subprocess.run(
            f"qasm-simplify < {f} | qasm-rotfold | qasm-simplify", shell=True,
            capture_output=True, text=True, check=True).stdout
        mono = subprocess.run(["qasmkit", "-O1", str(f)], capture_output=True, text=True,
                              check=True).stdout
        assert piped == mono

    def test_map_into_mapcheck(self, tmp_path):
        f = tmp_path / "fig6.qasm"
        f.write_text(LAYOUT_CIRCUIT)
        r = subprocess.run(
            f"qasm-map --device square9 --layout bestfit --mapper steiner < {f}"
            " | qasm-mapcheck --device square9", shell=True, capture_output=True, text=True)
        assert r.returncode == 0, r.stderr

    def test_exit_codes(self):
        r = subprocess.run(["qasmkit", "--nope"], capture_output=True, text=True)
        assert r.returncode == 2
        r = subprocess.run(["qasmkit"], input="garbage", capture_output=True, text=True)
        assert r.returncode == 1 and r.stdout == ""
