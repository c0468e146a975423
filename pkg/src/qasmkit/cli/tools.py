"""UNIX filter tools: each reads QASM on stdin and writes to stdout."""

from __future__ import annotations

import argparse
import sys

from ..backends import BoxConfig, count_resources
from ..device import get_device
from ..frontend import check_or_raise, parse_file, print_program
from ..mapping import check_mapped
from ..mapping.hillclimb import DEFAULT_BUDGET
from ..optimize import PipelineOptions, compile_program
from ..simcheck import equiv, unitary
from ..transform import InlineConfig, inline
from .common import compile_text, guarded, read_program, write


def _run(prog: str, desc: str, argv, add=None):
    ap = argparse.ArgumentParser(prog=prog, description=desc)
    if add:
        add(ap)
    return ap.parse_args(argv)


def _filter(prog: str, desc: str, passes, argv=None, fmt: str = "qasm") -> int:
    _run(prog, desc, argv)
    return guarded(lambda: write(compile_text(None, passes, PipelineOptions(), fmt), None), None)


def qasm_check(argv=None) -> int:
    """Parse and check; echo the program on success."""
    _run("qasm-check", "Report syntax and semantic errors.", argv)
    return guarded(lambda: write(print_program(check_or_raise(read_program(None))), None), None)


def qasm_desugar(argv=None) -> int:
    return _filter("qasm-desugar", "Expand register-wide gate applications.", [], argv)


def qasm_inline(argv=None) -> int:
    args = _run("qasm-inline", "Inline declared gates.", argv, lambda ap: ap.add_argument(
        "--full", action="store_true", help="inline standard gates as well, down to U and CX"))

    def run():
        p = compile_program(read_program(None)).program
        write(print_program(inline(p, InlineConfig.full_inline() if args.full else None)), None)

    return guarded(run, None)


def qasm_simplify(argv=None) -> int:
    args = _run("qasm-simplify", "Cancel adjacent inverse gates.", argv, lambda ap: ap.add_argument(
        "--once", action="store_true", help="a single sweep instead of a fixpoint"))
    name = "simplify-once" if args.once else "simplify"
    return guarded(lambda: write(compile_text(None, [name], PipelineOptions()), None), None)


def qasm_rotfold(argv=None) -> int:
    args = _run("qasm-rotfold", "Merge rotation gates.", argv, lambda ap: ap.add_argument(
        "--keep-global-phase", action="store_true"))
    opts = PipelineOptions(ignore_global_phase=not args.keep_global_phase)
    return guarded(lambda: write(compile_text(None, ["rotation-fold"], opts), None), None)


def qasm_cnotsynth(argv=None) -> int:
    return _filter("qasm-cnotsynth", "Resynthesize CNOT-dihedral blocks.", ["cnot-resynth"], argv)


def _device_args(ap):
    ap.add_argument("-d", "--device", default="square9")


def qasm_map(argv=None) -> int:
    def add(ap):
        _device_args(ap)
        ap.add_argument("-l", "--layout", default="linear")
        ap.add_argument("-M", "--mapper", default="swap")
        ap.add_argument("--layout-opt", nargs="?", type=int, const=DEFAULT_BUDGET, default=None)
        ap.add_argument("--perm-out", metavar="FILE")

    args = _run("qasm-map", "Map onto a device coupling graph.", argv, add)
    opts = PipelineOptions(device=args.device, layout=args.layout, mapper=args.mapper,
                           layout_opt=args.layout_opt)
    return guarded(lambda: write(compile_text(None, ["map"], opts, perm_out=args.perm_out), None),
                   None)


def qasm_count(argv=None) -> int:
    args = _run("qasm-count", "Count gates, qubits and depth.", argv, lambda ap: ap.add_argument(
        "--box", help="comma-separated gate names to count as units (default: qelib1)"))

    def run():
        p = compile_program(read_program(None)).program
        box = BoxConfig.of(n for n in args.box.split(",") if n) if args.box is not None else None
        write(count_resources(p, box).format(), None)

    return guarded(run, None)


def qasm2quil(argv=None) -> int:
    return _filter("qasm2quil", "Translate to Quil.", [], argv, fmt="quil")


def qasm2qsharp(argv=None) -> int:
    return _filter("qasm2qsharp", "Translate to Q#.", [], argv, fmt="qsharp")


def qasm_mapcheck(argv=None) -> int:
    """Exit 1 and list violations when a gate is off the coupling graph."""
    args = _run("qasm-mapcheck", "Validate coupling constraints.", argv, _device_args)

    def run():
        p = read_program(None)
        errs = check_mapped(p, get_device(args.device))
        if errs:
            raise ValueError(f"{len(errs)} coupling violation(s)\n" + "\n".join(errs))
        write(print_program(p), None)

    return guarded(run, None)


def qasm_unitary_equiv(argv=None) -> int:
    """Exit 0 when two measurement-free programs are equivalent."""
    def add(ap):
        ap.add_argument("a")
        ap.add_argument("b")
        ap.add_argument("--perm", help="comma-separated output permutation applied to b")
        ap.add_argument("--exact-phase", action="store_true")
        ap.add_argument("--tol", type=float, default=1e-8)

    args = _run("qasm-unitary-equiv", "Compare two programs by simulation.", argv, add)
    verdict = []

    def run():
        ua = unitary(compile_program(parse_file(args.a)).program)
        ub = unitary(compile_program(parse_file(args.b)).program)
        perm = [int(x) for x in args.perm.split(",")] if args.perm else None
        ok = equiv(ua, ub, up_to_phase=not args.exact_phase, perm=perm, tol=args.tol)
        verdict.append(ok)
        write("equivalent\n" if ok else "not equivalent\n", None)

    status = guarded(run, args.a)
    return status if status else (0 if verdict[0] else 1)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(qasm_check())
