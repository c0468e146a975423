"""Shared plumbing for the compiler binary and the pipe tools."""

from __future__ import annotations

import json
import sys

from ..backends import QSharpError, QuilError, ResourceError, emit
from ..device import DeviceError
from ..frontend import CheckError, ParseError, ast, parse
from ..mapping import LayoutError
from ..optimize import PipelineOptions, UnknownPass, compile_program
from ..simcheck import SimulationError
from ..transform import InlineError

# Failures reported as diagnostics (exit status 1) rather than tracebacks.
USER_ERRORS = (ParseError, CheckError, UnknownPass, DeviceError, LayoutError, InlineError,
               QuilError, QSharpError, ResourceError, SimulationError, OSError, ValueError)


def read_program(path: str | None) -> ast.Program:
    if path is None or path == "-":
        return parse(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), path)


def report(e: Exception, path: str | None) -> None:
    where = path or "<stdin>"
    if isinstance(e, ParseError) and e.pos is not None:
        print(str(e), file=sys.stderr)
    elif isinstance(e, CheckError):
        for d in e.diagnostics:
            print(str(d), file=sys.stderr)
    else:
        print(f"{where}: error: {e}", file=sys.stderr)


def write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def compile_text(path: str | None, passes, opts: PipelineOptions, fmt: str = "qasm",
                 perm_out: str | None = None) -> str:
    """Full run up to output text; raises on any failure so nothing is
    written unless every stage succeeded."""
    res = compile_program(read_program(path), passes, opts)
    text = emit(res.program, fmt)
    if perm_out is not None:
        with open(perm_out, "w", encoding="utf-8") as fh:
            json.dump({"permutation": res.permutation, "layout": res.layout}, fh, indent=2)
            fh.write("\n")
    return text


def guarded(fn, path: str | None) -> int:
    try:
        fn()
    except USER_ERRORS as e:
        report(e, path)
        return 1
    return 0
