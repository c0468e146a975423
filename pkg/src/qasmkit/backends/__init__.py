"""Output formats: QASM, resource reports, Quil and Q#."""

from ..frontend import ast, print_program
from .quil import QuilError, emit_quil
from .qsharp import QSharpError, emit_qsharp
from .resources import (BENCH_BASIS, BoxConfig, ResourceError, ResourceReport, count_resources,
                        cx_count, depth, gate_count)

FORMATS = ("qasm", "quil", "qsharp", "resources")


def emit_qasm(p: ast.Program) -> str:
    return print_program(p)


def emit(p: ast.Program, fmt: str) -> str:
    if fmt == "qasm":
        return emit_qasm(p)
    if fmt == "quil":
        return emit_quil(p)
    if fmt == "qsharp":
        return emit_qsharp(p)
    if fmt == "resources":
        return count_resources(p).format()
    raise ValueError(f"unknown output format '{fmt}' (expected {'|'.join(FORMATS)})")


__all__ = [
    "QuilError", "emit_quil", "QSharpError", "emit_qsharp", "BENCH_BASIS", "BoxConfig",
    "ResourceError", "ResourceReport", "count_resources", "cx_count", "depth", "gate_count",
    "FORMATS", "emit_qasm", "emit",
]
