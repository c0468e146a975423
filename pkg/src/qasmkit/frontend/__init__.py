"""Parsing, printing, checking and desugaring of openQASM programs."""

from . import ast
from .check import CheckError, Diagnostic, check, check_or_raise, desugar
from .parser import ParseError, parse, parse_file
from .printer import print_program
from .visitor import Transformer, Visitor, traverse

__all__ = [
    "ast", "CheckError", "Diagnostic", "check", "check_or_raise", "desugar",
    "ParseError", "parse", "parse_file", "print_program", "Transformer",
    "Visitor", "traverse",
]
