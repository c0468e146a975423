"""Optimization passes and the pass pipeline."""

from .cnotsynth import resynthesize_cnot
from .depgraph import DependenceGraph
from .phasepoly import PhasePolynomial, gray_synth
from .pipeline import (COMPOSITES, PASSES, PipelineOptions, PipelineResult, UnknownPass,
                       compile_program, expand_passes, run_pipeline)
from .rotfold import PauliSumCircuit, fold_rotations
from .simplify import simplify

__all__ = [
    "resynthesize_cnot", "DependenceGraph", "PhasePolynomial", "gray_synth",
    "COMPOSITES", "PASSES", "PipelineOptions", "PipelineResult", "UnknownPass",
    "compile_program", "expand_passes", "run_pipeline", "PauliSumCircuit",
    "fold_rotations", "simplify",
]
