"""Ordered pass execution."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast, check_or_raise, desugar
from ..transform import InlineConfig, inline
from .cnotsynth import resynthesize_cnot
from .rotfold import fold_rotations
from .simplify import simplify

COMPOSITES = {
    "O1": ["simplify", "rotation-fold", "simplify"],
    "O2": ["simplify", "rotation-fold", "simplify", "cnot-resynth", "simplify"],
}
PASSES = ("simplify", "simplify-once", "rotation-fold", "cnot-resynth", "inline", "inline-full", "map")


class UnknownPass(ValueError):
    pass


@dataclass
class PipelineOptions:
    ignore_global_phase: bool = True
    device: str = "square9"
    layout: str = "linear"
    mapper: str = "swap"
    layout_opt: int | None = None  # hill-climb budget, None = off


@dataclass
class PipelineResult:
    program: ast.Program
    passes: list[str]
    permutation: list[int] | None = None
    layout: dict = field(default_factory=dict)


def expand_passes(passes) -> list[str]:
    """Composites unfolded and a full inline (down to U and CX) inserted
    before every ``map``."""
    out: list[str] = []
    for name in passes:
        if name in COMPOSITES:
            out += COMPOSITES[name]
        elif name in PASSES:
            if name == "map" and (not out or out[-1] != "inline-full"):
                out.append("inline-full")
            out.append(name)
        else:
            raise UnknownPass(f"unknown pass '{name}' (expected one of "
                              f"{', '.join(PASSES + tuple(COMPOSITES))})")
    return out


def _map(p: ast.Program, opts: PipelineOptions, res: PipelineResult) -> ast.Program:
    from ..device import get_device
    from ..mapping import MAPPERS, get_layout, hillclimb_layout

    d = get_device(opts.device)
    try:
        mapper = MAPPERS[opts.mapper]
    except KeyError:
        raise UnknownPass(f"unknown mapper '{opts.mapper}' (expected swap|steiner)") from None
    layout = get_layout(opts.layout, p, d)
    if opts.layout_opt is not None:
        layout = hillclimb_layout(p, d, layout, budget=opts.layout_opt)
    mapped = mapper(p, d, layout)
    res.permutation = mapped.permutation
    res.layout = {f"{r}[{i}]": a for (r, i), a in layout.assignment.items()}
    return mapped.program


def compile_program(p: ast.Program, passes=(), opts: PipelineOptions | None = None) -> PipelineResult:
    """Check, desugar, then apply ``passes`` left to right."""
    opts = opts or PipelineOptions()
    order = expand_passes(passes)
    res = PipelineResult(p, order)
    p = desugar(check_or_raise(p))
    for name in order:
        if name == "simplify":
            p = simplify(p, fixpoint=True)
        elif name == "simplify-once":
            p = simplify(p, fixpoint=False)
        elif name == "rotation-fold":
            p = fold_rotations(p, opts.ignore_global_phase)
        elif name == "cnot-resynth":
            p = resynthesize_cnot(p)
        elif name == "inline":
            p = inline(p)
        elif name == "inline-full":
            p = inline(p, InlineConfig.full_inline())
        elif name == "map":
            p = _map(p, opts, res)
    res.program = p
    return res


def run_pipeline(p: ast.Program, passes=(), opts: PipelineOptions | None = None) -> ast.Program:
    return compile_program(p, passes, opts).program
