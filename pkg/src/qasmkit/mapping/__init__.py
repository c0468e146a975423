"""Hardware mapping: layouts, routing and constrained synthesis."""

from .hillclimb import hillclimb_layout
from .layout import (Layout, LayoutError, MappedProgram, apply_layout, get_layout,
                     layout_bestfit, layout_eager, layout_linear)
from .mapcheck import check_mapped
from .steiner import map_steiner, steiner_gauss
from .swap import map_swap

MAPPERS = {"swap": map_swap, "steiner": map_steiner}

__all__ = [
    "Layout", "LayoutError", "MappedProgram", "apply_layout", "get_layout",
    "layout_bestfit", "layout_eager", "layout_linear", "hillclimb_layout",
    "check_mapped", "map_steiner", "steiner_gauss", "map_swap", "MAPPERS",
]
