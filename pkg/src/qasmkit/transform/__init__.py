"""Source-to-source transformations."""

from .inline import AncillaPool, InlineConfig, InlineError, callgraph, inline

__all__ = ["AncillaPool", "InlineConfig", "InlineError", "callgraph", "inline"]
