"""Source-to-source compiler toolkit for openQASM 2.0 circuits."""

__version__ = "0.1.0"
