"""Exact two-mask layout decomposition with end-cuts and stitches.

Features are lists of rectangles ``(x_lo, y_lo, x_hi, y_hi)`` in integer
layout units; a feature's id is its index in the list.
"""

from fractions import Fraction

from ._core import (
    Config,
    CostMismatch,
    Error,
    IoError,
    OverlappingInput,
    ParseError,
    Result,
    ValidationError,
    emit_layout,
    generate,
    parse_layout,
    verify,
)
from . import _core

__all__ = [
    "Config",
    "CostMismatch",
    "Error",
    "IoError",
    "OverlappingInput",
    "ParseError",
    "Result",
    "ValidationError",
    "baseline",
    "decompose",
    "emit_layout",
    "generate",
    "parse_layout",
    "verify",
]


def _fraction(text):
    return Fraction(text)


Config.alpha = property(
    lambda self: _fraction(self.alpha_text),
    lambda self, value: setattr(self, "alpha_text", str(Fraction(value))),
    doc="Stitch weight as an exact fraction.",
)
Result.cost = property(lambda self: _fraction(self.cost_text), doc="Conflicts plus alpha times stitches.")


def decompose(features, config=None, *, monolithic=False, time_limit=None, threads=1):
    """Assign every feature segment to mask 1 or 2 and select trim cuts.

    Raises ValidationError on overlapping or malformed features.
    """
    if config is None:
        config = Config.from_rules(10, 10)
    return _core.decompose(features, config, monolithic, time_limit, threads)


def baseline(features, config=None, *, time_limit=None):
    """Three-mask coloring without end-cuts. Colors are 0, 1 or 2."""
    if config is None:
        config = Config.from_rules(10, 10)
    out = _core.baseline(features, config, time_limit)
    out["cost"] = _fraction(out.pop("cost_text"))
    return out
