"""Pitch-class Fourier analysis of MIDI files."""

from ._core import (
    Bundle,
    TonalscapeError,
    __version__,
    analyze,
    coefficient,
    dft12,
    parse_notes,
    parse_pc_text,
    phase_color,
    phase_degrees,
    prototype_positions,
    transpose,
)

__all__ = [
    "Bundle",
    "TonalscapeError",
    "__version__",
    "analyze",
    "coefficient",
    "dft12",
    "parse_notes",
    "parse_pc_text",
    "phase_color",
    "phase_degrees",
    "prototype_positions",
    "transpose",
]
