"""Space-time diagrams as PGM/PPM bytes.

Raster row 0 holds the latest time step, so time reads upward in ordinary
image viewers.  Output is a pure function of the trace and palette.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Alphabet
from .rules import OrbitTrace


@dataclass(frozen=True)
class Palette:
    """Per-symbol colors: an int gray byte or an (r, g, b) triple."""

    entries: tuple

    def __post_init__(self):
        for e in self.entries:
            vals = (e,) if isinstance(e, int) else tuple(e)
            for v in vals:
                if not 0 <= v <= 255:
                    raise ValueError("color bytes must be in [0, 255]")

    @classmethod
    def gray(cls, alphabet: Alphabet) -> "Palette":
        k = alphabet.size
        if k == 1:
            return cls((0,))
        return cls(tuple(255 * i // (k - 1) for i in range(k)))

    def gray_byte(self, i: int) -> int:
        e = self.entries[i]
        if not isinstance(e, int):
            raise ValueError("PGM output needs gray palette entries")
        return e

    def rgb(self, i: int) -> tuple[int, int, int]:
        e = self.entries[i]
        return (e, e, e) if isinstance(e, int) else tuple(e)


def render_spacetime(trace: OrbitTrace, palette: Palette = None, format: str = "PGM") -> bytes:
    if palette is None:
        palette = Palette.gray(trace.rule.alphabet)
    if len(palette.entries) != trace.rule.alphabet.size:
        raise ValueError("palette size does not match the alphabet")
    width = trace.width
    height = len(trace.rows)
    rows = list(reversed(trace.rows))  # row 0 = latest time
    if format.upper() == "PGM":
        header = f"P5\n{width} {height}\n255\n".encode()
        body = bytes(palette.gray_byte(a) for row in rows for a in row.letters)
        return header + body
    if format.upper() == "PPM":
        header = f"P6\n{width} {height}\n255\n".encode()
        body = bytes(
            b for row in rows for a in row.letters for b in palette.rgb(a)
        )
        return header + body
    raise ValueError(f"unknown image format {format!r}")
