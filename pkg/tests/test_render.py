"""Space-time raster output: exact bytes, headers, and palettes."""

import pytest

from dirca import Curve, Palette, PeriodicConfig, builtin, directional_orbit, render_spacetime

MIN = builtin("min").rule
BIN = MIN.alphabet


def trace(text, steps=3, half_window=1, slope=0):
    x = PeriodicConfig(BIN, BIN.word_from_text(text))
    return directional_orbit(MIN, Curve.linear(slope), x, steps, half_window)


class TestPalette:
    def test_gray_spread(self):
        from dirca.core import Alphabet

        assert Palette.gray(BIN).entries == (0, 255)
        assert Palette.gray(Alphabet(("a", "b", "c"))).entries == (0, 127, 255)
        assert Palette.gray(Alphabet(("a",))).entries == (0,)

    def test_pgm_rejects_rgb_entries(self):
        pal = Palette(((255, 0, 0), 0))
        with pytest.raises(ValueError):
            render_spacetime(trace("0111"), palette=pal, format="PGM")


class TestPgm:
    def test_header_and_size(self):
        tr = trace("0111", steps=3, half_window=1)
        data = render_spacetime(tr, format="PGM")
        header = b"P5\n3 4\n255\n"
        assert data.startswith(header)
        assert len(data) == len(header) + 3 * 4

    def test_golden_bytes(self):
        """Min from ...0111 0111...: the 1-block erodes from the left edge
        of each period; the rendered rows are byte-exact."""
        tr = trace("0111", steps=3, half_window=1)
        data = render_spacetime(tr, format="PGM")
        body = data[len(b"P5\n3 4\n255\n"):]
        rows = [body[i : i + 3] for i in range(0, 12, 3)]
        # row 0 of the image is the latest time; initial row is last
        assert rows[-1] == bytes((255, 0, 255))  # cells -1..1 of 0111
        assert rows[0] == bytes((0, 0, 0))  # all erased by t=3

    def test_time_zero_only(self):
        tr = trace("01", steps=0, half_window=2)
        data = render_spacetime(tr, format="PGM")
        assert data == b"P5\n5 1\n255\n" + bytes((0, 255, 0, 255, 0))


class TestPpm:
    def test_header_and_size(self):
        tr = trace("0111", steps=2, half_window=2)
        data = render_spacetime(tr, format="PPM")
        header = b"P6\n5 3\n255\n"
        assert data.startswith(header)
        assert len(data) == len(header) + 3 * 5 * 3

    def test_gray_palette_replicates_channels(self):
        tr = trace("10", steps=0, half_window=0)
        data = render_spacetime(tr, format="PPM")
        assert data.endswith(bytes((255, 255, 255)))

    def test_rgb_palette(self):
        pal = Palette(((10, 20, 30), (1, 2, 3)))
        tr = trace("10", steps=0, half_window=0)
        data = render_spacetime(tr, palette=pal, format="PPM")
        assert data.endswith(bytes((1, 2, 3)))

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_spacetime(trace("01"), format="BMP")
