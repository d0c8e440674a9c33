import random
from fractions import Fraction

import pytest

from qumod.errors import BackendMismatch, DimMismatch
from qumod.morphology import (PAD, TORUS, Grid, StructuringElement, closing,
                              composite, constant_grid, dilate, erode,
                              opening, outline, translate)
from qumod.tnorms import GODEL, LUKASIEWICZ, PRODUCT
from qumod.values import UnitValue

CROSS = StructuringElement.binary([(0, 0), (0, 1), (0, -1), (1, 0), (-1, 0)])


def bit_grid(points, width, height, boundary=TORUS):
    samples = [1 if (r, c) in points else 0
               for r in range(height) for c in range(width)]
    return Grid(width, height, samples, boundary)


def points_of(g):
    one = UnitValue.exact(1)
    return {(r, c) for r in range(g.height) for c in range(g.width)
            if g.at(r, c) == one}


def set_dilate(points, offsets, width, height):
    # union of translated copies of the support
    return {((r + dr) % height, (c + dc) % width)
            for (r, c) in points for (dr, dc) in offsets}


def set_erode(points, offsets, width, height):
    # positions whose translated support lies inside the image
    return {(r, c) for r in range(height) for c in range(width)
            if all(((r + dr) % height, (c + dc) % width) in points
                   for (dr, dc) in offsets)}


def test_translate_identity_and_wrap():
    g = bit_grid({(2, 2)}, 3, 3)
    assert translate(g, (0, 0)) == g
    assert points_of(translate(g, (1, 1))) == {(0, 0)}
    rng = random.Random(6)
    noisy = Grid(3, 3, [rng.randrange(2) for _ in range(9)])
    for h in ((1, 2), (2, 0), (5, 7)):
        back = translate(translate(noisy, h), (-h[0], -h[1]))
        assert back == noisy


def test_translate_pad_drops_content():
    g = bit_grid({(2, 2)}, 3, 3, boundary=PAD)
    assert points_of(translate(g, (1, 1))) == set()
    assert points_of(translate(g, (-1, -1))) == {(1, 1)}


def test_dilate_single_pixel_cross():
    g = bit_grid({(2, 2)}, 5, 5)
    out = dilate(g, CROSS, GODEL)
    assert points_of(out) == {(2, 2), (2, 3), (2, 1), (3, 2), (1, 2)}


def test_dilate_constant_with_unit_peak():
    g = constant_grid(5, 5, Fraction(1, 2))
    out = dilate(g, CROSS, LUKASIEWICZ)
    assert all(v.as_fraction() == Fraction(1, 2) for v in out.samples)


def test_dilate_bottom_annihilates():
    g = constant_grid(4, 4, 0)
    assert dilate(g, CROSS, LUKASIEWICZ) == g


def test_erode_top_and_pad_fill():
    full = constant_grid(3, 3, 1)
    assert erode(full, CROSS, GODEL) == full
    full_pad = constant_grid(3, 3, 1, boundary=PAD)
    assert erode(full_pad, CROSS, GODEL) == full_pad
    # pad dilation reads bottom outside instead
    poked = bit_grid({(0, 0)}, 3, 3, boundary=PAD)
    assert points_of(dilate(poked, StructuringElement.binary([(-1, -1)]),
                            GODEL)) == set()


def test_erode_after_dilate_recovers_pixel():
    g = bit_grid({(2, 2)}, 5, 5)
    out = erode(dilate(g, CROSS, GODEL), CROSS, GODEL)
    assert points_of(out) == {(2, 2)}


def test_binary_matches_set_formulas():
    ses = [CROSS,
           StructuringElement.binary([(1, 2)]),
           StructuringElement.binary([(0, 0), (1, 1)]),
           StructuringElement.binary([(-1, 0), (0, -1), (1, 1)])]
    for mask in range(512):
        points = {(r, c) for r in range(3) for c in range(3)
                  if mask >> (r * 3 + c) & 1}
        g = bit_grid(points, 3, 3)
        for se in ses:
            offs = se.support
            assert points_of(dilate(g, se, GODEL)) == \
                set_dilate(points, offs, 3, 3)
            assert points_of(erode(g, se, GODEL)) == \
                set_erode(points, offs, 3, 3)


def _random_grid(rng, width, height, den=6):
    return Grid(width, height,
                [UnitValue.exact(rng.randrange(den + 1), den)
                 for _ in range(width * height)])


WEIGHTED = StructuringElement([(0, 0, 1), (0, 1, Fraction(1, 2)),
                               (1, 0, Fraction(1, 3)), (-1, -1, 1)])


@pytest.mark.parametrize("kind", [GODEL, LUKASIEWICZ])
def test_adjunction_and_composite_laws(kind):
    rng = random.Random(13)
    for _ in range(15):
        x = _random_grid(rng, 4, 3)
        y = _random_grid(rng, 4, 3)
        assert dilate(x, WEIGHTED, kind).le(y) == \
            x.le(erode(y, WEIGHTED, kind))
        assert opening(x, WEIGHTED, kind).le(x)
        assert x.le(closing(x, WEIGHTED, kind))
        assert opening(opening(x, WEIGHTED, kind), WEIGHTED, kind) == \
            opening(x, WEIGHTED, kind)
        assert closing(closing(x, WEIGHTED, kind), WEIGHTED, kind) == \
            closing(x, WEIGHTED, kind)
        d = dilate(x, WEIGHTED, kind)
        e = erode(x, WEIGHTED, kind)
        assert dilate(erode(d, WEIGHTED, kind), WEIGHTED, kind) == d
        assert erode(dilate(e, WEIGHTED, kind), WEIGHTED, kind) == e


def test_translation_commutes_on_torus():
    rng = random.Random(2)
    for _ in range(10):
        x = _random_grid(rng, 4, 4)
        for h in ((1, 0), (2, 3)):
            for op in (dilate, erode):
                assert op(translate(x, h), WEIGHTED, LUKASIEWICZ) == \
                    translate(op(x, WEIGHTED, LUKASIEWICZ), h)


def test_translation_commutation_fails_in_pad_mode():
    x = bit_grid({(0, 0)}, 3, 3, boundary=PAD)
    se = StructuringElement.binary([(-1, -1)])
    h = (1, 1)
    shifted_first = dilate(translate(x, h), se, GODEL)
    dilated_first = translate(dilate(x, se, GODEL), h)
    assert shifted_first != dilated_first
    assert points_of(shifted_first) == {(0, 0)}
    assert points_of(dilated_first) == set()


def test_open_close_constants():
    bot = constant_grid(3, 3, 0)
    top = constant_grid(3, 3, 1)
    assert composite(bot, CROSS, GODEL, "open") == bot
    assert composite(top, CROSS, GODEL, "close") == top
    with pytest.raises(ValueError):
        composite(bot, CROSS, GODEL, "sharpen")


def test_outline_single_pixel():
    g = bit_grid({(2, 2)}, 5, 5)
    assert points_of(outline(g, CROSS, GODEL)) == {(2, 2)}


def test_outline_truncates_grayscale():
    samples = [Fraction(1, 4)] * 9
    samples[4] = Fraction(1)
    g = Grid(3, 3, samples)
    se = StructuringElement.binary([(0, 1)])
    out = outline(g, se, LUKASIEWICZ)
    # erosion shifts columns left, so the peak pops against its right
    # neighbour and the dip truncates to zero instead of going negative
    assert out.at(1, 1).as_fraction() == Fraction(3, 4)
    assert out.at(1, 0).as_fraction() == 0


def test_float_backend_round_trip():
    rng = random.Random(8)
    g = Grid(3, 3, [UnitValue.from_float(rng.random()) for _ in range(9)],
             boundary=TORUS)
    se = StructuringElement([(0, 0, UnitValue.from_float(1.0)),
                             (0, 1, UnitValue.from_float(0.5))])
    assert opening(g, se, PRODUCT).le(g)
    with pytest.raises(BackendMismatch):
        dilate(constant_grid(2, 2, Fraction(1, 2)), se, PRODUCT)


def test_grid_and_se_validation():
    with pytest.raises(DimMismatch):
        Grid(2, 2, [0, 0, 0])
    with pytest.raises(ValueError):
        Grid(2, 2, [0] * 4, boundary="mirror")
    with pytest.raises(ValueError):
        StructuringElement([])
    with pytest.raises(ValueError):
        StructuringElement([(0, 0, 1), (0, 0, Fraction(1, 2))])
    with pytest.raises(DimMismatch):
        constant_grid(2, 2, 0).le(constant_grid(3, 2, 0))
