"""Block image codec built on the Lukasiewicz transform.

An 8-bit raster is normalized to exact fractions over 255, cut into
a x b blocks, and each block vector (length a*b) is pushed through a
coder of order c*d.  Every value the pipeline touches is a multiple
of 1/D with D = 255*(a*b - 1); that common denominator is closed
under the Lukasiewicz product, residuum, join and meet, which is why
a second compression pass reproduces the first one bit for bit.

Compression works per channel and per block, so planes and blocks
can be processed in any order (or in parallel) with identical output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import (BackendMismatch, BoundsViolation, DimMismatch,
                     DivisibilityViolation, SchemeMismatch)
from .luk import LUK, build_coder
from .transforms import FreeVector
from .values import UnitValue


class Image:
    """Raster of unit-interval samples, row-major and channel-planar."""

    __slots__ = ("width", "height", "channels", "samples", "raw")

    def __init__(self, width: int, height: int, channels: int, samples,
                 raw: bytes | None = None):
        if channels not in (1, 3):
            raise DimMismatch("channels must be 1 (gray) or 3 (rgb)")
        if width < 1 or height < 1:
            raise DimMismatch("image dimensions must be positive")
        self.width = width
        self.height = height
        self.channels = channels
        self.samples = tuple(samples)
        count = width * height * channels
        if len(self.samples) != count:
            raise DimMismatch(
                f"expected {count} samples, got {len(self.samples)}")
        if raw is not None and len(raw) != count:
            raise DimMismatch("raw plane size disagrees with dimensions")
        self.raw = raw

    def plane(self, channel: int):
        size = self.width * self.height
        return self.samples[channel * size:(channel + 1) * size]

    def __repr__(self):
        return (f"Image({self.width}x{self.height}, "
                f"channels={self.channels})")


def image_from_bytes(width: int, height: int, channels: int,
                     data: bytes) -> Image:
    """Normalize an 8-bit raster; every sample lands on k/255 exactly."""
    count = width * height * channels
    if len(data) != count:
        raise DimMismatch(f"expected {count} bytes, got {len(data)}")
    samples = tuple(UnitValue.exact(v, 255) for v in data)
    return Image(width, height, channels, samples, raw=bytes(data))


def _requant_byte(v: UnitValue) -> int:
    # round-half-up of 255*v, kept in integers for exact samples
    if v.is_exact:
        fr = v.as_fraction()
        return (510 * fr.numerator + fr.denominator) // (2 * fr.denominator)
    return min(255, math.floor(255.0 * v.as_float() + 0.5))


def image_to_bytes(img: Image) -> bytes:
    return bytes(_requant_byte(v) for v in img.samples)


def requantize(img: Image) -> Image:
    """Snap samples back to the 8-bit grid (round half up)."""
    data = image_to_bytes(img)
    return image_from_bytes(img.width, img.height, img.channels, data)


def split_channels(img: Image):
    size = img.width * img.height
    out = []
    for ch in range(img.channels):
        raw = None
        if img.raw is not None:
            raw = img.raw[ch * size:(ch + 1) * size]
        out.append(Image(img.width, img.height, 1, img.plane(ch), raw=raw))
    return tuple(out)


def merge_channels(planes) -> Image:
    planes = tuple(planes)
    if len(planes) not in (1, 3):
        raise DimMismatch("need 1 or 3 channel planes")
    w, h = planes[0].width, planes[0].height
    samples = []
    for p in planes:
        if (p.width, p.height, p.channels) != (w, h, 1):
            raise DimMismatch("channel planes disagree in shape")
        samples.extend(p.samples)
    raw = None
    if all(p.raw is not None for p in planes):
        raw = b"".join(p.raw for p in planes)
    return Image(w, h, len(planes), samples, raw=raw)


def scale_image(img: Image, c) -> Image:
    """Pointwise Lukasiewicz product with a constant (a darkening)."""
    cu = c if isinstance(c, UnitValue) else UnitValue.wrap(c)
    samples = tuple(LUK.mul(cu, s) for s in img.samples)
    return Image(img.width, img.height, img.channels, samples)


class BlockScheme:
    """Block geometry tying original dimensions to compressed ones.

    An m x n plane is cut into a dm x dn grid of a x b blocks; each
    block compresses to c x d, so the output plane is m_out x n_out
    with m_out = dm*c and n_out = dn*d.
    """

    __slots__ = ("m", "n", "m_out", "n_out", "dm", "dn", "a", "b", "c", "d")

    def __init__(self, m, n, m_out, n_out, dm, dn, a, b, c, d):
        self.m, self.n = m, n
        self.m_out, self.n_out = m_out, n_out
        self.dm, self.dn = dm, dn
        self.a, self.b, self.c, self.d = a, b, c, d

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.c * self.d, self.a * self.b)

    @property
    def denominator(self) -> int:
        return 255 * (self.a * self.b - 1)

    def __repr__(self):
        return (f"BlockScheme({self.m}x{self.n} -> {self.m_out}x"
                f"{self.n_out}, blocks {self.a}x{self.b} -> "
                f"{self.c}x{self.d})")

    def __eq__(self, other):
        if not isinstance(other, BlockScheme):
            return NotImplemented
        return all(getattr(self, f) == getattr(other, f)
                   for f in BlockScheme.__slots__)

    def __hash__(self):
        return hash(tuple(getattr(self, f) for f in BlockScheme.__slots__))


def build_scheme(m: int, n: int, m_out: int, n_out: int, dm: int, dn: int,
                 *, permissive: bool = False) -> BlockScheme:
    """Validate a block geometry.

    The strict bounds 1 < dm < m_out and 1 < dn < n_out reject some
    otherwise workable geometries (every scheme with d = 1 has
    dn = n_out); permissive=True relaxes exactly those two bounds.
    Divisibility and the compression requirement c*d < a*b always
    hold.
    """
    values = (m, n, m_out, n_out, dm, dn)
    if any(v < 1 for v in values):
        raise ValueError("scheme parameters must be positive")
    for div, whole, name in ((dm, m, "m"), (dm, m_out, "m_out"),
                             (dn, n, "n"), (dn, n_out, "n_out")):
        if whole % div:
            raise DivisibilityViolation(
                f"{name}={whole} is not a multiple of its grid step {div}")
    a, b = m // dm, n // dn
    c, d = m_out // dm, n_out // dn
    if not permissive:
        if not 1 < dm < m_out:
            raise BoundsViolation(f"need 1 < dm < m_out, got dm={dm}, "
                                  f"m_out={m_out}")
        if not 1 < dn < n_out:
            raise BoundsViolation(f"need 1 < dn < n_out, got dn={dn}, "
                                  f"n_out={n_out}")
    if c * d < 2:
        raise BoundsViolation("transform order c*d must be at least 2")
    if c * d >= a * b:
        raise BoundsViolation(
            f"code {c}x{d} does not compress block {a}x{b}")
    return BlockScheme(m, n, m_out, n_out, dm, dn, a, b, c, d)


class CompressedImage:
    """Compressed planes, exact at the scheme's common denominator."""

    __slots__ = ("scheme", "channels", "samples")

    def __init__(self, scheme: BlockScheme, channels: int, samples):
        if channels not in (1, 3):
            raise DimMismatch("channels must be 1 or 3")
        self.scheme = scheme
        self.channels = channels
        self.samples = tuple(samples)
        count = scheme.m_out * scheme.n_out * channels
        if len(self.samples) != count:
            raise DimMismatch(
                f"expected {count} samples, got {len(self.samples)}")
        den = scheme.denominator
        for v in self.samples:
            if not v.is_exact:
                raise BackendMismatch("compressed samples must be exact")
            if den % v.as_fraction().denominator:
                raise SchemeMismatch(
                    f"sample {v} is not a multiple of 1/{den}")

    @property
    def denominator(self) -> int:
        return self.scheme.denominator

    def plane(self, channel: int):
        size = self.scheme.m_out * self.scheme.n_out
        return self.samples[channel * size:(channel + 1) * size]

    def numerators(self, channel: int):
        den = self.denominator
        return tuple(int(v.as_fraction() * den) for v in self.plane(channel))

    def __repr__(self):
        return (f"CompressedImage({self.scheme.m_out}x{self.scheme.n_out}, "
                f"channels={self.channels}, den={self.denominator})")


def block_split(plane, scheme: BlockScheme):
    """Cut one m x n plane into the dm x dn grid of a x b blocks."""
    plane = tuple(plane)
    if len(plane) != scheme.m * scheme.n:
        raise DimMismatch("plane size disagrees with scheme")
    grid = []
    for bi in range(scheme.dm):
        row = []
        for bj in range(scheme.dn):
            block = tuple(
                tuple(plane[(bi * scheme.a + k) * scheme.n
                            + (bj * scheme.b + h)]
                      for h in range(scheme.b))
                for k in range(scheme.a))
            row.append(block)
        grid.append(row)
    return grid


def block_join(grid, scheme: BlockScheme):
    """Reassemble what block_split produced."""
    if len(grid) != scheme.dm or any(len(r) != scheme.dn for r in grid):
        raise DimMismatch("block grid shape disagrees with scheme")
    plane = [None] * (scheme.m * scheme.n)
    for bi in range(scheme.dm):
        for bj in range(scheme.dn):
            block = grid[bi][bj]
            for k in range(scheme.a):
                for h in range(scheme.b):
                    plane[(bi * scheme.a + k) * scheme.n
                          + (bj * scheme.b + h)] = block[k][h]
    return tuple(plane)


def vectorize(block) -> FreeVector:
    """Flatten an a x b block row-major into a vector over I_{ab}."""
    flat = tuple(v for row in block for v in row)
    return FreeVector(LUK, flat)


def devectorize(vec, rows: int, cols: int):
    values = vec.values if isinstance(vec, FreeVector) else tuple(vec)
    if len(values) != rows * cols:
        raise DimMismatch(f"vector of length {len(values)} is not "
                          f"{rows}x{cols}")
    return tuple(tuple(values[r * cols + s] for s in range(cols))
                 for r in range(rows))


@lru_cache(maxsize=None)
def _coder_cache(order: int, length: int):
    coder = build_coder(order, length)
    den = 255 * (length - 1)
    # kernel entries have denominators dividing length-1, so these
    # numerators are exact integers
    knum = tuple(tuple(int(v.as_fraction() * den) for v in row)
                 for row in coder.kernel.p)
    return coder, knum


def scheme_coder(scheme: BlockScheme):
    """The one coder shared by every block under this scheme."""
    return _coder_cache(scheme.c * scheme.d, scheme.a * scheme.b)[0]


def _plane_numerators(plane, den: int):
    out = []
    for v in plane:
        if not v.is_exact:
            raise BackendMismatch(
                "codec arithmetic needs exact samples; normalize first")
        fr = v.as_fraction()
        if den % fr.denominator:
            raise SchemeMismatch(
                f"sample denominator {fr.denominator} does not divide {den}")
        out.append(fr.numerator * (den // fr.denominator))
    return out


def _compress_plane(fnum, knum, s: BlockScheme):
    # per block: out[t] = join_x  f[x] (*) p[x][t], on numerators at
    # the common denominator, where x (*) y = max(0, x + y - den)
    den = s.denominator
    ab, cd = s.a * s.b, s.c * s.d
    out = [0] * (s.m_out * s.n_out)
    for bi in range(s.dm):
        for bj in range(s.dn):
            g = [fnum[(bi * s.a + k) * s.n + (bj * s.b + h)]
                 for k in range(s.a) for h in range(s.b)]
            for t in range(cd):
                best = 0
                for x in range(ab):
                    v = g[x] + knum[x][t] - den
                    if v > best:
                        best = v
                out[(bi * s.c + t // s.d) * s.n_out
                    + (bj * s.d + t % s.d)] = best
    return out


def _reconstruct_plane(gnum, knum, s: BlockScheme):
    # per block: out[x] = meet_t  p[x][t] -> g[t], with
    # x -> y = min(den, den - x + y) on numerators
    den = s.denominator
    ab, cd = s.a * s.b, s.c * s.d
    out = [0] * (s.m * s.n)
    for bi in range(s.dm):
        for bj in range(s.dn):
            g = [gnum[(bi * s.c + t // s.d) * s.n_out
                      + (bj * s.d + t % s.d)] for t in range(cd)]
            for x in range(ab):
                best = den
                row = knum[x]
                for t in range(cd):
                    v = den - row[t] + g[t]
                    if v < best:
                        best = v
                out[(bi * s.a + x // s.b) * s.n
                    + (bj * s.b + x % s.b)] = best
    return out


def compress(img: Image, scheme: BlockScheme) -> CompressedImage:
    """Transform every block vector down to order c*d, exactly."""
    if (img.height, img.width) != (scheme.m, scheme.n):
        raise SchemeMismatch(
            f"image {img.height}x{img.width} does not fit scheme "
            f"{scheme.m}x{scheme.n}")
    den = scheme.denominator
    _, knum = _coder_cache(scheme.c * scheme.d, scheme.a * scheme.b)
    nums = []
    for ch in range(img.channels):
        fnum = _plane_numerators(img.plane(ch), den)
        nums.extend(_compress_plane(fnum, knum, scheme))
    samples = tuple(UnitValue.exact(v, den) for v in nums)
    return CompressedImage(scheme, img.channels, samples)


def reconstruct(comp: CompressedImage, *, snap_to_bytes: bool = False) -> Image:
    """Invert the block transforms; exact unless snap_to_bytes is set."""
    s = comp.scheme
    den = s.denominator
    _, knum = _coder_cache(s.c * s.d, s.a * s.b)
    nums = []
    for ch in range(comp.channels):
        nums.extend(_reconstruct_plane(list(comp.numerators(ch)), knum, s))
    samples = tuple(UnitValue.exact(v, den) for v in nums)
    img = Image(s.n, s.m, comp.channels, samples)
    return requantize(img) if snap_to_bytes else img


def metrics(first: Image, second: Image) -> dict:
    """MSE / RMSE / PSNR on the 0..255 scale, pooled over channels."""
    shape = (first.width, first.height, first.channels)
    if shape != (second.width, second.height, second.channels):
        raise DimMismatch("metrics need images of identical shape")
    total = 0.0
    for u, v in zip(first.samples, second.samples):
        diff = 255.0 * (u.as_float() - v.as_float())
        total += diff * diff
    mse = total / len(first.samples)
    if mse == 0.0:
        return {"mse": 0.0, "rmse": 0.0, "psnr": math.inf}
    rmse = math.sqrt(mse)
    return {"mse": mse, "rmse": rmse,
            "psnr": 20.0 * math.log10(255.0 / rmse)}
