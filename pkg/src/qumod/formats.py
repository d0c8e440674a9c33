"""Artifact formats: PNM rasters, the LTB container, text tables.

The binary formats are byte-specified so round trips are exact.  The
text formats share one lexical convention: '#' starts a comment that
runs to end of line, blank lines are skipped, tokens are separated by
whitespace.
"""

import struct
from pathlib import Path

from .codec import CompressedImage, Image, build_scheme, image_from_bytes, \
    image_to_bytes
from .errors import BadMagic, InvalidAlgebra, MalformedHeader, \
    NumeratorOverflow, TruncatedData, UnsupportedMaxval, VersionUnsupported
from .ftransform import FuzzyPartition
from .modules import FiniteModule
from .morphology import StructuringElement
from .quantale import FiniteMonoid, FiniteQuantale, tnorm_carrier
from .tnorms import parse_tnorm
from .transforms import Kernel
from .values import UnitValue

_WS = b" \t\n\r\x0b\x0c"


def _header_ints(data: bytes):
    # width, height, maxval after the magic; '#' comments allowed
    pos, vals, n = 2, [], len(data)
    while len(vals) < 3:
        seen = False
        while pos < n and (data[pos] in _WS or data[pos] == 0x23):
            if data[pos] == 0x23:
                nl = data.find(b"\n", pos)
                if nl < 0:
                    raise MalformedHeader("comment runs past end of file")
                pos = nl + 1
            else:
                pos += 1
            seen = True
        if not seen:
            raise MalformedHeader("missing separator in header")
        start = pos
        while pos < n and 0x30 <= data[pos] <= 0x39:
            pos += 1
        if pos == start:
            raise MalformedHeader("expected an integer in the header")
        vals.append(int(data[start:pos]))
    if pos >= n or data[pos] not in _WS:
        raise MalformedHeader("missing whitespace after maxval")
    return vals, pos + 1


def _deinterleave(data: bytes, size: int) -> bytes:
    out = bytearray(len(data))
    for ch in range(3):
        out[ch * size:(ch + 1) * size] = data[ch::3]
    return bytes(out)


def _interleave(data: bytes, size: int) -> bytes:
    out = bytearray(len(data))
    for ch in range(3):
        out[ch::3] = data[ch * size:(ch + 1) * size]
    return bytes(out)


def pnm_decode(data: bytes) -> Image:
    """Parse a binary PGM (P5) or PPM (P6) raster, maxval 255 only."""
    magic = bytes(data[:2])
    if magic not in (b"P5", b"P6"):
        raise MalformedHeader("not a binary PGM/PPM file")
    channels = 1 if magic == b"P5" else 3
    (width, height, maxval), off = _header_ints(data)
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"bad raster size {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval}, only 255 is supported")
    need = width * height * channels
    payload = data[off:]
    if len(payload) < need:
        raise TruncatedData(
            f"raster needs {need} bytes, file carries {len(payload)}")
    if len(payload) > need:
        raise MalformedHeader(
            f"{len(payload) - need} trailing bytes after the raster")
    if channels == 3:
        payload = _deinterleave(payload, width * height)
    return image_from_bytes(width, height, channels, payload)


def pnm_encode(img: Image) -> bytes:
    """Serialize in the canonical single-whitespace header form."""
    magic = b"P5" if img.channels == 1 else b"P6"
    head = b"%s\n%d %d\n255\n" % (magic, img.width, img.height)
    data = img.raw if img.raw is not None else image_to_bytes(img)
    if img.channels == 3:
        data = _interleave(data, img.width * img.height)
    return head + data


def pnm_read(path) -> Image:
    return pnm_decode(Path(path).read_bytes())


def pnm_write(img: Image, path) -> None:
    Path(path).write_bytes(pnm_encode(img))


LTB_MAGIC = b"LTBQ"
_LTB_FIXED = struct.Struct("<7I")


def container_encode(comp: CompressedImage) -> bytes:
    s = comp.scheme
    parts = [LTB_MAGIC, bytes((1, comp.channels)),
             _LTB_FIXED.pack(s.m, s.n, s.a, s.b, s.c, s.d, s.denominator)]
    for ch in range(comp.channels):
        nums = comp.numerators(ch)
        parts.append(struct.pack("<%dI" % len(nums), *nums))
    return b"".join(parts)


def container_decode(data: bytes) -> CompressedImage:
    data = bytes(data)
    if data[:4] != LTB_MAGIC:
        raise BadMagic("not an LTB container")
    if len(data) < 6 + _LTB_FIXED.size:
        raise TruncatedData("header cut short")
    version, channels = data[4], data[5]
    if version != 1:
        raise VersionUnsupported(f"container version {version}")
    if channels not in (1, 3):
        raise MalformedHeader(f"channel count {channels}")
    m, n, a, b, c, d, den = _LTB_FIXED.unpack_from(data, 6)
    if min(m, n, a, b, c, d) < 1 or m % a or n % b:
        raise MalformedHeader("block geometry does not tile the image")
    if den != 255 * (a * b - 1):
        raise MalformedHeader(f"denominator {den} does not match the blocks")
    dm, dn = m // a, n // b
    scheme = build_scheme(m, n, dm * c, dn * d, dm, dn, permissive=True)
    count = channels * scheme.m_out * scheme.n_out
    body = data[6 + _LTB_FIXED.size:]
    if len(body) < 4 * count:
        raise TruncatedData(
            f"payload needs {4 * count} bytes, file carries {len(body)}")
    if len(body) > 4 * count:
        raise MalformedHeader("trailing bytes after the payload")
    nums = struct.unpack("<%dI" % count, body)
    for v in nums:
        if v > den:
            raise NumeratorOverflow(f"numerator {v} exceeds {den}")
    samples = tuple(UnitValue.exact(v, den) for v in nums)
    return CompressedImage(scheme, channels, samples)


def ltb_read(path) -> CompressedImage:
    return container_decode(Path(path).read_bytes())


def ltb_write(comp: CompressedImage, path) -> None:
    Path(path).write_bytes(container_encode(comp))


def _lines(text: str):
    out = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(body)
    return out


def _ints(tokens, what: str):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedHeader(f"bad integer in {what}: {tokens!r}") from None


def _unit(token: str, what: str) -> UnitValue:
    try:
        return UnitValue.parse(token)
    except (ValueError, ZeroDivisionError):
        raise MalformedHeader(f"bad value in {what}: {token!r}") from None


def _kind(name: str):
    try:
        return parse_tnorm(name)
    except ValueError:
        raise MalformedHeader(f"unknown t-norm {name!r}") from None


def _matrix(lines, start: int, count: int, width: int, what: str):
    if len(lines) < start + count:
        raise MalformedHeader(f"{what}: expected {count} rows, file ends "
                              f"after {len(lines) - start}")
    rows = []
    for i in range(count):
        toks = lines[start + i].split()
        if len(toks) != width:
            raise MalformedHeader(
                f"{what} row {i} has {len(toks)} entries, need {width}")
        rows.append(toks)
    return rows


def load_kernel(text: str) -> Kernel:
    """Header "kernel <nx> <ny> <t-norm>", then one row of ny values
    per x."""
    lines = _lines(text)
    if not lines:
        raise MalformedHeader("empty kernel file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "kernel":
        raise MalformedHeader("expected 'kernel <nx> <ny> <t-norm>' header")
    nx, ny = _ints(head[1:3], "kernel header")
    q = tnorm_carrier(_kind(head[3]))
    if len(lines) != 1 + nx:
        raise MalformedHeader(f"expected {nx} rows, got {len(lines) - 1}")
    rows = _matrix(lines, 1, nx, ny, "kernel")
    mat = [tuple(_unit(t, "kernel entry") for t in row) for row in rows]
    return Kernel(q, mat)


def load_se(text: str) -> StructuringElement:
    """Header "se <k>", then k lines "dx dy weight" (dx is the column
    delta, dy the row delta)."""
    lines = _lines(text)
    if not lines:
        raise MalformedHeader("empty structuring element file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "se":
        raise MalformedHeader("expected 'se <count>' header")
    (count,) = _ints(head[1:], "se header")
    if len(lines) != 1 + count:
        raise MalformedHeader(
            f"header promises {count} offsets, file has {len(lines) - 1}")
    entries = []
    for row in _matrix(lines, 1, count, 3, "se"):
        dx, dy = _ints(row[:2], "se offset")
        entries.append((dy, dx, _unit(row[2], "se weight")))
    try:
        return StructuringElement(entries)
    except ValueError as exc:
        raise MalformedHeader(str(exc)) from None


def load_partition(text: str) -> FuzzyPartition:
    """Header "partition <nodes> <functions> <t-norm>", then the
    sampled matrix, one node per row."""
    lines = _lines(text)
    if not lines:
        raise MalformedHeader("empty partition file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "partition":
        raise MalformedHeader(
            "expected 'partition <nodes> <functions> <t-norm>' header")
    nodes, order = _ints(head[1:3], "partition header")
    kind = _kind(head[3])
    if len(lines) != 1 + nodes:
        raise MalformedHeader(f"expected {nodes} rows, got {len(lines) - 1}")
    rows = _matrix(lines, 1, nodes, order, "partition")
    mat = [[_unit(t, "partition entry") for t in row] for row in rows]
    return FuzzyPartition(mat, kind)


def load_vector(text: str):
    """Whitespace-separated unit values, any line layout."""
    toks = " ".join(_lines(text)).split()
    if not toks:
        raise MalformedHeader("empty vector file")
    return tuple(_unit(t, "vector entry") for t in toks)


def _index_table(lines, start: int, count: int, size: int, what: str):
    rows = []
    for toks in _matrix(lines, start, count, size, what):
        row = _ints(toks, what)
        for v in row:
            if not 0 <= v < size:
                raise MalformedHeader(f"{what} references element {v}, "
                                      f"carrier has {size}")
        rows.append(row)
    return rows


def _tagged_index(lines, at: int, tag: str, size: int) -> int:
    if at >= len(lines):
        raise MalformedHeader(f"missing '{tag} <i>' line")
    toks = lines[at].split()
    if len(toks) != 2 or toks[0] != tag:
        raise MalformedHeader(f"expected '{tag} <i>', got {lines[at]!r}")
    (i,) = _ints(toks[1:], tag)
    if not 0 <= i < size:
        raise MalformedHeader(f"{tag} index {i} out of range")
    return i


def load_algebra(text: str):
    """Table-defined algebra.

    "quantale n" is followed by n join rows, n product rows, then
    "unit i" and "bottom j".  "monoid n" is followed by n product
    rows and "unit i".  Rows hold element indices.
    """
    lines = _lines(text)
    if not lines:
        raise MalformedHeader("empty algebra file")
    head = lines[0].split()
    if len(head) == 2 and head[0] == "quantale":
        (n,) = _ints(head[1:], "quantale header")
        if n < 1:
            raise MalformedHeader("quantale size must be positive")
        join = _index_table(lines, 1, n, n, "join")
        prod = _index_table(lines, 1 + n, n, n, "product")
        unit = _tagged_index(lines, 1 + 2 * n, "unit", n)
        bottom = _tagged_index(lines, 2 + 2 * n, "bottom", n)
        if len(lines) != 3 + 2 * n:
            raise MalformedHeader("trailing lines after 'bottom'")
        return FiniteQuantale(join, prod, unit, bottom)
    if len(head) == 2 and head[0] == "monoid":
        (n,) = _ints(head[1:], "monoid header")
        if n < 1:
            raise MalformedHeader("monoid size must be positive")
        table = _index_table(lines, 1, n, n, "product")
        unit = _tagged_index(lines, 1 + n, "unit", n)
        if len(lines) != 2 + n:
            raise MalformedHeader("trailing lines after 'unit'")
        return FiniteMonoid(table, unit)
    raise MalformedHeader("expected 'quantale <n>' or 'monoid <n>' header")


def load_module(path) -> FiniteModule:
    """Header "module <n> over <quantale-file>", then n join rows and
    |Q| action rows; the scalar file resolves relative to the module
    file.  The bottom is read off the join table."""
    path = Path(path)
    lines = _lines(path.read_text())
    if not lines:
        raise MalformedHeader("empty module file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "module" or head[2] != "over":
        raise MalformedHeader(
            "expected 'module <n> over <quantale-file>' header")
    (n,) = _ints(head[1:2], "module header")
    if n < 1:
        raise MalformedHeader("module size must be positive")
    q = load_algebra((path.parent / head[3]).read_text())
    if not isinstance(q, FiniteQuantale):
        raise MalformedHeader("module scalars must be a quantale table")
    join = _index_table(lines, 1, n, n, "join")
    act = _index_table(lines, 1 + n, q.size, n, "action")
    if len(lines) != 1 + n + q.size:
        raise MalformedHeader("trailing lines after the action table")
    bottom = next((b for b in range(n)
                   if all(join[b][i] == i for i in range(n))), None)
    if bottom is None:
        raise InvalidAlgebra("join table has no bottom element")
    return FiniteModule(q, join, bottom, act)


def load_index_row(text: str, size: int):
    """A single row of indices (a nucleus map or a class-of line)."""
    lines = _lines(text)
    if len(lines) != 1:
        raise MalformedHeader("expected a single index row")
    row = _ints(lines[0].split(), "index row")
    if len(row) != size:
        raise MalformedHeader(f"index row has {len(row)} entries, need {size}")
    return row
