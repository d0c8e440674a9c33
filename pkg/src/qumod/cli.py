"""Command-line front end.

Every subcommand is deterministic for fixed inputs and flags.  Exit
codes: 0 on success, 1 on validation failure, 2 on I/O error.
"""

import argparse
import math
import sys
from pathlib import Path

from . import codec, formats, morphology
from .errors import QumodError, SchemeMismatch
from .ftransform import f_transform
from .quantale import FiniteQuantale, check_quantale_laws, powerset_quantale, \
    tnorm_carrier
from .tnorms import parse_tnorm, requires_float
from .transforms import classify_coder
from .values import UnitValue


class _Parser(argparse.ArgumentParser):
    # all bad invocations are validation failures; 2 stays reserved
    # for I/O errors
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _pair(text: str):
    parts = text.lower().split("x")
    try:
        a, b = (int(p) for p in parts)
        if a < 1 or b < 1:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected ROWSxCOLS, got {text!r}") from None
    return a, b


def _tnorm(name: str):
    try:
        return parse_tnorm(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _scheme_for(img: codec.Image, block, code) -> codec.BlockScheme:
    (a, b), (c, d) = block, code
    if img.height % a or img.width % b:
        raise SchemeMismatch(f"{img.width}x{img.height} image does not "
                             f"tile into {a}x{b} blocks")
    dm, dn = img.height // a, img.width // b
    return codec.build_scheme(img.height, img.width, dm * c, dn * d,
                              dm, dn, permissive=True)


def _fmt6(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.6g}"


def _metrics_line(values) -> str:
    return (f"RMSE={_fmt6(values['rmse'])} PSNR={_fmt6(values['psnr'])} "
            f"MSE={_fmt6(values['mse'])}")


def _preview_image(comp: codec.CompressedImage) -> codec.Image:
    s = comp.scheme
    return codec.requantize(
        codec.Image(s.n_out, s.m_out, comp.channels, comp.samples))


def cmd_compress(a) -> int:
    img = formats.pnm_read(a.input)
    comp = codec.compress(img, _scheme_for(img, a.block, a.code))
    formats.ltb_write(comp, a.output)
    if a.preview:
        formats.pnm_write(_preview_image(comp), a.preview)
    return 0


def cmd_reconstruct(a) -> int:
    comp = formats.ltb_read(a.input)
    formats.pnm_write(codec.reconstruct(comp, snap_to_bytes=True), a.output)
    return 0


def cmd_roundtrip(a) -> int:
    img = formats.pnm_read(a.input)
    scheme = _scheme_for(img, a.block, a.code)
    comp = codec.compress(img, scheme)
    # the exact reconstruction is the canonical artifact; snapping to
    # bytes is only for the printed metrics
    exact = codec.reconstruct(comp)
    print(_metrics_line(codec.metrics(img, codec.requantize(exact))))
    lossless = codec.compress(exact, scheme).samples == comp.samples
    print(f"LOSSLESS={'true' if lossless else 'false'}")
    return 0 if lossless else 1


def cmd_metrics(a) -> int:
    x, y = formats.pnm_read(a.first), formats.pnm_read(a.second)
    print(_metrics_line(codec.metrics(x, y)))
    return 0


def _as_float_plane(plane):
    return tuple(UnitValue.from_float(v.as_float()) for v in plane)


def _as_float_se(se: morphology.StructuringElement):
    return morphology.StructuringElement(
        (dr, dc, UnitValue.from_float(w.as_float()))
        for (dr, dc), w in se.offsets)


def cmd_morph(a) -> int:
    img = formats.pnm_read(a.input)
    se = formats.load_se(Path(a.se).read_text())
    # rasters are exact by construction; float-only t-norms need the
    # whole pipeline lifted off the exact backend
    if requires_float(a.tnorm):
        se = _as_float_se(se)
    planes = []
    for ch in range(img.channels):
        plane = img.plane(ch)
        if requires_float(a.tnorm):
            plane = _as_float_plane(plane)
        grid = morphology.Grid(img.width, img.height, plane, a.boundary)
        if a.op == "dilate":
            out = morphology.dilate(grid, se, a.tnorm)
        elif a.op == "erode":
            out = morphology.erode(grid, se, a.tnorm)
        else:
            out = morphology.composite(grid, se, a.tnorm, a.op)
        planes.extend(out.samples)
    result = codec.Image(img.width, img.height, img.channels, tuple(planes))
    formats.pnm_write(codec.requantize(result), a.output)
    return 0


def _fmt_value(v: UnitValue) -> str:
    if v.is_exact:
        return str(v.as_fraction())
    return repr(v.as_float())


def cmd_ftransform(a) -> int:
    part = formats.load_partition(Path(a.partition).read_text())
    f = formats.load_vector(Path(a.input).read_text())
    out = f_transform(part, f, a.direction)
    line = " ".join(_fmt_value(v) for v in out)
    if a.output:
        Path(a.output).write_text(line + "\n")
    else:
        print(line)
    return 0


def cmd_classify_coder(a) -> int:
    kernel = formats.load_kernel(Path(a.kernel).read_text())
    cls = classify_coder(kernel)
    for name in ("coder", "normal", "strong", "orthogonal", "orthonormal"):
        flag = getattr(cls, "is_" + name)
        print(f"{name}={'true' if flag else 'false'}")
    if cls.witness is None:
        print("witness=-")
    else:
        print("witness=" + " ".join(str(x) for x in cls.witness))
    return 0


def cmd_laws(a) -> int:
    if a.algebra:
        alg = formats.load_algebra(Path(a.algebra).read_text())
        if not isinstance(alg, FiniteQuantale):
            # monoid tables are checked through their powerset quantale
            alg = powerset_quantale(alg)
        report = check_quantale_laws(alg)
    else:
        report = check_quantale_laws(tnorm_carrier(a.tnorm),
                                     grid_den=a.grid_den)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qumod")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("compress", help="image to .ltb container")
    p.add_argument("--block", type=_pair, required=True, metavar="AxB")
    p.add_argument("--code", type=_pair, required=True, metavar="CxD")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--preview", help="also write a requantized preview")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("reconstruct", help=".ltb container to image")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("roundtrip",
                       help="compress, reconstruct, report fidelity")
    p.add_argument("--block", type=_pair, required=True, metavar="AxB")
    p.add_argument("--code", type=_pair, required=True, metavar="CxD")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("metrics", help="compare two images")
    p.add_argument("-a", "--first", required=True)
    p.add_argument("-b", "--second", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("morph", help="weighted morphological operator")
    p.add_argument("--op", required=True,
                   choices=("dilate", "erode", "open", "close", "outline"))
    p.add_argument("--se", required=True, help="structuring element file")
    p.add_argument("--tnorm", type=_tnorm, default=parse_tnorm("godel"))
    p.add_argument("--boundary", choices=(morphology.TORUS, morphology.PAD),
                   default=morphology.TORUS)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_morph)

    p = sub.add_parser("ftransform", help="apply a direct fuzzy transform")
    p.add_argument("--partition", required=True)
    p.add_argument("--direction", required=True, choices=("up", "down"))
    p.add_argument("-i", "--input", required=True,
                   help="function samples, one value per node")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ftransform)

    p = sub.add_parser("classify-coder", help="kernel classification flags")
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=cmd_classify_coder)

    p = sub.add_parser("laws", help="run a quantale law suite")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--algebra", help="table file (quantale or monoid)")
    group.add_argument("--tnorm", type=_tnorm)
    p.add_argument("--grid-den", type=int, default=100)
    p.set_defaults(func=cmd_laws)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QumodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
