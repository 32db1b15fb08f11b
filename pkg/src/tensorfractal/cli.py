"""Command-line interface: ``tensorfractal {list,generate,analyze,rgb,verify}``.

Data goes to stdout (or ``--output``); diagnostics go to stderr. Any error
yields a one-line message and exit status 1.
"""
import argparse
import sys
from contextlib import nullcontext

from . import analysis, fractal_gen, render_io
from .errors import FractalError
from .tensor_core import budget_override, count_nonzeros

PROG = "tensorfractal"


def _range(text):
    """Parse ``2..8`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fractal_args(p):
        p.add_argument("--fractal", required=True,
                       help="cantor, sierpinski, menger, cantor_dust, vicsek3d or multisponge")
        p.add_argument("-d", "--order", type=int, help="order d for multisponge")
        p.add_argument("-k", "--iterations", type=_nonneg, default=1)

    def budget_arg(p):
        p.add_argument("--budget", type=int,
                       help="element budget (default 2**28 or $TENSORFRACTAL_BUDGET)")

    sub.add_parser("list", help="catalog names and fractal dimensions")

    gen = sub.add_parser("generate", help="build an iterate and write it out")
    fractal_args(gen)
    gen.add_argument("--format", choices=("pbm", "ppm", "voxels", "text"), default="text")
    gen.add_argument("-o", "--output", help="output path (default stdout)")
    gen.add_argument("--binary", action="store_true", help="raw P4 instead of plain P1")
    gen.add_argument("--bar-height", type=int, default=1,
                     help="row count when rendering an order-1 iterate as PBM")
    budget_arg(gen)

    ana = sub.add_parser("analyze", help="report counts, dimensions and connectivity")
    fractal_args(ana)
    budget_arg(ana)

    rgb = sub.add_parser("rgb", help="render an RGB preset to PPM")
    rgb.add_argument("--preset", choices=sorted(render_io.PRESETS), required=True)
    rgb.add_argument("--depth", type=int, default=5)
    rgb.add_argument("-o", "--output", help="output path (default stdout)")
    rgb.add_argument("--binary", action="store_true", help="raw P6 instead of plain P3")
    budget_arg(rgb)

    ver = sub.add_parser("verify", help="check the multisponge theorems over a range of d")
    ver.add_argument("--multisponge-dims", type=_range, default=range(2, 9), metavar="LO..HI")
    budget_arg(ver)
    return parser


def _emit(data, output, stdout):
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    elif isinstance(data, bytes):
        if hasattr(stdout, "buffer"):
            stdout.flush()
            stdout.buffer.write(data)
        else:
            stdout.write(data.decode("latin-1"))
    else:
        stdout.write(data)


def _spec(args):
    return fractal_gen.catalog(args.fractal, d=args.order)


def cmd_list(args, out):
    for name in fractal_gen.CATALOG_NAMES[:-1]:
        spec = fractal_gen.catalog(name)
        out.write(f"{name}: order={spec.order} base={spec.base} nnz={spec.nnz} "
                  f"D_F={fractal_gen.fractal_dimension(spec):.4f}\n")
    out.write("multisponge(d): order=d base=3 nnz=(d+2)*2^(d-1) "
              "D_F=(ln(d+2)+(d-1)ln2)/ln3\n")


def cmd_generate(args, out):
    spec = _spec(args)
    T = fractal_gen.iterate(spec, args.iterations)
    if args.format == "text":
        _emit(render_io.format_text(T), args.output, out)
    elif args.format == "pbm":
        if T.ndim == 1:
            T = render_io.render_1d_strip(T, args.bar_height)
        elif T.ndim != 2:
            raise ValueError(f"pbm needs order <= 2, {spec.name} has order {T.ndim}")
        _emit(render_io.format_pbm(T, plain=not args.binary), args.output, out)
    elif args.format == "voxels":
        if T.ndim != 3:
            raise ValueError(f"voxels need order 3, {spec.name} has order {T.ndim}")
        _emit(render_io.format_voxels(T), args.output, out)
    else:
        raise ValueError("ppm output is for RGB images; use the rgb subcommand")


def analyze_report(spec, k):
    """Ordered ``(key, value)`` pairs describing the k-th iterate of ``spec``."""
    T = fractal_gen.iterate(spec, k)
    comps = analysis.connected_components(T)
    volumes = fractal_gen.volume_sequence(spec, k)
    box = analysis.box_count_dimension(T, spec.base) if k >= 1 else None
    return [
        ("fractal", spec.name),
        ("order", spec.order),
        ("base", spec.base),
        ("k", k),
        ("shape", "x".join(map(str, T.shape))),
        ("defining_nnz", spec.nnz),
        ("nnz", count_nonzeros(T)),
        ("fractal_dimension", f"{fractal_gen.fractal_dimension(spec):.10f}"),
        ("components", comps.component_count),
        ("connected", str(comps.is_connected).lower()),
        ("largest_component", comps.largest_component_size),
        ("volume", ", ".join(str(v) for v in volumes)),
        ("box_count_dimension", "n/a" if box is None else f"{box:.10f}"),
    ]


def cmd_analyze(args, out):
    for key, value in analyze_report(_spec(args), args.iterations):
        out.write(f"{key}: {value}\n")


def cmd_rgb(args, out):
    img = render_io.rgb_fractal(render_io.PRESETS[args.preset], args.depth)
    _emit(render_io.format_ppm(img, plain=not args.binary), args.output, out)


def cmd_verify(args, out):
    failed = total = 0
    for d in args.multisponge_dims:
        for check in analysis.multisponge_checks(d):
            total += 1
            failed += not check.passed
            status = "PASS" if check.passed else "FAIL"
            out.write(f"{status} d={d} {check.name} {check.detail}".rstrip() + "\n")
    out.write(f"{total - failed}/{total} checks passed\n")
    return 1 if failed else 0


COMMANDS = {
    "list": cmd_list,
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "rgb": cmd_rgb,
    "verify": cmd_verify,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    budget = getattr(args, "budget", None)
    try:
        with budget_override(budget) if budget is not None else nullcontext():
            status = COMMANDS[args.command](args, stdout)
    except (FractalError, ValueError, OSError) as exc:
        stderr.write(f"{PROG}: error: {exc}\n")
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
