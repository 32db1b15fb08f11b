"""Render the standard construction steps and RGB presets into a directory.

    python scripts/render_gallery.py out/ --depth 5
"""
import argparse
from pathlib import Path

from tensorfractal import catalog, iterate
from tensorfractal.render_io import PRESETS, render_1d_strip, rgb_fractal, write_pbm, write_ppm, write_voxels


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("outdir", type=Path)
    parser.add_argument("--depth", type=int, default=5, help="RGB depth (5 gives 243/1024/3125 px)")
    parser.add_argument("--binary", action="store_true", help="write P4/P6 instead of plain text")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    plain = not args.binary

    for k in range(5):
        strip = render_1d_strip(iterate(catalog("cantor"), k), bar_height=max(1, 3**k // 9))
        write_pbm(strip, args.outdir / f"cantor_k{k}.pbm", plain)
        write_pbm(iterate(catalog("sierpinski"), k), args.outdir / f"sierpinski_k{k}.pbm", plain)
    for name in ("menger", "cantor_dust", "vicsek3d"):
        for k in range(1, 4):
            write_voxels(iterate(catalog(name), k), args.outdir / f"{name}_k{k}.voxels")
    for name, preset in PRESETS.items():
        write_ppm(rgb_fractal(preset, args.depth), args.outdir / f"rgb_{name}.ppm", plain)
    print(f"wrote {len(list(args.outdir.iterdir()))} files to {args.outdir}")


if __name__ == "__main__":
    main()
