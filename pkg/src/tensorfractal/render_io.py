"""RGB Kronecker fractals and netpbm / voxel / text serialization.

Image orientation: tensor axis 0 is the image row, growing downward, and
axis 1 the column. In PBM a 1 is a filled (black) pixel.
"""
import re
from dataclasses import dataclass
from fractions import Fraction as F
from pathlib import Path

import numpy as np

from .tensor_core import check_budget, kronecker_power, require_binary


@dataclass(frozen=True)
class RgbPreset:
    name: str
    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self):
        mats = [np.array(m, dtype=float) for m in (self.red, self.green, self.blue)]
        m = mats[0].shape[0]
        for mat in mats:
            if mat.shape != (m, m):
                raise ValueError("RGB defining matrices must be square and of equal size")
            if mat.min() < 0 or mat.max() > 1:
                raise ValueError("RGB intensities must lie in [0, 1]")
        for attr, mat in zip(("red", "green", "blue"), mats):
            mat.setflags(write=False)
            object.__setattr__(self, attr, mat)

    @property
    def size(self):
        return self.red.shape[0]

    @property
    def channels(self):
        return (self.red, self.green, self.blue)


def _q(rows):
    return [[float(F(x)) for x in row.split()] for row in rows]


PRESETS = {
    "a": RgbPreset(
        "a",
        _q(["1/2 1 1/2", "1 1/2 1", "1/2 1 1/2"]),
        _q(["3/4 1 3/4", "1 1 1", "3/4 1 3/4"]),
        _q(["1 3/4 1", "3/4 1 3/4", "1 3/4 1"]),
    ),
    "b": RgbPreset(
        "b",
        _q(["1/2 3/4 3/4 1/2", "3/4 1 1 3/4", "3/4 1 1 3/4", "1/2 3/4 3/4 1/2"]),
        _q(["1 1/2 1/2 1", "1/2 3/4 3/4 1/2", "1/2 3/4 3/4 1/2", "1 1/2 1/2 1"]),
        _q(["3/4 1 1 3/4", "1 1/2 1/2 1", "1 1/2 1/2 1", "3/4 1 1 3/4"]),
    ),
    "c": RgbPreset(
        "c",
        _q(["1/4 1/2 1 1/2 1/4", "1/2 1 1 1 1/2", "1 1 1/2 1 1",
            "1/2 1/2 1/4 1/2 1/2", "1/2 1/4 1/4 1/4 1/2"]),
        _q(["1/4 1/4 1/2 1/4 1/4", "1/4 1/2 1 1/2 1/4", "1/2 1 1 1 1/2",
            "1 1 1/2 1 1", "1/2 1/2 1/4 1/2 1/2"]),
        _q(["1/4 1/4 1/4 1/4 1/4", "1/4 1/4 1/2 1/4 1/4", "1/4 1/2 1 1/2 1/4",
            "1/2 1 1 1 1/2", "1 1 1/2 1 1"]),
    ),
}


@dataclass(frozen=True)
class RgbImage:
    pixels: np.ndarray  # (n, n, 3) floats in [0, 1]

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=float)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"expected (h, w, 3) pixels, got {px.shape}")
        if px.size and (px.min() < 0 or px.max() > 1):
            raise ValueError("channel values must lie in [0, 1]")
        object.__setattr__(self, "pixels", px)

    @property
    def side(self):
        return self.pixels.shape[0]


def rgb_fractal(preset, depth, budget=None):
    """Stack the depth-fold Kronecker powers of the three channel matrices."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = preset.size**depth
    check_budget((n, n, 3), budget)
    layers = [kronecker_power(M, depth, budget) for M in preset.channels]
    return RgbImage(np.stack(layers, axis=2))


def quantize(values, maxval=255):
    """Map [0, 1] to 0..maxval, rounding halves up."""
    return np.floor(np.asarray(values, dtype=float) * maxval + 0.5).astype(np.int64)


def render_1d_strip(T, bar_height):
    """Repeat a vector as ``bar_height`` identical rows."""
    T = np.asarray(T)
    if T.ndim != 1:
        raise ValueError("strip rendering needs an order-1 tensor")
    if bar_height < 1:
        raise ValueError("bar_height must be >= 1")
    return np.tile(T, (bar_height, 1))


def _chunks(tokens, per_line):
    for i in range(0, len(tokens), per_line):
        yield " ".join(tokens[i:i + per_line])


def format_pbm(T, plain=True):
    T = np.asarray(T)
    if T.ndim != 2:
        raise ValueError("PBM needs an order-2 tensor")
    require_binary(T)
    h, w = T.shape
    if not plain:
        packed = np.packbits(T.astype(np.uint8), axis=1)
        return f"P4\n{w} {h}\n".encode() + packed.tobytes()
    lines = ["P1", f"{w} {h}"]
    for row in T:
        # netpbm caps plain lines at 70 characters
        lines.extend(_chunks([str(int(v)) for v in row], 35))
    return ("\n".join(lines) + "\n").encode()


def format_ppm(img, plain=True, maxval=255):
    px = quantize(img.pixels, maxval)
    h, w, _ = px.shape
    if not plain:
        return f"P6\n{w} {h}\n{maxval}\n".encode() + px.astype(np.uint8).tobytes()
    lines = ["P3", f"{w} {h}", str(maxval)]
    for row in px:
        lines.extend(_chunks([str(int(v)) for v in row.ravel()], 15))
    return ("\n".join(lines) + "\n").encode()


def format_voxels(T):
    """One ``x y z`` line per occupied cell, 0-based, ascending lexicographic."""
    T = np.asarray(T)
    if T.ndim != 3:
        raise ValueError("voxel output needs an order-3 tensor")
    require_binary(T)
    cells = np.argwhere(T)  # row-major scan is already lexicographic
    lines = ["# voxels {} {} {} {}".format(*T.shape, len(cells))]
    lines.extend(f"{x} {y} {z}" for x, y, z in cells)
    return ("\n".join(lines) + "\n").encode()


def format_text(T):
    """``# shape ...`` header, then the entries with one line per last-axis fibre."""
    T = np.asarray(T)
    lines = ["# shape " + " ".join(map(str, T.shape))]
    for row in T.reshape(-1, T.shape[-1]):
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def _write(path, data):
    Path(path).write_bytes(data)


def write_pbm(T, path, plain=True):
    _write(path, format_pbm(T, plain))


def write_ppm(img, path, plain=True):
    _write(path, format_ppm(img, plain))


def write_voxels(T, path):
    _write(path, format_voxels(T))


def _source(src):
    if isinstance(src, (bytes, bytearray)):
        return bytes(src)
    return Path(src).read_bytes()


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header(data, count):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    pos, tokens = 0, []
    for _ in range(count):
        m = _TOKEN.match(data, pos)
        if not m:
            raise ValueError("truncated netpbm header")
        tokens.append(m.group(1))
        pos = m.end()
    # exactly one whitespace byte separates the header from raster data
    return tokens, pos + 1


def read_pbm(src):
    data = _source(src)
    (magic, w, h), pos = _header(data, 3)
    w, h = int(w), int(h)
    if magic == b"P1":
        bits = [c - 48 for c in data[pos:] if c in b"01"]
        if len(bits) != w * h:
            raise ValueError(f"expected {w * h} bits, found {len(bits)}")
        return np.array(bits, dtype=np.int64).reshape(h, w)
    if magic == b"P4":
        row_bytes = (w + 7) // 8
        raw = np.frombuffer(data[pos:pos + row_bytes * h], dtype=np.uint8).reshape(h, row_bytes)
        return np.unpackbits(raw, axis=1)[:, :w].astype(np.int64)
    raise ValueError(f"not a PBM file (magic {magic!r})")


def read_ppm(src):
    """Return ``(samples, maxval)`` with samples an ``(h, w, 3)`` integer array."""
    data = _source(src)
    (magic, w, h, maxval), pos = _header(data, 4)
    w, h, maxval = int(w), int(h), int(maxval)
    if magic == b"P3":
        samples = np.array(data[pos:].split(), dtype=np.int64)
    elif magic == b"P6":
        if maxval > 255:
            raise ValueError("16-bit P6 is not supported")
        samples = np.frombuffer(data[pos:pos + 3 * w * h], dtype=np.uint8).astype(np.int64)
    else:
        raise ValueError(f"not a PPM file (magic {magic!r})")
    if samples.size != 3 * w * h:
        raise ValueError(f"expected {3 * w * h} samples, found {samples.size}")
    return samples.reshape(h, w, 3), maxval


def read_voxels(src):
    lines = _source(src).decode().splitlines()
    head = lines[0].split()
    if head[:2] != ["#", "voxels"]:
        raise ValueError("missing '# voxels' header")
    nx, ny, nz, count = map(int, head[2:6])
    T = np.zeros((nx, ny, nz), dtype=np.int64)
    cells = [tuple(map(int, ln.split())) for ln in lines[1:] if ln.strip()]
    if len(cells) != count:
        raise ValueError(f"header says {count} voxels, found {len(cells)}")
    for c in cells:
        T[c] = 1
    return T


def parse_text(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines[0].startswith("# shape"):
        raise ValueError("missing '# shape' header")
    shape = tuple(int(s) for s in lines[0].split()[2:])
    values = [int(v) for ln in lines[1:] for v in ln.split()]
    return np.array(values, dtype=np.int64).reshape(shape)
