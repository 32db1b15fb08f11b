"""Iterated function systems on a grid-aligned discretization.

Maps are pure scale-and-translate contractions ``f(x) = s x + o`` with a
common rational scale ``s = 1/b``. A cell set at level k lives on the grid of
``b**k`` cells per axis; when every offset is a multiple of ``s`` the
Hutchinson operator sends grid cells exactly onto grid cells, so the iteration
runs in integer arithmetic with no rounding.

Offset component i acts on tensor axis i.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import NonAlignedIfs, UnknownName
from .tensor_core import check_budget


@dataclass(frozen=True)
class AffineMap:
    scale: Fraction
    offset: tuple

    def __post_init__(self):
        scale = Fraction(self.scale)
        offset = tuple(Fraction(o) for o in self.offset)
        if not 0 < scale < 1:
            raise ValueError(f"scale {scale} is not a contraction")
        if any(not 0 <= o <= 1 - scale for o in offset):
            raise ValueError(f"offset {offset} maps outside the unit cube")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self):
        return len(self.offset)

    def __call__(self, x):
        return tuple(self.scale * Fraction(xi) + o for xi, o in zip(x, self.offset))


@dataclass(frozen=True)
class IfsSystem:
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        if len({m.dim for m in maps}) != 1:
            raise ValueError("all maps must share one dimension")
        object.__setattr__(self, "maps", maps)

    @property
    def dim(self):
        return self.maps[0].dim

    @property
    def base(self):
        """Grid refinement factor b = 1/scale; raises NonAlignedIfs if not grid-aligned."""
        scales = {m.scale for m in self.maps}
        if len(scales) != 1:
            raise NonAlignedIfs(f"maps use different scales {sorted(scales)}")
        (s,) = scales
        if s.numerator != 1:
            raise NonAlignedIfs(f"1/scale = {1 / s} is not an integer")
        return s.denominator

    def block_offsets(self):
        """Offsets in units of the scale, i.e. which level-1 block each map fills."""
        b = self.base
        blocks = []
        for m in self.maps:
            cells = tuple(o * b for o in m.offset)
            if any(c.denominator != 1 for c in cells):
                raise NonAlignedIfs(f"offset {m.offset} is not a multiple of 1/{b}")
            blocks.append(tuple(int(c) for c in cells))
        return blocks


@dataclass(frozen=True)
class CellSet:
    """Occupied cells (0-based multi-indices) of the level-k grid with ``base**k`` cells per axis."""

    level: int
    base: int
    dim: int
    occupied: frozenset

    def __post_init__(self):
        side = self.base**self.level
        occ = frozenset(tuple(int(i) for i in c) for c in self.occupied)
        for c in occ:
            if len(c) != self.dim or any(not 0 <= i < side for i in c):
                raise ValueError(f"cell {c} out of range for level {self.level}")
        object.__setattr__(self, "occupied", occ)

    @property
    def side(self):
        return self.base**self.level

    @classmethod
    def full(cls, base, dim, level=0):
        side = base**level
        return cls(level, base, dim, frozenset(product(range(side), repeat=dim)))

    def to_tensor(self, budget=None):
        check_budget((self.side,) * self.dim, budget)
        T = np.zeros((self.side,) * self.dim, dtype=np.int64)
        if self.occupied:
            T[tuple(np.array(sorted(self.occupied)).T)] = 1
        return T

    def coarsen(self):
        """The level-(k-1) cells containing an occupied cell."""
        if self.level == 0:
            raise ValueError("level 0 cannot be coarsened")
        return CellSet(
            self.level - 1, self.base, self.dim,
            frozenset(tuple(i // self.base for i in c) for c in self.occupied),
        )


def hutchinson_step(cells, ifs):
    """Apply the Hutchinson operator (union of all map images) to a cell set.

    A cell c at level k is the box ``[c/b**k, (c+1)/b**k]``; its image under
    ``x/b + o`` is the level-(k+1) cell ``o*b**(k+1) + c``.
    """
    b = ifs.base
    if cells.base != b or cells.dim != ifs.dim:
        raise ValueError("cell grid does not match the IFS")
    shift = b**cells.level
    new = set()
    for block in ifs.block_offsets():
        origin = tuple(o * shift for o in block)
        for c in cells.occupied:
            new.add(tuple(o + i for o, i in zip(origin, c)))
    return CellSet(cells.level + 1, b, cells.dim, frozenset(new))


def iterate_ifs(ifs, k, budget=None):
    """k Hutchinson steps from the full unit hypercube, as a binary tensor."""
    check_budget((ifs.base**k,) * ifs.dim, budget)
    cells = CellSet.full(ifs.base, ifs.dim)
    for _ in range(k):
        cells = hutchinson_step(cells, ifs)
    return cells.to_tensor(budget)


_THIRD = Fraction(1, 3)


def _maps(offsets):
    return IfsSystem(tuple(AffineMap(_THIRD, tuple(Fraction(o, 3) for o in off)) for off in offsets))


# offsets in thirds, listed in the conventional f_1, f_2, ... order
_BUILTIN_OFFSETS = {
    "cantor": [(0,), (2,)],
    "sierpinski": [
        (0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2),
    ],
    "menger": [
        (0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0), (2, 1, 0), (0, 2, 0), (1, 2, 0), (2, 2, 0),
        (0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 2, 1),
        (0, 0, 2), (1, 0, 2), (2, 0, 2), (0, 1, 2), (2, 1, 2), (0, 2, 2), (1, 2, 2), (2, 2, 2),
    ],
}


def builtin_ifs(name):
    try:
        return _maps(_BUILTIN_OFFSETS[name])
    except KeyError:
        raise UnknownName(
            f"no built-in IFS {name!r}; known: {', '.join(_BUILTIN_OFFSETS)}"
        ) from None
