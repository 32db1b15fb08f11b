"""Tensor-train (TT) representation and the multisponge construction.

A TT of order d is a chain of order-3 integer cores ``G_i`` of shape
``(r_{i-1}, n_i, r_i)`` with ``r_0 = r_d = 1``. In the block notation used
here, ``G_i[a, :, b]`` is the mode vector sitting at row ``a``, column ``b``
of the core's "matrix of vectors".
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidOrder, RankChainBroken
from .tensor_core import check_budget


@dataclass(frozen=True)
class TTTensor:
    cores: tuple

    def __post_init__(self):
        cores = tuple(np.asarray(c, dtype=np.int64) for c in self.cores)
        if not cores:
            raise RankChainBroken("a TT needs at least one core")
        for i, c in enumerate(cores):
            if c.ndim != 3 or 0 in c.shape:
                raise RankChainBroken(f"core {i} has shape {c.shape}, expected (r, n, r')")
        if cores[0].shape[0] != 1 or cores[-1].shape[2] != 1:
            raise RankChainBroken(
                f"boundary ranks must be 1, got r_0={cores[0].shape[0]}, "
                f"r_d={cores[-1].shape[2]}"
            )
        for i, (a, b) in enumerate(zip(cores, cores[1:])):
            if a.shape[2] != b.shape[0]:
                raise RankChainBroken(
                    f"core {i} right rank {a.shape[2]} != core {i + 1} left rank {b.shape[0]}"
                )
        object.__setattr__(self, "cores", cores)

    @property
    def order(self):
        return len(self.cores)

    @property
    def shape(self):
        return tuple(c.shape[1] for c in self.cores)

    @property
    def ranks(self):
        return (1,) + tuple(c.shape[2] for c in self.cores)


def core_from_blocks(blocks):
    """Build a core from its block form: ``blocks[a][b]`` is the mode vector at (a, b)."""
    arr = np.array(blocks, dtype=np.int64)  # (r_left, r_right, n)
    return arr.transpose(0, 2, 1)


def contract(tt, budget=None):
    """Contract all cores into the dense tensor of shape ``tt.shape``."""
    check_budget(tt.shape, budget)
    # running result kept as (prod of modes so far, current right rank)
    acc = tt.cores[0].reshape(tt.cores[0].shape[1], -1)
    for core in tt.cores[1:]:
        r, n, s = core.shape
        acc = (acc @ core.reshape(r, n * s)).reshape(-1, s)
    return acc.reshape(tt.shape)


def multisponge_tt(d):
    """TT cores of the d-dimensional multisponge defining tensor (d >= 2).

    d = 2 contracts to the Sierpinski carpet, d = 3 to the Menger sponge.
    """
    if d < 2:
        raise InvalidOrder(f"multisponge needs d >= 2, got {d}")
    first = core_from_blocks([[[1, 1, 1], [1, 0, 1]]])
    middle = core_from_blocks([[[1, 0, 1], [0, 0, 0]],
                               [[0, 1, 0], [1, 0, 1]]])
    last = core_from_blocks([[[1, 0, 1]],
                             [[0, 1, 0]]])
    return TTTensor((first,) + (middle,) * (d - 2) + (last,))


def example_tt():
    """The rank-(1, 2, 2, 1) order-3 example whose contraction is a 3x3x3 checkerboard of corners."""
    first = core_from_blocks([[[1, 0, 1], [0, 1, 0]]])
    middle = core_from_blocks([[[1, 0, 1], [0, 0, 0]],
                               [[0, 0, 0], [0, 1, 0]]])
    last = core_from_blocks([[[1, 0, 1]],
                             [[0, 1, 0]]])
    return TTTensor((first, middle, last))


def mode_sum_matrices(tt):
    """Each core summed over its mode index, as exact Python-int matrices."""
    return [core.sum(axis=1).astype(object) for core in tt.cores]


def tt_mode_sums(tt):
    """Sum of all entries of the contracted tensor, via a chain of small matrix products.

    Equals the non-zero count when the contracted tensor is binary. Integer
    arithmetic is exact (object dtype), so large d never overflows.
    """
    mats = mode_sum_matrices(tt)
    acc = mats[0]
    for m in mats[1:]:
        acc = acc.dot(m)
    return int(acc[0, 0])


def multisponge_mode_sum(d):
    """Mode-sum count of ``multisponge_tt(d)`` using an integer matrix power for the middle cores."""
    if d < 2:
        raise InvalidOrder(f"multisponge needs d >= 2, got {d}")
    first, middle, last = mode_sum_matrices(multisponge_tt(3))
    power = np.identity(2, dtype=object)
    for _ in range(d - 2):
        power = power.dot(middle)
    return int(first.dot(power).dot(last)[0, 0])
