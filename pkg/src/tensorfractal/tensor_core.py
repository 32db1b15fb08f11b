"""Dense tensors, tensor products and generalized Kronecker products.

Tensors are plain ``numpy.ndarray`` objects stored row-major (last index
fastest). Fractal tensors use ``int64`` entries; the product routines are
dtype-agnostic so the RGB code can reuse them on float matrices.

Indices are 0-based throughout the API. Human-facing output uses 1-based
indices; :func:`to_one_based` / :func:`from_one_based` are the only place that
conversion happens.
"""
import math
import os
from contextlib import contextmanager
from contextvars import ContextVar

import numpy as np

from .errors import BudgetExceeded, IndexOutOfRange, NotBinary, OrderMismatch

DEFAULT_BUDGET = 2**28
BUDGET_ENV = "TENSORFRACTAL_BUDGET"

_budget_override = ContextVar("budget_override", default=None)


def default_budget():
    """Element budget in effect: override, then environment, then 2**28."""
    override = _budget_override.get()
    if override is not None:
        return override
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


@contextmanager
def budget_override(n_elements):
    token = _budget_override.set(int(n_elements))
    try:
        yield
    finally:
        _budget_override.reset(token)


def check_budget(shape, budget=None):
    """Return the element count of ``shape`` or raise BudgetExceeded."""
    shape = tuple(int(s) for s in shape)
    if not shape or any(s < 1 for s in shape):
        raise ValueError(f"invalid shape {shape}: need order >= 1 and dims >= 1")
    limit = default_budget() if budget is None else budget
    count = math.prod(shape)
    if count > limit:
        raise BudgetExceeded(
            f"shape {'x'.join(map(str, shape))} has {count} elements, "
            f"budget is {limit}"
        )
    return count


def as_tensor(data, dtype=np.int64):
    """Coerce ``data`` to an integer tensor of order >= 1 with nonnegative entries."""
    arr = np.array(data, dtype=dtype, ndmin=1)
    if 0 in arr.shape:
        raise ValueError(f"invalid shape {arr.shape}: every dim must be >= 1")
    if np.issubdtype(arr.dtype, np.integer) and arr.size and arr.min() < 0:
        raise ValueError("tensor entries must be nonnegative")
    return arr


def ones(order):
    """The all-dims-1 tensor with value 1; neutral element of the Kronecker product."""
    return np.ones((1,) * order, dtype=np.int64)


def is_binary(T):
    T = np.asarray(T)
    return bool(np.all((T == 0) | (T == 1)))


def require_binary(T):
    if not is_binary(T):
        raise NotBinary("tensor has entries outside {0, 1}")


def tensor_product(T, U, budget=None):
    """Outer product: ``(T (x) U)[x, y] = T[x] * U[y]``, order d + e."""
    T, U = np.asarray(T), np.asarray(U)
    check_budget(T.shape + U.shape, budget)
    return T.reshape(T.shape + (1,) * U.ndim) * U.reshape((1,) * T.ndim + U.shape)


def kronecker_product(T, U, budget=None):
    """Generalized Kronecker product of two tensors of equal order.

    The result has shape ``(m_1 n_1, ..., m_d n_d)`` and satisfies
    ``R[n_1 x_1 + y_1, ..., n_d x_d + y_d] = T[x] * U[y]``: the left factor
    selects the coarse block, the right factor the position inside it.
    """
    T, U = np.asarray(T), np.asarray(U)
    if T.ndim != U.ndim:
        raise OrderMismatch(f"orders differ: {T.ndim} vs {U.ndim}")
    out_shape = tuple(m * n for m, n in zip(T.shape, U.shape))
    check_budget(out_shape, budget)
    # interleave axes as (m_1, n_1, m_2, n_2, ...) so a reshape merges each pair
    t = T.reshape(tuple(x for m in T.shape for x in (m, 1)))
    u = U.reshape(tuple(x for n in U.shape for x in (1, n)))
    return (t * u).reshape(out_shape)


def kronecker_power(T, k, budget=None):
    """``T`` Kronecker-multiplied with itself ``k`` times; ``k = 0`` gives :func:`ones`."""
    T = np.asarray(T)
    if k < 0:
        raise ValueError("k must be nonnegative")
    check_budget(tuple(n**k for n in T.shape), budget)
    result = np.ones((1,) * T.ndim, dtype=T.dtype)
    for _ in range(k):
        result = kronecker_product(result, T, budget)
    return result


def count_nonzeros(T):
    require_binary(T)
    return int(np.count_nonzero(T))


def _check_index(shape, idx):
    idx = tuple(int(i) for i in idx)
    if len(idx) != len(shape):
        raise IndexOutOfRange(f"index {idx} has {len(idx)} coords, tensor order is {len(shape)}")
    for i, n in zip(idx, shape):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"index {idx} out of range for shape {tuple(shape)}")
    return idx


def entry(T, idx):
    T = np.asarray(T)
    return T[_check_index(T.shape, idx)].item()


def slice_tensor(T, fixed):
    """Fix some coordinates (``{axis: index}``, 0-based); free modes keep their order.

    Fixing every coordinate leaves an order-0 array; callers wanting a scalar
    should use :func:`entry`.
    """
    T = np.asarray(T)
    key = [slice(None)] * T.ndim
    for axis, i in fixed.items():
        if not 0 <= axis < T.ndim:
            raise IndexOutOfRange(f"axis {axis} out of range for order {T.ndim}")
        if not 0 <= i < T.shape[axis]:
            raise IndexOutOfRange(f"index {i} out of range on axis {axis} (size {T.shape[axis]})")
        key[axis] = i
    return T[tuple(key)]


def flat_index(shape, idx):
    """Row-major offset of a multi-index."""
    idx = _check_index(shape, idx)
    offset = 0
    for i, n in zip(idx, shape):
        offset = offset * n + i
    return offset


def multi_index(shape, offset):
    """Inverse of :func:`flat_index`."""
    total = math.prod(shape)
    if not 0 <= offset < total:
        raise IndexOutOfRange(f"offset {offset} out of range for {total} elements")
    coords = []
    for n in reversed(shape):
        offset, r = divmod(offset, n)
        coords.append(r)
    return tuple(reversed(coords))


def to_one_based(idx):
    return tuple(int(i) + 1 for i in idx)


def from_one_based(idx):
    return tuple(int(i) - 1 for i in idx)
