"""Defining tensors, their Kronecker iterates, and derived quantities."""
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSpec, IndexOutOfRange, InvalidOrder, UnknownName
from .tensor_core import as_tensor, check_budget, count_nonzeros, kronecker_power, require_binary
from .tt_format import contract, multisponge_tt

_CARPET = [[1, 1, 1], [1, 0, 1], [1, 1, 1]]
_CORNERS = [[1, 0, 1], [0, 0, 0], [1, 0, 1]]
_CENTER = [[0, 0, 0], [0, 1, 0], [0, 0, 0]]
_PLUS = [[0, 1, 0], [1, 1, 1], [0, 1, 0]]
_ZERO = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]


def _layers(*mats):
    # layers are T[:, :, z], matching the (T_::1 | T_::2 | T_::3) display
    return np.stack([np.array(m) for m in mats], axis=2)


@dataclass(frozen=True)
class FractalSpec:
    """A named binary defining tensor with every dimension equal to ``base``."""

    name: str
    defining: np.ndarray

    def __post_init__(self):
        T = as_tensor(self.defining)
        require_binary(T)
        if len(set(T.shape)) != 1:
            raise ValueError(f"{self.name}: all dims must be equal, got {T.shape}")
        if not T.any():
            raise ValueError(f"{self.name}: defining tensor has no nonzero entry")
        T.setflags(write=False)
        object.__setattr__(self, "defining", T)

    @property
    def base(self):
        return self.defining.shape[0]

    @property
    def order(self):
        return self.defining.ndim

    @property
    def nnz(self):
        return count_nonzeros(self.defining)


def _multisponge(d):
    T = contract(multisponge_tt(d))
    return FractalSpec(f"multisponge({d})", T)


_BUILTIN = {
    "cantor": lambda: np.array([1, 0, 1]),
    "sierpinski": lambda: np.array(_CARPET),
    "menger": lambda: _layers(_CARPET, _CORNERS, _CARPET),
    "cantor_dust": lambda: _layers(_CORNERS, _ZERO, _CORNERS),
    "vicsek3d": lambda: _layers(_CENTER, _PLUS, _CENTER),
}

_MULTISPONGE_RE = re.compile(r"^multisponge\((\d+)\)$")

CATALOG_NAMES = tuple(_BUILTIN) + ("multisponge(d)",)


def catalog(name, d=None):
    """Look up a fractal by name.

    ``multisponge`` takes its order either inline, ``"multisponge(4)"``, or
    through ``d``.
    """
    if name in _BUILTIN:
        return FractalSpec(name, _BUILTIN[name]())
    m = _MULTISPONGE_RE.match(name)
    if m:
        return _multisponge(int(m.group(1)))
    if name == "multisponge":
        if d is None:
            raise InvalidOrder("multisponge needs an order d >= 2")
        return _multisponge(d)
    raise UnknownName(f"unknown fractal {name!r}; known: {', '.join(CATALOG_NAMES)}")


def iterate(spec, k, budget=None):
    """The k-th construction step: the k-fold Kronecker power of the defining tensor."""
    return kronecker_power(spec.defining, k, budget)


def _digits(value, base, k):
    out = []
    for _ in range(k):
        value, r = divmod(value, base)
        out.append(r)
    return out[::-1]


def lazy_entry(spec, k, idx):
    """Entry ``iterate(spec, k)[idx]`` without materializing the iterate.

    Each coordinate is written as k base-n digits, most significant first;
    digit j of every axis indexes the j-th (coarsest first) Kronecker factor.
    Uses Python ints, so any k works.
    """
    n, T = spec.base, spec.defining
    idx = tuple(int(i) for i in idx)
    side = n**k
    if len(idx) != spec.order or any(not 0 <= i < side for i in idx):
        raise IndexOutOfRange(f"index {idx} out of range for grid side {side}, order {spec.order}")
    per_axis = [_digits(i, n, k) for i in idx]
    for level in zip(*per_axis):
        if T[level] == 0:
            return 0
    return 1


def lazy_entries(spec, k, indices):
    """Vectorized :func:`lazy_entry` over an ``(N, d)`` array of indices (needs n**k < 2**63)."""
    n, T = spec.base, spec.defining
    side = n**k
    if side >= 2**63:
        raise OverflowError("grid side too large for int64; use lazy_entry")
    idx = np.asarray(indices, dtype=np.int64)
    if idx.ndim != 2 or idx.shape[1] != spec.order:
        raise ValueError(f"indices must have shape (N, {spec.order})")
    if idx.size and (idx.min() < 0 or idx.max() >= side):
        raise IndexOutOfRange(f"indices out of range for grid side {side}")
    out = np.ones(len(idx), dtype=np.int64)
    place = side
    for _ in range(k):
        place //= n
        digits = (idx // place) % n
        out &= T[tuple(digits.T)]
    return out


def fractal_dimension(spec):
    """``ln(m) / ln(n)`` with m the number of ones in the defining tensor."""
    if spec.base == 1:
        raise DegenerateSpec("base 1 has no scaling; dimension undefined")
    return math.log(spec.nnz) / math.log(spec.base)


def volume_sequence(spec, k):
    """Exact volumes ``V_j = (m / n**d)**j`` for j = 0..k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    ratio = Fraction(spec.nnz, spec.base**spec.order)
    return [ratio**j for j in range(k + 1)]


def iterate_shape(spec, k):
    return (spec.base**k,) * spec.order


def check_iterate_budget(spec, k, budget=None):
    return check_budget(iterate_shape(spec, k), budget)
