"""Geometric fractals from generalized Kronecker products and tensor trains."""
from .analysis import (
    ComponentReport,
    box_count_dimension,
    box_counts,
    connected_components,
    multisponge_nnz,
    volume_vanishes,
)
from .fractal_gen import (
    FractalSpec,
    catalog,
    fractal_dimension,
    iterate,
    lazy_entries,
    lazy_entry,
    volume_sequence,
)
from .ifs_engine import AffineMap, CellSet, IfsSystem, builtin_ifs, hutchinson_step, iterate_ifs
from .tensor_core import (
    count_nonzeros,
    entry,
    kronecker_power,
    kronecker_product,
    slice_tensor,
    tensor_product,
)
from .tt_format import TTTensor, contract, multisponge_tt, tt_mode_sums

__version__ = "0.1.0"
