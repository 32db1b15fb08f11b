import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tensorfractal.errors import InvalidOrder, RankChainBroken
from tensorfractal.tensor_core import count_nonzeros, is_binary
from tensorfractal.tt_format import (
    TTTensor,
    contract,
    example_tt,
    multisponge_mode_sum,
    multisponge_tt,
    tt_mode_sums,
)

from reference_data import CARPET, MENGER, TT_EXAMPLE


def multisum(tt):
    """Entry-by-entry sum over all rank indices k_0..k_d."""
    out = np.zeros(tt.shape, dtype=np.int64)
    ranks = tt.ranks
    for x in itertools.product(*map(range, tt.shape)):
        total = 0
        for ks in itertools.product(*map(range, ranks)):
            term = 1
            for i, core in enumerate(tt.cores):
                term *= core[ks[i], x[i], ks[i + 1]]
            total += term
        out[x] = total
    return out


@st.composite
def random_tt(draw, max_order=4, max_rank=3, max_mode=3):
    d = draw(st.integers(1, max_order))
    ranks = [1] + [draw(st.integers(1, max_rank)) for _ in range(d - 1)] + [1]
    modes = [draw(st.integers(1, max_mode)) for _ in range(d)]
    cores = [
        draw(arrays(np.int64, (ranks[i], modes[i], ranks[i + 1]), elements=st.integers(0, 3)))
        for i in range(d)
    ]
    return TTTensor(cores)


def test_example_contraction():
    np.testing.assert_array_equal(contract(example_tt()), TT_EXAMPLE)


def test_single_core():
    tt = TTTensor([np.array([4, 0, 2]).reshape(1, 3, 1)])
    np.testing.assert_array_equal(contract(tt), [4, 0, 2])


@given(arrays(np.int64, (1, 2, 2), elements=st.integers(0, 3)),
       arrays(np.int64, (2, 2, 2), elements=st.integers(0, 3)),
       arrays(np.int64, (2, 2, 1), elements=st.integers(0, 3)))
def test_rank2_order3_against_triple_sum(a, b, c):
    tt = TTTensor([a, b, c])
    np.testing.assert_array_equal(contract(tt), multisum(tt))


@given(random_tt())
def test_contraction_consistency(tt):
    np.testing.assert_array_equal(contract(tt), multisum(tt))


@given(random_tt())
def test_mode_sums_equal_total(tt):
    assert tt_mode_sums(tt) == int(contract(tt).sum())


@pytest.mark.parametrize("cores", [
    [np.ones((2, 3, 1))],                       # r_0 != 1
    [np.ones((1, 3, 2))],                       # r_d != 1
    [np.ones((1, 3, 2)), np.ones((3, 3, 1))],   # 2 != 3
    [np.ones((1, 3))],                          # not order 3
    [],
])
def test_rank_chain_rejected(cores):
    with pytest.raises(RankChainBroken):
        TTTensor(cores)


def test_multisponge_low_orders():
    np.testing.assert_array_equal(contract(multisponge_tt(2)), CARPET)
    np.testing.assert_array_equal(contract(multisponge_tt(3)), MENGER)
    assert multisponge_tt(5).ranks == (1, 2, 2, 2, 2, 1)
    with pytest.raises(InvalidOrder):
        multisponge_tt(1)


def test_multisponge_4_count():
    assert count_nonzeros(contract(multisponge_tt(4))) == 48


def test_mode_sum_examples():
    assert tt_mode_sums(multisponge_tt(3)) == 20
    assert tt_mode_sums(multisponge_tt(2)) == 8


@pytest.mark.parametrize("d", range(2, 9))
def test_multisponge_binary_and_counts(d):
    T = contract(multisponge_tt(d))
    assert is_binary(T)
    assert tt_mode_sums(multisponge_tt(d)) == count_nonzeros(T)


@pytest.mark.parametrize("d", range(2, 17))
def test_mode_sum_closed_form(d):
    assert multisponge_mode_sum(d) == tt_mode_sums(multisponge_tt(d)) == (d + 2) * 2 ** (d - 1)
