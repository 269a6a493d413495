import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from listwise import (
    InputError,
    MissingnessMatrix,
    complete_row_mask,
    complete_row_mask_subset,
    profile,
)


def grids(max_rows=70, max_cols=140):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.bool_, s))


def test_complete_rows_trivial():
    observed = MissingnessMatrix.from_bool(np.zeros((2, 2), bool))
    missing = MissingnessMatrix.from_bool(np.ones((2, 2), bool))
    assert complete_row_mask(observed).tolist() == [True, True]
    assert complete_row_mask(missing).tolist() == [False, False]


def test_complete_rows_hand_enumerated(small3x2):
    assert complete_row_mask(small3x2).tolist() == [False, True, False]


def test_subset_masks(small3x2):
    assert complete_row_mask_subset(small3x2, [0]).tolist() == [True, True, False]
    assert complete_row_mask_subset(small3x2, [1]).tolist() == [False, True, True]
    assert complete_row_mask_subset(small3x2, [0, 1]).tolist() == complete_row_mask(small3x2).tolist()


@pytest.mark.parametrize("cols", [[], [0, 0], [2], [-1]])
def test_subset_rejects_bad_columns(small3x2, cols):
    with pytest.raises(InputError):
        complete_row_mask_subset(small3x2, cols)


def test_profile_hand_count(small3x2):
    prof = profile(small3x2)
    assert prof.avg_missing_prop == pytest.approx(2 / 6)
    assert prof.max_missing_prop == pytest.approx(1 / 3)
    assert prof.n_fully_observed_cols == 0
    assert prof.n_complete_rows == 1


def test_profile_fully_observed():
    prof = profile(MissingnessMatrix.from_bool(np.zeros((4, 3), bool)))
    assert prof.avg_missing_prop == 0
    assert prof.n_fully_observed_cols == 3
    assert prof.n_complete_rows == 4


@pytest.mark.parametrize("shape", [(0, 3), (3, 0), (0, 0)])
def test_empty_matrix_rejected(shape):
    with pytest.raises(InputError):
        MissingnessMatrix.from_bool(np.zeros(shape, bool))


def test_padding_bits_must_be_zero():
    bits = np.array([[1 << 5]], dtype=np.uint64)
    with pytest.raises(InputError):
        MissingnessMatrix(bits, 1, 3)


def test_duplicate_names_rejected():
    with pytest.raises(InputError):
        MissingnessMatrix.from_bool(np.zeros((1, 2), bool), ["a", "a"])


def test_immutable(small3x2):
    with pytest.raises(ValueError):
        small3x2.bits[0, 0] = 1
    with pytest.raises(ValueError):
        small3x2.column_bits[0, 0] = 1


@given(grids())
def test_pack_round_trip(grid):
    m = MissingnessMatrix.from_bool(grid)
    assert np.array_equal(m.to_bool(), grid)
    i, j = grid.shape[0] - 1, grid.shape[1] - 1
    assert m.is_missing(i, j) == bool(grid[i, j])
    assert m.bits.shape == (grid.shape[0], (grid.shape[1] + 63) // 64)


@given(grids())
def test_complete_plus_incomplete_is_n(grid):
    m = MissingnessMatrix.from_bool(grid)
    mask = complete_row_mask(m)
    assert mask.sum() + grid.any(axis=1).sum() == m.n_rows
    assert mask.tolist() == (~grid.any(axis=1)).tolist()


@given(grids(), st.data())
def test_survival_antitone_in_columns(grid, data):
    m = MissingnessMatrix.from_bool(grid)
    big = data.draw(st.lists(st.integers(0, m.n_cols - 1), min_size=1, unique=True))
    small = data.draw(st.lists(st.sampled_from(big), min_size=1, unique=True))
    a = complete_row_mask_subset(m, small)
    b = complete_row_mask_subset(m, big)
    assert not np.any(b & ~a)


@given(grids(max_rows=30, max_cols=30), st.randoms(use_true_random=False))
def test_profile_permutation_invariant(grid, rnd):
    rows = list(range(grid.shape[0]))
    cols = list(range(grid.shape[1]))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    p1 = profile(MissingnessMatrix.from_bool(grid))
    p2 = profile(MissingnessMatrix.from_bool(grid[rows][:, cols]))
    assert p1.avg_missing_prop == pytest.approx(p2.avg_missing_prop)
    assert p1.max_missing_prop == p2.max_missing_prop
    assert p1.n_fully_observed_cols == p2.n_fully_observed_cols
    assert p1.n_complete_rows == p2.n_complete_rows


@given(grids(max_rows=20, max_cols=20))
def test_profile_invariants(grid):
    prof = profile(MissingnessMatrix.from_bool(grid))
    per_col = np.array(prof.per_col_missing_prop)
    assert prof.avg_missing_prop == pytest.approx(per_col.mean())
    assert prof.avg_missing_prop == pytest.approx(grid.sum() / grid.size)
    assert prof.max_missing_prop == per_col.max()
    assert prof.n_fully_observed_cols == int((per_col == 0).sum())
