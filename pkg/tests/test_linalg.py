import math
from fractions import Fraction

import numpy as np
import pytest

from libxostar.tools.math import linalg
from libxostar.tools.math.linalg import RatMatrix


def test_primitive_vector():
    assert linalg.primitive_vector([Fraction(1, 2), -1]) == (1, -2)
    assert linalg.primitive_vector([-2, 4, 0]) == (1, -2, 0)
    assert linalg.primitive_vector([0, 0]) == (0, 0)


def test_matrix():
    m = RatMatrix.from_rows([[1, 2], [3, Fraction(1, 2)]])
    assert m.shape == (2, 2)
    assert m.apply([2, 2]) == (6, 7)
    assert m.transpose().row(0) == (1, 3)
    with pytest.raises(ValueError):
        RatMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        RatMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        RatMatrix.from_rows([])


def test_rank_and_kernel():
    m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert linalg.rank(m) == 2
    kernel = linalg.kernel_basis(m)
    assert kernel == [(1, 1, -1)]
    assert m.apply(kernel[0]) == (0, 0, 0)
    assert linalg.kernel_basis(RatMatrix(1, 2, [1, 2])) == [(2, -1)]
    assert linalg.kernel_basis(RatMatrix(1, 2, [0, 0])) == [(1, 0), (0, 1)]


def test_hnf():
    assert linalg.hnf_rows([(2, 0), (0, 2), (1, 1)]) == [(1, 1), (0, 2)]
    assert linalg.hnf_rows([]) == []


def test_saturation():
    assert linalg.saturate([(2, 0), (0, 3)]) == [(1, 0), (0, 1)]
    assert linalg.hnf_row_basis([(2, 4)]) == [(1, 2)]
    assert linalg.hnf_row_basis([(1, 1, 0), (1, -1, 0)]) == [
        (1, 0, 0), (0, 1, 0)
    ]


def _random_rows(seed, nrows, ncols, dependent=False):
    rng = np.random.default_rng(seed)
    rows = rng.integers(-4, 5, size=(nrows, ncols)).tolist()
    if dependent and nrows >= 2:
        rows.append([2 * a - 3 * b for a, b in zip(rows[0], rows[1])])
    return [tuple(int(x) for x in r) for r in rows]


def _is_hermite(hnf):
    last = -1
    for i, row in enumerate(hnf):
        col = next(k for k, x in enumerate(row) if x != 0)
        if col <= last or row[col] <= 0:
            return False
        if any(not 0 <= hnf[j][col] < row[col] for j in range(i)):
            return False
        last = col
    return True


@pytest.mark.parametrize("seed", range(12))
def test_rank_nullity(seed):
    rows = _random_rows(seed, 3 + seed % 3, 5, dependent=seed % 2 == 0)
    m = RatMatrix.from_rows(rows)
    kernel = linalg.kernel_basis(m)
    assert linalg.rank(m) + len(kernel) == m.cols
    for vec in kernel:
        assert all(x == 0 for x in m.apply(vec))
        assert math.gcd(*vec) == 1
    if kernel:
        stacked = RatMatrix.from_rows(kernel)
        assert linalg.rank(stacked) == len(kernel)


@pytest.mark.parametrize("seed", range(12))
def test_hnf_spans_the_same_lattice(seed):
    rows = _random_rows(seed, 2 + seed % 4, 4, dependent=seed % 3 == 0)
    hnf = linalg.hnf_rows(rows)
    assert _is_hermite(hnf)
    assert linalg.hnf_rows(hnf) == hnf
    assert linalg.hnf_rows(rows + hnf) == hnf
    for row in rows:
        assert linalg.hnf_rows(hnf + [row]) == hnf
    assert len(hnf) == linalg.rank(RatMatrix.from_rows(rows))


def test_hnf_degenerate():
    assert linalg.hnf_rows([(0, 0), (0, 0)]) == []
    assert linalg.hnf_rows([(0, -3)]) == [(0, 3)]
    assert linalg.hnf_rows([(4, 6), (6, 9)]) == [(2, 3)]
    with pytest.raises(ValueError):
        linalg.hnf_rows([(1, 2), (1,)])


@pytest.mark.parametrize("seed", range(6))
def test_saturation_ignores_scaling(seed):
    rows = _random_rows(seed, 3, 4)
    saturated = linalg.hnf_row_basis(rows)
    assert linalg.hnf_row_basis([[3 * x for x in r] for r in rows]) \
        == saturated
    assert linalg.hnf_row_basis(saturated) == saturated
    for row in saturated:
        assert math.gcd(*row) == 1
