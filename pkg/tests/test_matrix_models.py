from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from hssrigid.matrix_models import (BlockGenerator, TangentMatrix, block_span_lemma_check, condition_c_check,
                                    degenerate_control_rank, disjoint_block_sums, h_matrix, lambda_block_generators,
                                    lambda_rep_rank, veronese_graph_rank, wedge_basis)
from hssrigid.report import CATALOG_ERROR, FAIL, PASS


def _j(r):
    ent = {}
    for k in range(r):
        ent[(2 * k, 2 * k + 1)] = Fraction(1)
    return TangentMatrix.from_entries(2 * r, 2 * r, ent, "antisymmetric")


def test_h_matrix_identity():
    d = TangentMatrix(((1, 0), (0, 1)))
    a = TangentMatrix.from_entries(2, 2, {(0, 0): 1})
    assert h_matrix(d, a) == TangentMatrix.from_entries(2, 2, {(0, 0): 2})


def test_h_matrix_antisymmetric():
    d = _j(2)
    a = TangentMatrix.from_entries(4, 4, {(0, 2): 1, (1, 3): 3, (0, 1): 5}, "antisymmetric")
    out = h_matrix(d, a)
    assert out.symmetry == "antisymmetric"
    D = np.array(d.entries, dtype=object)
    A = np.array(a.entries, dtype=object)
    assert out.entries == tuple(tuple(r) for r in (2 * D.dot(A).dot(D)).tolist())


def test_h_matrix_zero():
    z = TangentMatrix.zeros(2, 2)
    assert h_matrix(z, TangentMatrix(((1, 2), (3, 4)))) == z


def test_symmetry_is_validated():
    with pytest.raises(ValueError):
        TangentMatrix(((0, 1), (1, 0)), "antisymmetric")


def _atom(n, i, j):
    mat = TangentMatrix.from_entries(n, n, {(i, j): 1})
    return BlockGenerator(mat, (i,), (j,))


def test_condition_c_diagonal_blocks_only():
    gens = [_atom(2, 0, 0), _atom(2, 1, 1)]
    rep = condition_c_check(gens, 2, 2)
    assert rep.status == FAIL
    assert rep.computed == 2


def test_condition_c_empty():
    assert condition_c_check([], 2, 3).status == FAIL


@pytest.mark.parametrize("n", [3, 5])
def test_condition_c_antisymmetric_pairs(n):
    gens = []
    for i, j in combinations(range(n), 2):
        mat = TangentMatrix.from_entries(n, n, {(i, j): 1}, "antisymmetric")
        gens.append(BlockGenerator(TangentMatrix(mat.entries), (i, j), (i, j)))
    rep = condition_c_check(gens, n, n)
    assert rep.status == PASS and rep.computed == n * n


def test_condition_c_rejects_degenerate_blocks():
    mat = TangentMatrix.from_entries(2, 2, {(0, 0): 1})
    rep = condition_c_check([BlockGenerator(mat, (0, 1), (0, 1))], 2, 2)
    assert rep.status == CATALOG_ERROR


def test_disjoint_sums():
    sums = disjoint_block_sums([_atom(2, 0, 0), _atom(2, 1, 1), _atom(2, 0, 1)])
    shapes = sorted((g.rows, g.cols) for g in sums)
    assert ((0, 1), (0, 1)) in shapes
    assert all(g.violation() is None for g in sums)


@pytest.mark.parametrize("n,m", [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_lambda_rank(n, m):
    r = lambda_rep_rank(n, m)
    assert r == comb(n - 1, m - 1)
    assert r < min(comb(n, m - 1), comb(n, m))
    assert block_span_lemma_check(n, m).status == PASS


def test_lambda_examples():
    assert lambda_rep_rank(3, 2) == 2
    assert lambda_rep_rank(5, 3) == 6
    assert lambda_rep_rank(4, 1, check_range=False) == 1
    with pytest.raises(ValueError):
        lambda_rep_rank(4, 1)


def test_lambda_blocks_are_full_rank():
    for g in lambda_block_generators(4, 2):
        assert g.violation() is None
    assert len(wedge_basis(5, 2)) == 10


def test_veronese():
    assert veronese_graph_rank([0, 1]) == [2, 2]
    assert veronese_graph_rank([Fraction(-7, 3), 100]) == [2, 2]
    assert degenerate_control_rank() == 1
    with pytest.raises(ValueError):
        veronese_graph_rank([])
