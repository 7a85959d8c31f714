from fractions import Fraction

import pytest

from hssrigid.linalg import SubspaceReducer, complex_rank, in_span, integer_rank, rational_rank, real_rank
from hssrigid.scalars import Gauss, as_gauss

I = Gauss(0, 1)


def test_gauss_arithmetic():
    z = Gauss(Fraction(1, 2), 3)
    assert z * z.conjugate() == Gauss(Fraction(1, 4) + 9, 0)
    assert I * I == Gauss(-1, 0)
    assert as_gauss(2) == Gauss(2, 0)
    assert (z - z).re == 0 and (z - z).im == 0


def test_integer_and_rational_rank():
    assert integer_rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([]) == 0
    assert rational_rank([[Fraction(1, 3), 1], [1, 3], [0, 1]]) == 2


def test_complex_versus_real_rank():
    rows = [[Gauss(1, 0), Gauss(0, 0)], [I, Gauss(0, 0)]]
    assert complex_rank(rows) == 1
    assert real_rank(rows) == 2


def test_in_span():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert in_span([2, 3, 5], rows)
    assert not in_span([0, 0, 1], rows)


def test_subspace_reducer():
    red = SubspaceReducer([[Gauss(1, 0), I, 0], [0, 0, 1]])
    assert red.dim == 2
    assert red.contains([Gauss(2, 0), Gauss(0, 2), Gauss(5, 0)])
    assert not red.contains([1, 0, 0])
    assert any(x != 0 for x in red.reduce([1, 0, 0]))


@pytest.mark.parametrize("rows", [[[0, 0]], [[0]]])
def test_zero_rows(rows):
    assert complex_rank(rows) == 0
