import pytest

from hssrigid.chevalley import (LieElement, bracket, compact_conjugate, real_span_dimension,
                                structure_constants)
from hssrigid.scalars import Gauss

I = Gauss(0, 1)


def test_rank_one_has_no_products():
    sc = structure_constants("A", 1)
    assert bracket(sc, sc.e((1,)), sc.e((-1,))) == sc.h((1,))
    assert bracket(sc, sc.e((1,)), sc.e((1,))).is_zero()


def test_a2_constant():
    sc = structure_constants("A", 2)
    assert abs(sc.n((1, 0), (0, 1))) == 1


def test_e7_coroot_bracket():
    sc = structure_constants("E", 7)
    a1 = (1, 0, 0, 0, 0, 0, 0)
    assert bracket(sc, sc.e(a1), sc.e(sc.sys.neg(a1))) == sc.h(a1)


def test_a3_triple_bracket_is_nonzero_multiple():
    sc = structure_constants("A", 3)
    x = bracket(sc, sc.e((0, 1, 0)), bracket(sc, sc.e((0, -1, -1)), sc.e((1, 1, 1))))
    assert set(x.root_part) == {(1, 1, 0)}
    assert x.root_part[(1, 1, 0)] != 0
    assert not any(x.cartan_part)


def test_b2_phi_chain_constants_agree():
    sc = structure_constants("B", 2)
    # chain alpha1, alpha1 + alpha2, alpha1 + 2 alpha2 through the short root alpha2
    first, last = sc.phi_chain_constants((0, 1), (1, 0))
    assert first ** 2 == last ** 2 == 1


@pytest.mark.parametrize("series,n", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("B", 4), ("C", 4)])
def test_jacobi_and_chains(series, n):
    sc = structure_constants(series, n)
    assert sc.jacobi_violation() is None
    assert sc.antisymmetry_violation() is None
    assert sc.chain_violation() is None


def test_compact_conjugation_examples():
    sc = structure_constants("A", 3)
    a = (1, 0, 0)
    assert compact_conjugate(sc, sc.e(a)) == sc.e((-1, 0, 0)).scale(-1)
    ih = sc.h(a).scale(I)
    assert compact_conjugate(sc, ih) == ih
    s = sc.e((1, 0, 0)) + sc.e((0, 1, 0)) + sc.e((0, 0, 1))
    t = sc.e((-1, 0, 0)) + sc.e((0, -1, 0)) + sc.e((0, 0, -1))
    assert compact_conjugate(sc, s) == t.scale(-1)


def test_real_span_dimension():
    sc = structure_constants("A", 2)
    e = sc.e((1, 0))
    assert real_span_dimension([e, e.scale(I)], sc) == 2
    assert real_span_dimension([], sc) == 0
    plus = [sc.e((1, 0)), sc.e((1, 1))]
    basis = plus + [x.scale(I) for x in plus]
    assert real_span_dimension(basis, sc) == 4


def test_lie_element_linear_structure():
    sc = structure_constants("A", 2)
    x = sc.e((1, 0)) + sc.e((0, 1)).scale(3)
    assert (x - x).is_zero()
    assert LieElement.zero(2).is_zero()
    coords = sc.coordinates(sc.e((1, 1)))
    assert coords[sc.basis.index((1, 1))] == 1
    assert sum(1 for c in coords if c != 0) == 1
