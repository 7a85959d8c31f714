import pytest

from hssrigid import clifford_spin as S
from hssrigid.report import PASS
from hssrigid.scalars import Gauss


def test_creation_on_vacuum():
    out = S.generator_action(1, True, S.FockState(0), 2)
    assert out == S.FockState(0b01, Gauss(1, 0))


def test_annihilation_signs():
    w12 = S.FockState(0b11)
    assert S.generator_action(1, False, w12, 2) == S.FockState(0b10, Gauss(1, 0))
    assert S.generator_action(2, False, w12, 2) == S.FockState(0b01, Gauss(-1, 0))
    assert S.generator_action(3, False, w12, 3) is None


@pytest.mark.parametrize("modes", [2, 3, 4, 5])
def test_car(modes):
    assert S.car_violations(modes) == []


def test_clifford_relations():
    gens = S.clifford_generators(4)
    assert S.clifford_violations(gens) == []
    one = S.identity(4)
    assert gens[0] @ gens[0] == one.scale(-1)
    assert gens[0] @ gens[1] + gens[1] @ gens[0] == one.scale(0)


def test_even_word_preserves_parity():
    gens = S.clifford_generators(4)
    op = gens[0] @ gens[6]
    even = set(S.even_part(4))
    for s in range(2 ** 4):
        for target in op.apply(S.FockState(s)):
            assert (target in even) == (s in even)


@pytest.mark.parametrize("ell,rank", [(3, 4), (4, 8)])
def test_even_tangent_rank(ell, rank):
    assert S.spin_tangent_rank_even(ell) == rank


def test_even_tangent_kills_states_without_last_mode():
    ell = 3
    op = S.spin_tangent_operator_even(ell)
    last = 1 << ell
    for s in range(2 ** (ell + 1)):
        if not s & last:
            assert op.apply(S.FockState(s)) == {}


@pytest.mark.parametrize("ell,rank", [(3, 4), (4, 8)])
def test_odd_tangent_rank(ell, rank):
    assert S.spin_tangent_rank_odd(ell) == rank


@pytest.mark.parametrize("ell", [3, 4])
def test_psi_relations(ell):
    assert S.psi_relations_hold(ell)


@pytest.mark.parametrize("ell,odd", [(3, False), (3, True)])
def test_lie_homomorphism(ell, odd):
    assert S.spin_lie_hom_violation(ell, odd) is None


def test_tangent_space_blocks():
    blocks = S.spin_tangent_space_even(3)
    assert len(blocks) == 6


def test_report():
    rep = S.spin_report(3, False)
    assert rep.status == PASS and rep.computed["rank"] == 4
    assert S.spin_report(3, True).status == PASS


def test_ell_bounds():
    with pytest.raises(ValueError):
        S.spin_tangent_rank_even(2)
