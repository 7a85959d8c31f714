from math import comb

import pytest

from hssrigid.rootsys import expected_positive_count, height, is_root, pairing, root_system


def test_rank_one():
    a1 = root_system("A", 1)
    assert a1.positive_roots == ((1,),)


def test_e6_highest_root_and_count():
    e6 = root_system("E", 6)
    assert len(e6.positive_roots) == 36
    assert e6.highest_root == (1, 2, 3, 2, 1, 2)


def test_e7_highest_root_and_count():
    e7 = root_system("E", 7)
    assert len(e7.positive_roots) == 63
    assert e7.highest_root == (1, 2, 3, 4, 3, 2, 2)


@pytest.mark.parametrize("series,n", [("A", 4), ("B", 3), ("C", 4), ("D", 5), ("E", 6), ("E", 7)])
def test_positive_count_closed_form(series, n):
    assert len(root_system(series, n).positive_roots) == expected_positive_count(series, n)


def test_pairing_basics():
    b2 = root_system("B", 2)
    for a in b2.roots:
        assert pairing(b2, a, a) == 2
    # alpha1 + 2 alpha2 = e1 + e2 is orthogonal to alpha1 = e1 - e2
    assert pairing(b2, (1, 2), (1, 0)) == 0
    assert pairing(b2, (1, 0), (0, 1)) == -2
    assert pairing(b2, (0, 1), (1, 0)) == -1


def test_e7_highest_root_pairs_with_the_cominuscule_node_to_zero():
    e7 = root_system("E", 7)
    assert pairing(e7, e7.highest_root, (1, 0, 0, 0, 0, 0, 0)) == 0
    # the highest root is dominant and meets only the adjoint node
    pairs = [pairing(e7, e7.highest_root, s) for s in e7.simple_roots]
    assert sorted(pairs) == [0] * 6 + [1]



def test_is_root_examples():
    e7 = root_system("E", 7)
    e6 = root_system("E", 6)
    assert is_root(e7, (1, 0, 0, 0, 0, 0, 0))
    assert not is_root(e7, (0,) * 7)
    assert not is_root(e6, (1, 1, 1, 1, 1, 2))
    # in this node order (chain 1-2-3-4-5, node 6 on node 3) the vector has norm 2
    assert is_root(e6, (1, 1, 2, 1, 1, 1))


def _quadratic_norm(edges, c):
    return 2 * sum(x * x for x in c) - 2 * sum(c[i] * c[j] for i, j in edges)


def test_e6_roots_match_norm_oracle():
    # independent oracle: in a simply-laced system the positive roots are exactly
    # the nonnegative integer vectors of norm 2 (bounded by the highest root)
    from itertools import product
    e6 = root_system("E", 6)
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]
    bound = e6.highest_root
    vecs = {c for c in product(*(range(b + 1) for b in bound)) if any(c) and _quadratic_norm(edges, c) == 2}
    assert vecs == set(e6.positive_roots)


def test_height_and_arithmetic():
    e6 = root_system("E", 6)
    assert height(e6.highest_root) == 11
    a, b = e6.simple_roots[0], e6.simple_roots[1]
    assert e6.sub(e6.add(a, b), b) == a
    assert e6.neg(a) == (-1, 0, 0, 0, 0, 0)


def test_type_a_count():
    for n in range(1, 6):
        assert len(root_system("A", n).positive_roots) == comb(n + 1, 2)
