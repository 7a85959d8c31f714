"""Property tests: Lie identities on random sparse elements and rank invariance."""

from hypothesis import given, settings
from hypothesis import strategies as st

from hssrigid.chevalley import LieElement, bracket, compact_conjugate, structure_constants
from hssrigid.linalg import complex_rank, real_rank
from hssrigid.scalars import Gauss

SYSTEMS = {key: structure_constants(*key) for key in [("A", 3), ("B", 3), ("C", 3), ("D", 4)]}

small = st.integers(-3, 3)
gauss = st.builds(Gauss, small, small)


@st.composite
def elements(draw, key):
    sc = SYSTEMS[key]
    roots = draw(st.lists(st.sampled_from(sc.sys.roots), max_size=3, unique=True))
    cartan = tuple(draw(gauss) if draw(st.booleans()) else Gauss(0, 0) for _ in range(sc.rank))
    return LieElement(cartan, {r: draw(gauss) for r in roots})


def _triple(key):
    return st.tuples(st.just(key), elements(key), elements(key), elements(key))


triples = st.sampled_from(sorted(SYSTEMS)).flatmap(_triple)


@settings(max_examples=60, deadline=None)
@given(triples)
def test_jacobi(data):
    key, x, y, z = data
    sc = SYSTEMS[key]
    b = lambda u, v: bracket(sc, u, v)
    total = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
    assert total.is_zero()


@settings(max_examples=60, deadline=None)
@given(triples)
def test_antisymmetry_and_tau(data):
    key, x, y, _ = data
    sc = SYSTEMS[key]
    assert (bracket(sc, x, y) + bracket(sc, y, x)).is_zero()
    tau = lambda u: compact_conjugate(sc, u)
    assert tau(bracket(sc, x, y)) == bracket(sc, tau(x), tau(y))
    assert tau(tau(x)) == x


matrices = st.integers(1, 4).flatmap(
    lambda w: st.lists(st.lists(gauss, min_size=w, max_size=w), min_size=1, max_size=4))


@settings(max_examples=100, deadline=None)
@given(matrices, gauss.filter(lambda z: z != Gauss(0, 0)), st.randoms(use_true_random=False))
def test_rank_invariance(rows, scalar, rnd):
    r = complex_rank(rows)
    scaled = [[scalar * x for x in rows[0]]] + rows[1:]
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert complex_rank(scaled) == r == complex_rank(shuffled)
    combined = rows + [[a + b for a, b in zip(rows[0], rows[-1])]]
    assert complex_rank(combined) == r
    assert r <= real_rank(rows) <= 2 * r


@given(st.lists(st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_real_entries_agree(rows):
    g = [[Gauss(x, 0) for x in r] for r in rows]
    assert complex_rank(g) == real_rank(g) == complex_rank(rows)
