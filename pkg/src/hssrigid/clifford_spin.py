"""Fock-space Clifford modules and the spin embeddings of hyperquadrics.

The spin module is the exterior algebra on w_1..w_k with basis states given
by bitmasks (bit i-1 set when w_i is present).  Creation a_i^dagger inserts
w_i, annihilation a_i removes it, both with sign (-1)^{#indices below i}.
Clifford generators are e_{2j-1} = a_j^dagger - a_j and
e_{2j} = -i (a_j^dagger + a_j), so that e_i e_j + e_j e_i = -2 delta_ij.

Operators are exact Gaussian-rational matrices stored as integer real and
imaginary parts over a common positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import complex_rank, rational_rank
from .report import CheckReport, make_report
from .scalars import Gauss

__all__ = [
    "FockState",
    "FockOperator",
    "generator_action",
    "creation",
    "annihilation",
    "identity",
    "word_operator",
    "clifford_generators",
    "car_violations",
    "clifford_violations",
    "even_part",
    "spin_tangent_operator_even",
    "spin_tangent_rank_even",
    "spin_tangent_space_even",
    "odd_module_generators",
    "psi_relations_hold",
    "spin_tangent_operator_odd",
    "spin_tangent_rank_odd",
    "spin_lie_hom_violation",
    "MAX_ELL",
    "spin_report",
]

MAX_ELL = 5


@dataclass(frozen=True)
class FockState:
    subset: int
    coefficient: Gauss = Gauss(1)


def _sign_below(mask: int, i: int) -> int:
    return -1 if bin(mask & ((1 << (i - 1)) - 1)).count("1") % 2 else 1


def generator_action(i: int, dagger: bool, state: FockState, modes: int | None = None) -> FockState | None:
    """a_i^dagger or a_i applied to a basis state; None for zero."""
    if i < 1 or (modes is not None and i > modes):
        raise ValueError(f"mode index {i} out of range")
    bit = 1 << (i - 1)
    present = bool(state.subset & bit)
    if dagger == present:
        return None
    sign = _sign_below(state.subset, i)
    return FockState(state.subset ^ bit, state.coefficient * sign)


@dataclass(frozen=True, eq=False)
class FockOperator:
    re: np.ndarray
    im: np.ndarray
    den: int = 1

    @property
    def dim(self) -> int:
        return self.re.shape[0]

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        re = self.re @ other.re - self.im @ other.im
        im = self.re @ other.im + self.im @ other.re
        return FockOperator(re, im, self.den * other.den)._reduce()

    def _common(self, other):
        return (self.re * other.den, self.im * other.den, other.re * self.den, other.im * self.den,
                self.den * other.den)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        a, b, c, d, den = self._common(other)
        return FockOperator(a + c, b + d, den)._reduce()

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "FockOperator":
        """Multiply by an exact scalar (int, Fraction or Gauss)."""
        g = c if isinstance(c, Gauss) else Gauss(c)
        den = g.re.denominator * g.im.denominator
        gr, gi = int(g.re * den), int(g.im * den)
        return FockOperator(self.re * gr - self.im * gi, self.re * gi + self.im * gr, self.den * den)._reduce()

    def _reduce(self) -> "FockOperator":
        g = int(np.gcd.reduce(np.concatenate([self.re.ravel(), self.im.ravel(), [self.den]])))
        if g > 1:
            return FockOperator(self.re // g, self.im // g, self.den // g)
        return self

    def __eq__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        a, b, c, d, _ = self._common(other)
        return bool(np.array_equal(a, c) and np.array_equal(b, d))

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def entry(self, i: int, j: int) -> Gauss:
        return Gauss(Fraction(int(self.re[i, j]), self.den), Fraction(int(self.im[i, j]), self.den))

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Gauss]]:
        return [[self.entry(i, j) for j in cols] for i in rows]

    def rank(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> int:
        rows = range(self.dim) if rows is None else rows
        cols = range(self.dim) if cols is None else cols
        re = self.re[np.ix_(list(rows), list(cols))]
        im = self.im[np.ix_(list(rows), list(cols))]
        if not im.any():
            return rational_rank(re.tolist())
        return complex_rank([[Gauss(int(x), int(y)) for x, y in zip(r1, r2)] for r1, r2 in zip(re, im)])

    def apply(self, state: FockState) -> dict[int, Gauss]:
        return {i: self.entry(i, state.subset) * state.coefficient
                for i in range(self.dim) if self.re[i, state.subset] or self.im[i, state.subset]}


def _zeros(modes: int) -> tuple[np.ndarray, np.ndarray]:
    d = 1 << modes
    return np.zeros((d, d), dtype=np.int64), np.zeros((d, d), dtype=np.int64)


def _ladder(i: int, dagger: bool, modes: int) -> FockOperator:
    re, im = _zeros(modes)
    for s in range(1 << modes):
        out = generator_action(i, dagger, FockState(s), modes)
        if out is not None:
            re[out.subset, s] = int(out.coefficient.re)
    return FockOperator(re, im)


def creation(i: int, modes: int) -> FockOperator:
    return _ladder(i, True, modes)


def annihilation(i: int, modes: int) -> FockOperator:
    return _ladder(i, False, modes)


def identity(modes: int) -> FockOperator:
    d = 1 << modes
    return FockOperator(np.eye(d, dtype=np.int64), np.zeros((d, d), dtype=np.int64))


def word_operator(word: Sequence[tuple[str, int]], modes: int, scalar=1) -> FockOperator:
    """Operator of a word like [('a+', 1), ('a', 3)] built state by state (rightmost acts first)."""
    re, im = _zeros(modes)
    g = scalar if isinstance(scalar, Gauss) else Gauss(scalar)
    den = g.re.denominator * g.im.denominator
    for s in range(1 << modes):
        st: FockState | None = FockState(s)
        for sym, i in reversed(word):
            st = generator_action(i, sym == "a+", st, modes)
            if st is None:
                break
        if st is None:
            continue
        c = st.coefficient * g * den
        re[st.subset, s] += int(c.re)
        im[st.subset, s] += int(c.im)
    return FockOperator(re, im, den)._reduce()


def clifford_generators(modes: int) -> list[FockOperator]:
    """e_1 .. e_{2 modes} on the Fock space of ``modes`` modes."""
    out = []
    for j in range(1, modes + 1):
        ad, a = creation(j, modes), annihilation(j, modes)
        out.append(ad - a)
        out.append((ad + a).scale(Gauss(0, -1)))
    return out


def car_violations(modes: int) -> list[tuple]:
    """Pairs breaking {a_i, a_j} = {a_i^+, a_j^+} = 0, {a_i, a_j^+} = delta_ij."""
    bad = []
    one, zero = identity(modes), identity(modes).scale(0)
    a = {i: annihilation(i, modes) for i in range(1, modes + 1)}
    ad = {i: creation(i, modes) for i in range(1, modes + 1)}
    for i in range(1, modes + 1):
        for j in range(1, modes + 1):
            if a[i] @ a[j] + a[j] @ a[i] != zero:
                bad.append(("a", i, "a", j))
            if ad[i] @ ad[j] + ad[j] @ ad[i] != zero:
                bad.append(("a+", i, "a+", j))
            if a[i] @ ad[j] + ad[j] @ a[i] != (one if i == j else zero):
                bad.append(("a", i, "a+", j))
    return bad


def clifford_violations(gens: Sequence[FockOperator]) -> list[tuple[int, int]]:
    """Index pairs breaking e_i e_j + e_j e_i = -2 delta_ij."""
    modes = gens[0].dim.bit_length() - 1
    minus_two, zero = identity(modes).scale(-2), identity(modes).scale(0)
    bad = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            ac = gens[i] @ gens[j] + gens[j] @ gens[i]
            if ac != (minus_two if i == j else zero):
                bad.append((i + 1, j + 1))
    return bad


def even_part(modes: int) -> list[int]:
    return [s for s in range(1 << modes) if bin(s).count("1") % 2 == 0]


def _check_ell(ell: int):
    if ell < 3:
        raise ValueError("ell must be at least 3")


# ---------------------------------------------------------------- even quadrics

def spin_tangent_operator_even(ell: int) -> FockOperator:
    """-(a_1^+ - a_1) a_{l+1}, checked against (e_1 e_{2l+1} - i e_1 e_{2l+2}) / 2."""
    _check_ell(ell)
    modes = ell + 1
    word = word_operator([("a+", 1), ("a", modes)], modes, -1) + word_operator([("a", 1), ("a", modes)], modes, 1)
    e = clifford_generators(modes)
    clifford = (e[0] @ e[2 * ell] - (e[0] @ e[2 * ell + 1]).scale(Gauss(0, 1))).scale(Fraction(1, 2))
    if word != clifford:
        raise AssertionError("word and Clifford forms of the tangent operator differ")
    return word


def _split(modes: int, states: Sequence[int], mode: int) -> tuple[list[int], list[int]]:
    bit = 1 << (mode - 1)
    return [s for s in states if not s & bit], [s for s in states if s & bit]


def spin_tangent_rank_even(ell: int) -> int:
    op = spin_tangent_operator_even(ell)
    splus = even_part(ell + 1)
    rows, cols = _split(ell + 1, splus, ell + 1)
    # annihilates every state without w_{l+1}
    assert all(not op.re[:, s].any() and not op.im[:, s].any() for s in rows)
    assert op.rank(splus, splus) == op.rank(rows, cols)
    return op.rank(splus, splus)


def spin_tangent_space_even(ell: int):
    """Blocks of -i e_k a_{l+1} (k = 1..2l), the tangent space of Q^{2l} in G(2^{l-1}, 2^{l-1}).

    Rows are S+ states without w_{l+1}, columns S+ states containing it.
    """
    from .matrix_models import TangentMatrix

    _check_ell(ell)
    modes = ell + 1
    e = clifford_generators(modes)
    a_last = annihilation(modes, modes)
    rows, cols = _split(modes, even_part(modes), modes)
    out = []
    for k in range(2 * ell):
        op = (e[k] @ a_last).scale(Gauss(0, -1))
        out.append(TangentMatrix(tuple(tuple(r) for r in op.restrict(rows, cols))))
    return out


# ---------------------------------------------------------------- odd quadrics

def odd_module_generators(ell: int) -> list[FockOperator]:
    """L(f_1..f_{2l}) for f = e_1..e_{2l-2}, e_{2l}, e_{2l+1} on the l-mode Fock space."""
    return clifford_generators(ell)


def psi_relations_hold(ell: int) -> bool:
    """psi(x) = x e_{2l-1} on E' preserves the Clifford relations, with psi(x)^2 = x^2."""
    _check_ell(ell)
    e = clifford_generators(ell + 1)[: 2 * ell + 1]
    mid = e[2 * ell - 2]
    primed = [e[k] for k in range(2 * ell + 1) if k != 2 * ell - 2]
    psi = [x @ mid for x in primed]
    for i in range(len(psi)):
        for j in range(len(psi)):
            lhs = psi[i] @ psi[j] + psi[j] @ psi[i]
            rhs = primed[i] @ primed[j] + primed[j] @ primed[i]
            if lhs != rhs:
                return False
    return all(p @ p == x @ x for p, x in zip(psi, primed))


def _odd_rho(ell: int):
    """rho(e_a e_b) for 1 <= a < b <= 2l+1 on the l-mode module.

    e_a e_b = psi(e_a) psi(e_b) when neither index is 2l-1, and
    e_{2l-1} e_b = -psi(e_b), so psi(x') acts as L(x').
    """
    f = odd_module_generators(ell)
    mid = 2 * ell - 1
    index = {}
    k = 0
    for a in range(1, 2 * ell + 2):
        if a != mid:
            index[a] = k
            k += 1
    one = identity(ell)

    def rho(a: int, b: int) -> FockOperator:
        if a == mid:
            return f[index[b]].scale(-1)
        if b == mid:
            return f[index[a]]
        return f[index[a]] @ f[index[b]]

    return rho, one


def spin_tangent_operator_odd(ell: int) -> FockOperator:
    """Image of (e_1 e_{2l} - i e_1 e_{2l+1}) / 2, equal to -(a_1^+ - a_1) a_l."""
    _check_ell(ell)
    rho, _ = _odd_rho(ell)
    op = (rho(1, 2 * ell) - rho(1, 2 * ell + 1).scale(Gauss(0, 1))).scale(Fraction(1, 2))
    word = word_operator([("a+", 1), ("a", ell)], ell, -1) + word_operator([("a", 1), ("a", ell)], ell, 1)
    if op != word:
        raise AssertionError("odd tangent operator differs from its word form")
    return op


def spin_tangent_rank_odd(ell: int) -> int:
    if not psi_relations_hold(ell):
        raise AssertionError("psi does not preserve the Clifford relations")
    op = spin_tangent_operator_odd(ell)
    rows, cols = _split(ell, list(range(1 << ell)), ell)
    assert op.rank() == op.rank(rows, cols)
    return op.rank()


def _so_structure(size: int):
    """[L_ab, L_cd] for L_ab = E_ab - E_ba as {(a, b): coeff} with a < b."""

    def bracket(ab, cd):
        a, b = ab
        c, d = cd
        out: dict = {}

        def add(x, y, s):
            if x == y:
                return
            if x > y:
                x, y, s = y, x, -s
            out[(x, y)] = out.get((x, y), 0) + s

        if b == c:
            add(a, d, 1)
        if a == c:
            add(b, d, -1)
        if b == d:
            add(a, c, -1)
        if a == d:
            add(b, c, 1)
        return {k: v for k, v in out.items() if v}

    return bracket


def spin_lie_hom_violation(ell: int, odd: bool = False):
    """First pair where L_ab -> -rho(e_a e_b) / 2 fails to respect brackets, or None.

    With e_i^2 = -1 the map x -> -x/2 on e_a e_b is the Lie homomorphism.
    """
    if odd:
        rho2, _ = _odd_rho(ell)
        size = 2 * ell + 1

        def rho(a, b):
            return rho2(a, b).scale(Fraction(-1, 2))
    else:
        e = clifford_generators(ell + 1)
        size = 2 * ell + 2

        def rho(a, b):
            return (e[a - 1] @ e[b - 1]).scale(Fraction(-1, 2))

    br = _so_structure(size)
    pairs = [(a, b) for a in range(1, size + 1) for b in range(a + 1, size + 1)]
    images = {p: rho(*p) for p in pairs}
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            lhs = images[p] @ images[q] - images[q] @ images[p]
            rhs = images[p].scale(0)
            for k, v in br(p, q).items():
                rhs = rhs + images[k].scale(v)
            if lhs != rhs:
                return (p, q)
    return None


def spin_report(ell: int, odd: bool) -> CheckReport:
    """Tangent rank of the spin embedding plus the relations of the Fock model it uses."""
    rank = spin_tangent_rank_odd(ell) if odd else spin_tangent_rank_even(ell)
    modes = ell if odd else ell + 1
    relations = {
        "car": len(car_violations(modes)),
        "clifford": len(clifford_violations(clifford_generators(modes))),
        "lie": 0 if spin_lie_hom_violation(ell, odd) is None else 1,
    }
    label = f"Q^{2 * ell - 1 if odd else 2 * ell}"
    return make_report("spin-odd" if odd else "spin-even", label,
                       {"rank": 2 ** (ell - 1), "car": 0, "clifford": 0, "lie": 0}, {"rank": rank, **relations},
                       claim=f"tangent vectors have maximal rank in G({2 ** (ell - 1)},{2 ** (ell - 1)})",
                       notes={"ell": ell})
