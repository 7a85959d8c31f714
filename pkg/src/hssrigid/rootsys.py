"""Finite reduced root systems from Cartan matrices.

Roots are integer coefficient tuples over the simple roots.  The Cartan
matrix convention is ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i``
holds the Dynkin labels of ``alpha_i``.

Exceptional types use the node numbering of the marked extended diagrams:
E6 is the chain 1-2-3-4-5 with 6 attached to 3, E7 the chain 1-2-3-4-5-6
with 7 attached to 4.  Node 1 is cominuscule in both.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Root = tuple[int, ...]

__all__ = [
    "Root",
    "CartanDatum",
    "RootSystem",
    "cartan_datum",
    "generate_roots",
    "root_system",
    "pairing",
    "is_root",
    "height",
    "expected_positive_count",
]


def height(root: Root) -> int:
    return sum(root)


def _edges_to_matrix(rank: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1
    return a


def _classical_matrix(series: str, n: int) -> list[list[int]]:
    if series == "A":
        return _edges_to_matrix(n, [(i, i + 1) for i in range(1, n)])
    if series in ("B", "C"):
        if n < 2:
            raise ValueError(f"{series}{n} needs rank >= 2")
        a = _edges_to_matrix(n, [(i, i + 1) for i in range(1, n)])
        # alpha_n short for B, long for C
        if series == "B":
            a[n - 2][n - 1] = -2
        else:
            a[n - 1][n - 2] = -2
        return a
    if series == "D":
        if n < 3:
            raise ValueError(f"D{n} needs rank >= 3")
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return _edges_to_matrix(n, edges)
    if series == "E":
        if n == 6:
            return _edges_to_matrix(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)])
        if n == 7:
            return _edges_to_matrix(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])
    raise ValueError(f"unsupported type {series}{n}")


def _symmetrizer(a: list[list[int]]) -> tuple[Fraction, ...]:
    """Diagonal d with a[i][j] * d[j] symmetric, i.e. d[j] = (alpha_j, alpha_j) / 2."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    if a[j][i] == 0:
                        raise ValueError("Cartan matrix is not symmetrizable")
                    d[j] = d[i] * a[j][i] / a[i][j]
                    stack.append(j)
    smallest = min(d)
    return tuple(x / smallest for x in d)


def _leading_minors_positive(b: list[list[Fraction]]) -> bool:
    n = len(b)
    m = [row[:] for row in b]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


@dataclass(frozen=True)
class CartanDatum:
    type_label: str
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]

    def __post_init__(self):
        a = self.cartan_matrix
        n = len(a)
        for i in range(n):
            if len(a[i]) != n or a[i][i] != 2:
                raise ValueError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
        if not _leading_minors_positive([list(r) for r in self.form_matrix]):
            raise ValueError(f"{self.type_label}: symmetrized matrix is not positive definite")

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @cached_property
    def form_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix (alpha_i, alpha_j) = cartan[i][j] * d[j]."""
        a, d = self.cartan_matrix, self.symmetrizer
        b = tuple(tuple(Fraction(a[i][j]) * d[j] for j in range(self.rank)) for i in range(self.rank))
        for i in range(self.rank):
            for j in range(self.rank):
                if b[i][j] != b[j][i]:
                    raise ValueError("symmetrizer does not symmetrize the Cartan matrix")
        return b


def cartan_datum(series: str, n: int) -> CartanDatum:
    a = _classical_matrix(series, n)
    return CartanDatum(f"{series}{n}", tuple(tuple(r) for r in a), _symmetrizer(a))


def expected_positive_count(series: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63}.get(n, -1),
    }[series]


@dataclass(frozen=True, eq=False)
class RootSystem:
    datum: CartanDatum
    positive_roots: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return self.datum.rank

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))

    @cached_property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """Negative roots (reverse canonical order) followed by positive roots."""
        return tuple(reversed(self.negative_roots)) + self.positive_roots

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def inner(self, beta: Root, alpha: Root) -> Fraction:
        b = self.datum.form_matrix
        return sum(
            (beta[i] * alpha[j] * b[i][j] for i in range(self.rank) for j in range(self.rank) if beta[i] and alpha[j]),
            Fraction(0),
        )

    @cached_property
    def coroot_labels(self) -> dict[Root, tuple[int, ...]]:
        """For each root alpha, the integers <alpha_i, alpha^vee> over simple roots alpha_i."""
        a = self.datum.cartan_matrix
        out = {}
        for alpha in self.roots:
            c = self.coroot_coefficients(alpha)
            labels = tuple(sum(c[j] * a[i][j] for j in range(self.rank)) for i in range(self.rank))
            assert all(x.denominator == 1 for x in labels)
            out[alpha] = tuple(int(x) for x in labels)
        return out

    @cached_property
    def pairing_table(self) -> dict[tuple[Root, Root], int]:
        return {(b, a): self.fast_pairing(b, a) for b in self.roots for a in self.roots}

    def fast_pairing(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha^vee> for any lattice vector beta and root alpha."""
        return sum(x * y for x, y in zip(beta, self.coroot_labels[alpha]))

    def coroot_coefficients(self, alpha: Root) -> tuple[Fraction, ...]:
        """alpha^vee over the simple coroots: c_i = alpha_i coefficient * d_i / d_alpha."""
        d = self.datum.symmetrizer
        d_alpha = self.inner(alpha, alpha) / 2
        return tuple(alpha[i] * d[i] / d_alpha for i in range(self.rank))

    def add(self, a: Root, b: Root) -> Root:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Root, b: Root) -> Root:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Root) -> Root:
        return tuple(-x for x in a)

    def string_down(self, beta: Root, alpha: Root) -> int:
        """Largest p with beta - p*alpha a root."""
        p = 0
        x = self.sub(beta, alpha)
        while x in self.root_set:
            p += 1
            x = self.sub(x, alpha)
        return p


def generate_roots(datum: CartanDatum) -> RootSystem:
    """All roots as the Weyl-orbit of the simple roots."""
    n = datum.rank
    a = datum.cartan_matrix
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    limit = 4 * 133  # well above any finite system handled here
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * a[j][i] for j in range(n))
                if c == 0:
                    continue
                image = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        if len(seen) > limit:
            raise ValueError(f"{datum.type_label}: root closure does not terminate")
        frontier = nxt
    positive = sorted((r for r in seen if all(c >= 0 for c in r)), key=lambda r: (height(r), r))
    negative = [r for r in seen if all(c <= 0 for c in r)]
    if len(positive) != len(negative) or len(positive) + len(negative) != len(seen):
        raise ValueError(f"{datum.type_label}: roots are not sign-coherent")
    return RootSystem(datum, tuple(positive))


_CACHE: dict[str, RootSystem] = {}


def root_system(series: str, n: int) -> RootSystem:
    key = f"{series}{n}"
    if key not in _CACHE:
        _CACHE[key] = generate_roots(cartan_datum(series, n))
    return _CACHE[key]


def pairing(sys: RootSystem, beta: Root, alpha: Root) -> int:
    """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
    beta, alpha = tuple(beta), tuple(alpha)
    if beta not in sys.root_set or alpha not in sys.root_set:
        raise ValueError("pairing is defined on roots only")
    return sys.pairing_table[(beta, alpha)]


def is_root(sys: RootSystem, coeffs) -> bool:
    coeffs = tuple(coeffs)
    if len(coeffs) != sys.rank:
        raise ValueError(f"expected a vector of length {sys.rank}")
    return coeffs in sys.root_set
