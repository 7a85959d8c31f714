"""Chevalley structure constants, sparse Lie elements and the compact conjugation.

Root vectors are realized as integer matrices in a minuscule representation
(weight basis, simple root vectors acting by 0/1).  Non-simple root vectors
are built inductively as ``[E_i, e_beta] / (p + 1)`` and ``e_{-a} = e_a^T``;
with this choice ``[e_a, e_{-a}] = h_a`` is the coroot and the transpose is
the Chevalley involution, so ``N_{-a,-b} = -N_{a,b}``.  The table is then read
off the matrices and validated independently of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .linalg import real_rank
from .rootsys import Root, RootSystem, root_system
from .scalars import Gauss, ZERO, as_gauss

__all__ = [
    "LieElement",
    "RealElement",
    "StructureConstants",
    "StructureConstantError",
    "build_structure_constants",
    "structure_constants",
    "bracket",
    "compact_conjugate",
    "real_span_dimension",
    "minuscule_representation",
    "MINUSCULE_NODE",
]

# 1-based node carrying a minuscule fundamental weight
MINUSCULE_NODE = {"A": 1, "B": None, "C": 1, "D": 1, "E": 1}


class StructureConstantError(RuntimeError):
    """Raised when the constructed table violates a Lie algebra identity."""


def _minuscule_node(series: str, n: int) -> int:
    return n if series == "B" else MINUSCULE_NODE[series]


@dataclass(frozen=True)
class MinusculeRep:
    weights: tuple[tuple[int, ...], ...]  # Dynkin labels, canonical order
    raising: tuple[np.ndarray, ...]  # E_i, i = 0..rank-1

    @property
    def dim(self) -> int:
        return len(self.weights)


def minuscule_representation(sys: RootSystem, node: int) -> MinusculeRep:
    """Weight-orbit model of the fundamental representation at ``node`` (1-based)."""
    a = sys.datum.cartan_matrix
    n = sys.rank
    top = tuple(1 if i == node - 1 else 0 for i in range(n))
    seen = {top: 0}
    order = [top]
    k = 0
    while k < len(order):
        mu = order[k]
        k += 1
        for i in range(n):
            if mu[i] > 1 or mu[i] < -1:
                raise ValueError(f"node {node} of {sys.datum.type_label} is not minuscule")
            if mu[i] == 1:
                nu = tuple(mu[j] - a[i][j] for j in range(n))
                if nu not in seen:
                    seen[nu] = len(order)
                    order.append(nu)
    index = {w: t for t, w in enumerate(order)}
    raising = []
    for i in range(n):
        m = np.zeros((len(order), len(order)), dtype=np.int64)
        for mu, t in index.items():
            if mu[i] == -1:
                up = tuple(mu[j] + a[i][j] for j in range(n))
                m[index[up], t] = 1
        raising.append(m)
    return MinusculeRep(tuple(order), tuple(raising))


# ---------------------------------------------------------------- elements

def _clean(terms: Mapping[Root, Gauss]) -> dict[Root, Gauss]:
    return {r: c for r, c in terms.items() if c}


@dataclass(frozen=True)
class LieElement:
    """Sparse element: coefficients over simple coroots plus root-vector terms."""

    cartan_part: tuple[Gauss, ...]
    root_part: Mapping[Root, Gauss] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "cartan_part", tuple(as_gauss(c) for c in self.cartan_part))
        object.__setattr__(self, "root_part", _clean({tuple(r): as_gauss(c) for r, c in self.root_part.items()}))

    @classmethod
    def zero(cls, rank: int) -> "LieElement":
        return cls((ZERO,) * rank, {})

    @classmethod
    def root_vector(cls, root: Root, coeff=1) -> "LieElement":
        return cls((ZERO,) * len(root), {tuple(root): as_gauss(coeff)})

    @classmethod
    def coroot(cls, rank: int, index: int, coeff=1) -> "LieElement":
        """coeff * h_{alpha_index} (0-based index)."""
        c = [ZERO] * rank
        c[index] = as_gauss(coeff)
        return cls(tuple(c), {})

    @property
    def rank(self) -> int:
        return len(self.cartan_part)

    def is_zero(self) -> bool:
        return not self.root_part and not any(self.cartan_part)

    def __add__(self, other: "LieElement") -> "LieElement":
        terms = dict(self.root_part)
        for r, c in other.root_part.items():
            terms[r] = terms.get(r, ZERO) + c
        return LieElement(tuple(x + y for x, y in zip(self.cartan_part, other.cartan_part)), terms)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, s) -> "LieElement":
        s = as_gauss(s)
        return LieElement(tuple(s * c for c in self.cartan_part), {r: s * c for r, c in self.root_part.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.cartan_part == other.cartan_part and self.root_part == other.root_part

    def __hash__(self):
        return hash((self.cartan_part, frozenset(self.root_part.items())))

    def coordinates(self, roots: Iterable[Root]) -> list[Gauss]:
        """Root-part coefficients over the given ordered roots (others must vanish)."""
        roots = list(roots)
        extra = set(self.root_part) - set(roots)
        if extra:
            raise ValueError(f"element has terms outside the basis: {sorted(extra)}")
        return [self.root_part.get(r, ZERO) for r in roots]

    def __repr__(self):
        parts = [f"{c}*h{i + 1}" for i, c in enumerate(self.cartan_part) if c]
        parts += [f"{c}*e{r}" for r, c in sorted(self.root_part.items())]
        return "LieElement(" + (" + ".join(parts) or "0") + ")"


@dataclass(frozen=True)
class RealElement:
    element: LieElement
    in_compact_form: bool = True


# ---------------------------------------------------------------- table

@dataclass(frozen=True, eq=False)
class StructureConstants:
    sys: RootSystem
    n_table: Mapping[tuple[Root, Root], int]
    coroot_table: Mapping[Root, tuple[int, ...]]
    representation: MinusculeRep | None = field(default=None, repr=False)
    root_matrices: Mapping[Root, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.sys.rank

    def n(self, alpha: Root, beta: Root) -> int:
        return self.n_table.get((alpha, beta), 0)

    @cached_property
    def basis(self) -> tuple:
        """Canonical basis keys: roots (negative then positive), then coroot indices."""
        return tuple(self.sys.roots) + tuple(range(self.rank))

    def e(self, root, coeff=1) -> LieElement:
        root = tuple(root)
        if root not in self.sys.root_set:
            raise ValueError(f"{root} is not a root")
        return LieElement.root_vector(root, coeff)

    def h(self, root) -> LieElement:
        """Coroot h_alpha for any root alpha."""
        return LieElement(tuple(Gauss(c) for c in self.coroot_table[tuple(root)]), {})

    def zero(self) -> LieElement:
        return LieElement.zero(self.rank)

    def matrix(self, x: LieElement) -> np.ndarray:
        """Image of x in the minuscule representation (object array of Gauss)."""
        rep = self.representation
        out = np.full((rep.dim, rep.dim), ZERO, dtype=object)
        for r, c in x.root_part.items():
            m = self.root_matrices[r]
            for i, j in zip(*np.nonzero(m)):
                out[i, j] = out[i, j] + c * int(m[i, j])
        for k, c in enumerate(x.cartan_part):
            if c:
                for t, w in enumerate(rep.weights):
                    if w[k]:
                        out[t, t] = out[t, t] + c * w[k]
        return out

    def coordinates(self, x: LieElement) -> list[Gauss]:
        return [x.root_part.get(r, ZERO) for r in self.sys.roots] + list(x.cartan_part)

    def to_text(self) -> str:
        """Deterministic serialization: one line ``alpha beta N`` per summable pair."""
        lines = []
        for a in self.sys.roots:
            for b in self.sys.roots:
                v = self.n_table.get((a, b))
                if v is not None:
                    lines.append(f"{_fmt(a)} {_fmt(b)} {v}")
        lines += [f"h{_fmt(r)} {_fmt(c)}" for r, c in sorted(self.coroot_table.items())]
        return "\n".join(lines) + "\n"

    # -- basis-level bracket (integer coefficients), used by the validators

    def basis_bracket(self, x, y) -> dict:
        """Bracket of two basis keys (root tuple or coroot index) as {key: int}."""
        xr, yr = isinstance(x, tuple), isinstance(y, tuple)
        if not xr and not yr:
            return {}
        if not xr:
            v = self.sys.coroot_labels[self.sys.simple_roots[x]]
            c = sum(u * w for u, w in zip(y, v))
            return {y: c} if c else {}
        if not yr:
            return {k: -v for k, v in self.basis_bracket(y, x).items()}
        s = tuple(p + q for p, q in zip(x, y))
        if not any(s):
            return {i: c for i, c in enumerate(self.coroot_table[x]) if c}
        nv = self.n_table.get((x, y))
        return {s: nv} if nv else {}

    def _bracket_with(self, x, terms: dict) -> dict:
        out: dict = {}
        for k, c in terms.items():
            for k2, c2 in self.basis_bracket(x, k).items():
                out[k2] = out.get(k2, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    def jacobi_violation(self, keys: Iterable | None = None):
        """First basis triple (x, y, z) violating Jacobi, or None."""
        keys = list(self.basis if keys is None else keys)
        for x, y, z in combinations(keys, 3):
            total: dict = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                for k, v in self._bracket_with(a, self.basis_bracket(b, c)).items():
                    total[k] = total.get(k, 0) + v
            if any(total.values()):
                return (x, y, z)
        return None

    def antisymmetry_violation(self):
        for (a, b), v in self.n_table.items():
            if self.n_table.get((b, a)) != -v:
                return (a, b)
        return None

    def chain_violation(self):
        """First pair with |N_{a,b}| != p + 1 (p maximal with b - p a a root)."""
        for (a, b), v in self.n_table.items():
            if abs(v) != self.sys.string_down(b, a) + 1:
                return (a, b)
        return None

    def phi_chain_constants(self, phi: Root, start: Root) -> tuple[int, int]:
        """(|N_{phi,start}|, |N_{-phi,end}|) for the phi-string start, start+phi, end=start+2phi."""
        mid = self.sys.add(start, phi)
        end = self.sys.add(mid, phi)
        if mid not in self.sys.root_set or end not in self.sys.root_set:
            raise ValueError("not a phi-chain of length 2")
        return abs(self.n(phi, start)), abs(self.n(self.sys.neg(phi), end))


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def build_structure_constants(sys: RootSystem) -> StructureConstants:
    series, n = sys.datum.type_label[0], int(sys.datum.type_label[1:])
    rep = minuscule_representation(sys, _minuscule_node(series, n))
    mats: dict[Root, np.ndarray] = {}
    for i, r in enumerate(sys.simple_roots):
        mats[r] = rep.raising[i]
    for xi in sys.positive_roots:
        if xi in mats:
            continue
        for i, a in enumerate(sys.simple_roots):
            beta = sys.sub(xi, a)
            if beta in mats:
                break
        else:
            raise StructureConstantError(f"{xi} has no simple predecessor")
        p = sys.string_down(beta, a)
        m = mats[a] @ mats[beta] - mats[beta] @ mats[a]
        if np.any(m % (p + 1)):
            raise StructureConstantError(f"inexact division building e{xi}")
        mats[xi] = m // (p + 1)
    for xi in sys.positive_roots:
        mats[sys.neg(xi)] = mats[xi].T.copy()

    # h_i as diagonal matrices: weight labels
    h_diag = [np.array([w[i] for w in rep.weights], dtype=np.int64) for i in range(sys.rank)]
    coroots: dict[Root, tuple[int, ...]] = {}
    for r in sys.roots:
        c = sys.coroot_coefficients(r)
        if any(x.denominator != 1 for x in c):
            raise StructureConstantError(f"non-integral coroot for {r}")
        ci = tuple(int(x) for x in c)
        comm = mats[r] @ mats[sys.neg(r)] - mats[sys.neg(r)] @ mats[r]
        expected = sum((k * d for k, d in zip(ci, h_diag)), np.zeros(rep.dim, dtype=np.int64))
        if not np.array_equal(comm, np.diag(expected)):
            raise StructureConstantError(f"[e_a, e_-a] != h_a for a = {r}")
        coroots[r] = ci

    table: dict[tuple[Root, Root], int] = {}
    for a in sys.roots:
        for b in sys.roots:
            s = sys.add(a, b)
            if s not in sys.root_set:
                continue
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            target = mats[s]
            idx = np.flatnonzero(target)[0]
            num, den = int(comm.flat[idx]), int(target.flat[idx])
            if num % den or not np.array_equal(comm, (num // den) * target):
                raise StructureConstantError(f"[e{a}, e{b}] is not a multiple of e{s}")
            table[(a, b)] = num // den
    sc = StructureConstants(sys, table, coroots, rep, mats)
    bad = sc.antisymmetry_violation() or sc.chain_violation()
    if bad:
        raise StructureConstantError(f"invalid structure constants at {bad}")
    return sc


_SC_CACHE: dict[str, StructureConstants] = {}


def structure_constants(series: str, n: int) -> StructureConstants:
    key = f"{series}{n}"
    if key not in _SC_CACHE:
        _SC_CACHE[key] = build_structure_constants(root_system(series, n))
    return _SC_CACHE[key]


# ---------------------------------------------------------------- operations

def bracket(sc: StructureConstants, x: LieElement, y: LieElement) -> LieElement:
    sys = sc.sys
    rank = sys.rank
    cartan = [ZERO] * rank
    terms: dict[Root, Gauss] = {}

    def add_term(r, c):
        terms[r] = terms.get(r, ZERO) + c

    hx = [(i, c) for i, c in enumerate(x.cartan_part) if c]
    hy = [(i, c) for i, c in enumerate(y.cartan_part) if c]
    simple = sys.simple_roots
    labels = sys.coroot_labels
    # [h, e_b] = <b, h> e_b
    for i, c in hx:
        lab = labels[simple[i]]
        for r, d in y.root_part.items():
            w = sum(u * v for u, v in zip(r, lab))
            if w:
                add_term(r, c * d * w)
    for i, c in hy:
        lab = labels[simple[i]]
        for r, d in x.root_part.items():
            w = sum(u * v for u, v in zip(r, lab))
            if w:
                add_term(r, -(c * d * w))
    for a, c in x.root_part.items():
        for b, d in y.root_part.items():
            s = tuple(p + q for p, q in zip(a, b))
            if not any(s):
                cd = c * d
                for k, v in enumerate(sc.coroot_table[a]):
                    if v:
                        cartan[k] = cartan[k] + cd * v
            else:
                nv = sc.n_table.get((a, b))
                if nv:
                    add_term(s, c * d * nv)
    return LieElement(tuple(cartan), terms)


def compact_conjugate(sc: StructureConstants, x: LieElement) -> LieElement:
    """tau(e_a) = -e_{-a}, tau(h) = -h, extended conjugate-linearly."""
    return LieElement(
        tuple(-c.conjugate() for c in x.cartan_part),
        {sc.sys.neg(r): -c.conjugate() for r, c in x.root_part.items()},
    )


def real_span_dimension(elements: list[LieElement], sc: StructureConstants | None = None) -> int:
    """Real dimension of the real span of the elements."""
    if not elements:
        return 0
    if sc is not None:
        rows = [sc.coordinates(x) for x in elements]
    else:
        keys = sorted({r for x in elements for r in x.root_part})
        rows = [list(x.cartan_part) + [x.root_part.get(r, ZERO) for r in keys] for x in elements]
    return real_rank(rows)
