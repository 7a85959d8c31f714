"""Irreducible compact Hermitian symmetric spaces and their (H2)-embeddings.

A space is a simple root system with a cominuscule node c: the noncompact
positive roots (tangent directions, m+) are the positive roots whose
alpha_c coefficient is 1, the compact ones have coefficient 0.

Supported families and their realizations::

    G(p,q)         A_{p+q-1}, node p
    G^{II}(n,n)    D_n, node n
    G^{III}(n,n)   C_n, node n
    Q^n            B_{(n+1)/2} (n odd) or D_{n/2+1} (n even), node 1
    E6, E7         node 1 in the chain-first numbering
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

from .chevalley import LieElement, StructureConstants, structure_constants
from .linalg import complex_rank
from .matrix_models import (
    BlockGenerator,
    MatrixDictionary,
    TangentMatrix,
    disjoint_block_sums,
    lambda_block_generators,
    matrix_dictionary,
    wedge_basis,
)
from .rootsys import Root, RootSystem
from .scalars import ZERO

__all__ = [
    "HSSDescriptor",
    "H2Embedding",
    "CatalogError",
    "ProfileError",
    "build_hss",
    "parse_label",
    "supported_spaces",
    "strongly_orthogonal_cascade",
    "restricted_root_profile",
    "expected_tube",
    "closed_form_dimension",
    "catalog_embeddings",
    "clear_caches",
    "e7_x_expression",
    "e7_root_from_x",
    "E6_PRINTED_NONCOMPACT",
    "E7_PRINTED_NONCOMPACT",
    "printed_list_mismatch",
]


class CatalogError(ValueError):
    """An embedding description does not produce a valid tangent space."""


class ProfileError(RuntimeError):
    """Restricted roots match neither alternative of the restricted root theorem."""


# ---------------------------------------------------------------- labels

_FAMILIES = ("G", "GII", "GIII", "Q", "E6", "E7")


def canonical_label(family: str, params: tuple[int, ...]) -> str:
    if family == "G":
        return f"G({params[0]},{params[1]})"
    if family == "GII":
        return f"G^{{II}}({params[0]},{params[0]})"
    if family == "GIII":
        return f"G^{{III}}({params[0]},{params[0]})"
    if family == "Q":
        return f"Q^{params[0]}"
    return family


def parse_label(text: str) -> tuple[str, tuple[int, ...]]:
    """Accepts e.g. 'G(2,3)', 'G^{II}(4,4)', 'GII(4)', 'Q^5', 'Q5', 'E7'."""
    s = text.replace(" ", "").replace("{", "").replace("}", "").replace("^", "")
    if s in ("E6", "E7"):
        return s, ()
    m = re.fullmatch(r"G(III|II)?\((\d+)(?:,(\d+))?\)", s)
    if m:
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind:
            if b is not None and int(b) != a:
                raise ValueError(f"{text}: Type {kind} spaces need equal parameters")
            return "G" + kind, (a,)
        if b is None:
            raise ValueError(f"{text}: G needs two parameters")
        return "G", (a, int(b))
    m = re.fullmatch(r"Q(\d+)", s)
    if m:
        return "Q", (int(m.group(1)),)
    raise ValueError(f"unsupported space label {text!r}")


def _realization(family: str, params: tuple[int, ...]) -> tuple[str, int, int]:
    """(series, rank, cominuscule node) or ValueError when out of range."""
    if family == "G":
        p, q = params
        if p < 1 or q < 1:
            raise ValueError("G(p,q) needs p, q >= 1")
        return "A", p + q - 1, p
    if family == "GII":
        (n,) = params
        if n < 3:
            raise ValueError("G^{II}(n,n) needs n >= 3")
        return "D", n, n
    if family == "GIII":
        (n,) = params
        if n < 2:
            raise ValueError("G^{III}(n,n) needs n >= 2")
        return "C", n, n
    if family == "Q":
        (n,) = params
        if n < 3:
            raise ValueError("Q^n needs n >= 3")
        return ("B", (n + 1) // 2, 1) if n % 2 else ("D", n // 2 + 1, 1)
    if family in ("E6", "E7"):
        return "E", int(family[1]), 1
    raise ValueError(f"unknown family {family!r}")


def closed_form_dimension(family: str, params: tuple[int, ...]) -> int:
    if family == "G":
        return params[0] * params[1]
    if family == "GII":
        return params[0] * (params[0] - 1) // 2
    if family == "GIII":
        return params[0] * (params[0] + 1) // 2
    if family == "Q":
        return params[0]
    return {"E6": 16, "E7": 27}[family]


def expected_tube(family: str, params: tuple[int, ...]) -> bool:
    """The classical list of tube-type spaces (rank >= 2)."""
    if family == "G":
        return params[0] == params[1] and params[0] >= 2
    if family == "GII":
        return params[0] % 2 == 0 and params[0] >= 4
    if family == "GIII":
        return params[0] >= 2
    if family == "Q":
        return params[0] >= 3
    return family == "E7"


DEFAULT_RANGES = {"G": 4, "GII": 6, "GIII": 4, "Q": 6}


def supported_spaces(max_rank: int | None = None) -> list[tuple[str, tuple[int, ...]]]:
    """All (family, params) in the default test range, optionally capped by root-system rank."""
    out = []
    for p in range(1, DEFAULT_RANGES["G"] + 1):
        for q in range(1, DEFAULT_RANGES["G"] + 1):
            out.append(("G", (p, q)))
    out += [("GII", (n,)) for n in range(3, DEFAULT_RANGES["GII"] + 1)]
    out += [("GIII", (n,)) for n in range(2, DEFAULT_RANGES["GIII"] + 1)]
    out += [("Q", (n,)) for n in range(3, DEFAULT_RANGES["Q"] + 1)]
    out += [("E6", ()), ("E7", ())]
    if max_rank is not None:
        out = [s for s in out if _realization(*s)[1] <= max_rank]
    return out


# ---------------------------------------------------------------- descriptor

@dataclass(frozen=True, eq=False)
class HSSDescriptor:
    label: str
    family: str
    params: tuple[int, ...]
    sc: StructureConstants = field(repr=False)
    cominuscule_root: int  # 1-based simple root index
    noncompact_pos: tuple[Root, ...]
    compact_pos: tuple[Root, ...]
    pi: tuple[Root, ...]
    rank_r: int
    dim_n: int
    tube: bool
    profile: dict = field(repr=False, default_factory=dict)

    @property
    def sys(self) -> RootSystem:
        return self.sc.sys

    @property
    def dim_g(self) -> int:
        return len(self.sys.roots) + self.sys.rank

    @cached_property
    def noncompact_set(self) -> frozenset[Root]:
        return frozenset(self.noncompact_pos)

    @property
    def matrix_kind(self) -> str | None:
        return {"G": "I", "GII": "II", "GIII": "III"}.get(self.family)

    @cached_property
    def dictionary(self) -> MatrixDictionary | None:
        if self.matrix_kind is None:
            return None
        return matrix_dictionary(self.sc, self.cominuscule_root, self.matrix_kind, self.noncompact_pos)

    def diagonal_vector(self) -> LieElement:
        return _sum_e(self.sc, self.pi)

    def coordinates(self, x: LieElement) -> list:
        """Coefficients of an m+ element over the noncompact positive roots."""
        return x.coordinates(self.noncompact_pos)


def _sum_e(sc: StructureConstants, roots: Sequence[Root], coeffs=None) -> LieElement:
    coeffs = coeffs or [1] * len(roots)
    return LieElement((ZERO,) * sc.rank, {tuple(r): c for r, c in zip(roots, coeffs)})


def strongly_orthogonal(sys: RootSystem, a: Root, b: Root) -> bool:
    return sys.add(a, b) not in sys.root_set and sys.sub(a, b) not in sys.root_set


def strongly_orthogonal_cascade(hss_or_sys, noncompact: Sequence[Root] | None = None) -> list[Root]:
    """Greedy cascade: repeatedly the highest noncompact root orthogonal to all chosen."""
    if isinstance(hss_or_sys, HSSDescriptor):
        sys, noncompact = hss_or_sys.sys, hss_or_sys.noncompact_pos
    else:
        sys = hss_or_sys
    chosen: list[Root] = []
    for r in sorted(noncompact, key=lambda x: (sum(x), x), reverse=True):
        if all(strongly_orthogonal(sys, r, c) for c in chosen):
            chosen.append(r)
    return chosen


def restricted_root_profile(sys: RootSystem, pi: Sequence[Root]) -> dict:
    """Restrictions of all roots to the span of Pi in coordinates over Pi.

    The coefficient on alpha_i is <beta, alpha_i^vee> / 2.  Returns the set of
    nonzero restrictions and the classification ('tube' or 'non-tube').
    """
    r = len(pi)
    restrictions = set()
    for beta in sys.roots:
        v = tuple(Fraction(sys.fast_pairing(beta, a), 2) for a in pi)
        if any(v):
            restrictions.add(v)
    half = Fraction(1, 2)
    tube_set = set()
    for i in range(r):
        for j in range(r):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [Fraction(0)] * r
                    v[i] += si * half
                    v[j] += sj * half
                    if any(v):
                        tube_set.add(tuple(v))
    short = set()
    for i in range(r):
        for s in (1, -1):
            v = [Fraction(0)] * r
            v[i] = s * half
            short.add(tuple(v))
    if restrictions == tube_set:
        kind = "tube"
    elif restrictions == tube_set | short:
        kind = "non-tube"
    else:
        raise ProfileError(f"restricted roots fit neither alternative: {sorted(restrictions - tube_set - short)}")
    return {"kind": kind, "restrictions": sorted(restrictions)}


@lru_cache(maxsize=None)
def _build(family: str, params: tuple[int, ...]) -> HSSDescriptor:
    series, rank, node = _realization(family, params)
    sc = structure_constants(series, rank)
    sys = sc.sys
    c = node - 1
    for root in sys.roots:
        if root[c] not in (-1, 0, 1):
            raise ValueError(f"node {node} is not cominuscule for {series}{rank}")
    noncompact = tuple(x for x in sys.positive_roots if x[c] == 1)
    compact = tuple(x for x in sys.positive_roots if x[c] == 0)
    pi = tuple(strongly_orthogonal_cascade(sys, noncompact))
    for a, b in combinations(pi, 2):
        assert strongly_orthogonal(sys, a, b)
    profile = restricted_root_profile(sys, pi)
    label = canonical_label(family, params)
    dim_n = len(noncompact)
    if dim_n != closed_form_dimension(family, params):
        raise ValueError(f"{label}: dimension {dim_n} differs from the closed form")
    return HSSDescriptor(label, family, params, sc, node, noncompact, compact, pi, len(pi), dim_n,
                         profile["kind"] == "tube", profile)


def build_hss(label, params: Sequence[int] | None = None) -> HSSDescriptor:
    """Descriptor from a label string ('G(2,3)', 'Q^5', 'E7') or (family, params)."""
    if params is None and isinstance(label, tuple):
        label, params = label
    if params is None:
        family, prm = parse_label(label)
    else:
        family, prm = label, tuple(params)
        if family not in _FAMILIES:
            family, _ = parse_label(label + "(" + ",".join(map(str, prm)) + ")") if family != "Q" else ("Q", prm)
    return _build(family, tuple(prm))


# ---------------------------------------------------------------- E6 / E7 data

E6_PRINTED_NONCOMPACT = (
    "100000", "110000", "111000", "111001",
    "111100", "111101", "111110", "112101",
    "111111", "122101", "112111", "122111",
    "112211", "122211", "123211", "123212",
)

E7_PRINTED_NONCOMPACT = (
    "1000000", "1100000", "1110000",
    "1111000", "1111001", "1111100", "1111110",
    "1111101", "1111111", "1112101", "1112111",
    "1122101", "1122111", "1122111", "1222101",
    "1122211", "1222111", "1123211", "1222211",
    "1123212", "1223211", "1223212", "1233211", "1233212",
    "1234212", "1234312", "1234322",
)


def printed_list_mismatch(hss: HSSDescriptor, printed: Sequence[str]) -> dict:
    """Compare a printed list of coefficient strings with the derived noncompact roots."""
    derived = {"".join(map(str, r)) for r in hss.noncompact_pos}
    seen, duplicates = set(), []
    for s in printed:
        if s in seen:
            duplicates.append(s)
        seen.add(s)
    return {
        "printed": len(printed),
        "derived": len(derived),
        "duplicates": duplicates,
        "missing_from_printed": sorted(derived - seen),
        "not_roots": sorted(seen - derived),
    }


# x-model of E7: alpha_k = x_k - x_{k+1} (k <= 6), alpha_7 = x5 + x6 + x7, composed
# with the transposition x3 <-> x7 so that the cascade reads
# {x1 - x2, x1 + x2 + x3, d - x3} with d = x1 + ... + x7.
def _e7_simple_x() -> tuple[tuple[int, ...], ...]:
    base = [[0] * 7 for _ in range(7)]
    for k in range(6):
        base[k][k] = 1
        base[k][k + 1] = -1
    base[6][4] = base[6][5] = base[6][6] = 1
    swap = {2: 6, 6: 2}
    return tuple(tuple(row[swap.get(i, i)] for i in range(7)) for row in base)


def e7_x_vector(root: Root) -> tuple[int, ...]:
    simple = _e7_simple_x()
    return tuple(sum(c * simple[k][i] for k, c in enumerate(root)) for i in range(7))


def _x_name(v: Sequence[int]) -> str:
    ones = [i + 1 for i, x in enumerate(v) if x == 1]
    neg = [i + 1 for i, x in enumerate(v) if x == -1]
    if sorted(v) == [-1, 0, 0, 0, 0, 0, 1]:
        return f"x{ones[0]}-x{neg[0]}"
    if sorted(v) == [0, 0, 0, 0, 1, 1, 1]:
        return "+".join(f"x{i}" for i in ones)
    if sorted(v) == [0, 1, 1, 1, 1, 1, 1]:
        return f"d-x{[i + 1 for i, x in enumerate(v) if x == 0][0]}"
    sign = "-" if sum(v) < 0 else ""
    if sign:
        return "-(" + _x_name([-x for x in v]) + ")"
    raise ValueError(f"{v} is not an E7 root in x-coordinates")


def e7_x_expression(root: Root) -> str:
    """Name of an E7 root in the x-model: 'x1-x3', 'x1+x2+x3', 'd-x3'."""
    return _x_name(e7_x_vector(root))


def e7_root_from_x(expr: str) -> Root:
    hss = build_hss("E7")
    table = {e7_x_expression(r): r for r in hss.sys.roots}
    key = expr.replace(" ", "")
    if key not in table:
        raise ValueError(f"{expr!r} is not an E7 root in x-coordinates")
    return table[key]


# ---------------------------------------------------------------- embeddings

@dataclass(frozen=True, eq=False)
class H2Embedding:
    name: str
    ambient: HSSDescriptor
    generators: tuple[LieElement, ...]
    dim_m: int
    diagonal_type: bool
    block_support: tuple[BlockGenerator, ...] | None = None
    catalog_error: str | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.catalog_error:
            return
        if len(self.generators) != self.dim_m:
            raise CatalogError(f"{self.name}: {len(self.generators)} generators for dimension {self.dim_m}")
        nc = self.ambient.noncompact_set
        for g in self.generators:
            if any(g.cartan_part) or not set(g.root_part) <= nc:
                raise CatalogError(f"{self.name}: generator {g} is not in m+")
        rows = [self.ambient.coordinates(g) for g in self.generators]
        if complex_rank(rows) != self.dim_m:
            raise CatalogError(f"{self.name}: generators are linearly dependent")


def _embedding(name, hss, gens, dim_m, diagonal, blocks=None, notes=None, check_count=True):
    gens = tuple(gens)
    error = None
    if check_count and len(gens) != dim_m:
        error = f"description yields {len(gens)} generators, expected dim {dim_m}"
    return H2Embedding(name, hss, gens, dim_m, diagonal, tuple(blocks) if blocks is not None else None,
                       error, notes or {})


def _root_by_string(hss: HSSDescriptor, s: str) -> Root:
    r = tuple(int(ch) for ch in s)
    if r not in hss.sys.root_set:
        raise CatalogError(f"{s} is not a root of {hss.label}")
    return r


def _exceptional(hss: HSSDescriptor) -> list[H2Embedding]:
    sc, sys = hss.sc, hss.sys
    g = sys.highest_root
    simple = sys.simple_roots
    add, sub = sys.add, sys.sub
    a1, a2, a3 = simple[0], add(simple[0], simple[1]), add(add(simple[0], simple[1]), simple[2])
    out = []
    if hss.family == "E6":
        ga6 = sub(g, simple[5])
        out.append(_embedding("P2 diagonal", hss, [_sum_e(sc, [a1, ga6]), _sum_e(sc, [a2, g])], 2, True))
        out.append(_embedding("P2xP2", hss, [_sum_e(sc, [r]) for r in (a1, a2, ga6, g)], 4, True))
        roots = [r for r in hss.noncompact_pos if r[5] == 0] + [g]
        out.append(_embedding("P5xP1", hss, [_sum_e(sc, [r]) for r in roots], 6, True,
                              notes={"description": "root vectors without alpha6 and e_gamma"}))
    else:
        ga6 = sub(g, simple[5])
        ga56 = sub(ga6, simple[4])
        out.append(_embedding("P3 diagonal", hss,
                              [_sum_e(sc, [a1, g]), _sum_e(sc, [a2, ga6]), _sum_e(sc, [a3, ga56])], 3, False))
        out.append(_embedding("P3xP3", hss, [_sum_e(sc, [r]) for r in (a1, a2, a3, g, ga6, ga56)], 6, False))
        literal = [r for r in hss.noncompact_pos if r[4] == 0] + [g]
        out.append(_embedding("P5xP2", hss, [_sum_e(sc, [r]) for r in literal], 7, False,
                              notes={"description": "root vectors without alpha5 and e_gamma",
                                     "generator_count": len(literal)}))
        a4 = add(a3, simple[3])
        a47 = add(a4, simple[6])
        boxed = [a1, a2, a3, a4, a47, g, ga6]
        out.append(_embedding("P5xP2 (figure subdiagram)", hss, [_sum_e(sc, [r]) for r in boxed], 7, False,
                              notes={"description": "subdiagram {a1,a2,a3,a4,a7} and {a6,-gamma}",
                                     "added_relative_to_literal": [list(x) for x in boxed if x not in literal]}))
    return out


# classical helpers: atoms are single full-rank blocks in normalized matrix coordinates

def _unit(p, q, i, j, symmetry="none", value=1) -> TangentMatrix:
    return TangentMatrix.from_entries(p, q, {(i, j): Fraction(value)}, symmetry)


def _atom(mat: TangentMatrix, rows, cols) -> BlockGenerator:
    return BlockGenerator(mat, tuple(sorted(rows)), tuple(sorted(cols)))


def _pair_atom(n, i, j, symmetry) -> BlockGenerator:
    return _atom(_unit(n, n, i, j, symmetry), (i, j), (i, j))


def _matrix_rank_of(hss: HSSDescriptor, blocks: Sequence[BlockGenerator], gens: Sequence[LieElement]) -> int:
    """Largest matrix rank among the block family and a few fixed combinations of V."""
    d = hss.dictionary
    best = max((b.matrix.rank() for b in blocks), default=0)
    for weights in ((1,) * len(gens), tuple(range(1, len(gens) + 1)), tuple(2 ** k for k in range(len(gens)))):
        x = LieElement((ZERO,) * hss.sc.rank, {})
        for w, g in zip(weights, gens):
            x = x + g.scale(w)
        best = max(best, d.tangent(x).rank())
    return best


def hss_rank_of_matrix_rank(hss: HSSDescriptor, matrix_rank: int) -> int:
    return matrix_rank // 2 if hss.matrix_kind == "II" else matrix_rank


def _classical(hss: HSSDescriptor, name: str, atoms: Sequence[BlockGenerator], basis: Sequence[TangentMatrix],
               expected_diagonal: bool, notes: dict | None = None) -> H2Embedding:
    d = hss.dictionary
    gens = [d.element(m) for m in basis]
    principal = hss.matrix_kind != "I"
    blocks = disjoint_block_sums(atoms, principal=principal)
    computed = hss_rank_of_matrix_rank(hss, _matrix_rank_of(hss, blocks, gens)) == hss.rank_r
    notes = dict(notes or {})
    notes["diagonal_type_computed"] = computed
    if computed != expected_diagonal:
        raise CatalogError(f"{hss.label} {name}: computed diagonal type {computed} != metadata {expected_diagonal}")
    emb = _embedding(name, hss, gens, len(gens), expected_diagonal, blocks, notes)
    for b in blocks:
        x = d.element(b.matrix)
        if complex_rank([hss.coordinates(g) for g in gens] + [hss.coordinates(x)]) != len(gens):
            raise CatalogError(f"{name}: block generator outside the tangent space")
    return emb


def _type_one(hss: HSSDescriptor) -> list[H2Embedding]:
    p, q = hss.params
    out = []
    # G(r,s) x G(p-r,q-s) with r/s = p/q
    for r in range(1, p):
        if (r * q) % p:
            continue
        s = r * q // p
        if not 0 < s < q:
            continue
        cells = [(i, j) for i in range(r) for j in range(s)] + [(i, j) for i in range(r, p) for j in range(s, q)]
        atoms = [_atom(_unit(p, q, i, j), (i,), (j,)) for i, j in cells]
        out.append(_classical(hss, f"G({r},{s})xG({p - r},{q - s})", atoms, [a.matrix for a in atoms], True))
    if p == q and p >= 2:
        n = p
        pairs = list(combinations(range(n), 2))
        atoms = [_pair_atom(n, i, j, "antisymmetric") for i, j in pairs]
        basis = [TangentMatrix(a.matrix.entries) for a in atoms]
        atoms = [BlockGenerator(TangentMatrix(a.matrix.entries), a.rows, a.cols) for a in atoms]
        out.append(_classical(hss, f"G^{{II}}({n},{n})", atoms, basis, n % 2 == 0))
        atoms = [_atom(_unit(n, n, i, i), (i,), (i,)) for i in range(n)]
        atoms += [BlockGenerator(TangentMatrix(_unit(n, n, i, j, "symmetric").entries), (i, j), (i, j))
                  for i, j in pairs]
        out.append(_classical(hss, f"G^{{III}}({n},{n})", atoms, [a.matrix for a in atoms], True))
    if (p, q) == (3, 3):
        gens = lambda_block_generators(3, 2)
        out.append(_classical(hss, "P3 via Lambda^2", gens, [g.matrix for g in gens], False,
                              notes={"representation": "Lambda^2 C^4"}))
    if (p, q) == (4, 4):
        from .clifford_spin import spin_tangent_space_even
        mats = spin_tangent_space_even(3)
        full = tuple(range(4))
        atoms = [BlockGenerator(mats[0], full, full)]
        out.append(_classical(hss, "Q^6 via half-spin", atoms, mats, True,
                              notes={"representation": "half-spin of so(8)"}))
    return out


def _type_two_three(hss: HSSDescriptor) -> list[H2Embedding]:
    (n,) = hss.params
    sym = "antisymmetric" if hss.family == "GII" else "symmetric"
    tag = "II" if hss.family == "GII" else "III"
    out = []

    def factor_atoms(idx):
        atoms = [_pair_atom(n, i, j, sym) for i, j in combinations(idx, 2)]
        if sym == "symmetric":
            atoms = [_pair_atom(n, i, i, sym) for i in idx] + atoms
            atoms = [BlockGenerator(a.matrix, tuple(sorted(set(a.rows))), tuple(sorted(set(a.cols)))) for a in atoms]
        return atoms

    if n % 2 == 0:
        r = n // 2
        atoms = [BlockGenerator(_unit(n, n, i, r + j, sym), (i, r + j), (i, r + j))
                 for i in range(r) for j in range(r)]
        out.append(_classical(hss, f"G({r},{r})", atoms, [a.matrix for a in atoms], True))
    lo = 2 if tag == "II" else 1
    for r in range(lo, n // 2 + 1):
        if n - r < lo:
            continue
        atoms = factor_atoms(range(r)) + factor_atoms(range(r, n))
        if tag == "II":
            diag = r // 2 + (n - r) // 2 == n // 2
        else:
            diag = True
        out.append(_classical(hss, f"G^{{{tag}}}({r},{r})xG^{{{tag}}}({n - r},{n - r})", atoms,
                              [a.matrix for a in atoms], diag))
    return out


def _quadric(hss: HSSDescriptor) -> list[H2Embedding]:
    (n,) = hss.params
    if n < 4:
        return []
    sys, sc = hss.sys, hss.sc
    eps = _epsilon_images(sys, hss.family, n)
    by_eps = {tuple(sum(c * eps[k][i] for k, c in enumerate(r)) for i in range(len(eps[0]))): r
              for r in hss.noncompact_pos}
    dim_e = len(eps[0])

    def vec(pairs):
        v = [0] * dim_e
        for i, s in pairs:
            v[i] += s
        return tuple(v)

    last = dim_e - 1
    gens = []
    if n % 2 == 0:
        # D_m, subquadric of dimension n-1 fixing a non-isotropic vector of the last plane
        for k in range(1, last):
            gens.append(_sum_e(sc, [by_eps[vec([(0, 1), (k, -1)])]]))
            gens.append(_sum_e(sc, [by_eps[vec([(0, 1), (k, 1)])]]))
        gens.append(_sum_e(sc, [by_eps[vec([(0, 1), (last, -1)])], by_eps[vec([(0, 1), (last, 1)])]]))
    else:
        # B_m, drop the short direction e_{eps_1}
        for k in range(1, dim_e):
            gens.append(_sum_e(sc, [by_eps[vec([(0, 1), (k, -1)])]]))
            gens.append(_sum_e(sc, [by_eps[vec([(0, 1), (k, 1)])]]))
    return [_embedding(f"Q^{n - 1}", hss, gens, n - 1, True)]


def _epsilon_images(sys: RootSystem, family: str, n: int) -> list[tuple[int, ...]]:
    """Simple roots of B_m or D_m in the orthonormal epsilon basis."""
    m = sys.rank
    out = []
    for k in range(m - 1):
        v = [0] * m
        v[k], v[k + 1] = 1, -1
        out.append(tuple(v))
    v = [0] * m
    if n % 2:  # B_m: alpha_m = eps_m
        v[m - 1] = 1
    else:  # D_m: alpha_m = eps_{m-1} + eps_m
        v[m - 2] = v[m - 1] = 1
    out.append(tuple(v))
    return out


def _tube_common(hss: HSSDescriptor) -> list[H2Embedding]:
    if not hss.tube or hss.rank_r < 2:
        return []
    sc = hss.sc
    curve = _embedding("diagonal curve", hss, [hss.diagonal_vector()], 1, True)
    poly = _embedding(f"polysphere (P1)^{hss.rank_r}", hss, [_sum_e(sc, [a]) for a in hss.pi], hss.rank_r, True)
    if hss.dictionary is not None:
        d = hss.dictionary
        full = tuple(range(d.shape[0]))
        v = d.tangent(hss.diagonal_vector())
        blk = (BlockGenerator(v, full, full),)
        curve = H2Embedding(curve.name, hss, curve.generators, 1, True, blk)
        poly = H2Embedding(poly.name, hss, poly.generators, hss.rank_r, True, blk)
    return [curve, poly]


_CATALOG_CACHE: dict[str, list[H2Embedding]] = {}


def catalog_embeddings(hss: HSSDescriptor) -> list[H2Embedding]:
    if hss.label not in _CATALOG_CACHE:
        out = _tube_common(hss)
        if hss.family in ("E6", "E7"):
            out += _exceptional(hss)
        elif hss.family == "G":
            out += _type_one(hss)
        elif hss.family in ("GII", "GIII"):
            out += _type_two_three(hss)
        elif hss.family == "Q":
            out += _quadric(hss)
        _CATALOG_CACHE[hss.label] = out
    return list(_CATALOG_CACHE[hss.label])


def clear_caches() -> None:
    """Drop memoized root systems, structure constants, spaces and catalogs."""
    from . import chevalley, rootsys

    _build.cache_clear()
    _CATALOG_CACHE.clear()
    chevalley._SC_CACHE.clear()
    rootsys._CACHE.clear()
