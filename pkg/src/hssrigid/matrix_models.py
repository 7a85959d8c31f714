"""Matrix realizations of the classical tangent spaces (Types I, II, III).

The tangent space of G(p,q), G^II(n,n) or G^III(n,n) at the base point is
identified with p x q, antisymmetric or symmetric matrices through the
standard representation: it splits into two grading pieces V_1 (rows) and
V_0 (columns) and a vector of m+ acts as a block V_0 -> V_1.  For Types II
and III the columns are ordered as the negatives of the rows and rescaled by
a diagonal sign so that every block is antisymmetric or symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .chevalley import LieElement, StructureConstants
from .linalg import complex_rank, rational_rank
from .report import CATALOG_ERROR, FAIL, PASS, CheckReport, make_report
from .rootsys import Root
from .scalars import Gauss, ZERO

__all__ = [
    "TangentMatrix",
    "BlockGenerator",
    "MatrixDictionary",
    "matrix_dictionary",
    "matrix_rank",
    "h_matrix",
    "condition_c_check",
    "disjoint_block_sums",
    "wedge_basis",
    "wedge_operator",
    "lambda_model",
    "lambda_rep_rank",
    "lambda_block_generators",
    "block_span_lemma_check",
    "veronese_graph_tangent",
    "veronese_graph_rank",
    "degenerate_control_rank",
]

SYMMETRY = {"I": "none", "II": "antisymmetric", "III": "symmetric"}


def _exact(x):
    if isinstance(x, Gauss):
        return x.re if x.im == 0 else x
    return Fraction(x)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    rows = [list(r) for r in rows]
    if any(isinstance(x, Gauss) and x.im for r in rows for x in r):
        return complex_rank(rows)
    return rational_rank([[x.re if isinstance(x, Gauss) else x for x in r] for r in rows])


@dataclass(frozen=True)
class TangentMatrix:
    entries: tuple[tuple, ...]
    symmetry: str = "none"

    def __post_init__(self):
        ent = tuple(tuple(_exact(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if self.symmetry not in ("none", "symmetric", "antisymmetric"):
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if self.symmetry != "none":
            n = len(ent)
            if any(len(r) != n for r in ent):
                raise ValueError("constrained matrices must be square")
            sign = 1 if self.symmetry == "symmetric" else -1
            for i in range(n):
                for j in range(n):
                    if ent[i][j] != sign * ent[j][i]:
                        raise ValueError(f"entry ({i},{j}) violates {self.symmetry} constraint")

    @classmethod
    def zeros(cls, p: int, q: int, symmetry: str = "none") -> "TangentMatrix":
        return cls(tuple((0,) * q for _ in range(p)), symmetry)

    @classmethod
    def from_entries(cls, p: int, q: int, entries: dict, symmetry: str = "none") -> "TangentMatrix":
        """Matrix from {(i, j): value}; the mirrored entry is filled in for II/III."""
        m = [[Fraction(0)] * q for _ in range(p)]
        sign = {"none": 0, "symmetric": 1, "antisymmetric": -1}[symmetry]
        for (i, j), v in entries.items():
            m[i][j] = m[i][j] + v
            if sign and i != j:
                m[j][i] = m[j][i] + sign * v
        return cls(tuple(tuple(r) for r in m), symmetry)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def rank(self) -> int:
        return matrix_rank(self.entries)

    def support(self) -> set[tuple[int, int]]:
        return {(i, j) for i, row in enumerate(self.entries) for j, x in enumerate(row) if x}

    def __add__(self, other: "TangentMatrix") -> "TangentMatrix":
        sym = self.symmetry if self.symmetry == other.symmetry else "none"
        return TangentMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), sym)

    def scale(self, c) -> "TangentMatrix":
        return TangentMatrix(tuple(tuple(c * a for a in r) for r in self.entries), self.symmetry)

    def submatrix(self, rows, cols) -> list[list]:
        return [[self.entries[i][j] for j in cols] for i in rows]


@dataclass(frozen=True)
class BlockGenerator:
    matrix: TangentMatrix
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def violation(self) -> str | None:
        """Reason the block invariants fail, or None."""
        rows, cols = set(self.rows), set(self.cols)
        outside = [pos for pos in self.matrix.support() if pos[0] not in rows or pos[1] not in cols]
        if outside:
            return f"entries outside the block at {sorted(outside)[:4]}"
        if len(self.rows) != len(self.cols):
            return f"block {len(self.rows)}x{len(self.cols)} is not square"
        r = matrix_rank(self.matrix.submatrix(self.rows, self.cols))
        if r != len(self.rows):
            return f"block rank {r} < {len(self.rows)}"
        return None


# ---------------------------------------------------------------- dictionary

@dataclass(frozen=True, eq=False)
class MatrixDictionary:
    """Exact correspondence between m+ (or m-) and block matrices."""

    sc: StructureConstants
    kind: str
    rows: tuple[int, ...]  # representation indices of V_1
    cols: tuple[int, ...]  # representation indices of V_0
    signs: tuple[int, ...]  # diagonal column signs
    noncompact: tuple[Root, ...]

    @property
    def symmetry(self) -> str:
        return SYMMETRY[self.kind]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def raw_block(self, x: LieElement) -> list[list]:
        m = self.sc.matrix(x)
        return [[m[i, j] for j in self.cols] for i in self.rows]

    def tangent(self, x: LieElement) -> TangentMatrix:
        """Normalized block of x in m+."""
        b = self.raw_block(x)
        return TangentMatrix(tuple(tuple(b[i][j] * self.signs[j] for j in range(len(self.cols)))
                                   for i in range(len(self.rows))), self.symmetry)

    def minus_block(self, u: LieElement) -> list[list]:
        """Normalized q x p block of u in m- (V_1 -> V_0), compatible with h_matrix."""
        m = self.sc.matrix(u)
        return [[m[j, i] * self.signs[c] for i in self.rows] for c, j in enumerate(self.cols)]

    def positions(self, root: Root) -> list[tuple[int, int]]:
        t = self.tangent(self.sc.e(root))
        return sorted(t.support())

    def element(self, mat: TangentMatrix) -> LieElement:
        """Inverse of ``tangent``: the m+ element with the given normalized block."""
        terms = {}
        for root in self.noncompact:
            t = self.tangent(self.sc.e(root))
            i, j = min(t.support())
            v = mat.entries[i][j]
            if v:
                terms[root] = Gauss(v) / t.entries[i][j] if not isinstance(v, Gauss) else v / t.entries[i][j]
        x = LieElement((ZERO,) * self.sc.rank, terms)
        if self.tangent(x).entries != mat.entries:
            raise ValueError("matrix is not in the image of the dictionary")
        return x


def _grades(sc: StructureConstants, node: int) -> list[int]:
    rep = sc.representation
    grade = [0] * rep.dim
    for t in range(1, rep.dim):
        for i, e in enumerate(rep.raising):
            s = np.flatnonzero(e[:, t])
            if len(s) and s[0] < t:
                grade[t] = grade[s[0]] - (1 if i == node - 1 else 0)
                break
        else:
            raise ValueError("weight graph is not connected")
    return grade


def matrix_dictionary(sc: StructureConstants, node: int, kind: str,
                      noncompact: Sequence[Root]) -> MatrixDictionary:
    if kind not in SYMMETRY:
        raise ValueError(f"unknown matrix type {kind!r}")
    grade = _grades(sc, node)
    if set(grade) != {0, -1}:
        raise ValueError("the standard representation is not two-step graded")
    weights = sc.representation.weights
    rows = tuple(t for t in range(len(grade)) if grade[t] == 0)
    cols = tuple(t for t in range(len(grade)) if grade[t] == -1)
    signs = [1] * len(cols)
    if kind != "I":
        index = {w: t for t, w in enumerate(weights)}
        cols = tuple(index[tuple(-x for x in weights[r])] for r in rows)
        if sorted(cols) != sorted(t for t in range(len(grade)) if grade[t] == -1):
            raise ValueError("columns are not the negatives of rows")
        sign = -1 if kind == "II" else 1
        blocks = []
        for root in noncompact:
            m = sc.root_matrices[root]
            blocks.append([[int(m[i, j]) for j in cols] for i in rows])
        # propagate B[i][j] s_j = sign * B[j][i] s_i
        known = {0: 1}
        stack = [0]
        while stack:
            i = stack.pop()
            for b in blocks:
                for j in range(len(rows)):
                    if j != i and b[i][j] and j not in known:
                        known[j] = sign * b[j][i] * known[i] * b[i][j]
                        stack.append(j)
        if len(known) != len(rows):
            raise ValueError("sign normalization is not connected")
        signs = [known[j] for j in range(len(rows))]
        for b in blocks:
            for i in range(len(rows)):
                for j in range(len(rows)):
                    if b[i][j] * signs[j] != sign * b[j][i] * signs[i]:
                        raise ValueError("no diagonal sign makes the blocks (anti)symmetric")
    return MatrixDictionary(sc, kind, rows, cols, tuple(signs), tuple(noncompact))


# ---------------------------------------------------------------- operations

def h_matrix(d: TangentMatrix, a: TangentMatrix | Sequence[Sequence]) -> TangentMatrix:
    """2 D A D for D in m+ (p x q) and A in m- (q x p)."""
    dm = np.array(d.entries, dtype=object)
    am = np.array(a.entries if isinstance(a, TangentMatrix) else a, dtype=object)
    p, q = dm.shape if dm.size else (len(d.entries), 0)
    if am.shape != (q, p):
        raise ValueError(f"shape mismatch: D is {p}x{q}, A is {am.shape[0]}x{am.shape[1]}")
    out = 2 * dm.dot(am).dot(dm)
    sym = d.symmetry if not isinstance(a, TangentMatrix) or a.symmetry == d.symmetry else "none"
    return TangentMatrix(tuple(tuple(row) for row in out.tolist()), sym)


def _positions(p: int, q: int, symmetry: str) -> list[tuple[int, int]]:
    if symmetry == "none":
        return [(i, j) for i in range(p) for j in range(q)]
    return [(i, j) for i in range(p) for j in range(i, q)]


def condition_c_check(generators: Sequence[BlockGenerator], p: int, q: int, symmetry: str = "none", *,
                      space_label: str = "", embedding_name: str | None = None) -> CheckReport:
    """Every position (up to symmetry) lies in some full-rank square block."""
    for k, g in enumerate(generators):
        reason = g.violation()
        if reason is None and symmetry != "none" and tuple(g.rows) != tuple(g.cols):
            reason = "block is not principal"
        if reason:
            return CheckReport("condition-c", space_label, CATALOG_ERROR, "full-rank square blocks",
                               reason, "block generators are full rank on their blocks", embedding_name,
                               {"generator": k, "rows": list(g.rows), "cols": list(g.cols)})
    covered = set()
    for g in generators:
        for i in g.rows:
            for j in g.cols:
                covered.add((i, j))
                if symmetry != "none":
                    covered.add((j, i))
    wanted = _positions(p, q, symmetry)
    missing = [pos for pos in wanted if pos not in covered]
    notes = {}
    if symmetry != "none":
        notes["reading"] = "diagonal positions count as covered when a principal block contains them"
    return make_report("condition-c", space_label, len(wanted), len(wanted) - len(missing),
                       claim="block supports cover every matrix position", embedding_name=embedding_name,
                       witness={"uncovered": missing[:8]} if missing else None, notes=notes)


def disjoint_block_sums(atoms: Sequence[BlockGenerator], principal: bool = False) -> list[BlockGenerator]:
    """All sums of atoms with pairwise disjoint row sets and column sets.

    A sum of full-rank blocks on disjoint rows and columns is full rank on the
    union block, so this turns a set of atoms into a Condition C family.  With
    ``principal`` the row and column sets are identified (Types II and III).
    """
    out: list[BlockGenerator] = []

    def used(g: BlockGenerator) -> set:
        return set(g.rows) | set(g.cols) if principal else set()

    def rec(start: int, acc: BlockGenerator | None, rows: set, cols: set):
        if acc is not None:
            out.append(acc)
        for k in range(start, len(atoms)):
            a = atoms[k]
            ar, ac = set(a.rows), set(a.cols)
            if principal:
                if (ar | ac) & (rows | cols):
                    continue
            elif ar & rows or ac & cols:
                continue
            if acc is None:
                nxt = a
            else:
                nxt = BlockGenerator(acc.matrix + a.matrix, tuple(sorted(rows | ar)), tuple(sorted(cols | ac)))
            rec(k + 1, nxt, rows | ar, cols | ac)

    rec(0, None, set(), set())
    return out


# ---------------------------------------------------------------- exterior powers

def wedge_basis(dim: int, m: int) -> list[tuple[int, ...]]:
    """m-subsets of {1..dim} in lexicographic order."""
    return list(combinations(range(1, dim + 1), m))


def wedge_operator(images: dict[int, dict[int, int]], dim: int, m: int) -> dict:
    """Derivation action on the wedge basis of an endomorphism of W.

    ``images[j]`` is {i: c} with T(w_j) = sum c w_i.  Returns {(I, J): coeff}
    meaning T(w_I) has coefficient coeff on w_J.
    """
    out: dict = {}
    for wedge in wedge_basis(dim, m):
        for pos, j in enumerate(wedge):
            for i, c in images.get(j, {}).items():
                rest = wedge[:pos] + (i,) + wedge[pos + 1:]
                if len(set(rest)) < m:
                    continue
                # sort with sign
                arr = list(rest)
                sign = 1
                for a in range(m):
                    for b in range(m - 1 - a):
                        if arr[b] > arr[b + 1]:
                            arr[b], arr[b + 1] = arr[b + 1], arr[b]
                            sign = -sign
                key = (wedge, tuple(arr))
                out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def lambda_model(n: int, m: int, target: int = 1) -> TangentMatrix:
    """Block of T (T(w_{n+1}) = w_target) on Lambda^m W.

    Rows are wedges containing w_{n+1}, columns wedges without it.
    """
    action = wedge_operator({n + 1: {target: 1}}, n + 1, m)
    rows = [w for w in wedge_basis(n + 1, m) if n + 1 in w]
    cols = [w for w in wedge_basis(n + 1, m) if n + 1 not in w]
    entries = [[action.get((r, c), 0) for c in cols] for r in rows]
    for (src, _dst), _v in action.items():
        assert n + 1 in src
    return TangentMatrix(tuple(tuple(r) for r in entries))


def _check_lambda_range(n: int, m: int):
    if n < 3 or not 1 < m < n:
        raise ValueError(f"need n >= 3 and 1 < m < n, got n={n}, m={m}")


def lambda_rep_rank(n: int, m: int, *, check_range: bool = True) -> int:
    if check_range:
        _check_lambda_range(n, m)
    action = wedge_operator({n + 1: {1: 1}}, n + 1, m)
    basis = wedge_basis(n + 1, m)
    full = [[action.get((r, c), 0) for c in basis] for r in basis]
    r = rational_rank(full)
    if check_range:
        assert r == lambda_model(n, m).rank()
        assert r < min(comb(n, m - 1), comb(n, m)), "tangent vector unexpectedly of maximal rank"
    return r


def lambda_block_generators(n: int, m: int) -> list[BlockGenerator]:
    """T_k (T_k(w_{n+1}) = w_k) with rows avoiding k and columns containing k."""
    rows = [w for w in wedge_basis(n + 1, m) if n + 1 in w]
    cols = [w for w in wedge_basis(n + 1, m) if n + 1 not in w]
    gens = []
    for k in range(1, n + 1):
        mat = lambda_model(n, m, target=k)
        ik = tuple(a for a, w in enumerate(rows) if k not in w)
        jk = tuple(b for b, w in enumerate(cols) if k in w)
        gens.append(BlockGenerator(mat, ik, jk))
    return gens


def block_span_lemma_check(n: int, m: int) -> CheckReport:
    _check_lambda_range(n, m)
    label = f"Lambda^{m}(C^{n + 1})"
    rows = [w for w in wedge_basis(n + 1, m) if n + 1 in w]
    cols = [w for w in wedge_basis(n + 1, m) if n + 1 not in w]
    ops = {k: wedge_operator({n + 1: {k: 1}}, n + 1, m) for k in range(1, n + 1)}
    images = {}
    for k, act in ops.items():
        img_rows = [[act.get((r, c), 0) for c in cols] for r in rows]
        images[k] = (img_rows, rational_rank(img_rows))
    failures = []
    for src in rows:
        for dst in cols:
            found = False
            for k in range(1, n + 1):
                act = ops[k]
                moves = any(key[0] == src for key in act)
                if not moves:
                    continue
                img_rows, r = images[k]
                unit = [1 if c == dst else 0 for c in cols]
                if rational_rank(img_rows + [unit]) == r:
                    found = True
                    break
            if not found:
                failures.append((src, dst))
    gens = lambda_block_generators(n, m)
    cover = condition_c_check(gens, len(rows), len(cols), space_label=label)
    ok = not failures and cover.ok
    return make_report("block-span", label, {"pairs": len(rows) * len(cols), "coverage": PASS},
                       {"pairs": len(rows) * len(cols) - len(failures), "coverage": cover.status},
                       claim="every wedge pair is served by some T_k, and the T_k blocks cover all positions",
                       witness={"failures": failures[:5]} if failures else None, ok=ok)


# ---------------------------------------------------------------- Veronese graph

def veronese_graph_tangent(t) -> TangentMatrix:
    """Tangent of t -> (line through (1,t), conic point (1,t,t^2)) in the P1 x P2 block model."""
    t = Fraction(t)
    return TangentMatrix(((Fraction(1), Fraction(0), Fraction(0)),
                          (Fraction(0), Fraction(1), 2 * t)))


def veronese_graph_rank(t_values: Sequence) -> list[int]:
    if not t_values:
        raise ValueError("need at least one sample")
    return [veronese_graph_tangent(t).rank() for t in t_values]


def degenerate_control_rank(t=0) -> int:
    """The product curve t -> (line(t), fixed point): only the P1 block moves."""
    return TangentMatrix(((1, 0, 0), (0, 0, 0))).rank()
