"""Executable checks for the rigidity lemmas on Hermitian symmetric spaces.

Every routine works on exact Chevalley data of the ambient space: 𝔪⁺ is
spanned by the noncompact positive root vectors, 𝔪⁻ by their negatives, and
𝔨^ℂ by the Cartan subalgebra and the compact root vectors.  Each check yields
a CheckReport whose status is decided by exact ranks.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .chevalley import LieElement, bracket, compact_conjugate
from .hss_catalog import H2Embedding, HSSDescriptor
from .linalg import SubspaceReducer, complex_rank, real_rank
from .matrix_models import condition_c_check, h_matrix
from .report import CATALOG_ERROR, NOT_APPLICABLE, CheckReport, make_report
from .rootsys import Root
from .scalars import I, ZERO, Gauss

__all__ = [
    "CompatibleTriple",
    "h_operator_matrix",
    "check_h_bijective",
    "find_compatible_triples",
    "check_triple_uniqueness",
    "E7_PI_X",
    "e7_triple_families",
    "e7_triple_family_check",
    "splitting_type",
    "splitting_report",
    "star_property",
    "star_property_check",
    "compact_real_basis",
    "k_orbit_totally_real",
    "bracket_generating_span",
    "span_check",
    "geodesic_closure",
    "second_ff_family",
    "OrbitDimensions",
    "orbit_dimensions",
    "dimension_check",
    "h_matrix_agreement",
    "condition_c_report",
    "condition_c_implies_span",
    "embedding_reports",
    "totally_real_report",
    "tube_reports",
]


# ---------------------------------------------------------------- helpers

def _mcoords(hss: HSSDescriptor, x: LieElement) -> list[Gauss]:
    """Coordinates of an element of 𝔪⁺; raises if x has other components."""
    if any(x.cartan_part) or not set(x.root_part) <= hss.noncompact_set:
        raise ValueError(f"{x} is not in m+")
    return [x.root_part.get(r, ZERO) for r in hss.noncompact_pos]


def _project(hss: HSSDescriptor, x: LieElement) -> list[Gauss]:
    """𝔪⁺ component of an arbitrary element."""
    return [x.root_part.get(r, ZERO) for r in hss.noncompact_pos]


def _minus_basis(hss: HSSDescriptor) -> list[LieElement]:
    return [hss.sc.e(hss.sys.neg(d)) for d in hss.noncompact_pos]


def _sum_pi(hss: HSSDescriptor) -> LieElement:
    return hss.diagonal_vector()


def _root(hss: HSSDescriptor, r) -> bool:
    return tuple(r) in hss.sys.root_set


def _quotient_rank(rows: list[list], sub: list[list], slots: int, width: int, *, real: bool = False) -> int:
    """Rank of ``rows`` in (C^width / span(sub))^slots, over R when ``real``."""
    red = SubspaceReducer(sub)
    reduced = []
    for row in rows:
        out: list = []
        for s in range(slots):
            out.extend(red.reduce(row[s * width:(s + 1) * width]))
        reduced.append(out)
    return (real_rank if real else complex_rank)(reduced)


# ---------------------------------------------------------------- operator H

def h_operator_matrix(hss: HSSDescriptor, eta: LieElement) -> list[list[Gauss]]:
    """Matrix of δ ↦ [η, [e_{-δ}, η]] from the 𝔪⁻ basis to the 𝔪⁺ basis."""
    _mcoords(hss, eta)
    cols = [_mcoords(hss, bracket(hss.sc, eta, bracket(hss.sc, x, eta))) for x in _minus_basis(hss)]
    n = hss.dim_n
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _not_tube(check_id: str, hss: HSSDescriptor) -> CheckReport:
    rep = make_report(check_id, hss.label, "tube type", "non-tube", claim="stated for tube type",
                      ok=False)
    rep.status = NOT_APPLICABLE
    return rep


def check_h_bijective(hss: HSSDescriptor) -> CheckReport:
    if not hss.tube:
        return _not_tube("h-bijective", hss)
    rank = complex_rank(h_operator_matrix(hss, _sum_pi(hss)))
    return make_report("h-bijective", hss.label, hss.dim_n, rank,
                       claim="H(v) = [v,[., v]] at the diagonal vector is bijective")


# ---------------------------------------------------------------- triples

@dataclass(frozen=True)
class CompatibleTriple:
    alpha_i: Root
    alpha_j: Root
    beta: Root


def find_compatible_triples(hss: HSSDescriptor, gamma: Root) -> list[CompatibleTriple]:
    """All (α_i, α_j, β) with β = α_i + α_j − γ noncompact positive and α_i − γ, α_j − γ roots."""
    gamma = tuple(gamma)
    if gamma not in hss.noncompact_set:
        raise ValueError(f"{gamma} is not a noncompact positive root")
    if gamma in hss.pi:
        raise ValueError(f"{gamma} lies in the strongly orthogonal set")
    sys = hss.sys
    out = []
    pi = hss.pi
    for a in range(len(pi)):
        for b in range(a, len(pi)):
            ai, aj = pi[a], pi[b]
            beta = tuple(x + y - g for x, y, g in zip(ai, aj, gamma))
            if a == b:
                # a repeated member of the set needs 2α_i − γ to be a root
                assert not _root(hss, beta), f"2*{ai} - {gamma} is a root"
                continue
            if beta not in hss.noncompact_set:
                continue
            if _root(hss, sys.sub(ai, gamma)) and _root(hss, sys.sub(aj, gamma)):
                out.append(CompatibleTriple(ai, aj, beta))
    return out


def check_triple_uniqueness(hss: HSSDescriptor) -> CheckReport:
    if not hss.tube:
        return _not_tube("triples", hss)
    owner: dict[Root, Root] = {}
    missing, clashes = [], []
    counts = {}
    for gamma in hss.noncompact_pos:
        if gamma in hss.pi:
            continue
        triples = find_compatible_triples(hss, gamma)
        counts[gamma] = len(triples)
        if not triples:
            missing.append(gamma)
        for t in triples:
            if t.beta in owner and owner[t.beta] != gamma:
                clashes.append((t.beta, owner[t.beta], gamma))
            owner.setdefault(t.beta, gamma)
    ok = not missing and not clashes
    witness = {"missing": missing, "clashes": clashes} if not ok else None
    return make_report("triples", hss.label, "every gamma has a triple; beta sets disjoint",
                       {"roots checked": len(counts), "missing": len(missing), "clashes": len(clashes)},
                       claim="compatible triples exist and are unique", ok=ok, witness=witness)


# E7 in x-coordinates: the strongly orthogonal roots alpha_1, alpha_2, alpha_3
E7_PI_X = ("x1-x2", "x1+x2+x3", "d-x3")


def e7_triple_families() -> dict[str, tuple[int, int, str]]:
    """Reference triple (i, j, beta) for each non-cascade noncompact root gamma of E7."""
    fam = {"x1-x3": (1, 3, "d-x2"), "d-x2": (1, 3, "x1-x3")}
    rest = (4, 5, 6, 7)
    for i in rest:
        fam[f"x1-x{i}"] = (1, 2, f"x1+x3+x{i}")
        fam[f"x1+x2+x{i}"] = (2, 3, f"d-x{i}")
        fam[f"x1+x3+x{i}"] = (1, 2, f"x1-x{i}")
        fam[f"d-x{i}"] = (2, 3, f"x1+x2+x{i}")
    for i in rest:
        for j in rest:
            if i < j:
                k, l = (x for x in rest if x not in (i, j))
                fam[f"x1+x{i}+x{j}"] = (1, 3, f"x1+x{k}+x{l}")
    return fam


def e7_triple_family_check(hss: HSSDescriptor) -> CheckReport:
    from .hss_catalog import e7_root_from_x

    if hss.label != "E7":
        raise ValueError("the x-model is defined for E7 only")
    pi = [e7_root_from_x(x) for x in E7_PI_X]
    if set(pi) != set(hss.pi):
        raise AssertionError("x-model cascade differs from the computed one")
    fam = e7_triple_families()
    absent = []
    for gx, (i, j, bx) in sorted(fam.items()):
        want = (frozenset((pi[i - 1], pi[j - 1])), e7_root_from_x(bx))
        found = {(frozenset((t.alpha_i, t.alpha_j)), t.beta)
                 for t in find_compatible_triples(hss, e7_root_from_x(gx))}
        if want not in found:
            absent.append(gx)
    others = len(hss.noncompact_pos) - len(hss.pi)
    return make_report("triple-families", hss.label, {"families": others, "reproduced": others},
                       {"families": len(fam), "reproduced": len(fam) - len(absent)},
                       claim="the listed E7 triples are compatible triples",
                       witness={"absent": absent} if absent else None)


# ---------------------------------------------------------------- splitting type

def splitting_type(hss: HSSDescriptor) -> list[int]:
    """a_γ = Σ_i <γ, α_i^∨> for each noncompact positive γ, sorted."""
    sys = hss.sys
    return sorted(sum(sys.fast_pairing(g, a) for a in hss.pi) for g in hss.noncompact_pos)


def splitting_report(hss: HSSDescriptor) -> CheckReport:
    st = splitting_type(hss)
    counts = {k: st.count(k) for k in sorted(set(st))}
    if hss.tube:
        return make_report("splitting", hss.label, {2: hss.dim_n}, counts,
                           claim="tangent bundle restricted to the diagonal curve is O(2)^n")
    return make_report("splitting", hss.label, "some entry equal to 1", counts,
                       claim="non-tube spaces have a summand O(1)", ok=1 in counts)


# ---------------------------------------------------------------- star property

def star_property(hss: HSSDescriptor) -> dict:
    """Per compact root φ: the pair (α_i, α_j), its class K0..K3 and any defect."""
    sc, sys = hss.sc, hss.sys
    v = _sum_pi(hss)
    out = {}
    for phi in hss.compact_pos:
        plus = [a for a in hss.pi if sys.add(a, phi) in hss.noncompact_set]
        if not plus:
            out[phi] = {"class": "K0"}
            continue
        pairs = [(a, b) for a in plus for b in hss.pi
                 if b != a and sys.sub(b, phi) in hss.noncompact_set]
        rec: dict = {"pairs": pairs}
        if len(pairs) != 1:
            rec["defect"] = "pair not unique" if pairs else "no pair"
            out[phi] = rec
            continue
        ai, aj = pairs[0]
        b1, b2 = sys.add(ai, phi), sys.sub(aj, phi)
        triples = find_compatible_triples(hss, b2)
        if triples != [CompatibleTriple(*sorted((ai, aj), key=hss.pi.index), b1)]:
            rec["defect"] = "triple not unique"
        if b1 != b2:
            rec["class"] = "K1"
        else:
            x_minus = sc.e(phi) - sc.e(sys.neg(phi))
            x_plus = (sc.e(phi) + sc.e(sys.neg(phi))).scale(I)
            zm = bracket(sc, x_minus, v).is_zero()
            zp = bracket(sc, x_plus, v).is_zero()
            if zm == zp:
                rec["defect"] = "both or neither bracket vanish"
            rec["class"] = "K2" if zm else "K3"
        out[phi] = rec
    return out


def star_property_check(hss: HSSDescriptor) -> CheckReport:
    if not hss.tube:
        return _not_tube("star", hss)
    data = star_property(hss)
    defects = {phi: rec for phi, rec in data.items() if "defect" in rec}
    partition = {k: sum(1 for r in data.values() if r.get("class") == k) for k in ("K0", "K1", "K2", "K3")}
    return make_report("star", hss.label, "no defects", {"defects": len(defects), "partition": partition},
                       claim="each compact phi pairs uniquely with strongly orthogonal roots",
                       ok=not defects, witness=defects or None, notes={"partition": partition})


# ---------------------------------------------------------------- totally real

def compact_real_basis(hss: HSSDescriptor) -> list[LieElement]:
    """Real basis of the compact isotropy algebra 𝔩."""
    sc, sys = hss.sc, hss.sys
    out = [LieElement.coroot(sys.rank, k, I) for k in range(sys.rank)]
    for phi in hss.compact_pos:
        ep, em = sc.e(phi), sc.e(sys.neg(phi))
        out.append((ep + em).scale(I))
        out.append((ep - em).scale(-1))
    return out


def k_orbit_totally_real(hss: HSSDescriptor, v: LieElement | None = None) -> CheckReport:
    """[𝔩, v] spans 𝔪⁺ over C, is totally real, and has dimension n − 1 modulo C v."""
    v = _sum_pi(hss) if v is None else v
    vc = _mcoords(hss, v)
    rows = [_mcoords(hss, bracket(hss.sc, x, v)) for x in compact_real_basis(hss)]
    n = hss.dim_n
    span_c = complex_rank(rows)
    dim_r = real_rank(rows)
    with_j = real_rank(rows + [[I * z for z in r] for r in rows])
    mod_v = real_rank(rows + [vc, [I * z for z in vc]]) - 2
    computed = {"complex span": span_c, "real dim": dim_r, "real dim R+JR": with_j, "dim mod Cv": mod_v}
    ok = span_c == n and with_j == 2 * dim_r and mod_v == n - 1
    return make_report("totally-real", hss.label,
                       {"complex span": n, "real dim R+JR": 2 * dim_r, "dim mod Cv": n - 1}, computed,
                       claim="the K-orbit of [v] is totally real of dimension n-1", ok=ok)


# ---------------------------------------------------------------- span, closure, families

def bracket_generating_span(hss: HSSDescriptor, V: Sequence[LieElement]) -> int:
    """dim span{[v1, [e_{-δ}, v2]]}; the expression is symmetric in v1, v2."""
    for v in V:
        _mcoords(hss, v)
    rows = []
    for x in _minus_basis(hss):
        for v1, v2 in combinations_with_replacement(V, 2):
            rows.append(_mcoords(hss, bracket(hss.sc, v1, bracket(hss.sc, x, v2))))
    return complex_rank(rows)


def _label(emb) -> tuple[str | None, Sequence[LieElement]]:
    if isinstance(emb, H2Embedding):
        return emb.name, emb.generators
    return None, emb


def _catalog_error(check_id: str, hss: HSSDescriptor, emb: H2Embedding) -> CheckReport:
    rep = make_report(check_id, hss.label, emb.dim_m, len(emb.generators), embedding_name=emb.name,
                      claim="catalog description", ok=False, notes={"error": emb.catalog_error})
    rep.status = CATALOG_ERROR
    return rep


def span_check(hss: HSSDescriptor, emb) -> CheckReport:
    name, V = _label(emb)
    if isinstance(emb, H2Embedding) and emb.catalog_error:
        return _catalog_error("span", hss, emb)
    return make_report("span", hss.label, hss.dim_n, bracket_generating_span(hss, V), embedding_name=name,
                       claim="span[V, [m-, V]] = m+")


def _sigma_rows(hss: HSSDescriptor, V: Sequence[LieElement], xs: Sequence[LieElement]) -> list[list[Gauss]]:
    """One row per ξ: concatenated 𝔪⁺ coordinates of [v_i, [ξ, v_j]] for i ≤ j."""
    pairs = list(combinations_with_replacement(range(len(V)), 2))
    rows = []
    for x in xs:
        row: list[Gauss] = []
        for i, j in pairs:
            row.extend(_mcoords(hss, bracket(hss.sc, V[i], bracket(hss.sc, x, V[j]))))
        rows.append(row)
    return rows


def second_ff_family(hss: HSSDescriptor, V: Sequence[LieElement]) -> int:
    """Rank of ξ ↦ σ_ξ from 𝔪⁻ to symmetric V-bilinear maps into 𝔪⁺/V."""
    _, V = _label(V)
    V = list(V)
    m = len(V)
    slots = m * (m + 1) // 2
    rows = _sigma_rows(hss, V, _minus_basis(hss))
    sub = [_mcoords(hss, v) for v in V]
    return _quotient_rank(rows, sub, slots, hss.dim_n)


def geodesic_closure(hss: HSSDescriptor, emb) -> CheckReport:
    """Closure [V, [τV, V]] ⊂ V and kernel of ξ ↦ σ_ξ equal to τV."""
    if isinstance(emb, H2Embedding) and emb.catalog_error:
        return _catalog_error("closure", hss, emb)
    name, V = _label(emb)
    V = list(V)
    m, n = len(V), hss.dim_n
    sub = [_mcoords(hss, v) for v in V]
    red = SubspaceReducer(sub)
    tau_v = [compact_conjugate(hss.sc, v) for v in V]
    closed = all(red.contains(row[s:s + n])
                 for row in _sigma_rows(hss, V, tau_v) for s in range(0, len(row), n))
    rank = second_ff_family(hss, V)
    kernel_dim = n - rank
    computed = {"closed": closed, "kernel dim": kernel_dim, "family dim": rank}
    expected = {"closed": True, "kernel dim": m, "family dim": n - m}
    return make_report("closure", hss.label, expected, computed, embedding_name=name,
                       claim="exp(u).X = X iff u in T_o(X); second fundamental forms span n-m")


@dataclass(frozen=True)
class OrbitDimensions:
    dim_C_PV: int
    dim_R_KV: int
    dim_C_H: int
    dim_R_H0: int
    dim_G: int
    n: int
    m: int

    @property
    def moduli_dim(self) -> int:
        return self.dim_G - self.dim_C_H


def _compact_complex_basis(hss: HSSDescriptor) -> list[LieElement]:
    sc, sys = hss.sc, hss.sys
    out = [LieElement.coroot(sys.rank, k) for k in range(sys.rank)]
    for phi in hss.compact_pos:
        out.append(sc.e(phi))
        out.append(sc.e(sys.neg(phi)))
    return out


def _tangent_rows(hss: HSSDescriptor, V: Sequence[LieElement], xs: Sequence[LieElement]) -> list[list[Gauss]]:
    rows = []
    for x in xs:
        row: list[Gauss] = []
        for v in V:
            row.extend(_project(hss, bracket(hss.sc, x, v)))
        rows.append(row)
    return rows


def orbit_dimensions(hss: HSSDescriptor, V) -> OrbitDimensions:
    """Orbit dimensions of [V] under P and K and the resulting stabilizer counts."""
    _, V = _label(V)
    V = list(V)
    n, m = hss.dim_n, len(V)
    sub = [_mcoords(hss, v) for v in V]
    xs_c = _compact_complex_basis(hss) + _minus_basis(hss)
    pv = _quotient_rank(_tangent_rows(hss, V, xs_c), sub, m, n)
    kv = _quotient_rank(_tangent_rows(hss, V, compact_real_basis(hss)), sub, m, n, real=True)
    dim_g = hss.dim_g
    dim_h = -n - pv - (n - m) + dim_g + m
    dim_h0 = -2 * n - kv + dim_g + 2 * m
    return OrbitDimensions(pv, kv, dim_h, dim_h0, dim_g, n, m)


def dimension_check(hss: HSSDescriptor, emb) -> CheckReport:
    if isinstance(emb, H2Embedding) and emb.catalog_error:
        return _catalog_error("dimensions", hss, emb)
    name, V = _label(emb)
    d = orbit_dimensions(hss, V)
    computed = {"dim_C_PV": d.dim_C_PV, "dim_R_KV": d.dim_R_KV, "dim_C_H": d.dim_C_H, "dim_R_H0": d.dim_R_H0}
    return make_report("dimensions", hss.label, "dim_C_H = dim_R_H0", computed, embedding_name=name,
                       claim="stabilizer dimensions agree", ok=d.dim_C_H == d.dim_R_H0,
                       notes={"moduli dim": d.moduli_dim})


# ---------------------------------------------------------------- matrix models

def h_matrix_agreement(hss: HSSDescriptor) -> CheckReport:
    """2 D A D in the matrix model equals [η, [e_{-δ}, η]] column by column."""
    d = hss.dictionary
    if d is None:
        raise ValueError(f"{hss.label} has no matrix model")
    eta = _sum_pi(hss)
    dm = d.tangent(eta)
    root_cols = h_operator_matrix(hss, eta)
    bad = []
    model_cols = []
    for k, x in enumerate(_minus_basis(hss)):
        col = _mcoords(hss, d.element(h_matrix(dm, d.minus_block(x))))
        model_cols.append(col)
        if col != [row[k] for row in root_cols]:
            bad.append(hss.noncompact_pos[k])
    model = [[model_cols[j][i] for j in range(hss.dim_n)] for i in range(hss.dim_n)]
    r_root, r_model = complex_rank(root_cols), complex_rank(model)
    computed = {"rank root basis": r_root, "rank matrix model": r_model, "differing columns": len(bad)}
    return make_report("h-matrix", hss.label, "identical columns and ranks", computed,
                       witness={"roots": bad} if bad else None, ok=not bad and r_root == r_model,
                       claim="H(v) = 2 D A D agrees with the root-basis operator")


def condition_c_report(hss: HSSDescriptor, emb: H2Embedding) -> CheckReport:
    """Condition C on the block support of a classical embedding.

    Each block generator must also be a tangent vector of the embedded space.
    """
    d = hss.dictionary
    if d is None or emb.block_support is None:
        raise ValueError(f"{emb.name} has no block support")
    p, q = d.shape
    rep = condition_c_check(emb.block_support, p, q, d.symmetry, space_label=hss.label,
                            embedding_name=emb.name)
    if rep.status == CATALOG_ERROR:
        return rep
    red = SubspaceReducer([_mcoords(hss, v) for v in emb.generators])
    outside = [k for k, g in enumerate(emb.block_support) if not red.contains(_mcoords(hss, d.element(g.matrix)))]
    if outside:
        rep.status = CATALOG_ERROR
        rep.witness = {"generators outside T_o(X)": outside[:8]}
    return rep


def condition_c_implies_span(hss: HSSDescriptor, emb: H2Embedding) -> CheckReport:
    cc = condition_c_report(hss, emb)
    span = bracket_generating_span(hss, emb.generators)
    ok = not cc.ok or span == hss.dim_n
    return make_report("condition-c-span", hss.label, "condition C implies span = n",
                       {"condition C": cc.status, "span": span}, embedding_name=emb.name,
                       claim="Condition C implies the bracket-generating condition", ok=ok)


# ---------------------------------------------------------------- bundles

def embedding_reports(hss: HSSDescriptor, emb: H2Embedding, checks=("span", "closure", "dimensions")) -> list[CheckReport]:
    table = {"span": span_check, "closure": geodesic_closure, "dimensions": dimension_check}
    return [table[c](hss, emb) for c in checks]


def totally_real_report(hss: HSSDescriptor) -> CheckReport:
    return k_orbit_totally_real(hss) if hss.tube else _not_tube("totally-real", hss)


def tube_reports(hss: HSSDescriptor) -> list[CheckReport]:
    return [check_h_bijective(hss), check_triple_uniqueness(hss), splitting_report(hss),
            star_property_check(hss), totally_real_report(hss)]
