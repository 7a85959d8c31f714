"""Acceptance suite: one test per criterion, each printing a pass/fail line."""
from __future__ import annotations

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from math import comb

import pytest

from hssrigid import clifford_spin, hss_catalog, matrix_models, rigidity
from hssrigid.cli import LAMBDA_GRID, VERONESE_SAMPLES, SuiteSpec, run_suite
from hssrigid.hss_catalog import build_hss, catalog_embeddings, supported_spaces
from hssrigid.report import CATALOG_ERROR, NOT_APPLICABLE, PASS
from hssrigid.rootsys import expected_positive_count


def tube_spaces():
    return [h for h in (build_hss(k) for k in supported_spaces()) if h.tube]


@contextmanager
def criterion(capsys, number: int, title: str, limit: float | None = None):
    if limit is not None:
        hss_catalog.clear_caches()  # time the criterion from a cold start
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        with capsys.disabled():
            print(f"\n[acceptance] criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)")


def _statuses(report, check_id):
    return [r for r in report.results if r.check_id == check_id]


def test_01_roots_and_dimensions(capsys):
    with criterion(capsys, 1, "positive roots and dim m+ match closed forms", limit=5):
        for fam, prm in supported_spaces():
            hss = build_hss((fam, prm))
            series, rank, _ = hss_catalog._realization(fam, prm)
            assert len(hss.sys.positive_roots) == expected_positive_count(series, rank)
            assert hss.dim_n == hss_catalog.closed_form_dimension(fam, prm)
        assert build_hss("E6").dim_n == 16 and build_hss("E7").dim_n == 27
        labels = {hss_catalog.canonical_label(*k) for k in supported_spaces()}
        assert {"G(4,4)", "G^{II}(6,6)", "G^{III}(4,4)", "Q^6", "E6", "E7"} <= labels


def test_02_structure_constants(capsys):
    with criterion(capsys, 2, "Jacobi identity and |N| = p+1", limit=30):
        rep = run_suite(SuiteSpec("chevalley"))
        systems = {r.space_label for r in rep.results}
        assert {"A3", "B2", "C3", "D4", "E6", "E7"} <= systems
        assert all(r.status == PASS for r in rep.results)
        for label in ("E6", "E7"):
            assert {r.check_id for r in rep.results if r.space_label == label} == {"jacobi", "chain-constants"}


def test_03_tube_classification(capsys):
    with criterion(capsys, 3, "tube classification matches the classical list"):
        tube = {h.label for h in tube_spaces() if h.rank_r >= 2}
        expected = ({f"G({n},{n})" for n in (2, 3, 4)} | {"G^{II}(4,4)", "G^{II}(6,6)"}
                    | {f"G^{{III}}({n},{n})" for n in (2, 3, 4)} | {f"Q^{n}" for n in (3, 4, 5, 6)} | {"E7"})
        assert tube == expected
        rep = run_suite(SuiteSpec("roots"))
        assert all(r.status == PASS for r in _statuses(rep, "tube-profile"))


def test_04_h_bijective(capsys):
    with criterion(capsys, 4, "H-operator is bijective at the diagonal vector", limit=10):
        for hss in tube_spaces():
            rep = rigidity.check_h_bijective(hss)
            assert rep.status == PASS, hss.label
            assert rep.computed == hss.dim_n
        assert rigidity.check_h_bijective(build_hss("E7")).computed == 27


def test_05_e7_triples(capsys):
    with criterion(capsys, 5, "E7 compatible triples exist, are disjoint and match the listed families"):
        e7 = build_hss("E7")
        rep = rigidity.check_triple_uniqueness(e7)
        assert rep.status == PASS and rep.computed["roots checked"] == 24
        fam = rigidity.e7_triple_family_check(e7)
        assert fam.status == PASS and fam.computed == {"families": 24, "reproduced": 24}
        x13 = hss_catalog.e7_root_from_x("x1-x3")
        pairs = {(frozenset(map(hss_catalog.e7_x_expression, (t.alpha_i, t.alpha_j))),
                  hss_catalog.e7_x_expression(t.beta)) for t in rigidity.find_compatible_triples(e7, x13)}
        assert (frozenset({"x1-x2", "d-x3"}), "d-x2") in pairs


def test_06_splitting_type(capsys):
    with criterion(capsys, 6, "splitting type {2}^n on tube spaces, a 1 on G(2,3)"):
        for hss in tube_spaces():
            assert rigidity.splitting_type(hss) == [2] * hss.dim_n, hss.label
        assert 1 in rigidity.splitting_type(build_hss("G", (2, 3)))


def test_07_totally_real(capsys):
    with criterion(capsys, 7, "K-orbit of the diagonal vector is totally real of dim n-1", limit=20):
        for hss in tube_spaces():
            rep = rigidity.k_orbit_totally_real(hss)
            assert rep.status == PASS, hss.label


def test_08_span_condition(capsys):
    with criterion(capsys, 8, "bracket-generating span on catalog embeddings"):
        e6, e7 = build_hss("E6"), build_hss("E7")
        embs6 = {e.name: e for e in catalog_embeddings(e6)}
        embs7 = {e.name: e for e in catalog_embeddings(e7)}
        for name in ("P2 diagonal", "P5xP1"):
            assert rigidity.span_check(e6, embs6[name]).computed == 16
        for name in ("P3 diagonal", "P5xP2 (figure subdiagram)"):
            rep = rigidity.span_check(e7, embs7[name])
            assert rep.status == PASS and rep.computed == 27
        literal = embs7["P5xP2"]
        assert len(literal.generators) != 7
        assert rigidity.span_check(e7, literal).status == CATALOG_ERROR
        rep = run_suite(SuiteSpec("span"))
        for r in _statuses(rep, "span"):
            if (r.space_label, r.embedding_name) == ("E7", "P5xP2"):
                assert r.status == CATALOG_ERROR
            else:
                assert r.status == PASS, (r.space_label, r.embedding_name)
        controls = _statuses(rep, "span-control")
        assert controls and all(r.status == PASS and r.computed < build_hss(
            hss_catalog.parse_label(r.space_label)).dim_n for r in controls)


def test_09_closure_and_families(capsys):
    with criterion(capsys, 9, "kernel = V, family dimension n-m, diagonal-curve moduli 3n-3"):
        rep = run_suite(SuiteSpec("closure"))
        for r in _statuses(rep, "closure"):
            if r.status == CATALOG_ERROR:
                assert (r.space_label, r.embedding_name) == ("E7", "P5xP2")
                continue
            assert r.status == PASS, (r.space_label, r.embedding_name)
            assert r.computed["closed"] and r.computed["kernel dim"] == r.expected["kernel dim"]
        moduli = _statuses(rep, "moduli")
        assert moduli and all(r.status == PASS for r in moduli)
        g44 = build_hss("G", (4, 4))
        d = rigidity.orbit_dimensions(g44, [g44.diagonal_vector()])
        assert d.moduli_dim == 45 and d.dim_C_H == d.dim_G - 45


def test_10_dimension_identity(capsys):
    with criterion(capsys, 10, "dim_R H0 = dim_C H on every catalog embedding"):
        rep = run_suite(SuiteSpec("dimensions"))
        dims = _statuses(rep, "dimensions")
        assert dims
        for r in dims:
            if r.status == CATALOG_ERROR:
                assert (r.space_label, r.embedding_name) == ("E7", "P5xP2")
                continue
            assert r.status == PASS and r.computed["dim_C_H"] == r.computed["dim_R_H0"]


def test_11_matrix_models(capsys):
    with criterion(capsys, 11, "matrix H agrees with root basis; Condition C holds and implies the span"):
        for label in ("G(2,2)", "G(3,3)", "G^{III}(2,2)", "G^{II}(4,4)"):
            assert rigidity.h_matrix_agreement(build_hss(hss_catalog.parse_label(label))).status == PASS
        rep = run_suite(SuiteSpec("matrix"))
        cc = _statuses(rep, "condition-c")
        assert len(cc) > 20
        assert all(r.status == PASS for r in cc + _statuses(rep, "condition-c-span"))


def test_12_spin(capsys):
    with criterion(capsys, 12, "half-spin tangent ranks 2^(l-1); CAR and Clifford relations", limit=60):
        for ell in (3, 4, 5):
            assert clifford_spin.spin_tangent_rank_even(ell) == 2 ** (ell - 1)
            assert clifford_spin.spin_tangent_rank_odd(ell) == 2 ** (ell - 1)
        for ell in (3, 4):
            assert clifford_spin.car_violations(ell + 1) == []
            assert clifford_spin.clifford_violations(clifford_spin.clifford_generators(ell + 1)) == []


def test_13_lambda(capsys):
    with criterion(capsys, 13, "wedge-power tangent ranks and block-span lemma"):
        for n, m in LAMBDA_GRID:
            r = matrix_models.lambda_rep_rank(n, m)
            assert r == comb(n - 1, m - 1) < min(comb(n, m - 1), comb(n, m))
            assert matrix_models.block_span_lemma_check(n, m).status == PASS


def test_14_veronese(capsys):
    with criterion(capsys, 14, "Veronese graph has rank 2 everywhere; control has rank 1"):
        assert matrix_models.veronese_graph_rank(VERONESE_SAMPLES) == [2] * len(VERONESE_SAMPLES)
        assert matrix_models.degenerate_control_rank() == 1


def _json_run():
    proc = subprocess.run([sys.executable, "-m", "hssrigid", "verify", "--suite", "all", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode in (0, 1), proc.stderr
    doc = json.loads(proc.stdout)
    doc.pop("timing")
    return json.dumps(doc, sort_keys=True), proc.returncode


@pytest.mark.slow
def test_15_determinism(capsys):
    with criterion(capsys, 15, "two full JSON runs agree outside the timing section"):
        first, code1 = _json_run()
        second, code2 = _json_run()
        assert first == second and code1 == code2
        summary = json.loads(first)["summary"]
        assert summary["fail"] == "0"
        assert summary[NOT_APPLICABLE] != "0" and summary[CATALOG_ERROR] == "3"
