import json
from fractions import Fraction

import pytest

from hssrigid import hss_catalog
from hssrigid.cli import SuiteSpec, UsageError, main, run_suite
from hssrigid.scalars import Gauss
from hssrigid.report import CATALOG_ERROR, PASS, CheckReport, RunReport, make_report, render


def _strip_timing(text):
    doc = json.loads(text)
    doc.pop("timing")
    return doc


def test_empty_summary():
    rep = RunReport("0", "none", [])
    assert rep.summary == {"pass": 0, "fail": 0, "catalog-error": 0}
    assert rep.exit_code == 0


def test_status_line():
    rep = make_report("span", "G(2,2)", 4, 4)
    line = rep.line()
    assert rep.status == PASS
    assert "G(2,2)" in line and "span" in line and "pass" in line


def test_tube_suite_e7():
    rep = run_suite(SuiteSpec("tube", space_filter="E7"))
    assert {r.check_id for r in rep.results} == {"h-bijective", "triples", "splitting", "star", "totally-real"}
    assert {r.space_label for r in rep.results} == {"E7"}
    assert all(r.status == PASS for r in rep.results)


def test_spin_suite():
    rep = run_suite(SuiteSpec("spin", max_ell=4))
    assert len(rep.results) == 4
    assert all(r.ok for r in rep.results)


def test_fault_injection(monkeypatch):
    original = hss_catalog.catalog_embeddings

    def corrupted(hss):
        embs = original(hss)
        first = embs[0]
        broken = hss_catalog._embedding(first.name, hss, first.generators + first.generators[:1],
                                        first.dim_m, first.diagonal_type)
        return [broken] + embs[1:]

    monkeypatch.setattr(hss_catalog, "catalog_embeddings", corrupted)
    rep = run_suite(SuiteSpec("all", space_filter="G(2,2)"))
    assert rep.summary[CATALOG_ERROR] >= 1
    assert rep.exit_code != 0


def test_rendering_is_deterministic():
    spec = SuiteSpec("triples", space_filter="G(3,3)")
    a = render(run_suite(spec), "json")
    b = render(run_suite(spec, jobs=3), "json")
    assert _strip_timing(a) == _strip_timing(b)
    assert render(run_suite(spec), "text").splitlines()[0] == render(run_suite(spec), "text").splitlines()[0]


def test_usage_errors():
    with pytest.raises(UsageError):
        SuiteSpec("nonsense")
    with pytest.raises(UsageError):
        SuiteSpec("roots", space_filter="G(9,9)")
    with pytest.raises(UsageError):
        SuiteSpec("spin", max_ell=9)
    assert main(["verify", "--suite", "nonsense"]) == 2
    assert main(["verify", "--suite", "roots", "--space", "G(7,7)"]) == 2


def test_main_writes_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "roots", "--space", "E6", "--format", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == "0"
    assert {r["check"] for r in doc["results"]} >= {"positive-roots", "dimension"}


def test_list_commands(capsys):
    assert main(["list", "spaces"]) == 0
    assert "E7" in capsys.readouterr().out
    assert main(["list", "embeddings", "--space", "E7"]) == 0
    assert "P3 diagonal" in capsys.readouterr().out


def test_range_option(capsys):
    assert main(["verify", "--suite", "roots", "--range", "G=2", "--max-rank", "2"]) == 0
    out = capsys.readouterr().out
    assert "G(3,3)" not in out


def test_report_json_is_exact():
    rep = RunReport("0", "x", [CheckReport("c", "s", PASS, {"a": 1}, {"a": Fraction(1, 3), "z": Gauss(1, 2)})])
    doc = json.loads(render(rep, "json"))
    assert doc["results"][0]["expected"] == {"a": "1"}
    assert doc["results"][0]["computed"] == {"a": "1/3", "z": {"re": "1", "im": "2"}}
