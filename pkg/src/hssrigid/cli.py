"""Command-line runner for the verification suites.

    hssrigid list spaces
    hssrigid list embeddings --space E7
    hssrigid verify --suite tube --space E7 --format json --out report.json

Set HSSRIGID_JOBS to run independent checks on a thread pool; the report is
sorted canonically, so its content does not depend on the pool size.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import __version__
from . import clifford_spin, hss_catalog, matrix_models, rigidity
from .chevalley import structure_constants
from .report import CheckReport, RunReport, make_report, render
from .rootsys import expected_positive_count

SUITES = ("roots", "chevalley", "tube", "triples", "totally-real", "span", "closure", "dimensions",
          "matrix", "spin", "lambda", "all")
JOBS_VARIABLE = "HSSRIGID_JOBS"
SPIN_ELLS = (3, 4, 5)
LAMBDA_GRID = ((3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4))
VERONESE_SAMPLES = (-2, -1, 0, 1, 3)
H_MATRIX_SPACES = ("G(2,2)", "G(3,3)", "G^{III}(2,2)", "G^{II}(4,4)")

Task = Callable[[], "CheckReport | list[CheckReport]"]


class UsageError(ValueError):
    """Unknown suite or space, or a range outside the supported bounds."""


@dataclass(frozen=True)
class SuiteSpec:
    suite_id: str
    space_filter: str | None = None
    max_rank: int | None = None
    param_ranges: dict = field(default_factory=lambda: dict(hss_catalog.DEFAULT_RANGES))
    max_ell: int = max(SPIN_ELLS)

    def __post_init__(self):
        if not min(SPIN_ELLS) <= self.max_ell <= max(SPIN_ELLS):
            raise UsageError(f"--max-ell must lie in {min(SPIN_ELLS)}..{max(SPIN_ELLS)}")
        if self.suite_id not in SUITES:
            raise UsageError(f"unknown suite {self.suite_id!r}; choose from {', '.join(SUITES)}")
        for fam, bound in self.param_ranges.items():
            if fam not in hss_catalog.DEFAULT_RANGES:
                raise UsageError(f"unknown family {fam!r} in ranges")
            if not 1 <= bound <= hss_catalog.DEFAULT_RANGES[fam]:
                raise UsageError(f"range for {fam} must lie in 1..{hss_catalog.DEFAULT_RANGES[fam]}")
        if self.max_rank is not None and self.max_rank < 1:
            raise UsageError("--max-rank must be positive")
        if self.space_filter is not None:
            try:
                key = hss_catalog.parse_label(self.space_filter)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if key not in hss_catalog.supported_spaces():
                raise UsageError(f"space {self.space_filter!r} is outside the supported range")

    @property
    def canonical_filter(self) -> str | None:
        if self.space_filter is None:
            return None
        return hss_catalog.canonical_label(*hss_catalog.parse_label(self.space_filter))

    def spaces(self) -> list[hss_catalog.HSSDescriptor]:
        out = []
        for fam, prm in hss_catalog.supported_spaces(self.max_rank):
            bound = self.param_ranges.get(fam)
            if bound is not None and max(prm) > bound:
                continue
            label = hss_catalog.canonical_label(fam, prm)
            if self.canonical_filter not in (None, label):
                continue
            out.append(hss_catalog.build_hss((fam, prm)))
        return out

    def wants(self, label: str) -> bool:
        return self.canonical_filter in (None, label)


# ---------------------------------------------------------------- suites

def _roots(spec: SuiteSpec) -> Iterable[Task]:
    for h in spec.spaces():
        def positive(h=h):
            series, rank, _ = hss_catalog._realization(h.family, h.params)
            return make_report("positive-roots", h.label, expected_positive_count(series, rank),
                               len(h.sys.positive_roots), claim="|positive roots| matches the closed form")

        def dimension(h=h):
            return make_report("dimension", h.label, hss_catalog.closed_form_dimension(h.family, h.params),
                               h.dim_n, claim="dim m+ matches the closed form")
        yield positive
        yield dimension
        if h.rank_r >= 2:
            def profile(h=h):
                return make_report("tube-profile", h.label, hss_catalog.expected_tube(h.family, h.params),
                                   h.tube, claim="restricted root profile matches the tube classification",
                                   notes={"kind": h.profile.get("kind")})
            yield profile
        printed = {"E6": hss_catalog.E6_PRINTED_NONCOMPACT, "E7": hss_catalog.E7_PRINTED_NONCOMPACT}.get(h.label)
        if printed:
            def listed(h=h, printed=printed):
                mm = hss_catalog.printed_list_mismatch(h, printed)
                return make_report("printed-list", h.label, [], mm["not_roots"],
                                   claim="every printed noncompact root is a noncompact root",
                                   notes={k: v for k, v in mm.items() if k != "not_roots"})
            yield listed


def _systems(spec: SuiteSpec) -> list[tuple[str, int]]:
    seen = []
    for h in spec.spaces():
        series, rank, _ = hss_catalog._realization(h.family, h.params)
        if (series, rank) not in seen:
            seen.append((series, rank))
    return seen


def _chevalley(spec: SuiteSpec) -> Iterable[Task]:
    for series, rank in _systems(spec):
        label = f"{series}{rank}"

        def jacobi(series=series, rank=rank, label=label):
            v = structure_constants(series, rank).jacobi_violation()
            return make_report("jacobi", label, None, v, claim="Jacobi identity on all basis triples",
                               witness=v)

        def chains(series=series, rank=rank, label=label):
            sc = structure_constants(series, rank)
            v = sc.chain_violation() or sc.antisymmetry_violation()
            return make_report("chain-constants", label, None, v, witness=v,
                               claim="|N_ab| = p + 1 and N_ba = -N_ab")
        yield jacobi
        yield chains


def _tube(spec: SuiteSpec) -> Iterable[Task]:
    for h in spec.spaces():
        yield lambda h=h: rigidity.tube_reports(h)


def _triples(spec: SuiteSpec) -> Iterable[Task]:
    for h in spec.spaces():
        yield lambda h=h: rigidity.check_triple_uniqueness(h)
        if h.label == "E7":
            yield lambda h=h: rigidity.e7_triple_family_check(h)


def _totally_real(spec: SuiteSpec) -> Iterable[Task]:
    for h in spec.spaces():
        yield lambda h=h: rigidity.totally_real_report(h)


def _embeddings(spec: SuiteSpec):
    for h in spec.spaces():
        for emb in hss_catalog.catalog_embeddings(h):
            yield h, emb


def _span(spec: SuiteSpec) -> Iterable[Task]:
    for h, emb in _embeddings(spec):
        yield lambda h=h, emb=emb: rigidity.span_check(h, emb)
    for h in spec.spaces():
        if h.dim_n > 1:
            def control(h=h):
                span = rigidity.bracket_generating_span(h, [h.sc.e(h.pi[-1])])
                return make_report("span-control", h.label, f"< {h.dim_n}", span, embedding_name="rank-1 line",
                                   claim="a single root line does not generate", ok=span < h.dim_n)
            yield control


def _closure(spec: SuiteSpec) -> Iterable[Task]:
    for h, emb in _embeddings(spec):
        yield lambda h=h, emb=emb: rigidity.geodesic_closure(h, emb)
    for h in spec.spaces():
        if h.tube and h.rank_r >= 2:
            def moduli(h=h):
                d = rigidity.orbit_dimensions(h, [h.diagonal_vector()])
                n = h.dim_n
                return make_report("moduli", h.label, {"moduli dim": 3 * n - 3, "dim_C_H": d.dim_G - (3 * n - 3)},
                                   {"moduli dim": d.moduli_dim, "dim_C_H": d.dim_C_H},
                                   embedding_name="diagonal curve",
                                   claim="diagonal curves form a family of dimension 3n-3")
            yield moduli


def _dimensions(spec: SuiteSpec) -> Iterable[Task]:
    for h, emb in _embeddings(spec):
        yield lambda h=h, emb=emb: rigidity.dimension_check(h, emb)


def _veronese() -> CheckReport:
    ranks = matrix_models.veronese_graph_rank(VERONESE_SAMPLES)
    control = matrix_models.degenerate_control_rank()
    return make_report("veronese", "G(2,3)", {"graph ranks": [2] * len(ranks), "control": 1},
                       {"graph ranks": ranks, "control": control},
                       claim="the Veronese graph has rank-2 tangents everywhere")


def _matrix(spec: SuiteSpec) -> Iterable[Task]:
    for label in H_MATRIX_SPACES:
        if spec.wants(label):
            yield lambda label=label: rigidity.h_matrix_agreement(hss_catalog.build_hss(label))
    for h, emb in _embeddings(spec):
        if emb.block_support is not None:
            yield lambda h=h, emb=emb: rigidity.condition_c_report(h, emb)
            yield lambda h=h, emb=emb: rigidity.condition_c_implies_span(h, emb)
    if spec.wants("G(2,3)"):
        yield _veronese


def _spin(spec: SuiteSpec) -> Iterable[Task]:
    for ell in SPIN_ELLS:
        if ell > spec.max_ell:
            continue
        for odd in (False, True):
            if spec.wants(f"Q^{2 * ell - 1 if odd else 2 * ell}"):
                yield lambda ell=ell, odd=odd: clifford_spin.spin_report(ell, odd)


def _lambda(spec: SuiteSpec) -> Iterable[Task]:
    if spec.space_filter is not None:
        return
    for n, m in LAMBDA_GRID:
        def rank(n=n, m=m):
            from math import comb
            r = matrix_models.lambda_rep_rank(n, m)
            return make_report("lambda-rank", f"Lambda^{m}(C^{n + 1})", comb(n - 1, m - 1), r,
                               claim="tangent rank of the wedge embedding",
                               notes={"bound": min(comb(n, m - 1), comb(n, m))})
        yield rank
        yield lambda n=n, m=m: matrix_models.block_span_lemma_check(n, m)


_BUILDERS = {
    "roots": _roots, "chevalley": _chevalley, "tube": _tube, "triples": _triples,
    "totally-real": _totally_real, "span": _span, "closure": _closure, "dimensions": _dimensions,
    "matrix": _matrix, "spin": _spin, "lambda": _lambda,
}


def _run_task(task: Task) -> list[CheckReport]:
    t0 = time.perf_counter()
    out = task()
    reps = out if isinstance(out, list) else [out]
    if len(reps) == 1 and not reps[0].elapsed:
        reps[0].elapsed = (time.perf_counter() - t0) * 1000.0
    return reps


def jobs_from_env() -> int:
    raw = os.environ.get(JOBS_VARIABLE, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_VARIABLE} must be an integer, got {raw!r}") from None


def run_suite(spec: SuiteSpec, jobs: int | None = None) -> RunReport:
    jobs = jobs_from_env() if jobs is None else jobs
    ids = [s for s in SUITES if s != "all"] if spec.suite_id == "all" else [spec.suite_id]
    tasks = [t for sid in ids for t in _BUILDERS[sid](spec)]
    t0 = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_task, tasks))
    else:
        chunks = [_run_task(t) for t in tasks]
    # suites overlap (tube includes triples and totally-real); keep one report per key
    results, seen = [], set()
    for r in (r for chunk in chunks for r in chunk):
        if r.sort_key() not in seen:
            seen.add(r.sort_key())
            results.append(r)
    return RunReport(__version__, spec.suite_id, results, (time.perf_counter() - t0) * 1000.0)


# ---------------------------------------------------------------- argparse

def _parse_ranges(items: list[str]) -> dict:
    ranges = dict(hss_catalog.DEFAULT_RANGES)
    for item in items or []:
        fam, _, val = item.partition("=")
        if not val.isdigit():
            raise UsageError(f"bad range {item!r}; expected FAMILY=N")
        ranges[fam] = int(val)
    return ranges


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hssrigid", description="Exact verification suites for Hermitian symmetric spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    lst = sub.add_parser("list", help="list spaces or embeddings")
    lst.add_argument("what", choices=("spaces", "embeddings"))
    lst.add_argument("--space")
    ver = sub.add_parser("verify", help="run a check suite")
    ver.add_argument("--suite", required=True, choices=SUITES)
    ver.add_argument("--space")
    ver.add_argument("--max-rank", type=int)
    ver.add_argument("--range", action="append", metavar="FAMILY=N",
                     help="upper parameter bound per family (G, GII, GIII, Q)")
    ver.add_argument("--max-ell", type=int, default=max(SPIN_ELLS), help="largest l for the spin suite")
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.add_argument("--out")
    return p


def _list(args) -> str:
    if args.what == "spaces":
        lines = []
        for fam, prm in hss_catalog.supported_spaces():
            series, rank, node = hss_catalog._realization(fam, prm)
            lines.append(f"{hss_catalog.canonical_label(fam, prm):<14} {series}{rank} node {node}")
        return "\n".join(lines) + "\n"
    if not args.space:
        raise UsageError("list embeddings needs --space")
    spec = SuiteSpec("span", args.space)
    lines = []
    for h in spec.spaces():
        for e in hss_catalog.catalog_embeddings(h):
            tag = "diagonal" if e.diagonal_type else "non-diagonal"
            err = f"  catalog-error: {e.catalog_error}" if e.catalog_error else ""
            lines.append(f"{h.label:<14} {e.name:<28} dim {e.dim_m:<3} {tag}{err}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help, --version and bad usage
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "list":
            sys.stdout.write(_list(args))
            return 0
        spec = SuiteSpec(args.suite, args.space, args.max_rank, _parse_ranges(args.range), args.max_ell)
        report = run_suite(spec)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hssrigid: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.format == "json":
            text = render(report, "text")
    sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
