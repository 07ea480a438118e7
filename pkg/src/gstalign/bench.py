"""Benchmark harness: scaling runs over sequence-count schedules.

For each (algorithm, count) cell the alignment is repeated and the median
wall time reported; medians are what the comparison tables use.  Repeats
run sequentially on one thread to keep timing honest.  A second harness
times the pure-Python kernels against the compiled extension.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

from . import kernels
from .baseline import Scoring, clustalw_lite, needleman_wunsch, similarity_matrix, build_guide_tree, progressive_align
from .corpus import Corpus, CorpusError, generate_synthetic, take_prefix
from .gst import build_gst, extract_msws
from .metrics import AlignmentReport, CSV_HEADER, fit_scaling, overlap_chars, sp_edit_distance, overlap_chars_matrix
from .msalign import StrategyConfig, align_msws, render

DEFAULT_COUNTS = (2, 5, 10, 15, 20, 25, 50, 100, 200)
ALGORITHMS = ("ms", "clustalw_lite", "nw_pairwise")


@dataclass(frozen=True)
class BenchPlan:
    counts: tuple[int, ...] = DEFAULT_COUNTS
    repeats: int = 25
    algorithms: tuple[str, ...] = ("ms", "clustalw_lite")
    seed: int = 0

    def __post_init__(self):
        if not self.counts or list(self.counts) != sorted(set(self.counts)):
            raise ValueError("counts must be non-empty and strictly increasing")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")


@dataclass
class BenchCell:
    algorithm: str
    n: int
    elapsed_ns: list[int] = field(default_factory=list)
    reports: list[AlignmentReport] = field(default_factory=list)

    @property
    def median_ns(self) -> int:
        return int(statistics.median(self.elapsed_ns))


def _run_ms(corpus: Corpus, cfg: StrategyConfig, gap_symbol: bytes) -> AlignmentReport:
    t0 = time.perf_counter_ns()
    msws = extract_msws(build_gst(corpus))
    chain = align_msws(corpus, msws, cfg)
    elapsed = time.perf_counter_ns() - t0
    rows = render(corpus, chain, gap_symbol)
    return AlignmentReport(
        sp_edit_distance=sp_edit_distance(rows, gap_symbol),
        overlap_chars=overlap_chars(chain),
        anchor_count=len(chain),
        msw_count=len(msws),
        elapsed_ns=elapsed,
        rows=len(rows),
        columns=len(rows[0]) if rows else 0,
    )


def _run_clustalw(corpus: Corpus, scoring: Scoring, gap_symbol: bytes) -> AlignmentReport:
    t0 = time.perf_counter_ns()
    d = similarity_matrix(corpus)
    tree = build_guide_tree(d)
    rows = progressive_align(corpus, tree, scoring, gap_symbol)
    elapsed = time.perf_counter_ns() - t0
    return AlignmentReport(
        sp_edit_distance=sp_edit_distance(rows, gap_symbol),
        overlap_chars=overlap_chars_matrix(rows, gap_symbol),
        anchor_count=0,
        msw_count=0,
        elapsed_ns=elapsed,
        rows=len(rows),
        columns=len(rows[0]) if rows else 0,
    )


def _run_nw_pairwise(corpus: Corpus, scoring: Scoring) -> AlignmentReport:
    # times the all-pairs alignment stage in isolation (the quadratic
    # driver); there is no joint row matrix, so the MSA metrics stay 0
    t0 = time.perf_counter_ns()
    data = corpus.byte_seqs()
    for i in range(len(data)):
        for j in range(i + 1, len(data)):
            needleman_wunsch(data[i], data[j], scoring)
    elapsed = time.perf_counter_ns() - t0
    return AlignmentReport(0, 0, 0, 0, elapsed, 0, 0)


def run_bench(corpus: Corpus, plan: BenchPlan, csv_path=None,
              cfg: StrategyConfig = StrategyConfig(),
              scoring: Scoring = Scoring(),
              gap_symbol: bytes = b"*") -> list[BenchCell]:
    """Execute the plan on prefixes of the corpus; returns one cell per
    (algorithm, count) with per-repeat times and reports."""
    if corpus.n < max(plan.counts):
        raise CorpusError(
            f"corpus has {corpus.n} sequences, plan needs {max(plan.counts)}"
        )
    cells: list[BenchCell] = []
    for algorithm in plan.algorithms:
        for n in plan.counts:
            sub = take_prefix(corpus, n)
            cell = BenchCell(algorithm, n)
            for _ in range(plan.repeats):
                if algorithm == "ms":
                    report = _run_ms(sub, cfg, gap_symbol)
                elif algorithm == "clustalw_lite":
                    report = _run_clustalw(sub, scoring, gap_symbol)
                else:
                    report = _run_nw_pairwise(sub, scoring)
                cell.elapsed_ns.append(report.elapsed_ns)
                cell.reports.append(report)
            cells.append(cell)
    if csv_path is not None:
        write_csv(csv_path, cells)
    return cells


def write_csv(path, cells: list[BenchCell]) -> None:
    """Append per-run rows; the header is written once per file."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            has_header = fh.readline().strip() == CSV_HEADER
    except OSError:
        has_header = False
    with open(path, "a", encoding="ascii") as fh:
        if not has_header:
            fh.write(CSV_HEADER + "\n")
        for cell in cells:
            for repeat, report in enumerate(cell.reports):
                fh.write(report.csv_row(cell.algorithm, cell.n, repeat) + "\n")


def medians(cells: list[BenchCell], algorithm: str) -> list[tuple[int, int]]:
    return [(c.n, c.median_ns) for c in cells if c.algorithm == algorithm]


def speedups(cells: list[BenchCell], baseline: str = "clustalw_lite",
             subject: str = "ms") -> list[tuple[int, float]]:
    """Per-count ratio median(baseline) / median(subject)."""
    base = dict(medians(cells, baseline))
    subj = dict(medians(cells, subject))
    return [(n, base[n] / subj[n]) for n in sorted(base) if n in subj and subj[n] > 0]


def fits(cells: list[BenchCell], algorithm: str):
    """Linear and quadratic fits of median time against count."""
    pts = [(n, float(t)) for n, t in medians(cells, algorithm)]
    if len(pts) < 3:
        return None
    return fit_scaling(pts, "linear"), fit_scaling(pts, "quadratic")


@dataclass(frozen=True)
class KernelTiming:
    kernel: str
    size: int
    pure_ns: int
    compiled_ns: int | None

    @property
    def speedup(self) -> float | None:
        if not self.compiled_ns:
            return None
        return self.pure_ns / self.compiled_ns


def _best_of(fn, repeats: int = 3) -> int:
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best


def compare_backends(size: int = 2000, seed: int = 0,
                     repeats: int = 3) -> list[KernelTiming]:
    """Time the pure and compiled kernels on the same synthetic inputs."""
    n_msgs = max(2, size // 250)
    corpus = generate_synthetic("ldap_like", max(2, n_msgs), seed)
    seqs = corpus.byte_seqs()
    a = seqs[0]
    b = seqs[1]
    jobs = {
        "gst_build": lambda: kernels.build_gst_raw(seqs),
        "levenshtein": lambda: kernels.lev(a, b),
        "nw_align": lambda: kernels.nw_ops(a, b, 1, -1, -2),
        "ms_align": lambda: align_msws(corpus, extract_msws(build_gst(corpus))),
    }
    out = []
    previous = kernels.active_backend()
    try:
        for name, fn in jobs.items():
            kernels.set_backend("pure")
            pure_ns = _best_of(fn, repeats)
            compiled_ns = None
            if "compiled" in kernels.available_backends():
                kernels.set_backend("compiled")
                compiled_ns = _best_of(fn, repeats)
            out.append(KernelTiming(name, size, pure_ns, compiled_ns))
    finally:
        kernels.set_backend(previous)
    return out
