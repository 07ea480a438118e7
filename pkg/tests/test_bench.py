import statistics

import pytest

from gstalign.bench import BenchPlan, compare_backends, medians, run_bench, speedups, write_csv
from gstalign.corpus import CorpusError, generate_synthetic
from gstalign.metrics import CSV_HEADER


@pytest.fixture(scope="module")
def small_corpus():
    return generate_synthetic("ldap_like", 12, seed=11)


class TestBenchPlan:
    def test_counts_must_increase(self):
        with pytest.raises(ValueError):
            BenchPlan(counts=(5, 2))
        with pytest.raises(ValueError):
            BenchPlan(counts=())

    def test_repeats_positive(self):
        with pytest.raises(ValueError):
            BenchPlan(counts=(2,), repeats=0)

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            BenchPlan(counts=(2,), algorithms=("magic",))


class TestRunBench:
    def test_insufficient_corpus(self, small_corpus):
        plan = BenchPlan(counts=(2, 500), repeats=1)
        with pytest.raises(CorpusError):
            run_bench(small_corpus, plan)

    def test_counts_schedule_produces_one_group_per_n(self, small_corpus):
        plan = BenchPlan(counts=(2, 5, 10), repeats=3, algorithms=("ms",))
        cells = run_bench(small_corpus, plan)
        med = medians(cells, "ms")
        assert [n for n, _ in med] == [2, 5, 10]
        assert all(t > 0 for _, t in med)
        assert all(len(c.elapsed_ns) == 3 for c in cells)

    def test_baseline_medians_loosely_monotone(self, small_corpus):
        # the quadratic pair count dominates, so medians grow with n;
        # 20% slack absorbs timing noise.  (ms medians are NOT monotone at
        # small n: two messages share far more sub-word structure than ten,
        # so the n=2 collection is the most expensive one.)
        plan = BenchPlan(counts=(2, 5, 10), repeats=5, algorithms=("clustalw_lite",))
        cells = run_bench(small_corpus, plan)
        med = medians(cells, "clustalw_lite")
        for (_, t1), (_, t2) in zip(med, med[1:]):
            assert t2 >= t1 * 0.8

    def test_single_repeat_median_is_the_measurement(self, small_corpus):
        plan = BenchPlan(counts=(3,), repeats=1, algorithms=("ms",))
        cells = run_bench(small_corpus, plan)
        assert cells[0].median_ns == cells[0].elapsed_ns[0]
        assert cells[0].median_ns == int(statistics.median(cells[0].elapsed_ns))

    def test_speedup_column(self, small_corpus):
        plan = BenchPlan(counts=(2, 5), repeats=2)
        cells = run_bench(small_corpus, plan)
        base = dict(medians(cells, "clustalw_lite"))
        subj = dict(medians(cells, "ms"))
        for n, ratio in speedups(cells):
            assert ratio == pytest.approx(base[n] / subj[n])

    def test_nw_pairwise_runs(self, small_corpus):
        plan = BenchPlan(counts=(2, 4), repeats=1, algorithms=("nw_pairwise",))
        cells = run_bench(small_corpus, plan)
        assert all(c.reports[0].rows == 0 for c in cells)
        assert all(c.median_ns > 0 for c in cells)

    def test_reports_are_populated(self, small_corpus):
        plan = BenchPlan(counts=(4,), repeats=2)
        cells = run_bench(small_corpus, plan)
        ms_cell = next(c for c in cells if c.algorithm == "ms")
        rep = ms_cell.reports[0]
        assert rep.rows == 4
        assert rep.msw_count > 0
        assert rep.overlap_chars > 0


class TestCsv:
    def test_header_written_once(self, tmp_path, small_corpus):
        path = tmp_path / "runs.csv"
        plan = BenchPlan(counts=(2,), repeats=2, algorithms=("ms",))
        cells = run_bench(small_corpus, plan)
        write_csv(path, cells)
        write_csv(path, cells)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == CSV_HEADER
        assert sum(1 for line in lines if line == CSV_HEADER) == 1
        assert len(lines) == 1 + 4  # two runs appended twice

    def test_row_schema(self, tmp_path, small_corpus):
        path = tmp_path / "runs.csv"
        plan = BenchPlan(counts=(2, 3), repeats=1, algorithms=("ms",))
        run_bench(small_corpus, plan, csv_path=path)
        lines = path.read_text().strip().splitlines()
        row = lines[1].split(",")
        assert row[0] == "ms"
        assert int(row[1]) == 2
        assert int(row[2]) == 0
        assert all(int(x) >= 0 for x in row[3:])


class TestCompareBackends:
    def test_structure(self):
        timings = compare_backends(size=600, seed=3, repeats=1)
        names = [t.kernel for t in timings]
        assert names == ["gst_build", "levenshtein", "nw_align", "ms_align"]
        for t in timings:
            assert t.pure_ns > 0
            if t.compiled_ns is not None:
                assert t.compiled_ns > 0
                assert t.speedup == pytest.approx(t.pure_ns / t.compiled_ns)
