import random

import pytest

import oracles
from conftest import random_corpus, unused_byte
from gstalign.corpus import from_bytes
from gstalign.metrics import (
    AlignmentReport,
    fit_scaling,
    overlap_chars,
    overlap_chars_matrix,
    sp_edit_distance,
)
from gstalign.msalign import align, render


class TestSpEditDistance:
    def test_identical_rows(self):
        assert sp_edit_distance([b"abc", b"abc", b"abc"]) == 0

    def test_two_gap_symbol_columns(self):
        # both columns pair a gap against a symbol
        assert sp_edit_distance([b"a*", b"*a"]) == 2

    def test_three_matching_one_divergent(self):
        rows = [b"abc", b"abc", b"abc", b"aXc"]
        assert sp_edit_distance(rows) == 3

    def test_matches_pairwise_oracle(self, rng):
        for _ in range(60):
            n = rng.randint(2, 6)
            width = rng.randint(1, 12)
            rows = [bytes(rng.randrange(4) for _ in range(width)) for _ in range(n)]
            assert sp_edit_distance(rows) == oracles.sp_cost_pairwise(rows)

    def test_row_permutation_invariance(self, rng):
        rows = [bytes(rng.randrange(3) for _ in range(20)) for _ in range(5)]
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert sp_edit_distance(rows) == sp_edit_distance(shuffled)

    def test_gap_substitution_invariance(self):
        rows1 = [b"ab*c", b"a**c"]
        rows2 = [b"ab#c", b"a##c"]
        assert sp_edit_distance(rows1, b"*") == sp_edit_distance(rows2, b"#")

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            sp_edit_distance([b"ab", b"abc"])

    def test_needs_two_rows(self):
        with pytest.raises(ValueError):
            sp_edit_distance([b"ab"])


class TestOverlapChars:
    def test_worked_example_chain(self):
        corpus = from_bytes([b"ADCxzDCxBAx", b"DCxAzDCxpxBA"])
        chain = align(corpus)
        assert overlap_chars(chain) == 9  # DCx + zDCx + BA

    def test_empty_chain(self):
        corpus = from_bytes([b"abc", b"xyz"])
        assert overlap_chars(align(corpus)) == 0

    def test_identical_sequences_full_length(self):
        corpus = from_bytes([b"hello", b"hello"])
        assert overlap_chars(align(corpus)) == 5


class TestOverlapCharsMatrix:
    def test_matches_chain_on_rendering(self):
        corpus = from_bytes([b"ADCxzDCxBAx", b"DCxAzDCxpxBA"])
        chain = align(corpus)
        rows = render(corpus, chain, b"*")
        assert overlap_chars_matrix(rows, b"*") == overlap_chars(chain) == 9

    def test_all_gap_column_does_not_count(self):
        assert overlap_chars_matrix([b"a*b", b"a*b"], b"*") == 2

    def test_identical_ungapped_rows(self):
        assert overlap_chars_matrix([b"abcd", b"abcd", b"abcd"], b"*") == 4

    def test_chain_vs_matrix_with_coincidence_guard(self, rng):
        # matrix count = chain count + columns that happen to agree outside
        # the anchors
        for _ in range(60):
            corpus = random_corpus(rng, n_seqs=rng.randint(2, 5), max_len=30)
            gap = unused_byte(corpus)
            chain = align(corpus)
            rows = render(corpus, chain, bytes([gap]))
            anchor_cols = overlap_chars(chain)
            coincidences = _coincidental_columns(corpus, chain, rows, gap)
            assert overlap_chars_matrix(rows, gap) == anchor_cols + coincidences


def _coincidental_columns(corpus, chain, rows, gap):
    width = len(rows[0])
    anchor_mask = [False] * width
    # recompute anchor column spans the way render lays them out
    pos = 0
    prev_end = [0] * corpus.n
    for a in chain:
        residues = [a.starts[i] - prev_end[i] for i in range(corpus.n)]
        pos += max(residues)
        for k in range(len(a.value)):
            anchor_mask[pos + k] = True
        pos += len(a.value)
        prev_end = [a.starts[i] + len(a.value) for i in range(corpus.n)]
    count = 0
    for col in range(width):
        if anchor_mask[col]:
            continue
        symbols = {r[col] for r in rows}
        if len(symbols) == 1 and gap not in symbols:
            count += 1
    return count


class TestFitScaling:
    def test_exact_quadratic(self):
        pts = [(n, 2.0 * n * n) for n in (2, 5, 10, 20, 50)]
        fit = fit_scaling(pts, "quadratic")
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.coefficients[0] == pytest.approx(2.0)

    def test_exact_linear(self):
        pts = [(n, 3.0 * n) for n in (1, 2, 4, 8)]
        fit = fit_scaling(pts, "linear")
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.coefficients[0] == pytest.approx(3.0)

    def test_linear_data_has_zero_quadratic_coefficient(self):
        pts = [(n, 3.0 * n) for n in (1, 2, 4, 8, 16)]
        fit = fit_scaling(pts, "quadratic")
        assert abs(fit.coefficients[0]) < 1e-9

    def test_known_least_squares(self):
        # normal equations solved by hand for t = 2n + 1 with one outlier:
        # points (1,3), (2,5), (3,8) -> slope 2.5, intercept 1/3 - ... check
        fit = fit_scaling([(1, 3.0), (2, 5.0), (3, 8.0)], "linear")
        assert fit.coefficients[0] == pytest.approx(2.5)
        assert fit.coefficients[1] == pytest.approx(16 / 3 - 2.5 * 2)

    def test_requires_three_points(self):
        with pytest.raises(ValueError):
            fit_scaling([(1, 1.0), (2, 2.0)], "linear")

    def test_requires_distinct_counts(self):
        with pytest.raises(ValueError):
            fit_scaling([(1, 1.0), (1, 2.0), (2, 3.0)], "linear")


class TestAlignmentReport:
    def test_json_round_trip(self):
        import json

        rep = AlignmentReport(5, 9, 3, 7, 1234, 2, 14)
        data = json.loads(rep.to_json())
        assert data["sp_edit_distance"] == 5
        assert data["overlap_chars"] == 9
        assert data["elapsed_ns"] == 1234

    def test_csv_row(self):
        rep = AlignmentReport(5, 9, 3, 7, 1234, 2, 14)
        assert rep.csv_row("ms", 10, 0) == "ms,10,0,1234,5,9,3,7"
