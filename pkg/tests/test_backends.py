"""The compiled extension must behave identically to the pure reference."""

import random

import numpy as np
import pytest

from gstalign import _kernels_py as pure
from gstalign import kernels

compiled = pytest.importorskip(
    "gstalign._speedups", reason="compiled extension not built"
)


def random_seqs(rng, n=None, max_len=40):
    n = n or rng.randint(1, 5)
    sigma = rng.choice((2, 4, 26, 256))
    return [
        bytes(rng.randrange(sigma) for _ in range(rng.randint(1, max_len)))
        for _ in range(n)
    ]


class TestTreeEquality:
    def test_raw_arrays_identical(self):
        rng = random.Random(101)
        for _ in range(150):
            seqs = random_seqs(rng)
            rp = pure.build_gst_raw(seqs)
            rc = compiled.build_gst_raw(seqs)
            assert rp.keys() == rc.keys()
            for key in rp:
                assert np.array_equal(rp[key], rc[key]), key

    def test_dfs_stats_identical(self):
        rng = random.Random(102)
        for _ in range(80):
            raw = pure.build_gst_raw(random_seqs(rng))
            elen = raw["edge_end"] - raw["edge_start"]
            a = pure.dfs_stats(raw["csr_off"], raw["csr_child"], elen)
            b = compiled.dfs_stats(raw["csr_off"], raw["csr_child"], elen)
            for x, y in zip(a, b):
                assert np.array_equal(x, y)


class TestDpEquality:
    def test_lev_identical(self):
        rng = random.Random(103)
        for _ in range(400):
            a = bytes(rng.randrange(8) for _ in range(rng.randint(0, 50)))
            b = bytes(rng.randrange(8) for _ in range(rng.randint(0, 50)))
            assert pure.lev(a, b) == compiled.lev(a, b)

    def test_nw_identical(self):
        rng = random.Random(104)
        for _ in range(300):
            a = bytes(rng.randrange(6) for _ in range(rng.randint(0, 30)))
            b = bytes(rng.randrange(6) for _ in range(rng.randint(0, 30)))
            sc = (rng.randint(0, 2), rng.randint(-3, -1), rng.randint(-3, -1))
            assert pure.nw_ops(a, b, *sc) == compiled.nw_ops(a, b, *sc)

    def test_profile_ops_identical(self):
        rng = random.Random(105)
        from gstalign.baseline import _Profile
        from gstalign.corpus import Sequence

        for _ in range(60):
            s1 = Sequence(0, bytes(rng.randrange(4) for _ in range(rng.randint(1, 15))))
            s2 = Sequence(1, bytes(rng.randrange(4) for _ in range(rng.randint(1, 15))))
            p1, p2 = _Profile.leaf(s1), _Profile.leaf(s2)
            args1 = (*p1.column_stats(), 1)
            args2 = (*p2.column_stats(), 1)
            got_p = pure.profile_ops(*args1, *args2, 1, -1, -2)
            got_c = compiled.profile_ops(*args1, *args2, 1, -1, -2)
            assert got_p == got_c


class TestDispatch:
    def test_active_backend_is_compiled_by_default(self):
        assert kernels.active_backend() == "compiled"
        assert kernels.available_backends() == ("compiled", "pure")

    def test_set_backend_round_trip(self):
        kernels.set_backend("pure")
        assert kernels.active_backend() == "pure"
        kernels.set_backend("auto")
        assert kernels.active_backend() == "compiled"

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            kernels.set_backend("gpu")

    def test_full_pipeline_identical_across_backends(self):
        rng = random.Random(106)
        from gstalign.corpus import from_bytes
        from gstalign.msalign import align, render

        for _ in range(25):
            corpus = from_bytes(random_seqs(rng, n=rng.randint(2, 5), max_len=30))
            try:
                kernels.set_backend("pure")
                chain_p = align(corpus)
                rows_p = render(corpus, chain_p, b"\xff")
                kernels.set_backend("compiled")
                chain_c = align(corpus)
                rows_c = render(corpus, chain_c, b"\xff")
            finally:
                kernels.set_backend("auto")
            assert [(a.value, a.starts.tolist()) for a in chain_p] == \
                   [(a.value, a.starts.tolist()) for a in chain_c]
            assert rows_p == rows_c
