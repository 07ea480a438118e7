"""Classical comparison aligners.

A "ClustalW-lite" pipeline: all-pairs distances, a neighbour-joining guide
tree, then progressive profile alignment.  No substitution matrices, no
affine gaps, no sequence weighting: the point of the baseline is the
asymptotic shape (quadratic in the number of sequences), not scoring
parity with any particular ClustalW build.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .corpus import Corpus, Sequence

GAP_CODE = 256  # out-of-alphabet gap marker used in internal row matrices


@dataclass(frozen=True)
class Scoring:
    match: int = 1
    mismatch: int = -1
    gap: int = -2


#: (0, -1, -1) scoring: the negated alignment score equals the edit distance
DISTANCE_SCORING = Scoring(match=0, mismatch=-1, gap=-1)


@dataclass(frozen=True)
class PairwiseAlignment:
    row_a: bytes
    row_b: bytes
    score: int


def _data(x) -> bytes:
    return x.data if isinstance(x, Sequence) else bytes(x)


def levenshtein(a, b) -> int:
    """Minimum insertions + deletions + substitutions turning a into b."""
    return kernels.lev(_data(a), _data(b))


def needleman_wunsch(a, b, scoring: Scoring = Scoring(),
                     gap_symbol: bytes = b"*") -> PairwiseAlignment:
    """Optimal global alignment, ties preferring diagonal, then up, then left."""
    da, db = _data(a), _data(b)
    score, ops = kernels.nw_ops(da, db, scoring.match, scoring.mismatch, scoring.gap)
    gap = gap_symbol if isinstance(gap_symbol, bytes) else bytes([gap_symbol])
    ra = bytearray()
    rb = bytearray()
    i = j = 0
    for op in ops:
        if op == ord("D"):
            ra.append(da[i]); rb.append(db[j]); i += 1; j += 1
        elif op == ord("U"):
            ra.append(da[i]); rb += gap; i += 1
        else:
            ra += gap; rb.append(db[j]); j += 1
    return PairwiseAlignment(bytes(ra), bytes(rb), score)


def similarity_matrix(corpus: Corpus, on_pair=None) -> np.ndarray:
    """Normalized distances d(i,j) = lev(i,j) / max(len_i, len_j).

    Exactly n(n-1)/2 pairwise computations; ``on_pair(i, j)`` is invoked for
    each (instrumentation hook used by the cost-profile tests).
    """
    corpus.require(2)
    n = corpus.n
    data = corpus.byte_seqs()
    d = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            if on_pair is not None:
                on_pair(i, j)
            dist = kernels.lev(data[i], data[j]) / max(len(data[i]), len(data[j]))
            d[i, j] = d[j, i] = dist
    return d


@dataclass(frozen=True)
class GuideTree:
    """Neighbour-joining agglomeration order.

    ``joins`` lists (left, right, height) with cluster ids: 0..n-1 are
    leaves, join k creates cluster n+k.  The last join is the root.
    """

    n_leaves: int
    joins: tuple[tuple[int, int, float], ...]

    @property
    def root(self) -> int:
        return self.n_leaves + len(self.joins) - 1

    def leaves(self) -> set[int]:
        return set(range(self.n_leaves))


def build_guide_tree(matrix: np.ndarray) -> GuideTree:
    """Saitou-Nei neighbour joining, ties to the smallest cluster-id pair."""
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    if matrix.shape != (n, n) or n < 2:
        raise ValueError("need a square distance matrix over >= 2 sequences")
    total = 2 * n - 1
    d = np.full((total, total), np.inf)
    d[:n, :n] = matrix
    np.fill_diagonal(d, 0.0)
    active = list(range(n))
    joins: list[tuple[int, int, float]] = []
    nxt = n
    while len(active) > 2:
        idx = np.asarray(active)
        sub = d[np.ix_(idx, idx)]
        r = len(idx)
        sums = sub.sum(axis=1)
        q = (r - 2) * sub - sums[:, None] - sums[None, :]
        np.fill_diagonal(q, np.inf)
        flat = int(np.argmin(q))  # row-major: smallest (i, j) wins ties
        ai, aj = divmod(flat, r)
        if ai > aj:
            ai, aj = aj, ai
        i, j = int(idx[ai]), int(idx[aj])
        dij = d[i, j]
        rest = [k for k in active if k != i and k != j]
        for k in rest:
            d[nxt, k] = d[k, nxt] = 0.5 * (d[i, k] + d[j, k] - dij)
        d[nxt, nxt] = 0.0
        joins.append((i, j, float(dij)))
        active = rest + [nxt]
        nxt += 1
    i, j = sorted(active)
    joins.append((i, j, float(d[i, j])))
    return GuideTree(n, tuple(joins))


class _Profile:
    """Rows of one alignment profile as a (rows x columns) uint16 matrix."""

    __slots__ = ("seq_ids", "rows")

    def __init__(self, seq_ids, rows):
        self.seq_ids = seq_ids
        self.rows = rows

    @staticmethod
    def leaf(seq: Sequence) -> "_Profile":
        return _Profile([seq.id], np.frombuffer(seq.data, dtype=np.uint8)
                        .astype(np.uint16)[None, :].copy())

    def column_stats(self):
        ncols = self.rows.shape[1]
        counts = np.zeros((ncols, GAP_CODE + 1), dtype=np.int64)
        cols = np.repeat(np.arange(ncols, dtype=np.int64), self.rows.shape[0])
        np.add.at(counts, (cols, self.rows.T.ravel().astype(np.int64)), 1)
        nz_col, nz_sym = np.nonzero(counts[:, :GAP_CODE])
        off = np.zeros(ncols + 1, dtype=np.int64)
        np.add.at(off, nz_col + 1, 1)
        off = np.cumsum(off)
        ng = self.rows.shape[0] - counts[:, GAP_CODE]
        return (off, nz_sym.astype(np.int32), counts[nz_col, nz_sym],
                ng.astype(np.int64))


def _merge(p1: _Profile, p2: _Profile, scoring: Scoring) -> _Profile:
    off1, sym1, cnt1, ng1 = p1.column_stats()
    off2, sym2, cnt2, ng2 = p2.column_stats()
    ops = kernels.profile_ops(off1, sym1, cnt1, ng1, p1.rows.shape[0],
                              off2, sym2, cnt2, ng2, p2.rows.shape[0],
                              scoring.match, scoring.mismatch, scoring.gap)
    opcodes = np.frombuffer(ops, dtype=np.uint8)
    take1 = opcodes != ord("L")
    take2 = opcodes != ord("U")
    width = len(opcodes)
    out1 = np.full((p1.rows.shape[0], width), GAP_CODE, dtype=np.uint16)
    out2 = np.full((p2.rows.shape[0], width), GAP_CODE, dtype=np.uint16)
    out1[:, take1] = p1.rows
    out2[:, take2] = p2.rows
    return _Profile(p1.seq_ids + p2.seq_ids, np.vstack([out1, out2]))


def progressive_align(corpus: Corpus, tree: GuideTree,
                      scoring: Scoring = Scoring(),
                      gap_symbol: bytes = b"*") -> list[bytes]:
    """Merge profiles leaves-to-root along the guide tree.

    Returns one gapped row per sequence, in corpus order.  Gaps inserted at
    one merge persist in all later merges.
    """
    if tree.leaves() != set(range(corpus.n)):
        raise ValueError("guide tree does not cover the corpus")
    profiles: dict[int, _Profile] = {s.id: _Profile.leaf(s) for s in corpus}
    nxt = tree.n_leaves
    for left, right, _height in tree.joins:
        profiles[nxt] = _merge(profiles.pop(left), profiles.pop(right), scoring)
        nxt += 1
    final = profiles[tree.root]
    gap = gap_symbol[0] if isinstance(gap_symbol, bytes) else int(gap_symbol)
    rows: list[bytes] = [b""] * corpus.n
    matrix = final.rows.copy()
    matrix[matrix == GAP_CODE] = gap
    for pos, sid in enumerate(final.seq_ids):
        rows[sid] = matrix[pos].astype(np.uint8).tobytes()
    return rows


def clustalw_lite(corpus: Corpus, scoring: Scoring = Scoring(),
                  gap_symbol: bytes = b"*") -> list[bytes]:
    """The full baseline pipeline: distances, guide tree, progressive merge."""
    d = similarity_matrix(corpus)
    tree = build_guide_tree(d)
    return progressive_align(corpus, tree, scoring, gap_symbol)
