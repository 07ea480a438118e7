"""Divide-and-conquer anchor alignment over multi-sub-word collections.

Each round picks an anchor (one occurrence of a common sub-word per
sequence), removes occurrences that fully overlap it, trims the ones that
partially overlap, then recurses on the regions entirely to the left and
entirely to the right.  Occurrences whose remaining copies end up on
opposite sides of an anchor cannot join either sub-problem and drop out
when the sub-collections are restricted.
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus
from .gst import MultiSubWord, build_gst, extract_msws

STRATEGIES = ("biggest_left_most", "min_variance")


@dataclass(frozen=True)
class StrategyConfig:
    """Anchor selection knobs.

    min_anchor_len defaults to 1: single-symbol anchors are kept on purpose
    (binary protocols may mark the operation type with one byte).
    """

    kind: str = "biggest_left_most"
    n_largest: int = 9
    min_anchor_len: int = 1
    combination_cap: int = 10_000

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.n_largest < 1 or self.min_anchor_len < 1:
            raise ValueError("n_largest and min_anchor_len must be >= 1")


@dataclass(frozen=True)
class Segment:
    """Per-sequence half-open index windows the recursion works inside."""

    lo: np.ndarray
    hi: np.ndarray
    seq_lengths: np.ndarray

    @staticmethod
    def whole(corpus: Corpus) -> "Segment":
        lengths = np.asarray(corpus.lengths, dtype=np.int64)
        return Segment(np.zeros(corpus.n, dtype=np.int64), lengths.copy(), lengths)

    @property
    def n(self) -> int:
        return len(self.lo)


@dataclass(frozen=True)
class Anchor:
    """One chosen common sub-sequence: a value plus one start per sequence."""

    value: bytes
    starts: np.ndarray

    def __len__(self) -> int:
        return len(self.value)

    def interval(self, seq_id: int) -> tuple[int, int]:
        s = int(self.starts[seq_id])
        return s, s + len(self.value)


@dataclass(frozen=True)
class AnchorChain:
    """Ordered, per-sequence non-overlapping anchors: the alignment skeleton."""

    anchors: tuple[Anchor, ...]
    seq_lengths: tuple[int, ...]

    def __iter__(self):
        return iter(self.anchors)

    def __len__(self) -> int:
        return len(self.anchors)

    def to_json(self) -> list[dict]:
        return [
            {"value": a.value.hex(), "starts": a.starts.tolist()}
            for a in self.anchors
        ]


def restrict(msws: list[MultiSubWord], segment: Segment) -> list[MultiSubWord]:
    """Keep occurrences lying wholly inside the segment; drop multi
    sub-words that no longer occur in every sequence."""
    out = []
    n = segment.n
    for m in msws:
        lo = segment.lo[m.seq_ids]
        hi = segment.hi[m.seq_ids]
        keep = (m.starts >= lo) & (m.starts + len(m.value) <= hi)
        if not keep.all():
            m = MultiSubWord(m.value, m.seq_ids[keep], m.starts[keep])
        if m.covers(n):
            out.append(m)
    return out


def select_anchor(msws: list[MultiSubWord], segment: Segment,
                  cfg: StrategyConfig) -> Anchor | None:
    """Pick the next anchor, or None when nothing anchors this segment.

    biggest_left_most: longest value, ties to the earliest collection
    entry; the anchor starts at the smallest in-segment occurrence of that
    value independently in each sequence.

    min_variance: among the n_largest longest values, enumerate occurrence
    combinations (skipping a candidate whose combination count exceeds the
    cap) and take the combination whose relative start positions have the
    smallest variance, scaled down by value length.
    """
    candidates = [m for m in msws if len(m.value) >= cfg.min_anchor_len]
    if not candidates:
        return None
    if cfg.kind == "biggest_left_most":
        best = max(candidates, key=lambda m: len(m.value))  # max keeps the first
        starts = _leftmost_starts(best, segment.n)
        return Anchor(best.value, starts)
    return _min_variance_anchor(candidates, segment, cfg)


def _leftmost_starts(m: MultiSubWord, n: int) -> np.ndarray:
    firsts = np.searchsorted(m.seq_ids, np.arange(n, dtype=np.int64), side="left")
    return m.starts[firsts].copy()


def _min_variance_anchor(candidates, segment, cfg):
    ranked = sorted(range(len(candidates)), key=lambda i: -len(candidates[i].value))
    ranked = ranked[: cfg.n_largest]
    lengths = segment.seq_lengths.astype(np.float64)
    best = None  # (score, -len, value, starts)
    for i in sorted(ranked):
        m = candidates[i]
        occ = m.occurrences
        count = 1
        for idxs in occ.values():
            count *= len(idxs)
        if count > cfg.combination_cap:
            warnings.warn(
                f"skipping multi sub-word {m.value!r}: {count} combinations "
                f"exceed the cap of {cfg.combination_cap}",
                stacklevel=3,
            )
            continue
        seq_order = sorted(occ)
        rel_len = lengths[seq_order]
        for combo in itertools.product(*(occ[s] for s in seq_order)):
            rel = np.asarray(combo, dtype=np.float64) / rel_len
            score = float(rel.var()) / len(m.value)
            key = (score, -len(m.value), m.value)
            if best is None or key < best[0]:
                starts = np.zeros(segment.n, dtype=np.int64)
                starts[seq_order] = combo
                best = (key, Anchor(m.value, starts))
    return best[1] if best else None


def remove_full_overlaps(msws: list[MultiSubWord], anchor: Anchor) -> list[MultiSubWord]:
    """Drop occurrences that overlap the anchor without leaving a trimmable
    one-sided protrusion; multi sub-words losing a whole sequence drop."""
    n = len(anchor.starts)
    k = len(anchor.value)
    out = []
    for m in msws:
        a = anchor.starts[m.seq_ids]
        length = len(m.value)
        intersects = (m.starts < a + k) & (m.starts + length > a)
        ext_left = m.starts < a
        ext_right = m.starts + length > a + k
        keep = ~intersects | (ext_left ^ ext_right)
        if not keep.all():
            m = MultiSubWord(m.value, m.seq_ids[keep], m.starts[keep])
        if m.covers(n):
            out.append(m)
    return out


def trim_partial_overlaps(msws: list[MultiSubWord], anchor: Anchor) -> list[MultiSubWord]:
    """Shorten occurrences that straddle an anchor boundary to the part
    outside the anchor and move them to the multi sub-word of the trimmed
    value, creating it if absent."""
    n = len(anchor.starts)
    k = len(anchor.value)
    out: list[MultiSubWord] = []
    index: dict[bytes, int] = {}
    migrations: dict[bytes, set[tuple[int, int]]] = {}
    for m in msws:
        a = anchor.starts[m.seq_ids]
        length = len(m.value)
        intersects = (m.starts < a + k) & (m.starts + length > a)
        ext_left = intersects & (m.starts < a)
        ext_right = intersects & (m.starts + length > a + k)
        straddle = ext_left | ext_right
        if straddle.any():
            for sid, start, left in zip(
                m.seq_ids[straddle].tolist(),
                m.starts[straddle].tolist(),
                ext_left[straddle].tolist(),
            ):
                bound = int(anchor.starts[sid])
                if left:
                    new_value = m.value[: bound - start]
                    new_start = start
                else:
                    cut = bound + k - start
                    new_value = m.value[cut:]
                    new_start = bound + k
                migrations.setdefault(new_value, set()).add((sid, new_start))
            m = MultiSubWord(m.value, m.seq_ids[~straddle], m.starts[~straddle])
        if len(m.seq_ids):
            index.setdefault(m.value, len(out))
            out.append(m)
    for value, pairs in migrations.items():
        if value in index:
            i = index[value]
            m = out[i]
            merged = set(zip(m.seq_ids.tolist(), m.starts.tolist())) | pairs
            out[i] = MultiSubWord.from_occurrences(
                value, _pairs_to_dict(merged)
            )
        else:
            out.append(MultiSubWord.from_occurrences(value, _pairs_to_dict(pairs)))
            index[value] = len(out) - 1
    return out


def _pairs_to_dict(pairs):
    occ: dict[int, list[int]] = {}
    for s, i in sorted(pairs):
        occ.setdefault(s, []).append(i)
    return occ


def _split_segment(segment: Segment, anchor: Anchor) -> tuple[Segment, Segment]:
    left = Segment(segment.lo.copy(), anchor.starts.copy(), segment.seq_lengths)
    right = Segment(anchor.starts + len(anchor.value), segment.hi.copy(), segment.seq_lengths)
    return left, right


def align(corpus: Corpus, cfg: StrategyConfig = StrategyConfig()) -> AnchorChain:
    """Anchor-chain alignment of the whole corpus.

    Builds the suffix tree once, extracts the multi sub-word collection and
    then repeatedly restricts / selects / removes / trims / splits.  The
    recursion runs on an explicit stack and emits anchors left to right.
    """
    corpus.require(2)
    msws = extract_msws(build_gst(corpus))
    return align_msws(corpus, msws, cfg)


def align_msws(corpus: Corpus, msws: list[MultiSubWord],
               cfg: StrategyConfig = StrategyConfig()) -> AnchorChain:
    """Run the recursion over an already-extracted collection."""
    out: list[Anchor] = []
    work: list[tuple] = [("solve", msws, Segment.whole(corpus))]
    while work:
        item = work.pop()
        if item[0] == "emit":
            out.append(item[1])
            continue
        _, collection, segment = item
        collection = restrict(collection, segment)
        anchor = select_anchor(collection, segment, cfg)
        if anchor is None:
            continue
        collection = remove_full_overlaps(collection, anchor)
        collection = trim_partial_overlaps(collection, anchor)
        left, right = _split_segment(segment, anchor)
        work.append(("solve", collection, right))
        work.append(("emit", anchor))
        work.append(("solve", collection, left))
    return AnchorChain(tuple(out), tuple(corpus.lengths))


def validate_chain(corpus: Corpus, chain: AnchorChain) -> None:
    """Raise ValueError unless the chain satisfies its invariants."""
    if tuple(corpus.lengths) != chain.seq_lengths:
        raise ValueError("chain does not belong to this corpus")
    for i, seq in enumerate(corpus):
        prev_end = 0
        for a in chain:
            s, e = a.interval(i)
            if s < prev_end:
                raise ValueError(f"anchors overlap or cross in sequence {i}")
            if seq.data[s:e] != a.value:
                raise ValueError(f"anchor {a.value!r} does not match sequence {i} at {s}")
            prev_end = e
        if prev_end > len(seq):
            raise ValueError(f"anchor extends past the end of sequence {i}")


def render(corpus: Corpus, chain: AnchorChain, gap_symbol: bytes = b"*") -> list[bytes]:
    """Gapped row matrix: anchor columns aligned, residues left-justified.

    Deleting every gap symbol from row i reproduces sequence i, provided
    the gap symbol does not occur in the corpus itself.
    """
    validate_chain(corpus, chain)
    gap = _gap_byte(gap_symbol)
    rows = [bytearray() for _ in corpus]
    prev_end = [0] * corpus.n
    regions = [a for a in chain] + [None]
    for a in regions:
        residues = []
        for i, seq in enumerate(corpus):
            stop = a.interval(i)[0] if a is not None else len(seq)
            residues.append(seq.data[prev_end[i]:stop])
        width = max(len(r) for r in residues)
        for i, r in enumerate(residues):
            rows[i] += r + bytes([gap]) * (width - len(r))
        if a is not None:
            for i in range(corpus.n):
                rows[i] += a.value
                prev_end[i] = a.interval(i)[1]
    return [bytes(r) for r in rows]


def regex_skeleton(chain: AnchorChain, cfg: StrategyConfig = StrategyConfig()) -> bytes:
    """Prototype pattern: escaped anchor values with ``.*`` for gaps.

    Anchors shorter than cfg.min_anchor_len are dropped first; a wildcard
    appears wherever any sequence keeps a non-empty residue.  The pattern
    matches every corpus sequence under re.fullmatch.
    """
    kept = [a for a in chain if len(a.value) >= cfg.min_anchor_len]
    lengths = np.asarray(chain.seq_lengths, dtype=np.int64)
    prev_end = np.zeros(len(lengths), dtype=np.int64)
    parts: list[bytes] = []
    for a in kept:
        if bool(np.any(a.starts > prev_end)):
            parts.append(b".*")
        parts.append(re.escape(a.value))
        prev_end = a.starts + len(a.value)
    if bool(np.any(lengths > prev_end)):
        parts.append(b".*")
    return b"".join(parts) if parts else b".*"


def skeleton_matches(pattern: bytes, corpus: Corpus) -> list[int]:
    """Ids of sequences the pattern fails to match (empty = all match)."""
    prog = re.compile(pattern, re.DOTALL)
    return [s.id for s in corpus if prog.fullmatch(s.data) is None]


def _gap_byte(gap_symbol) -> int:
    if isinstance(gap_symbol, int):
        return gap_symbol
    if isinstance(gap_symbol, (bytes, bytearray)) and len(gap_symbol) == 1:
        return gap_symbol[0]
    raise ValueError("gap symbol must be a single byte")
