"""Generalized suffix tree with colour sets and multi-sub-word extraction.

The tree is built by the active kernel backend (Ukkonen's online
construction over the concatenated corpus with unique per-sequence
sentinels).  This module derives everything callers see from the flat
kernel arrays: node counts, colour sets, the fully coloured branching
nodes, and the multi-sub-word collection that drives alignment.

Sentinels never appear in anything exposed here: leaf edges are clipped at
the owning sequence's end, and the leaf for a bare sentinel suffix is
dropped.  A leaf whose clipped edge is non-empty is presented as hanging
from a synthesized branching node at the end of its suffix, so a tree over
one n-symbol sequence shows n leaves and at most n+1 branching nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .corpus import Corpus, CorpusError


@dataclass(frozen=True)
class MultiSubWord:
    """A common sub-word plus every occurrence start index per sequence.

    Occurrences are stored columnar (parallel ``seq_ids`` / ``starts``
    arrays sorted by sequence then start) so the alignment recursion can
    filter them with vectorized masks.
    """

    value: bytes
    seq_ids: np.ndarray
    starts: np.ndarray

    @staticmethod
    def from_occurrences(value: bytes, occ: dict[int, list[int]]) -> "MultiSubWord":
        pairs = sorted((s, i) for s, idxs in occ.items() for i in idxs)
        return MultiSubWord(
            bytes(value),
            np.asarray([p[0] for p in pairs], dtype=np.int64),
            np.asarray([p[1] for p in pairs], dtype=np.int64),
        )

    @property
    def occurrences(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for s, i in zip(self.seq_ids.tolist(), self.starts.tolist()):
            out.setdefault(s, []).append(i)
        return out

    def covers(self, n_sequences: int) -> bool:
        """True when every sequence 0..n-1 has at least one occurrence."""
        if len(self.seq_ids) < n_sequences:
            return False
        sid = self.seq_ids
        distinct = 1 + int(np.count_nonzero(sid[1:] != sid[:-1]))
        return distinct == n_sequences

    def bracket(self) -> str:
        """Debug notation: [value - {0@1 0@3 1@6}]."""
        occ = " ".join(f"{s}@{i}" for s, i in zip(self.seq_ids.tolist(), self.starts.tolist()))
        return f"[{_printable(self.value)} - {{{occ}}}]"

    def __len__(self) -> int:
        return len(self.value)


def _printable(value: bytes) -> str:
    return "".join(chr(c) if 0x20 <= c < 0x7F else f"\\x{c:02x}" for c in value)


class GstNode:
    """Inspectable tree node with sentinel-free labels.  See Gst.root."""

    __slots__ = ("kind", "children", "leaves", "edge_ref", "colour_set", "label", "path_label")

    def __init__(self, kind, edge_ref, colour_set, path_label, label=None):
        self.kind = kind                # "branching" | "leaf"
        self.children: dict[int, GstNode] = {}
        self.leaves: list[GstNode] = []  # leaf children on unlabelled edges
        self.edge_ref = edge_ref        # (seq_id, start, length) or None
        self.colour_set = colour_set
        self.path_label = path_label    # bytes from the root to this node
        self.label = label              # (seq_id, suffix_start) for leaves

    def walk(self):
        yield self
        for child in self.children.values():
            yield from child.walk()
        yield from self.leaves


class Gst:
    """A built generalized suffix tree bound to its corpus."""

    def __init__(self, corpus: Corpus):
        corpus.require(1)
        self.corpus = corpus
        self._raw = kernels.build_gst_raw(corpus.byte_seqs())
        self._derive()

    def _derive(self):
        raw = self._raw
        sp = raw["suffix_pos"]
        seq_start = raw["seq_start"]
        seq_len = raw["seq_len"]
        seq_end = seq_start + seq_len
        n_nodes = len(sp)
        m = self.corpus.n

        is_leaf = sp >= 0
        # sequence owning each leaf; sentinel positions sit at seq_end
        leaf_seq = np.searchsorted(seq_end, sp, side="left")
        leaf_seq[~is_leaf] = -1
        sentinel_leaf = is_leaf & (sp == seq_end[np.clip(leaf_seq, 0, m - 1)])

        # clipped edge lengths: leaf edges stop at the owning sequence's end
        clip_end = raw["edge_end"].copy()
        clip_end[is_leaf] = seq_end[np.clip(leaf_seq[is_leaf], 0, m - 1)]
        edge_len = clip_end - raw["edge_start"]
        edge_len[0] = 0

        pre, size, path_len = kernels.dfs_stats(raw["csr_off"], raw["csr_child"], edge_len)

        kept_leaf = is_leaf & ~sentinel_leaf
        self.leaf_count = int(np.count_nonzero(kept_leaf))
        internal_count = int(np.count_nonzero(~is_leaf)) - 1  # excl. root
        synth_count = int(np.count_nonzero(kept_leaf & (edge_len > 0)))
        self.branching_count = internal_count + synth_count

        # colour bitsets, one uint64 lane block per 64 sequences, OR-ed
        # bottom-up level by level
        parent = np.zeros(n_nodes, dtype=np.int64)
        parent[raw["csr_child"]] = np.repeat(
            np.arange(n_nodes, dtype=np.int64), np.diff(raw["csr_off"])
        )
        parent[0] = -1
        depth_l = [0] * n_nodes
        parent_l = parent.tolist()
        order = np.argsort(pre)  # preorder: parents precede children
        for v in order.tolist()[1:]:
            depth_l[v] = depth_l[parent_l[v]] + 1
        depth = np.asarray(depth_l, dtype=np.int64)
        lanes = (m + 63) // 64
        colour = np.zeros((n_nodes, lanes), dtype=np.uint64)
        lk = leaf_seq[is_leaf]
        colour[is_leaf, lk // 64] = np.uint64(1) << (lk % 64).astype(np.uint64)
        for d in range(int(depth.max()), 0, -1):
            lv = np.nonzero(depth == d)[0]
            np.bitwise_or.at(colour, parent[lv], colour[lv])

        full = np.zeros(lanes, dtype=np.uint64)
        full[: m // 64] = ~np.uint64(0)
        if m % 64:
            full[lanes - 1] = (np.uint64(1) << np.uint64(m % 64)) - np.uint64(1)
        fully = (~is_leaf) & np.all(colour == full, axis=1)
        fully[0] = False
        fc_nodes = np.nonzero(fully)[0]
        self._fc_nodes = fc_nodes[np.argsort(pre[fc_nodes])]
        self.fully_coloured_count = len(self._fc_nodes)

        # leaves ordered by preorder; a node's subtree covers the preorder
        # interval [pre, pre + size), so its occurrences are one slice
        kl = np.nonzero(kept_leaf)[0]
        leaf_order = kl[np.argsort(pre[kl])]
        self._leaf_pre = pre[leaf_order]
        self._leaf_seq = leaf_seq[leaf_order]
        self._leaf_start = (sp[leaf_order] - seq_start[leaf_seq[leaf_order]])
        self._pre = pre
        self._size = size
        self._path_len = path_len
        self._parent = parent
        self._edge_len = edge_len
        self._clip_end = clip_end
        self._kept_leaf = kept_leaf
        self._is_leaf = is_leaf
        self._leaf_seq_all = leaf_seq
        self._colour = colour

    def _node_occurrences(self, v: int):
        lo = np.searchsorted(self._leaf_pre, self._pre[v], side="left")
        hi = np.searchsorted(self._leaf_pre, self._pre[v] + self._size[v], side="left")
        seqs = self._leaf_seq[lo:hi]
        starts = self._leaf_start[lo:hi]
        order = np.lexsort((starts, seqs))
        return seqs[order], starts[order]

    def _node_value(self, v: int) -> bytes:
        seqs, starts = self._node_occurrences(v)
        s = int(seqs[0])
        i = int(starts[0])
        return self.corpus[s].data[i : i + int(self._path_len[v])]

    @cached_property
    def multi_sub_words(self) -> list[MultiSubWord]:
        out = []
        for v in self._fc_nodes:
            seqs, starts = self._node_occurrences(int(v))
            out.append(MultiSubWord(self._node_value(int(v)), seqs, starts))
        return out

    @cached_property
    def root(self) -> GstNode:
        """Materialize the paper-view tree (meant for small corpora)."""
        raw = self._raw
        text = raw["text"]
        seq_start = raw["seq_start"].tolist()
        off = raw["csr_off"].tolist()
        sym = raw["csr_sym"].tolist()
        kid = raw["csr_child"].tolist()
        sp = raw["suffix_pos"].tolist()
        es = raw["edge_start"].tolist()
        ce = self._clip_end.tolist()
        colours = self._colour

        def colour_set(v):
            bits = colours[v]
            return frozenset(
                lane * 64 + b
                for lane, word in enumerate(bits.tolist())
                for b in range(64)
                if word >> b & 1
            )

        def edge_ref(v):
            if ce[v] <= es[v]:
                return None
            s = int(np.searchsorted(raw["seq_start"] + raw["seq_len"], es[v], side="right"))
            s = min(s, len(seq_start) - 1)
            return (s, es[v] - seq_start[s], ce[v] - es[v])

        def build(v, path):
            if sp[v] >= 0:
                s = int(self._leaf_seq_all[v])
                local = sp[v] - seq_start[s]
                lab = bytes(text[es[v]:ce[v]].astype(np.uint8)) if ce[v] > es[v] else b""
                leaf = GstNode("leaf", None, colour_set(v), path + lab, label=(s, local))
                if not lab:
                    return None, leaf
                # non-empty clipped edge: synthesize the end-of-suffix node
                node = GstNode("branching", edge_ref(v), colour_set(v), path + lab)
                node.leaves.append(leaf)
                return node, None
            node = GstNode("branching", edge_ref(v), colour_set(v), path)
            for j in range(off[v], off[v + 1]):
                c = kid[j]
                if sp[c] >= 0:
                    s = int(self._leaf_seq_all[c])
                    if sp[c] == seq_start[s] + int(self._raw["seq_len"][s]):
                        continue  # bare-sentinel suffix: dropped from the view
                    child, leaf = build(c, path)
                    if child is not None:
                        node.children[sym[j]] = child
                    else:
                        node.leaves.append(leaf)
                else:
                    child, _ = build(c, path + bytes(text[es[c]:ce[c]].astype(np.uint8)))
                    node.children[sym[j]] = child
            return node, None

        root, _ = build(0, b"")
        return root

    def fully_coloured_values(self) -> set[bytes]:
        """Every sub-word common to all sequences.

        Fully coloured branching nodes contribute their path label plus the
        label prefixes along their incoming edge; the union over all such
        nodes is exactly the common sub-word set.
        """
        self.corpus.require(2)
        values: set[bytes] = set()
        for v in self._fc_nodes:
            v = int(v)
            hi = int(self._path_len[v])
            lo = int(self._path_len[self._parent[v]])
            word = self._node_value(v)
            for k in range(lo + 1, hi + 1):
                values.add(word[:k])
        return values

    def dump_text(self) -> str:
        lines = [
            f"sequences: {self.corpus.n}",
            f"leaf nodes: {self.leaf_count}",
            f"branching nodes (excl. root): {self.branching_count}",
            f"fully coloured branching nodes: {self.fully_coloured_count}",
        ]
        if self.corpus.n >= 2:
            values = sorted(self.fully_coloured_values())
            lines.append(f"common sub-words: {len(values)}")
            lines.append("  " + " ".join(_printable(v) for v in values))
            lines.append(f"multi sub-words: {len(self.multi_sub_words)}")
            for msw in self.multi_sub_words:
                lines.append("  " + msw.bracket())
            lines.append(f"combinations: {count_combinations(self.multi_sub_words)}")
        return "\n".join(lines)

    def dump_json(self) -> dict:
        out = {
            "sequences": self.corpus.n,
            "leaf_count": self.leaf_count,
            "branching_count": self.branching_count,
            "fully_coloured_count": self.fully_coloured_count,
        }
        if self.corpus.n >= 2:
            out["common_sub_words"] = sorted(v.hex() for v in self.fully_coloured_values())
            out["multi_sub_words"] = [
                {"value": m.value.hex(),
                 "occurrences": {str(k): v for k, v in m.occurrences.items()}}
                for m in self.multi_sub_words
            ]
            out["combinations"] = count_combinations(self.multi_sub_words)
        return out


def build_gst(corpus: Corpus) -> Gst:
    """Build the generalized suffix tree for a corpus (linear time)."""
    if corpus.n == 0:
        raise CorpusError("cannot build a suffix tree over an empty corpus")
    return Gst(corpus)


def fully_coloured_values(gst: Gst) -> set[bytes]:
    return gst.fully_coloured_values()


def extract_msws(gst: Gst) -> list[MultiSubWord]:
    """One multi sub-word per fully coloured branching node.

    Collection order is the tree's depth-first discovery order with
    children visited by ascending first symbol; downstream tie-breaking
    relies on this order being deterministic.
    """
    gst.corpus.require(2)
    return list(gst.multi_sub_words)


def count_combinations(msws: list[MultiSubWord]) -> int:
    """Exact number of occurrence combinations across the collection.

    Sum over multi sub-words of the product of per-sequence occurrence
    counts; this is the quantity that makes combination-enumerating
    alignment approaches infeasible.
    """
    total = 0
    for m in msws:
        if len(m.seq_ids) == 0:
            continue
        _, counts = np.unique(m.seq_ids, return_counts=True)
        prod = 1
        for c in counts.tolist():
            prod *= c
        total += prod
    return total
