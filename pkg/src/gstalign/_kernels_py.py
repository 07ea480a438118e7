"""Pure-Python implementations of the hot kernels.

This module mirrors the API of the compiled extension ``gstalign._speedups``
and is selected automatically when the extension is unavailable (see
``gstalign.kernels``).  The algorithms here are the reference versions: the
compiled code is a line-for-line port and is tested for equality against
this module.
"""

from __future__ import annotations

import numpy as np

name = "pure"

# Sequence i is terminated by the out-of-alphabet symbol 256 + i, so no
# suffix of one sequence is a prefix of a path into another.
_SENTINEL_BASE = 256


def build_gst_raw(seqs):
    """Build a generalized suffix tree over byte sequences (Ukkonen, online).

    Sequences are concatenated with unique per-sequence sentinel symbols and
    the active point is reset per sequence.  Returns flat arrays: per-node
    edge spans (global text coordinates), leaf suffix positions (-1 for
    internal nodes) and children in CSR form sorted by edge symbol.  Node 0
    is the root.
    """
    text = []
    seq_start = []
    seq_len = []
    for i, s in enumerate(seqs):
        seq_start.append(len(text))
        seq_len.append(len(s))
        text.extend(s)
        text.append(_SENTINEL_BASE + i)

    # node arrays; root = 0
    start = [0]
    end = [0]
    link = [0]
    children = [{}]
    suffix_pos = [-1]

    def new_node(st, en, spos):
        start.append(st)
        end.append(en)
        link.append(0)
        children.append({})
        suffix_pos.append(spos)
        return len(start) - 1

    for si in range(len(seqs)):
        lo = seq_start[si]
        hi = lo + seq_len[si] + 1  # includes the sentinel
        active_node = 0
        active_edge = 0
        active_len = 0
        remainder = 0
        for pos in range(lo, hi):
            c = text[pos]
            remainder += 1
            pending_link = 0
            while remainder > 0:
                if active_len == 0:
                    active_edge = pos
                nxt = children[active_node].get(text[active_edge])
                if nxt is None:
                    leaf = new_node(pos, hi, pos - remainder + 1)
                    children[active_node][text[active_edge]] = leaf
                    if pending_link:
                        link[pending_link] = active_node
                    pending_link = active_node
                else:
                    # min() caps the current sequence's still-growing leaf edges
                    edge_len = min(end[nxt], pos + 1) - start[nxt]
                    if active_len >= edge_len:
                        active_node = nxt
                        active_edge += edge_len
                        active_len -= edge_len
                        continue
                    if text[start[nxt] + active_len] == c:
                        active_len += 1
                        if pending_link:
                            link[pending_link] = active_node
                        break
                    split = new_node(start[nxt], start[nxt] + active_len, -1)
                    children[active_node][text[active_edge]] = split
                    leaf = new_node(pos, hi, pos - remainder + 1)
                    children[split][c] = leaf
                    start[nxt] += active_len
                    children[split][text[start[nxt]]] = nxt
                    if pending_link:
                        link[pending_link] = split
                    pending_link = split
                remainder -= 1
                if active_node == 0 and active_len > 0:
                    active_len -= 1
                    active_edge = pos - remainder + 1
                elif active_node != 0:
                    active_node = link[active_node]
        # the sentinel is unique, so every pending suffix was inserted
        assert remainder == 0

    n_nodes = len(start)
    csr_off = np.zeros(n_nodes + 1, dtype=np.int64)
    total_edges = sum(len(ch) for ch in children)
    csr_sym = np.zeros(total_edges, dtype=np.int32)
    csr_child = np.zeros(total_edges, dtype=np.int64)
    k = 0
    for v in range(n_nodes):
        csr_off[v] = k
        for sym in sorted(children[v]):
            csr_sym[k] = sym
            csr_child[k] = children[v][sym]
            k += 1
    csr_off[n_nodes] = k

    return {
        "text": np.asarray(text, dtype=np.int32),
        "seq_start": np.asarray(seq_start, dtype=np.int64),
        "seq_len": np.asarray(seq_len, dtype=np.int64),
        "edge_start": np.asarray(start, dtype=np.int64),
        "edge_end": np.asarray(end, dtype=np.int64),
        "suffix_pos": np.asarray(suffix_pos, dtype=np.int64),
        "csr_off": csr_off,
        "csr_sym": csr_sym,
        "csr_child": csr_child,
    }


def dfs_stats(csr_off, csr_child, edge_len):
    """Preorder index, subtree node count and path length per node.

    Children are visited in CSR (ascending symbol) order, which pins the
    deterministic discovery order used for multi-sub-word collections.
    """
    off = csr_off.tolist()
    kid = csr_child.tolist()
    elen = edge_len.tolist()
    n = len(off) - 1
    pre = [0] * n
    size = [0] * n
    path_len = [0] * n
    # stack entries: (node, next-child cursor)
    stack = [(0, off[0])]
    counter = 1
    while stack:
        v, cur = stack[-1]
        if cur < off[v + 1]:
            stack[-1] = (v, cur + 1)
            c = kid[cur]
            pre[c] = counter
            counter += 1
            path_len[c] = path_len[v] + elen[c]
            stack.append((c, off[c]))
        else:
            stack.pop()
            sz = 1
            for j in range(off[v], off[v + 1]):
                sz += size[kid[j]]
            size[v] = sz
    return (
        np.asarray(pre, dtype=np.int64),
        np.asarray(size, dtype=np.int64),
        np.asarray(path_len, dtype=np.int64),
    )


def lev(a: bytes, b: bytes) -> int:
    """Unit-cost edit distance (insert / delete / substitute)."""
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    if m == 0:
        return len(a)
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i, ca in enumerate(a, start=1):
        cur[0] = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            x = prev[j - 1] + cost
            y = prev[j] + 1
            if y < x:
                x = y
            z = cur[j - 1] + 1
            if z < x:
                x = z
            cur[j] = x
        prev, cur = cur, prev
    return prev[m]


def nw_ops(a: bytes, b: bytes, match: int, mismatch: int, gap: int):
    """Global alignment DP.  Returns (score, ops) with ops over {D, U, L}.

    D consumes a symbol from both inputs, U consumes from ``a`` only (gap in
    ``b``), L from ``b`` only.  Ties prefer D, then U, then L.
    """
    n, m = len(a), len(b)
    width = m + 1
    score = [0] * ((n + 1) * width)
    for j in range(1, m + 1):
        score[j] = gap * j
    for i in range(1, n + 1):
        row = i * width
        prow = row - width
        score[row] = gap * i
        ca = a[i - 1]
        for j in range(1, m + 1):
            s = score[prow + j - 1] + (match if ca == b[j - 1] else mismatch)
            y = score[prow + j] + gap
            if y > s:
                s = y
            z = score[row + j - 1] + gap
            if z > s:
                s = z
            score[row + j] = s
    ops = bytearray()
    i, j = n, m
    while i > 0 or j > 0:
        here = score[i * width + j]
        if i > 0 and j > 0 and here == score[(i - 1) * width + j - 1] + (
            match if a[i - 1] == b[j - 1] else mismatch
        ):
            ops.append(ord("D"))
            i -= 1
            j -= 1
        elif i > 0 and here == score[(i - 1) * width + j] + gap:
            ops.append(ord("U"))
            i -= 1
        else:
            ops.append(ord("L"))
            j -= 1
    ops.reverse()
    return score[n * width + m], bytes(ops)


def profile_ops(off1, sym1, cnt1, ng1, nrows1, off2, sym2, cnt2, ng2, nrows2,
                match: int, mismatch: int, gap: int) -> bytes:
    """Profile-profile global alignment over sparse column counts.

    Column pair score is the summed pairwise score across the cross rows of
    the two profiles: match/mismatch over non-gap symbol pairs, gap penalty
    for symbol-vs-gap pairs, zero for gap-vs-gap.  Gap columns inserted by
    U/L moves score gap * (non-gaps) * (rows of the other profile).
    """
    off1 = off1.tolist()
    sym1 = sym1.tolist()
    cnt1 = cnt1.tolist()
    ng1 = ng1.tolist()
    off2 = off2.tolist()
    sym2 = sym2.tolist()
    cnt2 = cnt2.tolist()
    ng2 = ng2.tolist()
    n = len(ng1)
    m = len(ng2)
    g1 = [nrows1 - x for x in ng1]
    g2 = [nrows2 - x for x in ng2]

    def pair_score(i, j):
        dot = 0
        p, q = off1[i], off2[j]
        e1, e2 = off1[i + 1], off2[j + 1]
        while p < e1 and q < e2:
            s1, s2 = sym1[p], sym2[q]
            if s1 == s2:
                dot += cnt1[p] * cnt2[q]
                p += 1
                q += 1
            elif s1 < s2:
                p += 1
            else:
                q += 1
        return (match * dot
                + mismatch * (ng1[i] * ng2[j] - dot)
                + gap * (g1[i] * ng2[j] + ng1[i] * g2[j]))

    width = m + 1
    score = [0] * ((n + 1) * width)
    for j in range(1, m + 1):
        score[j] = score[j - 1] + gap * nrows1 * ng2[j - 1]
    for i in range(1, n + 1):
        row = i * width
        prow = row - width
        up_cost = gap * ng1[i - 1] * nrows2
        score[row] = score[prow] + up_cost
        for j in range(1, m + 1):
            s = score[prow + j - 1] + pair_score(i - 1, j - 1)
            y = score[prow + j] + up_cost
            if y > s:
                s = y
            z = score[row + j - 1] + gap * nrows1 * ng2[j - 1]
            if z > s:
                s = z
            score[row + j] = s
    ops = bytearray()
    i, j = n, m
    while i > 0 or j > 0:
        here = score[i * width + j]
        if i > 0 and j > 0 and here == score[(i - 1) * width + j - 1] + pair_score(i - 1, j - 1):
            ops.append(ord("D"))
            i -= 1
            j -= 1
        elif i > 0 and here == score[(i - 1) * width + j] + gap * ng1[i - 1] * nrows2:
            ops.append(ord("U"))
            i -= 1
        else:
            ops.append(ord("L"))
            j -= 1
    ops.reverse()
    return bytes(ops)
