# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Line-for-line port of ``gstalign._kernels_py`` (the pure-Python reference);
see that module for the algorithm notes.  Equality of the two backends is
exercised by the test suite.
"""

from cython.operator cimport dereference, preincrement
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair

import numpy as np

name = "compiled"

ctypedef long long i64

cdef int _SENTINEL_BASE = 256


cdef _to_np(vector[i64]& vec):
    arr = np.zeros(vec.size(), dtype=np.int64)
    cdef i64[:] mv = arr
    cdef i64 j
    for j in range(<i64>vec.size()):
        mv[j] = vec[j]
    return arr


def build_gst_raw(seqs):
    cdef vector[int] text
    cdef vector[i64] seq_start, seq_len
    cdef const unsigned char[:] view
    cdef Py_ssize_t k
    cdef int si
    for si in range(len(seqs)):
        view = seqs[si]
        seq_start.push_back(text.size())
        seq_len.push_back(view.shape[0])
        for k in range(view.shape[0]):
            text.push_back(view[k])
        text.push_back(_SENTINEL_BASE + si)

    cdef vector[i64] start, end, link, suffix_pos
    cdef vector[unordered_map[int, i64]] children
    start.push_back(0); end.push_back(0); link.push_back(0)
    suffix_pos.push_back(-1)
    children.resize(1)

    cdef i64 active_node, active_edge, active_len, remainder, pending_link
    cdef i64 lo, hi, pos, nxt, edge_len, split, leaf
    cdef int c
    cdef unordered_map[int, i64].iterator it

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
                it = children[active_node].find(text[active_edge])
                if it == children[active_node].end():
                    # new leaf
                    start.push_back(pos); end.push_back(hi); link.push_back(0)
                    suffix_pos.push_back(pos - remainder + 1)
                    children.resize(children.size() + 1)
                    leaf = start.size() - 1
                    children[active_node][text[active_edge]] = leaf
                    if pending_link != 0:
                        link[pending_link] = active_node
                    pending_link = active_node
                else:
                    nxt = dereference(it).second
                    # min() caps the current sequence's still-growing leaf edges
                    edge_len = (end[nxt] if end[nxt] < pos + 1 else pos + 1) - start[nxt]
                    if active_len >= edge_len:
                        active_node = nxt
                        active_edge += edge_len
                        active_len -= edge_len
                        continue
                    if text[start[nxt] + active_len] == c:
                        active_len += 1
                        if pending_link != 0:
                            link[pending_link] = active_node
                        break
                    # split the edge
                    start.push_back(start[nxt]); end.push_back(start[nxt] + active_len)
                    link.push_back(0); suffix_pos.push_back(-1)
                    children.resize(children.size() + 1)
                    split = start.size() - 1
                    children[active_node][text[active_edge]] = split
                    start.push_back(pos); end.push_back(hi); link.push_back(0)
                    suffix_pos.push_back(pos - remainder + 1)
                    children.resize(children.size() + 1)
                    leaf = start.size() - 1
                    children[split][c] = leaf
                    start[nxt] += active_len
                    children[split][text[start[nxt]]] = nxt
                    if pending_link != 0:
                        link[pending_link] = split
                    pending_link = split
                remainder -= 1
                if active_node == 0 and active_len > 0:
                    active_len -= 1
                    active_edge = pos - remainder + 1
                elif active_node != 0:
                    active_node = link[active_node]
        if remainder != 0:
            raise AssertionError("pending suffixes after sentinel")

    cdef i64 n_nodes = start.size()
    cdef i64 total_edges = 0
    cdef i64 v
    for v in range(n_nodes):
        total_edges += children[v].size()

    csr_off_arr = np.zeros(n_nodes + 1, dtype=np.int64)
    csr_sym_arr = np.zeros(total_edges, dtype=np.int32)
    csr_child_arr = np.zeros(total_edges, dtype=np.int64)
    cdef i64[:] csr_off = csr_off_arr
    cdef int[:] csr_sym = csr_sym_arr
    cdef i64[:] csr_child = csr_child_arr
    cdef vector[pair[int, i64]] row
    cdef i64 j, e = 0
    for v in range(n_nodes):
        csr_off[v] = e
        row.clear()
        it = children[v].begin()
        while it != children[v].end():
            row.push_back(pair[int, i64](dereference(it).first, dereference(it).second))
            preincrement(it)
        cpp_sort(row.begin(), row.end())
        for j in range(<i64>row.size()):
            csr_sym[e] = row[j].first
            csr_child[e] = row[j].second
            e += 1
    csr_off[n_nodes] = e

    text_arr = np.zeros(text.size(), dtype=np.int32)
    cdef int[:] text_mv = text_arr
    for j in range(<i64>text.size()):
        text_mv[j] = text[j]
    return {
        "text": text_arr,
        "seq_start": _to_np(seq_start),
        "seq_len": _to_np(seq_len),
        "edge_start": _to_np(start),
        "edge_end": _to_np(end),
        "suffix_pos": _to_np(suffix_pos),
        "csr_off": csr_off_arr,
        "csr_sym": csr_sym_arr,
        "csr_child": csr_child_arr,
    }


def dfs_stats(csr_off_arr, csr_child_arr, edge_len_arr):
    cdef const i64[:] off = np.ascontiguousarray(csr_off_arr, dtype=np.int64)
    cdef const i64[:] kid = np.ascontiguousarray(csr_child_arr, dtype=np.int64)
    cdef const i64[:] elen = np.ascontiguousarray(edge_len_arr, dtype=np.int64)
    cdef i64 n = off.shape[0] - 1
    pre_arr = np.zeros(n, dtype=np.int64)
    size_arr = np.zeros(n, dtype=np.int64)
    path_arr = np.zeros(n, dtype=np.int64)
    cdef i64[:] pre = pre_arr
    cdef i64[:] size = size_arr
    cdef i64[:] path_len = path_arr
    cdef vector[i64] stack_node, stack_cur
    cdef i64 counter = 1, v, cur, c, sz, j
    stack_node.push_back(0)
    stack_cur.push_back(off[0])
    while stack_node.size() > 0:
        v = stack_node.back()
        cur = stack_cur.back()
        if cur < off[v + 1]:
            stack_cur[stack_cur.size() - 1] = cur + 1
            c = kid[cur]
            pre[c] = counter
            counter += 1
            path_len[c] = path_len[v] + elen[c]
            stack_node.push_back(c)
            stack_cur.push_back(off[c])
        else:
            stack_node.pop_back()
            stack_cur.pop_back()
            sz = 1
            for j in range(off[v], off[v + 1]):
                sz += size[kid[j]]
            size[v] = sz
    return pre_arr, size_arr, path_arr


def lev(a, b):
    cdef const unsigned char[:] xa
    cdef const unsigned char[:] xb
    if len(a) < len(b):
        xa = b; xb = a
    else:
        xa = a; xb = b
    cdef i64 n = xa.shape[0], m = xb.shape[0]
    if m == 0:
        return n
    cdef vector[i64] prev, cur
    prev.resize(m + 1)
    cur.resize(m + 1)
    cdef i64 i, j, x, y, z
    cdef unsigned char ca
    for j in range(m + 1):
        prev[j] = j
    for i in range(1, n + 1):
        cur[0] = i
        ca = xa[i - 1]
        for j in range(1, m + 1):
            x = prev[j - 1] + (0 if ca == xb[j - 1] else 1)
            y = prev[j] + 1
            if y < x:
                x = y
            z = cur[j - 1] + 1
            if z < x:
                x = z
            cur[j] = x
        prev.swap(cur)
    return prev[m]


def nw_ops(a, b, match, mismatch, gap):
    cdef const unsigned char[:] xa = a
    cdef const unsigned char[:] xb = b
    cdef i64 n = xa.shape[0], m = xb.shape[0]
    cdef i64 sm = match, sx = mismatch, sg = gap
    cdef i64 width = m + 1
    cdef vector[i64] score
    score.resize((n + 1) * width)
    cdef i64 i, j, s, y, z, here
    cdef unsigned char ca
    for j in range(1, m + 1):
        score[j] = sg * j
    for i in range(1, n + 1):
        score[i * width] = sg * i
        ca = xa[i - 1]
        for j in range(1, m + 1):
            s = score[(i - 1) * width + j - 1] + (sm if ca == xb[j - 1] else sx)
            y = score[(i - 1) * width + j] + sg
            if y > s:
                s = y
            z = score[i * width + j - 1] + sg
            if z > s:
                s = z
            score[i * width + j] = s
    ops = bytearray()
    i = n; j = m
    while i > 0 or j > 0:
        here = score[i * width + j]
        if i > 0 and j > 0 and here == score[(i - 1) * width + j - 1] + (
                sm if xa[i - 1] == xb[j - 1] else sx):
            ops.append(68)  # D
            i -= 1; j -= 1
        elif i > 0 and here == score[(i - 1) * width + j] + sg:
            ops.append(85)  # U
            i -= 1
        else:
            ops.append(76)  # L
            j -= 1
    ops.reverse()
    return score[n * width + m], bytes(ops)


cdef inline i64 _pair_score(const i64* off1, const int* sym1, const i64* cnt1,
                            const i64* ng1, const i64* g1,
                            const i64* off2, const int* sym2, const i64* cnt2,
                            const i64* ng2, const i64* g2,
                            i64 i, i64 j, i64 sm, i64 sx, i64 sg) noexcept nogil:
    cdef i64 dot = 0
    cdef i64 p = off1[i], q = off2[j]
    cdef i64 e1 = off1[i + 1], e2 = off2[j + 1]
    cdef int s1, s2
    while p < e1 and q < e2:
        s1 = sym1[p]; s2 = sym2[q]
        if s1 == s2:
            dot += cnt1[p] * cnt2[q]
            p += 1; q += 1
        elif s1 < s2:
            p += 1
        else:
            q += 1
    return (sm * dot + sx * (ng1[i] * ng2[j] - dot)
            + sg * (g1[i] * ng2[j] + ng1[i] * g2[j]))


def profile_ops(off1_arr, sym1_arr, cnt1_arr, ng1_arr, nrows1,
                off2_arr, sym2_arr, cnt2_arr, ng2_arr, nrows2,
                match, mismatch, gap):
    cdef const i64[:] off1 = np.ascontiguousarray(off1_arr, dtype=np.int64)
    cdef const int[:] sym1 = np.ascontiguousarray(sym1_arr, dtype=np.int32)
    cdef const i64[:] cnt1 = np.ascontiguousarray(cnt1_arr, dtype=np.int64)
    cdef const i64[:] ng1 = np.ascontiguousarray(ng1_arr, dtype=np.int64)
    cdef const i64[:] off2 = np.ascontiguousarray(off2_arr, dtype=np.int64)
    cdef const int[:] sym2 = np.ascontiguousarray(sym2_arr, dtype=np.int32)
    cdef const i64[:] cnt2 = np.ascontiguousarray(cnt2_arr, dtype=np.int64)
    cdef const i64[:] ng2 = np.ascontiguousarray(ng2_arr, dtype=np.int64)
    cdef i64 n = ng1.shape[0], m = ng2.shape[0]
    cdef i64 r1 = nrows1, r2 = nrows2
    cdef i64 sm = match, sx = mismatch, sg = gap
    cdef vector[i64] g1v, g2v
    g1v.resize(n); g2v.resize(m)
    cdef i64 i, j
    for i in range(n):
        g1v[i] = r1 - ng1[i]
    for j in range(m):
        g2v[j] = r2 - ng2[j]
    cdef const i64* poff1 = &off1[0]
    cdef const i64* png1 = &ng1[0]
    cdef const i64* poff2 = &off2[0]
    cdef const i64* png2 = &ng2[0]
    cdef const i64* pg1 = g1v.data()
    cdef const i64* pg2 = g2v.data()
    cdef const int* psym1 = NULL
    cdef const i64* pcnt1 = NULL
    cdef const int* psym2 = NULL
    cdef const i64* pcnt2 = NULL
    if sym1.shape[0] > 0:
        psym1 = &sym1[0]
        pcnt1 = &cnt1[0]
    if sym2.shape[0] > 0:
        psym2 = &sym2[0]
        pcnt2 = &cnt2[0]
    cdef i64 width = m + 1
    cdef vector[i64] score
    score.resize((n + 1) * width)
    cdef i64 s, y, z, up_cost, here
    for j in range(1, m + 1):
        score[j] = score[j - 1] + sg * r1 * ng2[j - 1]
    for i in range(1, n + 1):
        up_cost = sg * ng1[i - 1] * r2
        score[i * width] = score[(i - 1) * width] + up_cost
        for j in range(1, m + 1):
            s = score[(i - 1) * width + j - 1] + _pair_score(
                poff1, psym1, pcnt1, png1, pg1, poff2, psym2, pcnt2, png2, pg2,
                i - 1, j - 1, sm, sx, sg)
            y = score[(i - 1) * width + j] + up_cost
            if y > s:
                s = y
            z = score[i * width + j - 1] + sg * r1 * ng2[j - 1]
            if z > s:
                s = z
            score[i * width + j] = s
    ops = bytearray()
    i = n; j = m
    while i > 0 or j > 0:
        here = score[i * width + j]
        if i > 0 and j > 0 and here == score[(i - 1) * width + j - 1] + _pair_score(
                poff1, psym1, pcnt1, png1, pg1, poff2, psym2, pcnt2, png2, pg2,
                i - 1, j - 1, sm, sx, sg):
            ops.append(68)  # D
            i -= 1; j -= 1
        elif i > 0 and here == score[(i - 1) * width + j] + sg * ng1[i - 1] * r2:
            ops.append(85)  # U
            i -= 1
        else:
            ops.append(76)  # L
            j -= 1
    ops.reverse()
    return bytes(ops)
