# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend.

C twins of bwsd._kernels_py: induced-sorting suffix construction and the
per-row sweeps of the four engine families, over the array layouts built
by bwsd.succinct.  Accounting and fold order mirror the pure backend
operation for operation, so both produce bit-identical results.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset
from libc.math cimport log2

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil

ctypedef unsigned long long u64
ctypedef unsigned int u32
ctypedef unsigned short u16
ctypedef long long i64

TAG = "c"


# ---------------------------------------------------------------------------
# shared fold recipe (keep in sync with measures.fold_sorted)

cdef inline double _fold_i32(const int* t, i64 mk, int measure) nogil:
    cdef i64 s = 0, mass = 0, k
    cdef i64 c
    cdef double acc, p
    for k in range(1, mk + 1):
        c = t[k]
        if c:
            s += c
            mass += k * c
    if measure == 0:
        return (<double>mass) / (<double>s) - 1.0
    acc = 0.0
    for k in range(1, mk + 1):
        c = t[k]
        if c:
            p = (<double>c) / (<double>s)
            acc += p * log2(p)
    if acc != 0.0:
        return -acc
    return 0.0


cdef inline double _fold_i64(const i64* t, i64 mk, int measure) nogil:
    cdef i64 s = 0, mass = 0, k, c
    cdef double acc, p
    for k in range(1, mk + 1):
        c = t[k]
        if c:
            s += c
            mass += k * c
    if measure == 0:
        return (<double>mass) / (<double>s) - 1.0
    acc = 0.0
    for k in range(1, mk + 1):
        c = t[k]
        if c:
            p = (<double>c) / (<double>s)
            acc += p * log2(p)
    if acc != 0.0:
        return -acc
    return 0.0


def fold_measure(ks, ts, int measure):
    """Fold (ascending run length, count) pairs into a distance."""
    cdef i64[::1] kv = np.ascontiguousarray(ks, dtype=np.int64)
    cdef i64[::1] tv = np.ascontiguousarray(ts, dtype=np.int64)
    cdef i64 s = 0, mass = 0, idx
    cdef double acc = 0.0, p
    for idx in range(tv.shape[0]):
        s += tv[idx]
    if s <= 0:
        raise ValueError("histogram with no runs")
    if measure == 0:
        for idx in range(kv.shape[0]):
            mass += kv[idx] * tv[idx]
        return (<double>mass) / (<double>s) - 1.0
    for idx in range(tv.shape[0]):
        p = (<double>tv[idx]) / (<double>s)
        acc += p * log2(p)
    if acc != 0.0:
        return -acc
    return 0.0


# ---------------------------------------------------------------------------
# plain bitvector primitives (layout: bwsd._bits)

cdef inline i64 _rank1_ptr(const u64* w, const u16* blk, const u32* sb, i64 i) nogil:
    cdef i64 wd = i >> 6
    cdef i64 r = i & 63
    cdef i64 res = (<i64>sb[wd >> 3]) + (<i64>blk[wd])
    if r:
        res += __builtin_popcountll(w[wd] & (((<u64>1) << r) - 1))
    return res


cdef inline i64 _select_word(u64 w, i64 k) nogil:
    cdef i64 pos = 0
    cdef int bp
    while True:
        bp = __builtin_popcountll(w & <u64>0xFF)
        if k <= bp:
            break
        k -= bp
        w >>= 8
        pos += 8
    while True:
        if w & 1:
            k -= 1
            if k == 0:
                return pos
        w >>= 1
        pos += 1


cdef inline i64 _select1_ptr(const u64* w, const u16* blk, const u32* sb,
                             i64 nw, i64 k) nogil:
    cdef i64 lo = 0, hi = (nw - 1) >> 3, mid, rem, wd, last
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if (<i64>sb[mid]) < k:
            lo = mid
        else:
            hi = mid - 1
    rem = k - (<i64>sb[lo])
    wd = lo * 8
    last = wd + 8
    if last > nw:
        last = nw
    while wd + 1 < last and (<i64>blk[wd + 1]) < rem:
        wd += 1
    rem -= <i64>blk[wd]
    return (wd << 6) + _select_word(w[wd], rem)


cdef inline i64 _select0_ptr(const u64* w, const u16* blk, const u32* sb,
                             i64 nbits, i64 k) nogil:
    cdef i64 lo = 0, hi = nbits - 1, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if (mid + 1) - _rank1_ptr(w, blk, sb, mid + 1) < k:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Elias-Fano primitives (meta row: m, low, hw_off, hblk_off, hsb_off,
# lw_off, high_bits, last_high)

cdef inline i64 _ef_low(const u64* lw, i64 low, i64 k) nogil:
    if low == 0:
        return 0
    cdef i64 bitpos = k * low
    cdef i64 wd = bitpos >> 6
    cdef i64 sh = bitpos & 63
    cdef u64 v = lw[wd] >> sh
    if sh + low > 64:
        v |= lw[wd + 1] << (64 - sh)
    return <i64>(v & (((<u64>1) << low) - 1))


cdef inline i64 _ef_select1(const i64* meta, const u64* hw, const u16* hblk,
                            const u32* hsb, const u64* lw, i64 k) nogil:
    cdef i64 low = meta[1]
    cdef i64 nw = (meta[6] + 63) >> 6
    cdef i64 p = _select1_ptr(hw, hblk, hsb, nw, k)
    cdef i64 high = p - (k - 1)
    return (high << low) | _ef_low(lw, low, k - 1)


cdef inline i64 _ef_rank1(const i64* meta, const u64* hw, const u16* hblk,
                          const u32* hsb, const u64* lw, i64 i) nogil:
    cdef i64 m = meta[0], low = meta[1], hbits = meta[6], last_high = meta[7]
    cdef i64 h = i >> low
    if h > last_high:
        return m
    cdef i64 start = 0
    if h:
        start = _select0_ptr(hw, hblk, hsb, hbits, h) - (h - 1)
    cdef i64 end = _select0_ptr(hw, hblk, hsb, hbits, h + 1) - h
    cdef i64 lo_i = 0
    if low:
        lo_i = i & (((<i64>1) << low) - 1)
    cdef i64 lo = start, hi = end, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if _ef_low(lw, low, mid) < lo_i:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# flavor dispatch for the Algorithm 1 sweep

cdef struct Alg1View:
    int flavor
    i64 n
    # plain: one plane per document
    const u64* pw
    const u16* pblk
    const u32* psb
    i64 pwS
    i64 pblkS
    i64 psbS
    # sparse: Elias-Fano planes, flat arrays with per-document offsets
    const i64* efm
    const u64* hw
    const u16* hblk
    const u32* hsb
    const u64* lw
    # wavelet: one plane per level
    const u64* ww
    const u16* wblk
    const u32* wsb
    i64 wwS
    i64 wblkS
    i64 wsbS
    int L


cdef i64 _wt_rank_v(const Alg1View* v, i64 c, i64 i) nogil:
    cdef i64 s = 0, e = v.n, p = i
    cdef i64 ones_s, ones_e, ones_p, z_total, z_pref, ns
    cdef int ell, L = v.L
    cdef const u64* wp
    cdef const u16* bp
    cdef const u32* gp
    for ell in range(L):
        wp = v.ww + ell * v.wwS
        bp = v.wblk + ell * v.wblkS
        gp = v.wsb + ell * v.wsbS
        ones_s = _rank1_ptr(wp, bp, gp, s)
        ones_e = _rank1_ptr(wp, bp, gp, e)
        ones_p = _rank1_ptr(wp, bp, gp, p)
        z_total = (e - s) - (ones_e - ones_s)
        z_pref = (p - s) - (ones_p - ones_s)
        if (c >> (L - 1 - ell)) & 1:
            ns = s + z_total
            p = ns + (p - s - z_pref)
            s = ns
        else:
            e = s + z_total
            p = s + z_pref
        if s == e:
            return 0
    return p - s


cdef i64 _wt_select_v(const Alg1View* v, i64 c, i64 k) nogil:
    cdef i64 sstack[64]
    cdef i64 ostack[64]
    cdef i64 s = 0, e = v.n, ones_s, ones_e, z_total, r
    cdef int ell, L = v.L
    cdef const u64* wp
    cdef const u16* bp
    cdef const u32* gp
    for ell in range(L):
        wp = v.ww + ell * v.wwS
        bp = v.wblk + ell * v.wblkS
        gp = v.wsb + ell * v.wsbS
        ones_s = _rank1_ptr(wp, bp, gp, s)
        ones_e = _rank1_ptr(wp, bp, gp, e)
        z_total = (e - s) - (ones_e - ones_s)
        sstack[ell] = s
        ostack[ell] = ones_s
        if (c >> (L - 1 - ell)) & 1:
            s = s + z_total
        else:
            e = s + z_total
    r = k - 1
    for ell in range(L - 1, -1, -1):
        wp = v.ww + ell * v.wwS
        bp = v.wblk + ell * v.wblkS
        gp = v.wsb + ell * v.wsbS
        s = sstack[ell]
        ones_s = ostack[ell]
        if (c >> (L - 1 - ell)) & 1:
            r = _select1_ptr(wp, bp, gp, v.wwS, ones_s + r + 1) - s
        else:
            r = _select0_ptr(wp, bp, gp, v.n, (s - ones_s) + r + 1) - s
    return r


cdef inline i64 _v_rank(const Alg1View* v, i64 c, i64 i) nogil:
    cdef const i64* m
    if v.flavor == 0:
        return _rank1_ptr(v.pw + c * v.pwS, v.pblk + c * v.pblkS,
                          v.psb + c * v.psbS, i)
    if v.flavor == 1:
        m = v.efm + c * 8
        return _ef_rank1(m, v.hw + m[2], v.hblk + m[3], v.hsb + m[4],
                         v.lw + m[5], i)
    if v.L == 0:
        return i
    return _wt_rank_v(v, c, i)


cdef inline i64 _v_select(const Alg1View* v, i64 c, i64 k) nogil:
    cdef const i64* m
    if v.flavor == 0:
        return _select1_ptr(v.pw + c * v.pwS, v.pblk + c * v.pblkS,
                            v.psb + c * v.psbS, v.pwS, k)
    if v.flavor == 1:
        m = v.efm + c * 8
        return _ef_select1(m, v.hw + m[2], v.hblk + m[3], v.hsb + m[4],
                           v.lw + m[5], k)
    if v.L == 0:
        return k - 1
    return _wt_select_v(v, c, k)


# ---------------------------------------------------------------------------
# Algorithm 1 row sweep

cdef void _alg1_sweep_row(const Alg1View* v,
                          const int* occ_pos, const i64* occ_off,
                          const i64* doc_len, i64 n, i64 d, i64 i,
                          int use_cache, int use_hint,
                          int* t, i64 tS, int* maxk,
                          i64* ell, i64* cached, i64* hidx,
                          i64* rank_calls, i64* select_calls) nogil:
    cdef i64 ni = doc_len[i]
    cdef i64 j, p, q_pos, qs_cnt, qe_cnt, rs, re, k, hj, l
    for j in range(i + 1, d):
        ell[j] = 0
        cached[j] = 0
        hidx[j] = occ_off[j]
    qs_cnt = 0
    for p in range(1, ni + 1):
        q_pos = _v_select(v, i, p)
        select_calls[0] += 1
        qe_cnt = q_pos + 1
        for j in range(i + 1, d):
            if use_hint:
                hj = hidx[j]
                if hj >= occ_off[j + 1] or occ_pos[hj] > q_pos:
                    ell[j] += 1
                    continue
            if use_cache:
                rs = cached[j]
            else:
                rs = _v_rank(v, j, qs_cnt)
                rank_calls[0] += 1
            re = _v_rank(v, j, qe_cnt)
            rank_calls[0] += 1
            k = re - rs
            if use_cache:
                cached[j] = re
            if use_hint:
                hidx[j] += k
            if k > 0:
                l = ell[j]
                if l > 0:
                    t[j * tS + l] += 1
                    if l > maxk[j]:
                        maxk[j] = <int>l
                t[j * tS + k] += 1
                if k > maxk[j]:
                    maxk[j] = <int>k
                ell[j] = 1
            else:
                ell[j] += 1
        qs_cnt = qe_cnt
    for j in range(i + 1, d):
        if use_hint:
            k = doc_len[j] - (hidx[j] - occ_off[j])
        elif use_cache:
            k = doc_len[j] - cached[j]
        else:
            rs = _v_rank(v, j, qs_cnt)
            re = _v_rank(v, j, n)
            rank_calls[0] += 2
            k = re - rs
        if k > 0:
            t[j * tS + k] += 1
            if k > maxk[j]:
                maxk[j] = <int>k
        l = ell[j]
        t[j * tS + l] += 1
        if l > maxk[j]:
            maxk[j] = <int>l


cdef void _fold_clear_row(int* t, i64 tS, int* maxk, i64 i, i64 d, int measure,
                          double* out, const i64* tri_off) nogil:
    cdef i64 j, k, mk
    for j in range(i + 1, d):
        mk = maxk[j]
        out[tri_off[i] + (j - i - 1)] = _fold_i32(t + j * tS, mk, measure)
        for k in range(1, mk + 1):
            t[j * tS + k] = 0
        maxk[j] = 0


def alg1_rows(int flavor, tuple view, int[::1] occ_pos, i64[::1] occ_off,
              i64[::1] doc_len, i64 n, i64 d, int[::1] rows, int measure,
              bint use_cache, bint use_hint, bint collect,
              double[::1] out, i64[::1] tri_off, tuple scratch,
              i64[::1] stats):
    cdef Alg1View v
    memset(&v, 0, sizeof(Alg1View))
    v.flavor = flavor
    v.n = n
    # keep the arrays referenced for the duration of the call
    cdef u64[:, ::1] pw
    cdef u16[:, ::1] pblk
    cdef u32[:, ::1] psb
    cdef i64[:, ::1] efm
    cdef u64[::1] hw
    cdef u16[::1] hblk
    cdef u32[::1] hsb
    cdef u64[::1] lw
    cdef u64[:, ::1] ww
    cdef u16[:, ::1] wblk
    cdef u32[:, ::1] wsb
    if flavor == 0:
        pw, pblk, psb = view
        v.pw = &pw[0, 0]
        v.pblk = &pblk[0, 0]
        v.psb = &psb[0, 0]
        v.pwS = pw.shape[1]
        v.pblkS = pblk.shape[1]
        v.psbS = psb.shape[1]
    elif flavor == 1:
        efm, hw, hblk, hsb, lw = view
        v.efm = &efm[0, 0]
        v.hw = &hw[0]
        v.hblk = &hblk[0]
        v.hsb = &hsb[0]
        v.lw = &lw[0]
    else:
        ww, wblk, wsb = view[0], view[1], view[2]
        v.L = view[3]
        v.ww = &ww[0, 0]
        v.wblk = &wblk[0, 0]
        v.wsb = &wsb[0, 0]
        v.wwS = ww.shape[1]
        v.wblkS = wblk.shape[1]
        v.wsbS = wsb.shape[1]

    cdef int[:, ::1] t = scratch[0]
    cdef int[::1] maxk = scratch[1]
    cdef i64[::1] ell = scratch[2]
    cdef i64[::1] cached = scratch[3]
    cdef i64[::1] hidx = scratch[4]
    cdef i64 tS = t.shape[1]
    cdef int* tp = &t[0, 0]
    cdef int* mkp = &maxk[0]
    cdef i64 rank_calls = 0, select_calls = 0
    cdef i64 i, ri, j, k, mk
    triples = [] if collect else None
    for ri in range(rows.shape[0]):
        i = rows[ri]
        with nogil:
            _alg1_sweep_row(&v, &occ_pos[0], &occ_off[0], &doc_len[0], n, d,
                            i, use_cache, use_hint, tp, tS, mkp,
                            &ell[0], &cached[0], &hidx[0],
                            &rank_calls, &select_calls)
        if collect:
            for j in range(i + 1, d):
                mk = maxk[j]
                for k in range(1, mk + 1):
                    if t[j, k]:
                        triples.append((i, j, k, int(t[j, k])))
        with nogil:
            _fold_clear_row(tp, tS, mkp, i, d, measure, &out[0], &tri_off[0])
    stats[0] += rank_calls
    stats[1] += select_calls
    return triples


# ---------------------------------------------------------------------------
# range extremum + document listing

cdef inline i64 _rmq_pos(const int* vals, const int* tbl, i64 stride,
                         i64 a, i64 b, int maximum) nogil:
    cdef i64 length = b - a + 1
    cdef int j = 63 - __builtin_clzll(<u64>length)
    cdef i64 x = tbl[j * stride + a]
    cdef i64 y = tbl[j * stride + b - ((<i64>1) << j) + 1]
    if maximum:
        if vals[x] >= vals[y]:
            return x
        return y
    if vals[x] <= vals[y]:
        return x
    return y


cdef i64 _listing_c(const int* da, const int* prev, const int* nxt,
                    const int* pvals, const int* ptbl, i64 ptS,
                    const int* nvals, const int* ntbl, i64 ntS,
                    i64 l, i64 r,
                    i64* lm, i64* rm, i64* tlist, i64* stk) nogil:
    cdef i64 cnt = 0, sp, a, b, p
    stk[0] = l
    stk[1] = r
    sp = 2
    while sp:
        b = stk[sp - 1]
        a = stk[sp - 2]
        sp -= 2
        if a > b:
            continue
        p = _rmq_pos(pvals, ptbl, ptS, a, b, 0)
        if prev[p] < l:
            lm[da[p]] = p
            tlist[cnt] = da[p]
            cnt += 1
            stk[sp] = a
            stk[sp + 1] = p - 1
            sp += 2
            stk[sp] = p + 1
            stk[sp + 1] = b
            sp += 2
    stk[0] = l
    stk[1] = r
    sp = 2
    while sp:
        b = stk[sp - 1]
        a = stk[sp - 2]
        sp -= 2
        if a > b:
            continue
        p = _rmq_pos(nvals, ntbl, ntS, a, b, 1)
        if nxt[p] > r:
            rm[da[p]] = p
            stk[sp] = a
            stk[sp + 1] = p - 1
            sp += 2
            stk[sp] = p + 1
            stk[sp + 1] = b
            sp += 2
    return cnt


# Algorithm 2, global sweep: emits pair_id * (n + 2) + k events

cdef struct EvBuf:
    i64* data
    i64 size
    i64 cap


cdef int _ev_push(EvBuf* b, i64 val) nogil:
    cdef i64* grown
    if b.size == b.cap:
        b.cap = b.cap * 2 if b.cap else 4096
        grown = <i64*>realloc(b.data, b.cap * sizeof(i64))
        if grown == NULL:
            return -1
        b.data = grown
    b.data[b.size] = val
    b.size += 1
    return 0


def alg2_docs(int[::1] da, int[::1] r_arr, int[::1] prev, int[::1] nxt,
              int[::1] occ_pos, i64[::1] occ_off,
              int[::1] pvals, int[:, ::1] ptbl,
              int[::1] nvals, int[:, ::1] ntbl,
              i64 n, i64 d, int[::1] docs, i64[::1] stats):
    cdef i64* lm = <i64*>malloc(d * sizeof(i64))
    cdef i64* rm = <i64*>malloc(d * sizeof(i64))
    cdef i64* tlist = <i64*>malloc(d * sizeof(i64))
    cdef i64* stk = <i64*>malloc((4 * d + 16) * sizeof(i64))
    cdef EvBuf buf
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    if lm == NULL or rm == NULL or tlist == NULL or stk == NULL:
        free(lm); free(rm); free(tlist); free(stk)
        raise MemoryError
    cdef i64 base = n + 2
    cdef i64 reports = 0
    cdef i64 di, i, idx, p, l, r, cnt, c, j, k, lo, hi
    cdef int failed = 0
    cdef const int* dap = &da[0]
    cdef const int* rp = &r_arr[0]
    cdef const int* prevp = &prev[0]
    cdef const int* nxtp = &nxt[0]
    cdef const int* pvalsp = &pvals[0]
    cdef const int* ptblp = &ptbl[0, 0]
    cdef const int* nvalsp = &nvals[0]
    cdef const int* ntblp = &ntbl[0, 0]
    cdef i64 ptS = ptbl.shape[1], ntS = ntbl.shape[1]
    with nogil:
        for di in range(docs.shape[0]):
            i = docs[di]
            for idx in range(occ_off[i] - 1, occ_off[i + 1]):
                if idx < occ_off[i]:
                    l = 0  # leading interval: virtual occurrence before 0
                    r = occ_pos[occ_off[i]] - 1
                else:
                    p = occ_pos[idx]
                    l = p + 1
                    r = nxt[p] - 1
                if l > r:
                    continue
                cnt = _listing_c(dap, prevp, nxtp, pvalsp, ptblp, ptS,
                                 nvalsp, ntblp, ntS, l, r, lm, rm, tlist, stk)
                reports += cnt
                for c in range(cnt):
                    j = tlist[c]
                    if j == i:
                        continue
                    k = rp[rm[j]] - rp[lm[j]] + 1
                    if i < j:
                        lo = i; hi = j
                    else:
                        lo = j; hi = i
                    if _ev_push(&buf, (lo * d + hi) * base + k) != 0:
                        failed = 1
                        break
                if failed:
                    break
            if failed:
                break
    free(lm); free(rm); free(tlist); free(stk)
    if failed:
        free(buf.data)
        raise MemoryError
    out = np.empty(buf.size, dtype=np.int64)
    cdef i64[::1] ov = out
    if buf.size:
        memcpy(&ov[0], buf.data, buf.size * sizeof(i64))
    free(buf.data)
    stats[2] += reports
    return out


# Algorithm 2, lightweight: one row at a time, O(d) scratch

cdef void _light_sweep_row(const int* da, const int* r_arr, const int* prev,
                           const int* nxt, const int* occ_pos,
                           const i64* occ_off, const i64* doc_len,
                           i64 n, i64 d, i64 i,
                           const int* pvals, const int* ptbl, i64 ptS,
                           const int* nvals, const int* ntbl, i64 ntS,
                           int* t, i64 tS, int* maxk, i64* last_seen,
                           i64* lm, i64* rm, i64* tlist, i64* stk,
                           i64* reports) nogil:
    cdef i64 ni = doc_len[i]
    cdef i64 prev_bound = -1
    cdef i64 t_idx, l, r, cnt, c, j, k, zr, pos
    pos = 0
    for t_idx in range(ni + 1):
        l = prev_bound + 1
        if t_idx < ni:
            pos = occ_pos[occ_off[i] + t_idx]
            r = pos - 1
        else:
            r = n - 1
        if l <= r:
            cnt = _listing_c(da, prev, nxt, pvals, ptbl, ptS,
                             nvals, ntbl, ntS, l, r, lm, rm, tlist, stk)
            reports[0] += cnt
            for c in range(cnt):
                j = tlist[c]
                if j <= i:
                    continue
                k = r_arr[rm[j]] - r_arr[lm[j]] + 1
                t[j * tS + k] += 1
                if k > maxk[j]:
                    maxk[j] = <int>k
                zr = t_idx - last_seen[j]
                if zr > 0:
                    t[j * tS + zr] += 1
                    if zr > maxk[j]:
                        maxk[j] = <int>zr
                last_seen[j] = t_idx
        if t_idx < ni:
            prev_bound = pos
    for j in range(i + 1, d):
        zr = ni - last_seen[j]
        if zr > 0:
            t[j * tS + zr] += 1
            if zr > maxk[j]:
                maxk[j] = <int>zr
        last_seen[j] = 0


def alg2_light_rows(int[::1] da, int[::1] r_arr, int[::1] prev, int[::1] nxt,
                    int[::1] occ_pos, i64[::1] occ_off,
                    int[::1] pvals, int[:, ::1] ptbl,
                    int[::1] nvals, int[:, ::1] ntbl,
                    i64[::1] doc_len, i64 n, i64 d, int[::1] rows,
                    int measure, bint collect,
                    double[::1] out, i64[::1] tri_off, tuple scratch,
                    i64[::1] stats):
    cdef int[:, ::1] t = scratch[0]
    cdef int[::1] maxk = scratch[1]
    cdef i64[::1] last_seen = scratch[2]
    cdef i64 tS = t.shape[1]
    cdef int* tp = &t[0, 0]
    cdef int* mkp = &maxk[0]
    cdef i64* lm = <i64*>malloc(d * sizeof(i64))
    cdef i64* rm = <i64*>malloc(d * sizeof(i64))
    cdef i64* tlist = <i64*>malloc(d * sizeof(i64))
    cdef i64* stk = <i64*>malloc((4 * d + 16) * sizeof(i64))
    if lm == NULL or rm == NULL or tlist == NULL or stk == NULL:
        free(lm); free(rm); free(tlist); free(stk)
        raise MemoryError
    cdef i64 reports = 0
    cdef i64 ri, i, j, k, mk
    cdef i64 ptS = ptbl.shape[1], ntS = ntbl.shape[1]
    triples = [] if collect else None
    try:
        for ri in range(rows.shape[0]):
            i = rows[ri]
            with nogil:
                _light_sweep_row(&da[0], &r_arr[0], &prev[0], &nxt[0],
                                 &occ_pos[0], &occ_off[0], &doc_len[0],
                                 n, d, i,
                                 &pvals[0], &ptbl[0, 0], ptS,
                                 &nvals[0], &ntbl[0, 0], ntS,
                                 tp, tS, mkp, &last_seen[0],
                                 lm, rm, tlist, stk, &reports)
            if collect:
                for j in range(i + 1, d):
                    mk = maxk[j]
                    for k in range(1, mk + 1):
                        if t[j, k]:
                            triples.append((i, j, k, int(t[j, k])))
            with nogil:
                _fold_clear_row(tp, tS, mkp, i, d, measure, &out[0],
                                &tri_off[0])
    finally:
        free(lm); free(rm); free(tlist); free(stk)
    stats[2] += reports
    return triples


# ---------------------------------------------------------------------------
# SA-IS suffix sorting (0-based, T[n-1] == 0 unique smallest, values < K)

cdef inline bint _is_lms(const unsigned char* ty, i64 i) nogil:
    return i > 0 and ty[i] and not ty[i - 1]


cdef bint _lms_eq(const int* T, const unsigned char* ty, i64 n,
                  i64 a, i64 b) nogil:
    cdef i64 k = 0
    cdef bint la, lb
    while True:
        if T[a + k] != T[b + k] or ty[a + k] != ty[b + k]:
            return 0
        if k > 0:
            la = _is_lms(ty, a + k)
            lb = _is_lms(ty, b + k)
            if la and lb:
                return 1
            if la != lb:
                return 0
        k += 1
        if a + k >= n or b + k >= n:
            return 0


cdef void _bkt_ends(const int* T, i64* bkt, i64 n, i64 K) nogil:
    cdef i64 i, s = 0, c
    memset(bkt, 0, K * sizeof(i64))
    for i in range(n):
        bkt[T[i]] += 1
    for c in range(K):
        s += bkt[c]
        bkt[c] = s


cdef void _bkt_heads(const int* T, i64* bkt, i64 n, i64 K) nogil:
    cdef i64 i, s = 0, c, tmp
    memset(bkt, 0, K * sizeof(i64))
    for i in range(n):
        bkt[T[i]] += 1
    for c in range(K):
        tmp = bkt[c]
        bkt[c] = s
        s += tmp


cdef void _induce(const int* T, int* SA, const unsigned char* ty,
                  i64* bkt, i64 n, i64 K) nogil:
    cdef i64 i, p
    _bkt_heads(T, bkt, n, K)
    for i in range(n):
        p = SA[i]
        if p > 0 and not ty[p - 1]:
            SA[bkt[T[p - 1]]] = <int>(p - 1)
            bkt[T[p - 1]] += 1
    _bkt_ends(T, bkt, n, K)
    for i in range(n - 1, -1, -1):
        p = SA[i]
        if p > 0 and ty[p - 1]:
            bkt[T[p - 1]] -= 1
            SA[bkt[T[p - 1]]] = <int>(p - 1)


cdef int _sais(const int* T, int* SA, i64 n, i64 K) nogil:
    cdef i64 i, j, m, name, prev_pos, pos
    cdef int* s1
    cdef int rc
    if n == 1:
        SA[0] = 0
        return 0
    cdef unsigned char* ty = <unsigned char*>malloc(n)
    cdef i64* bkt = <i64*>malloc(K * sizeof(i64))
    if ty == NULL or bkt == NULL:
        free(ty); free(bkt)
        return -1
    ty[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if T[i] < T[i + 1]:
            ty[i] = 1
        elif T[i] > T[i + 1]:
            ty[i] = 0
        else:
            ty[i] = ty[i + 1]
    # stage 1: approximate LMS order, then induce
    memset(SA, 0xFF, n * sizeof(int))
    _bkt_ends(T, bkt, n, K)
    for i in range(1, n):
        if ty[i] and not ty[i - 1]:
            bkt[T[i]] -= 1
            SA[bkt[T[i]]] = <int>i
    _induce(T, SA, ty, bkt, n, K)
    # compact sorted LMS positions into SA[0..m)
    m = 0
    for i in range(n):
        pos = SA[i]
        if pos > 0 and ty[pos] and not ty[pos - 1]:
            SA[m] = <int>pos
            m += 1
    # name LMS substrings, names stored at SA[m + pos // 2]
    for i in range(m, n):
        SA[i] = -1
    name = 0
    prev_pos = -1
    for i in range(m):
        pos = SA[i]
        if prev_pos < 0 or not _lms_eq(T, ty, n, prev_pos, pos):
            name += 1
            prev_pos = pos
        SA[m + (pos >> 1)] = <int>(name - 1)
    # gather the reduced string (names in text order) into SA[n-m..n)
    j = n - 1
    for i in range(n - 1, m - 1, -1):
        if SA[i] >= 0:
            SA[j] = SA[i]
            j -= 1
    s1 = SA + (n - m)
    if name < m:
        rc = _sais(s1, SA, m, name)
        if rc != 0:
            free(ty); free(bkt)
            return rc
    else:
        for i in range(m):
            SA[s1[i]] = <int>i
    # overwrite s1 with LMS text positions, map the reduced order back
    j = 0
    for i in range(1, n):
        if ty[i] and not ty[i - 1]:
            s1[j] = <int>i
            j += 1
    for i in range(m):
        SA[i] = s1[SA[i]]
    # stage 2: exact LMS order, then induce
    for i in range(m, n):
        SA[i] = -1
    _bkt_ends(T, bkt, n, K)
    for i in range(m - 1, -1, -1):
        j = SA[i]
        SA[i] = -1
        bkt[T[j]] -= 1
        SA[bkt[T[j]]] = <int>j
    _induce(T, SA, ty, bkt, n, K)
    free(ty)
    free(bkt)
    return 0


def suffix_array(sym):
    """0-based suffix array by induced sorting; symbol values must be >= 1
    (a virtual 0 sentinel is appended internally)."""
    cdef int[::1] sv = np.ascontiguousarray(sym, dtype=np.int32)
    cdef i64 n = sv.shape[0]
    out = np.empty(n, dtype=np.int32)
    if n == 0:
        return out
    cdef int[::1] ov = out
    cdef i64 K = 0, i
    for i in range(n):
        if sv[i] <= 0:
            raise ValueError("symbol values must be >= 1")
        if sv[i] > K:
            K = sv[i]
    K += 1
    cdef int* T = <int*>malloc((n + 1) * sizeof(int))
    cdef int* SA = <int*>malloc((n + 1) * sizeof(int))
    if T == NULL or SA == NULL:
        free(T); free(SA)
        raise MemoryError
    cdef int rc
    with nogil:
        memcpy(T, &sv[0], n * sizeof(int))
        T[n] = 0
        rc = _sais(T, SA, n + 1, K)
        if rc == 0:
            # SA[0] is the sentinel position n; drop it
            memcpy(&ov[0], SA + 1, n * sizeof(int))
    free(T)
    free(SA)
    if rc != 0:
        raise MemoryError
    return out


# ---------------------------------------------------------------------------
# straightforward baseline: one suffix array per pair

cdef i64 _sf_pair_runs(const int* dsym, i64 offx, i64 lenx, i64 offy, i64 leny,
                       int* text, int* sa, i64* hist) nogil:
    cdef i64 nx = lenx + 1
    cdef i64 m = lenx + leny + 2
    cdef i64 tpos, mk, runlen
    cdef int cur, bit
    memcpy(text, dsym + offx, lenx * sizeof(int))
    text[lenx] = 1
    memcpy(text + nx, dsym + offy, leny * sizeof(int))
    text[m - 1] = 2
    text[m] = 0
    if _sais(text, sa, m + 1, 258) != 0:
        return -1
    mk = 0
    runlen = 0
    cur = -1
    for tpos in range(1, m + 1):
        bit = 1 if sa[tpos] >= nx else 0
        if bit == cur:
            runlen += 1
        else:
            if cur >= 0:
                hist[runlen] += 1
                if runlen > mk:
                    mk = runlen
            cur = bit
            runlen = 1
    hist[runlen] += 1
    if runlen > mk:
        mk = runlen
    return mk


def sf_rows(int[::1] docsym, i64[::1] docoff, int[::1] rows, int measure,
            bint collect, double[::1] out, i64[::1] tri_off, tuple scratch,
            i64[::1] stats):
    cdef int[::1] text = scratch[0]
    cdef int[::1] sa = scratch[1]
    cdef i64[::1] hist = scratch[2]
    cdef i64 d = docoff.shape[0] - 1
    cdef int* textp = &text[0]
    cdef int* sap = &sa[0]
    cdef i64* histp = &hist[0]
    cdef const int* dsym = &docsym[0] if docsym.shape[0] else NULL
    cdef const i64* offp = &docoff[0]
    cdef i64 ri, i, j, mk, k
    cdef int failed = 0
    triples = [] if collect else None
    if not collect:
        with nogil:
            for ri in range(rows.shape[0]):
                i = rows[ri]
                for j in range(i + 1, d):
                    mk = _sf_pair_runs(dsym, offp[i], offp[i + 1] - offp[i],
                                       offp[j], offp[j + 1] - offp[j],
                                       textp, sap, histp)
                    if mk < 0:
                        failed = 1
                        break
                    out[tri_off[i] + (j - i - 1)] = _fold_i64(histp, mk, measure)
                    for k in range(1, mk + 1):
                        histp[k] = 0
                if failed:
                    break
        if failed:
            raise MemoryError
        return None
    for ri in range(rows.shape[0]):
        i = rows[ri]
        for j in range(i + 1, d):
            mk = _sf_pair_runs(dsym, offp[i], offp[i + 1] - offp[i],
                               offp[j], offp[j + 1] - offp[j],
                               textp, sap, histp)
            if mk < 0:
                raise MemoryError
            for k in range(1, mk + 1):
                if hist[k]:
                    triples.append((i, j, k, int(hist[k])))
            out[tri_off[i] + (j - i - 1)] = _fold_i64(histp, mk, measure)
            for k in range(1, mk + 1):
                histp[k] = 0
    return triples
