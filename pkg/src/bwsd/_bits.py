"""Bit-packed array layouts and pure-Python queries over them.

Layouts here are shared verbatim with the compiled kernels, which read the
same numpy buffers through C pointers.  Bit t of a sequence lives in
words[t >> 6] at bit (t & 63) (little-endian within the word).

Rank directory: 512-bit superblocks and 64-bit blocks.
  blk[w]  = ones in words[base(w) : w) with base(w) = (w >> 3) << 3, uint16
  sb[s]   = ones in words[0 : 8*s), uint32
select is answered by a directory-guided binary search (O(lg n) worst case).
"""

from __future__ import annotations

import numpy as np

WORD = 64
SUPER_WORDS = 8  # 512-bit superblocks


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array into little-endian uint64 words."""
    bits = np.asarray(bits, dtype=np.uint64)
    n = bits.shape[0]
    nw = (n + WORD - 1) // WORD
    padded = np.zeros(nw * WORD, dtype=np.uint64)
    padded[:n] = bits
    shifts = np.arange(WORD, dtype=np.uint64)
    return (padded.reshape(nw, WORD) << shifts).sum(axis=1, dtype=np.uint64)


def build_rank_dirs(words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Block/superblock cumulative popcounts for one word array."""
    w = words.shape[0]
    pops = np.bitwise_count(words).astype(np.int64)
    cp = np.concatenate(([0], np.cumsum(pops)))  # length w + 1
    idx = np.arange(w + 1)
    blk = (cp - cp[(idx >> 3) << 3]).astype(np.uint16)
    sb = cp[np.arange((w >> 3) + 1) * 8].astype(np.uint32)
    return blk, sb


def rank1(words, blk, sb, i: int) -> int:
    """Ones among the first i bits (0 <= i <= n)."""
    w = i >> 6
    r = i & 63
    res = int(sb[w >> 3]) + int(blk[w])
    if r:
        res += (int(words[w]) & ((1 << r) - 1)).bit_count()
    return res


def select1(words, blk, sb, n1: int, k: int, nw: int | None = None) -> int:
    """0-based position of the k-th set bit (1 <= k <= n1).

    nw bounds the search to the first nw words; required when the arrays
    are slices of a concatenation that continues past this bitvector."""
    if not 1 <= k <= n1:
        raise ValueError(f"select out of range: k={k}, ones={n1}")
    if nw is None:
        nw = words.shape[0]
    # superblock search: largest s with sb[s] < k
    lo, hi = 0, (nw - 1) >> 3 if nw else 0
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if int(sb[mid]) < k:
            lo = mid
        else:
            hi = mid - 1
    s = lo
    rem = k - int(sb[s])
    w = s * 8
    last = min(w + 8, nw)
    while w + 1 < last and int(blk[w + 1]) < rem:
        w += 1
    rem -= int(blk[w])
    word = int(words[w])
    pos = w << 6
    while True:
        if word & 1:
            rem -= 1
            if rem == 0:
                return pos
        word >>= 1
        pos += 1


def select0(words, blk, sb, n: int, k: int) -> int:
    """0-based position of the k-th zero bit (1 <= k <= n - ones)."""
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if (mid + 1) - rank1(words, blk, sb, mid + 1) < k:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Elias-Fano encoded sparse bitvector (high bits unary, low bits fixed-width)

EF_META_FIELDS = 8  # m, low_width, hw_off, hblk_off, hsb_off, lw_off, high_bits, last_high


def ef_build(positions: np.ndarray, n: int):
    """Encode sorted 0-based positions over universe n.

    Returns (meta_row, high_words, high_blk, high_sb, low_words) where
    meta_row is an 8-long int64 vector with offsets left at 0 (the caller
    rebases them when concatenating several encodings).
    """
    pos = np.asarray(positions, dtype=np.int64)
    m = pos.shape[0]
    if m == 0:
        raise ValueError("Elias-Fano encoding of an empty set")
    ratio = max(1, n // m)
    low = max(0, ratio.bit_length() - 1)
    highs = pos >> low
    lows = pos & ((1 << low) - 1) if low else np.zeros(m, dtype=np.int64)
    high_bits = int(m + highs[-1] + 1)
    hbits = np.zeros(high_bits, dtype=np.uint8)
    hbits[highs + np.arange(m)] = 1
    hw = pack_bits(hbits)
    hblk, hsb = build_rank_dirs(hw)
    nlw = (m * low + WORD - 1) // WORD + 1  # +1 slack word for spill reads
    lw = np.zeros(nlw, dtype=np.uint64)
    if low:
        bitpos = np.arange(m, dtype=np.int64) * low
        w = bitpos >> 6
        sh = (bitpos & 63).astype(np.uint64)
        vals = lows.astype(np.uint64)
        np.bitwise_or.at(lw, w, vals << sh)
        spill = (sh.astype(np.int64) + low) > 64
        if spill.any():
            np.bitwise_or.at(
                lw, w[spill] + 1, vals[spill] >> (np.uint64(64) - sh[spill])
            )
    meta = np.array(
        [m, low, 0, 0, 0, 0, high_bits, int(highs[-1])], dtype=np.int64
    )
    return meta, hw, hblk, hsb, lw


def _ef_low(lw, low: int, k: int) -> int:
    """Low bits of element k (0-based)."""
    if low == 0:
        return 0
    bitpos = k * low
    w = bitpos >> 6
    sh = bitpos & 63
    v = int(lw[w]) >> sh
    if sh + low > 64:
        v |= int(lw[w + 1]) << (64 - sh)
    return v & ((1 << low) - 1)


def ef_select1(meta, hw, hblk, hsb, lw, k: int) -> int:
    """0-based position of the k-th element (1 <= k <= m)."""
    m, low, high_bits = int(meta[0]), int(meta[1]), int(meta[6])
    if not 1 <= k <= m:
        raise ValueError(f"select out of range: k={k}, ones={m}")
    p = select1(hw, hblk, hsb, m, k, nw=(high_bits + 63) >> 6)
    high = p - (k - 1)
    return (high << low) | _ef_low(lw, low, k - 1)


def ef_rank1(meta, hw, hblk, hsb, lw, i: int) -> int:
    """Number of encoded positions < i (0 <= i <= n)."""
    m, low = int(meta[0]), int(meta[1])
    high_bits, last_high = int(meta[6]), int(meta[7])
    h = i >> low
    if h > last_high:
        return m
    # Z(b) = elements with high < b; the b-th zero sits at Z(b) + b - 1.
    start = select0(hw, hblk, hsb, high_bits, h) - (h - 1) if h else 0
    end = select0(hw, hblk, hsb, high_bits, h + 1) - h
    lo_i = i & ((1 << low) - 1) if low else 0
    lo, hi = start, end
    while lo < hi:
        mid = (lo + hi) >> 1
        if _ef_low(lw, low, mid) < lo_i:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Levelwise wavelet tree over values 0..sigma-1, padded to a full binary
# tree of depth L = ceil(lg sigma); level ell splits on bit (L-1-ell).

def wt_build(values: np.ndarray, sigma: int):
    """Level bitvectors for an integer sequence; returns (words2d, blk2d,
    sb2d, L).  Requires sigma >= 2."""
    vals = np.asarray(values, dtype=np.int64)
    n = vals.shape[0]
    levels = max(1, int(sigma - 1).bit_length())
    nw = (n + WORD - 1) // WORD
    words2d = np.zeros((levels, max(nw, 1)), dtype=np.uint64)
    blk2d = np.zeros((levels, max(nw, 1) + 1), dtype=np.uint16)
    sb2d = np.zeros((levels, (max(nw, 1) >> 3) + 1), dtype=np.uint32)
    for ell in range(levels):
        bits = (vals >> (levels - 1 - ell)) & 1
        w = pack_bits(bits.astype(np.uint8))
        words2d[ell, : w.shape[0]] = w
        blk, sb = build_rank_dirs(words2d[ell])
        blk2d[ell] = blk
        sb2d[ell] = sb
        # stable partition per node == stable sort by the (ell+1)-bit prefix
        vals = vals[np.argsort(vals >> (levels - 1 - ell), kind="stable")]
    return words2d, blk2d, sb2d, levels


def wt_rank(words2d, blk2d, sb2d, levels: int, n: int, c: int, i: int) -> int:
    """Occurrences of value c among the first i sequence entries."""
    s, e, p = 0, n, i
    for ell in range(levels):
        w, blk, sb = words2d[ell], blk2d[ell], sb2d[ell]
        ones_s = rank1(w, blk, sb, s)
        ones_e = rank1(w, blk, sb, e)
        ones_p = rank1(w, blk, sb, p)
        z_total = (e - s) - (ones_e - ones_s)
        z_pref = (p - s) - (ones_p - ones_s)
        if (c >> (levels - 1 - ell)) & 1:
            s, p = s + z_total, s + z_total + (p - s - z_pref)
        else:
            e, p = s + z_total, s + z_pref
        if s == e:
            return 0
    return p - s


def wt_select(words2d, blk2d, sb2d, levels: int, n: int, c: int, k: int) -> int:
    """0-based position of the k-th occurrence of value c (1-based k)."""
    bounds = []
    s, e = 0, n
    for ell in range(levels):
        w, blk, sb = words2d[ell], blk2d[ell], sb2d[ell]
        ones_s = rank1(w, blk, sb, s)
        ones_e = rank1(w, blk, sb, e)
        z_total = (e - s) - (ones_e - ones_s)
        bounds.append((s, ones_s))
        if (c >> (levels - 1 - ell)) & 1:
            s = s + z_total
        else:
            e = s + z_total
    if k < 1 or k > e - s:
        raise ValueError(f"select out of range: k={k}, occurrences={e - s}")
    r = k - 1  # relative position inside the leaf
    for ell in range(levels - 1, -1, -1):
        w, blk, sb = words2d[ell], blk2d[ell], sb2d[ell]
        s, ones_s = bounds[ell]
        if (c >> (levels - 1 - ell)) & 1:
            r = select1(w, blk, sb, rank1(w, blk, sb, n), ones_s + r + 1) - s
        else:
            zeros_before = s - ones_s
            r = select0(w, blk, sb, n, zeros_before + r + 1) - s
    return r


# ---------------------------------------------------------------------------
# Sparse-table range extremum (positions, leftmost tie-break)

def sparse_table(values: np.ndarray, maximum: bool = False) -> np.ndarray:
    """Positions table; layer j answers windows of length 2^j."""
    vals = np.asarray(values, dtype=np.int64)
    n = vals.shape[0]
    layers = max(1, n.bit_length())
    tbl = np.zeros((layers, n), dtype=np.int32)
    tbl[0] = np.arange(n, dtype=np.int32)
    for j in range(1, layers):
        half = 1 << (j - 1)
        span = n - (1 << j) + 1
        if span <= 0:
            tbl[j] = tbl[j - 1]
            continue
        a = tbl[j - 1, :span]
        b = tbl[j - 1, half : half + span]
        if maximum:
            keep = vals[a] >= vals[b]
        else:
            keep = vals[a] <= vals[b]
        tbl[j, :span] = np.where(keep, a, b)
        tbl[j, span:] = tbl[j - 1, span:]
    return tbl


def table_query(values, tbl, l: int, r: int, maximum: bool = False) -> int:
    """Extremum position in the closed interval [l, r]."""
    j = (r - l + 1).bit_length() - 1
    a = int(tbl[j, l])
    b = int(tbl[j, r - (1 << j) + 1])
    if maximum:
        return a if values[a] >= values[b] else b
    return a if values[a] <= values[b] else b
