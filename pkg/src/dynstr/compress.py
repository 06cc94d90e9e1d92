"""Whole-text transforms built on the dynamic structures.

build_bwt feeds the text right to left into a dynamic BWT, so its working
set is the compressed structure itself, never a suffix array; invert_bwt
is the plain-array verification oracle for it, with a compressed-space
variant for the command line. lz77_factorize scans left to right while
maintaining an FM-index of the reversed processed prefix: extending the
prefix is a left-extension, and matching the upcoming factor is a
backward search fed with the scanned characters in order. Factors are
(source, length, literal) triples with leftmost sources, no overlap
between a match and its source, and every factor ends with a literal.
"""

from collections import Counter
from dataclasses import dataclass

from .codes import PrefixCode
from .fm import TERMINATOR, DynamicBwt, FmIndex

_PEAK_SAMPLE_EVERY = 16  # audit is summed over components, so sample the peak


@dataclass(frozen=True)
class Lz77Factor:
    source: int | None   # position of the copied occurrence, None for literals
    length: int          # copied length; 0 iff source is None
    next: int            # the literal byte that ends the factor

    def __post_init__(self):
        if (self.source is None) != (self.length == 0):
            raise ValueError("length must be 0 exactly when source is null")
        if self.source is not None and self.source < 0:
            raise ValueError("source out of range")
        if not 0 <= self.next <= 255:
            raise ValueError("next must be a byte value")


def build_bwt(text, mode="rle", stats=None):
    """BWT of text plus terminator, built by left-extensions only.

    Returns a list of byte values with one TERMINATOR entry. When `stats`
    is a dict it receives peak_audit_bits (sampled every few extensions)
    and the final audit.
    """
    if len(text) == 0:
        raise ValueError("cannot transform empty input")
    bwt = DynamicBwt(mode)
    peak = bwt.audit_bits()
    for pos in range(len(text) - 1, -1, -1):
        bwt.extend_left(text[pos])
        if pos % _PEAK_SAMPLE_EVERY == 0:
            a = bwt.audit_bits()
            if a > peak:
                peak = a
    a = bwt.audit_bits()
    if a > peak:
        peak = a
    if stats is not None:
        stats["peak_audit_bits"] = peak
        stats["final_audit_bits"] = a
    return bwt.to_list()


def invert_bwt(bwt):
    """Invert a BWT list back to the text (plain-array oracle, O(n) space)."""
    if sum(1 for s in bwt if s == TERMINATOR) != 1:
        raise ValueError("input must contain exactly one terminator")
    n = len(bwt)
    counts = [0] * 257
    for s in bwt:
        counts[s + 1] += 1
    first = [0] * 257
    acc = 0
    for c in range(257):
        first[c] = acc
        acc += counts[c]
    seen = [0] * 257
    lf = [0] * n
    for i, s in enumerate(bwt):
        lf[i] = first[s + 1] + seen[s + 1]
        seen[s + 1] += 1
    out = bytearray()
    i = 0
    for _ in range(n - 1):
        s = bwt[i]
        out.append(s)
        i = lf[i]
    out.reverse()
    return bytes(out)


def invert_bwt_compressed(bwt, stats=None):
    """Invert a BWT using a run-length structure instead of O(n) arrays.

    Working space is proportional to the number of BWT runs; used by the
    command-line tool so the inverse transform keeps the compressed-space
    guarantee too.
    """
    if sum(1 for s in bwt if s == TERMINATOR) != 1:
        raise ValueError("input must contain exactly one terminator")
    from .rle import RleString

    n = len(bwt)
    rle = RleString(PrefixCode.fixed(range(257)))
    counts = [0] * 257
    peak = 0
    for pos, s in enumerate(bwt):
        rle.insert(pos, s + 1)  # shift so the terminator is symbol 0
        counts[s + 1] += 1
        if pos % _PEAK_SAMPLE_EVERY == 0:
            a = rle.audit_bits()
            if a > peak:
                peak = a
    a = rle.audit_bits()
    if a > peak:
        peak = a
    if stats is not None:
        stats["peak_audit_bits"] = peak
    first = [0] * 257
    acc = 0
    for c in range(257):
        first[c] = acc
        acc += counts[c]
    out = bytearray()
    i = 0
    for _ in range(n - 1):
        s = rle.access(i)
        out.append(s - 1)
        i = first[s] + rle.rank(i, s)
    out.reverse()
    return bytes(out)


def lz77_factorize(text, k=8, stats=None):
    """Greedy left-to-right LZ77 with leftmost, non-overlapping sources.

    Each factor copies the longest prefix of the unscanned suffix that
    occurs entirely inside the scanned prefix, then emits one literal, so
    a match never reaches past the scan point and the final factor always
    carries a literal. The index over the reversed prefix is a Huffman
    zero-order FM-index (frequencies from one preliminary pass); the
    running structure is the only working set.
    """
    if len(text) == 0:
        raise ValueError("cannot factorize empty input")
    code = PrefixCode.huffman(Counter(text))
    fmi = FmIndex(mode="wavelet", k=k, code=code)
    factors = []
    peak = fmi.audit_bits()
    n = len(text)
    i = 0
    while i < n:
        lo, hi = 0, fmi.rows
        length = 0
        while i + length < n - 1:
            lo2, hi2 = fmi.interval_step(lo, hi, text[i + length])
            if lo2 >= hi2:
                break
            lo, hi = lo2, hi2
            length += 1
        if length == 0:
            factors.append(Lz77Factor(None, 0, text[i]))
        else:
            # occurrences start at reversed positions; leftmost = largest
            rev = max(fmi.locate_rows(lo, hi))
            factors.append(Lz77Factor(i - rev - length, length, text[i + length]))
        for j in range(i, i + length + 1):
            fmi.extend_left(text[j])
            if j % _PEAK_SAMPLE_EVERY == 0:
                a = fmi.audit_bits()
                if a > peak:
                    peak = a
        i += length + 1
    a = fmi.audit_bits()
    if a > peak:
        peak = a
    if stats is not None:
        stats["peak_audit_bits"] = peak
        stats["factors"] = len(factors)
    return factors


def lz77_decode(factors):
    """Concatenate factor expansions; sources must lie inside decoded output."""
    out = bytearray()
    for f in factors:
        if f.length:
            if f.source is None or f.source + f.length > len(out):
                raise ValueError("factor source out of range")
            out.extend(out[f.source : f.source + f.length])
        out.append(f.next)
    return bytes(out)
