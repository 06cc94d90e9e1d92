"""Dynamic Burrows-Wheeler transform with text left-extension, and an FM-index.

The BWT keeps the last column L in a pluggable dynamic sequence (wavelet
or run-length compressed) and the first column as 256 cumulative symbol
counts. The terminator is out of band: it is never stored in L, only its
current row is tracked, so inputs may use all byte values and L needs no
reserved code. The FM-index adds a marking bitvector over BWT rows plus a
partial-sum sequence of sampled positions; samples count positions from
the right end of the text, so growing the text never rewrites a stored
sample, and every row resolves within the sample rate's step budget.
"""

from .bitvector import GapBitvector, SuccinctBitvector
from .codes import PrefixCode
from .rle import RleString
from .spsi import INT_CONFIG, SpsiTree
from .wavelet import WaveletString

TERMINATOR = -1

BWT_HEADER_BITS = 192 + 257 * 64  # object header plus the first-column counts
FMI_HEADER_BITS = 192


class _ByteCounts:
    """256-bin Fenwick tree of symbol counts with prefix sums."""

    __slots__ = ("tree",)

    def __init__(self):
        self.tree = [0] * 257

    def add(self, c, d):
        i = c + 1
        while i <= 256:
            self.tree[i] += d
            i += i & (-i)

    def prefix(self, c):
        """Total count of symbols strictly smaller than c."""
        s = 0
        i = c
        while i > 0:
            s += self.tree[i]
            i -= i & (-i)
        return s


class DynamicBwt:
    """BWT of the text built by prepending characters one at a time."""

    def __init__(self, mode="rle", code=None):
        if mode == "rle":
            # run heads are bytes, so a fixed byte code keeps the trie shallow
            self._l = RleString(code or PrefixCode.fixed(range(256)))
        elif mode == "wavelet":
            self._l = WaveletString(code or PrefixCode.fixed(range(256)))
        else:
            raise ValueError(f"unknown BWT mode {mode!r}")
        self.mode = mode
        self._counts = _ByteCounts()
        self.term_pos = 0
        self.size = 0  # text length, excluding the terminator

    @property
    def rows(self):
        return self.size + 1

    def extend_left(self, c):
        """Prepend character c to the text; returns the new terminator row."""
        if not 0 <= c <= 255:
            raise ValueError("characters are bytes")
        p = self.term_pos
        r = self._l.rank(p, c)
        self._l.insert(p, c)
        self._counts.add(c, 1)
        p_new = 1 + self._counts.prefix(c) + r
        self.term_pos = p_new
        self.size += 1
        return p_new

    def access(self, i):
        if i < 0 or i >= self.rows:
            raise IndexError(f"row {i} out of range")
        if i == self.term_pos:
            return TERMINATOR
        return self._l.access(i - (i > self.term_pos))

    def rank(self, i, c):
        """Occurrences of byte c among rows before i (terminator excluded)."""
        if i < 0 or i > self.rows:
            raise IndexError(f"row prefix {i} out of range")
        return self._l.rank(i - (i > self.term_pos), c)

    def first_column_before(self, c):
        """Rows whose first column sorts below byte c (terminator included)."""
        return 1 + self._counts.prefix(c)

    def lf(self, i):
        """Row of the preceding text character (terminator maps to row 0)."""
        c = self.access(i)
        if c == TERMINATOR:
            return 0
        return self.first_column_before(c) + self.rank(i, c)

    def to_list(self):
        """The full BWT as a list of byte values with the terminator in place."""
        out = self._l.to_list()
        out.insert(self.term_pos, TERMINATOR)
        return out

    def audit_bits(self):
        return self._l.audit_bits() + BWT_HEADER_BITS


class FmIndex:
    """Count/locate index over a dynamic BWT with suffix-position sampling."""

    def __init__(self, mode="wavelet", k=4, code=None):
        if k < 1:
            raise ValueError("sample rate must be >= 1")
        self.bwt = DynamicBwt(mode, code)
        self.k = k
        self._marks = SuccinctBitvector() if mode == "wavelet" else GapBitvector()
        self._samples = SpsiTree(INT_CONFIG)
        self._marks.insert(0, 0)  # the lone terminator row of the empty text

    @property
    def rows(self):
        return self.bwt.rows

    @property
    def size(self):
        return self.bwt.size

    def extend_left(self, c):
        """Prepend c; the new row is sampled iff its right-counted position hits the rate."""
        rpos = self.bwt.size  # distance of the new suffix head from the text end
        p_new = self.bwt.extend_left(c)
        if rpos % self.k == 0:
            self._marks.insert(p_new, 1)
            self._samples.insert(self._marks.rank(p_new), rpos)
        else:
            self._marks.insert(p_new, 0)
        return p_new

    def interval_step(self, lo, hi, c):
        """Refine a backward-search row interval by one pattern character."""
        if not 0 <= c <= 255:
            return 0, 0
        try:
            base = self.bwt.first_column_before(c)
            return base + self.bwt.rank(lo, c), base + self.bwt.rank(hi, c)
        except ValueError:
            return 0, 0  # character without a code cannot occur

    def interval(self, pattern):
        lo, hi = 0, self.rows
        for c in reversed(pattern):
            lo, hi = self.interval_step(lo, hi, c)
            if lo >= hi:
                return 0, 0
        return lo, hi

    def count(self, pattern):
        if len(pattern) == 0:
            raise ValueError("pattern must be non-empty")
        lo, hi = self.interval(pattern)
        return hi - lo

    def locate(self, pattern):
        """Sorted text positions of every occurrence of the pattern."""
        if len(pattern) == 0:
            raise ValueError("pattern must be non-empty")
        lo, hi = self.interval(pattern)
        return sorted(self.locate_rows(lo, hi))

    def locate_rows(self, lo, hi):
        """Left-counted suffix positions for each row in [lo, hi)."""
        bwt = self.bwt
        marks = self._marks
        samples = self._samples
        n = bwt.size
        out = []
        for row in range(lo, hi):
            i = row
            t = 0
            while True:
                if i == bwt.term_pos:
                    rp = n - 1  # the whole-text suffix needs no sample
                    break
                if marks.access(i):
                    rp = samples.at(marks.rank(i))
                    break
                i = bwt.lf(i)
                t += 1
            out.append(n - 1 - (rp - t))
        return out

    def audit_bits(self):
        return (
            FMI_HEADER_BITS
            + self.bwt.audit_bits()
            + self._marks.audit_bits()
            + self._samples.allocated_bits
        )
