"""Independent oracles the structure tests replay against.

Everything here is deliberately naive: plain lists, full rotation sorts,
linear scans. None of it shares code with the structures under test.
"""

import numpy as np

from dynstr import Lz77Factor, TERMINATOR


class RefBits:
    """Plain bit-array oracle with numpy-backed queries."""

    def __init__(self):
        self.bits = []
        self._arr = None

    def _np(self):
        if self._arr is None:
            self._arr = np.asarray(self.bits, dtype=np.int64)
        return self._arr

    def insert(self, i, b):
        self.bits.insert(i, b)
        self._arr = None

    def delete(self, i):
        del self.bits[i]
        self._arr = None

    def access(self, i):
        return self.bits[i]

    def rank(self, i, c=1):
        a = self._np()
        ones = int(a[:i].sum())
        return ones if c else i - ones

    def select(self, j, c=1):
        a = self._np()
        return int(np.flatnonzero(a == c)[j])

    def __len__(self):
        return len(self.bits)


class RefSeq:
    """Plain symbol-array oracle for strings and partial sums."""

    def __init__(self):
        self.vals = []
        self._arr = None

    def _np(self):
        if self._arr is None:
            self._arr = np.asarray(self.vals, dtype=np.int64)
        return self._arr

    def insert(self, i, v):
        self.vals.insert(i, v)
        self._arr = None

    def update(self, i, d):
        self.vals[i] += d
        self._arr = None

    def at(self, i):
        return self.vals[i]

    def sum(self, i):
        return int(self._np()[:i].sum())

    def search(self, x):
        c = np.cumsum(self._np())
        return int(np.searchsorted(c, x, side="right"))

    def search_zero(self, x):
        zeros = np.cumsum(self._np() == 0)
        return int(np.searchsorted(zeros, x, side="right"))

    def rank(self, i, c):
        return int((self._np()[:i] == c).sum())

    def select(self, j, c):
        return int(np.flatnonzero(self._np() == c)[j])

    def runs(self):
        a = self.vals
        return sum(1 for k in range(len(a)) if k == 0 or a[k] != a[k - 1])

    def __len__(self):
        return len(self.vals)


def naive_bwt(text):
    """BWT of text plus terminator via full rotation sort (O(n^2 log n))."""
    t = list(text) + [TERMINATOR]
    rots = sorted(t[i:] + t[:i] for i in range(len(t)))
    return [rot[-1] for rot in rots]


def naive_lz77(text):
    """Greedy leftmost factorization by linear probing with bytes.find.

    Matches must sit entirely inside the scanned prefix and every factor
    ends with a literal, mirroring the library's conventions.
    """
    out = []
    i, n = 0, len(text)
    while i < n:
        length = 0
        while i + length < n - 1 and text.find(text[i : i + length + 1], 0, i) >= 0:
            length += 1
        if length == 0:
            out.append(Lz77Factor(None, 0, text[i]))
        else:
            src = text.find(text[i : i + length], 0, i)
            out.append(Lz77Factor(src, length, text[i + length]))
        i += length + 1
    return out


def count_occurrences(text, pattern):
    """Overlapping substring count."""
    n = 0
    start = 0
    while True:
        k = text.find(pattern, start)
        if k < 0:
            return n
        n += 1
        start = k + 1


def find_occurrences(text, pattern):
    out = []
    start = 0
    while True:
        k = text.find(pattern, start)
        if k < 0:
            return out
        out.append(k)
        start = k + 1
