"""Run-length compressed dynamic sequence.

One character per maximal run lives in a wavelet string of run heads; a
gap-encoded bitvector marks run ends over the full positions; and per
character, another gap-encoded bitvector concatenates that character's
run lengths, each length m written as 0^{m-1}1. Inserting a character
either extends an adjacent equal run, starts a new singleton run at a
run boundary, or splits a foreign run in two around the newcomer, so
runs stay maximal at all times.
"""

import numpy as np

from .bitvector import GapBitvector
from .codes import PrefixCode
from .wavelet import WaveletString

RLE_BASE_BITS = 256
RLE_MAP_ENTRY_BITS = 128


class RleString:
    def __init__(self, head_code=None):
        self._heads = WaveletString(head_code or PrefixCode.gamma())
        self._ends = GapBitvector()     # one bit per position, set at run ends
        self._per_sym = {}              # symbol -> bitvector of its run lengths
        self.n = 0

    def __len__(self):
        return self.n

    @property
    def runs(self):
        return self._heads.n

    def access(self, i):
        if i < 0 or i >= self.n:
            raise IndexError(f"position {i} out of range")
        return self._heads.access(self._ends.rank(i))

    def rank(self, i, sym):
        if i < 0 or i > self.n:
            raise IndexError(f"prefix length {i} out of range")
        vc = self._per_sym.get(sym)
        if vc is None or i == 0:
            return 0
        j = self._ends.rank(i)                      # run containing position i
        q = self._heads.rank(j, sym)                # complete sym-runs before it
        full = vc.select(q - 1) + 1 if q else 0     # their total length
        if j < self._heads.n and self._heads.access(j) == sym:
            start = self._ends.select(j - 1) + 1 if j else 0
            return full + (i - start)
        return full

    def select(self, j, sym):
        vc = self._per_sym.get(sym)
        if vc is None or j < 0 or j >= len(vc):
            raise IndexError(f"occurrence {j} of {sym!r} out of range")
        q = vc.rank(j)                              # sym-run holding occurrence j
        off = j - (vc.select(q - 1) + 1 if q else 0)
        run = self._heads.select(q, sym)
        start = self._ends.select(run - 1) + 1 if run else 0
        return start + off

    def insert(self, i, sym):
        if i < 0 or i > self.n:
            raise IndexError(f"insert position {i} out of range")
        if self.n == 0:
            self._new_run(0, 0, sym)
            self.n = 1
            return
        ends = self._ends
        heads = self._heads
        r = heads.n
        j = ends.rank(i)  # run containing i, == run count when i == n
        if j < r:
            start = ends.select(j - 1) + 1 if j else 0
            cur_head = heads.access(j)
        else:
            start = self.n  # appending past the last run
            cur_head = None
        if i > start:
            left_head = cur_head  # i-1 sits inside run j
        elif i > 0:
            left_head = heads.access(j - 1)  # i is a boundary: left is run j-1
        else:
            left_head = None
        if left_head == sym:
            self._extend_run(j if i > start else j - 1, sym, i - 1)
        elif cur_head == sym:
            self._extend_run(j, sym, i)
        elif i == start or i == self.n:
            self._new_run(j, i, sym)
        else:
            self._split_run(j, i, start, sym)
        self.n += 1

    def audit_bits(self):
        bits = RLE_BASE_BITS + self._heads.audit_bits() + self._ends.audit_bits()
        bits += len(self._per_sym) * RLE_MAP_ENTRY_BITS
        for vc in self._per_sym.values():
            bits += vc.audit_bits()
        return bits

    def run_list(self):
        """Runs as (symbol, length) pairs, in order."""
        heads = self._heads.to_list()
        lengths = self._ends._gaps.to_values()
        return list(zip(heads, lengths))

    def to_list(self):
        heads = self._heads.to_list()
        lengths = self._ends._gaps.to_values()
        out = []
        for h, ln in zip(heads, lengths):
            out.extend([h] * ln)
        return out

    # ------------------------------------------------------------------
    # the three insert cases

    def _vc(self, sym):
        vc = self._per_sym.get(sym)
        if vc is None:
            vc = self._per_sym[sym] = GapBitvector()
        return vc

    def _seg_start(self, vc, q):
        """Start of the q-th run's segment inside a per-symbol bitvector."""
        return vc.select(q - 1) + 1 if q else 0

    def _extend_run(self, j, sym, pos):
        """Lengthen run j by one; pos is any position inside the run's span."""
        vc = self._vc(sym)
        q = self._heads.rank(j, sym)
        self._ends.insert(pos, 0)
        vc.insert(self._seg_start(vc, q), 0)

    def _new_run(self, j, i, sym):
        vc = self._vc(sym)
        q = self._heads.rank(j, sym)
        self._heads.insert(j, sym)
        self._ends.insert(i, 1)
        vc.insert(self._seg_start(vc, q), 1)

    def _split_run(self, j, i, start, sym):
        other = self._heads.access(j)
        left_len = i - start
        vc = self._vc(sym)
        q = self._heads.rank(j, sym)
        vo = self._per_sym[other]
        qo = self._heads.rank(j, other)
        seg = self._seg_start(vo, qo)
        # run heads: other, sym, other
        self._heads.insert(j + 1, sym)
        self._heads.insert(j + 2, other)
        # position marks: close the left part at i-1, the newcomer at i
        self._ends.insert(i, 1)
        self._ends.delete_zero(i - 1)
        self._ends.insert(i - 1, 1)
        # the newcomer's singleton segment
        vc.insert(self._seg_start(vc, q), 1)
        # split the other symbol's length segment: flip the boundary zero
        p = seg + left_len - 1
        vo.delete_zero(p)
        vo.insert(p, 1)
