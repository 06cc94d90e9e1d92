"""Dynamic bitvectors over the partial-sum tree.

GapBitvector encodes the distances between consecutive ones, so space is
proportional to the number of set bits; it additionally supports deleting
zeros. SuccinctBitvector stores one bit per element in wide popcount
leaves, staying within n + o(n) bits at any density. Both expose the same
access/rank/select/insert surface so higher layers are generic over the
representation.
"""

import numpy as np

from .spsi import BIT_CONFIG, INT_CONFIG, SpsiTree

GAP_HEADER_BITS = 192
SUC_HEADER_BITS = 128


class GapBitvector:
    """Bitvector 0^{g1-1} 1 0^{g2-1} 1 ... 0^{gb-1} 1 0^{tail}, gaps in an SPSI."""

    def __init__(self):
        self._gaps = SpsiTree(INT_CONFIG)
        self.tail = 0  # zeros after the last one

    def __len__(self):
        return self._gaps.total + self.tail

    @property
    def n(self):
        return self._gaps.total + self.tail

    @property
    def ones(self):
        return self._gaps.m

    def access(self, i):
        runs = self._gaps.total
        if i < 0 or i >= runs + self.tail:
            raise IndexError(f"position {i} out of range")
        if i >= runs:
            return 0
        _, cum, _ = self._gaps.search_cum(i)
        return 1 if cum == i + 1 else 0

    def rank(self, i, bit=1):
        """Occurrences of `bit` strictly before position i."""
        n = len(self)
        if i < 0 or i > n:
            raise IndexError(f"prefix length {i} out of range")
        if i >= self._gaps.total:
            r1 = self._gaps.m
        elif i == 0:
            r1 = 0
        else:
            r1 = self._gaps.search(i)
        return r1 if bit else i - r1

    def select(self, j, bit=1):
        """Position of the (j+1)-th occurrence of `bit`."""
        if bit:
            if j < 0 or j >= self._gaps.m:
                raise IndexError(f"one-rank {j} out of range")
            return self._gaps.sum(j + 1) - 1
        zeros = len(self) - self._gaps.m
        if j < 0 or j >= zeros:
            raise IndexError(f"zero-rank {j} out of range")
        in_runs = self._gaps.total - self._gaps.m
        if j >= in_runs:
            # inside the trailing zeros
            return self._gaps.total + (j - in_runs)
        # the j-th zero sits in the run found by searching sum-minus-count
        return j + self._gaps.search_excess(j)

    def insert(self, i, bit):
        n = len(self)
        if i < 0 or i > n:
            raise IndexError(f"insert position {i} out of range")
        gaps = self._gaps
        if bit:
            if i >= gaps.total:
                d = i - gaps.total  # tail zeros that move in front of the new one
                gaps.insert(gaps.m, d + 1)
                self.tail -= d
            else:
                idx, cum, g = gaps.search_cum(i)
                d = i - (cum - g)  # zeros of the split run kept on the left
                gaps.update(idx, (d + 1) - g)
                gaps.insert(idx + 1, g - d)
        else:
            if i >= gaps.total:
                self.tail += 1
            else:
                idx, _, _ = gaps.search_cum(i)
                gaps.update(idx, 1)

    def delete_zero(self, i):
        """Remove position i, which must hold a 0."""
        n = len(self)
        if i < 0 or i >= n:
            raise IndexError(f"position {i} out of range")
        gaps = self._gaps
        if i >= gaps.total:
            self.tail -= 1
            return
        idx, cum, _ = gaps.search_cum(i)
        if cum == i + 1:
            raise ValueError("cannot delete a set bit")
        gaps.update(idx, -1)

    def audit_bits(self):
        return self._gaps.allocated_bits + GAP_HEADER_BITS

    def to_bits(self):
        """Whole bitvector as a numpy uint8 array (test/readout helper)."""
        arr = np.zeros(len(self), dtype=np.uint8)
        vals = np.asarray(self._gaps.to_values(), dtype=np.int64)
        if vals.size:
            arr[np.cumsum(vals) - 1] = 1
        return arr


class SuccinctBitvector:
    """Plain dynamic bitvector: one bit per element, popcount-parallel leaves."""

    def __init__(self):
        self._bits = SpsiTree(BIT_CONFIG)

    def __len__(self):
        return self._bits.m

    @property
    def n(self):
        return self._bits.m

    @property
    def ones(self):
        return self._bits.total

    def access(self, i):
        return self._bits.at(i)

    def rank(self, i, bit=1):
        if i < 0 or i > self._bits.m:
            raise IndexError(f"prefix length {i} out of range")
        r1 = self._bits.sum(i)
        return r1 if bit else i - r1

    def select(self, j, bit=1):
        if bit:
            return self._bits.search(j)
        return self._bits.search_zero(j)

    def insert(self, i, bit):
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        self._bits.insert(i, bit)

    def audit_bits(self):
        return self._bits.allocated_bits + SUC_HEADER_BITS

    def to_bits(self):
        parts = [leaf.bit_array() for leaf in self._bits.iter_leaves()]
        if not parts:
            return np.zeros(0, dtype=np.uint8)
        return np.concatenate(parts)
