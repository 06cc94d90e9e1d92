"""Fixed-width bit-packed integer blocks: the leaf type of the partial-sum tree.

A block keeps ``count`` non-negative integers of ``width`` bits each, packed
back to back in one big integer (fields may straddle 64-bit word boundaries).
``width`` always equals the bit-size of the largest stored element, and the
payload allocation covers the stored fields plus a growth buffer of one
element slot per eight stored (at most 12.5%), rounded up to whole words.
A cached sum of all elements is kept in step with every mutation.
"""

import numpy as np

WORD_BITS = 64
LEAF_HEADER_BITS = 224  # count, capacity, width, cached sum, payload pointer

# popcount per byte value, used by the word-parallel select paths
_POP8 = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1).astype(np.int64)
_NP_WIDTH_MAX = 30  # int64 cumulative sums stay exact below this field width
_NP_COUNT_MIN = 16  # below this a plain loop beats numpy call overhead
_CUM_WIDTH_MAX = 48  # widest fields whose block sums stay exact in int64


def bitsize(x):
    """Bits needed to write x in binary; a stored zero still costs one bit."""
    return x.bit_length() if x else 1


class PackedBlock:
    """Packed integer array supporting prefix sums, search, update, insert, split.

    All operations are linear in the block size at worst; the hot query
    paths go through word-parallel popcounts (width 1) or vectorized field
    extraction instead of per-element Python loops.
    """

    __slots__ = ("limit", "bits", "count", "width", "sum", "cap", "alloc_words", "_cum")

    def __init__(self, limit):
        self.limit = limit  # caller-imposed max element count (tree leaf size)
        self.bits = 0
        self.count = 0
        self.width = 1
        self.sum = 0
        self.cap = 0        # allocated element slots (count + growth buffer)
        self.alloc_words = 0
        # derived inclusive-cumsum cache for multi-bit blocks; the packed
        # payload stays authoritative and the cache is rebuilt from it
        self._cum = None

    # ------------------------------------------------------------------
    # queries

    def at(self, i):
        if i < 0 or i >= self.count:
            raise IndexError(f"index {i} out of range for block of {self.count}")
        return (self.bits >> (i * self.width)) & ((1 << self.width) - 1)

    def prefix_sum(self, i):
        """Sum of the first i elements (0 <= i <= count)."""
        if i < 0 or i > self.count:
            raise IndexError(f"prefix length {i} out of range")
        if i == 0:
            return 0
        if i == self.count:
            return self.sum
        w = self.width
        if w == 1:
            return (self.bits & ((1 << i) - 1)).bit_count()
        if w <= _CUM_WIDTH_MAX:
            return int(self._cumsum()[i - 1])
        mask = (1 << w) - 1
        s = 0
        t = self.bits
        for _ in range(i):
            s += t & mask
            t >>= w
        return s

    def search_cum(self, x):
        """Smallest i with prefix_sum(i + 1) > x, plus that prefix sum and element i.

        Requires 0 <= x < sum; returns ``(i, cum, element)``.
        """
        if x < 0 or x >= self.sum:
            raise IndexError(f"search key {x} not below block sum {self.sum}")
        w = self.width
        if w == 1:
            i = self._select_one(x)
            return i, x + 1, 1
        if w <= _CUM_WIDTH_MAX:
            c = self._cumsum()
            i = int(c.searchsorted(x, side="right"))
            cum = int(c[i])
            return i, cum, cum - (int(c[i - 1]) if i else 0)
        mask = (1 << w) - 1
        acc = 0
        t = self.bits
        for i in range(self.count):
            v = t & mask
            acc += v
            if acc > x:
                return i, acc, v
            t >>= w
        raise IndexError("unreachable: x < sum")  # pragma: no cover

    def search_zero(self, x):
        """Smallest i such that the first i+1 elements contain x+1 zeros.

        Only valid when every element is 0 or 1 (width 1).
        """
        if self.width != 1:
            raise ValueError("search_zero requires a 0/1 block")
        zeros = self.count - self.sum
        if x < 0 or x >= zeros:
            raise IndexError(f"zero-rank {x} not below zero count {zeros}")
        if self.count < _NP_COUNT_MIN:
            t = self.bits
            need = x + 1
            for i in range(self.count):
                need -= 1 - (t & 1)
                if need == 0:
                    return i
                t >>= 1
        data = self.bits.to_bytes((self.count + 7) // 8, "little")
        arr = np.frombuffer(data, np.uint8)
        cum = (8 - _POP8[arr]).cumsum()
        b = int(cum.searchsorted(x + 1, side="left"))
        prev = int(cum[b - 1]) if b else 0
        byte = data[b]
        need = x + 1 - prev
        for bit in range(8):
            if not (byte >> bit) & 1:
                need -= 1
                if need == 0:
                    idx = b * 8 + bit
                    if idx >= self.count:  # pad bits are not real zeros
                        raise IndexError("zero-rank beyond stored bits")
                    return idx
        raise IndexError("unreachable")  # pragma: no cover

    def search_excess(self, x):
        """Smallest i with prefix_sum(i + 1) - (i + 1) > x (elements >= 1)."""
        excess = self.sum - self.count
        if x < 0 or x >= excess:
            raise IndexError(f"excess key {x} not below {excess}")
        w = self.width
        if w <= _CUM_WIDTH_MAX:
            cum = self._cumsum() - np.arange(1, self.count + 1)
            return int(cum.searchsorted(x, side="right"))
        mask = (1 << w) - 1
        acc = 0
        t = self.bits
        for i in range(self.count):
            acc += (t & mask) - 1
            if acc > x:
                return i
            t >>= w
        raise IndexError("unreachable")  # pragma: no cover

    def values(self):
        """All elements as a list of Python ints."""
        w = self.width
        if not self.count:
            return []
        if self._cum is not None:
            return [int(v) for v in np.diff(self._cum, prepend=0)]
        if w <= _NP_WIDTH_MAX:
            return [int(v) for v in self._field_values(self.count)]
        mask = (1 << w) - 1
        out = []
        t = self.bits
        for _ in range(self.count):
            out.append(t & mask)
            t >>= w
        return out

    def bit_array(self):
        """Payload bits as a numpy uint8 array of length count (width-1 blocks)."""
        if self.width != 1:
            raise ValueError("bit_array requires a 0/1 block")
        data = self.bits.to_bytes((self.count + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(data, np.uint8), count=self.count, bitorder="little")

    # ------------------------------------------------------------------
    # mutations

    def update(self, i, delta):
        old = self.at(i)
        new = old + delta
        if new < 0:
            raise ValueError(f"update would make element {i} negative")
        if delta == 0:
            return
        if new.bit_length() > 64:
            raise ValueError("element overflows 64 bits")
        nb = bitsize(new)
        if nb > self.width:
            self._repack(nb)
        # fields are independent: the add/borrow stays inside field i
        self.bits += delta << (i * self.width)
        self.sum += delta
        if self._cum is not None:
            self._cum[i:] += delta
        if nb < self.width and bitsize(old) == self.width:
            m = self._max_bitsize()
            if m < self.width:
                self._repack(m)

    def insert(self, i, v):
        if i < 0 or i > self.count:
            raise IndexError(f"insert position {i} out of range")
        if self.count >= self.limit:
            raise ValueError("block full: caller must split first")
        if v < 0 or v.bit_length() > 64:
            raise ValueError("value out of range")
        nb = bitsize(v)
        if nb > self.width:
            self._repack(nb)
        w = self.width
        pos = i * w
        low = self.bits & ((1 << pos) - 1)
        high = self.bits >> pos
        self.bits = low | (v << pos) | (high << (pos + w))
        self.count += 1
        self.sum += v
        if self._cum is not None:
            c = self._cum
            prev = c[i - 1] if i else 0
            self._cum = np.concatenate((c[:i], [prev + v], c[i:] + v))
        if self.count > self.cap:
            self._realloc()

    def split(self):
        """Move the upper floor(count/2) elements into a new block; return it.

        The receiver keeps the first ceil(count/2) elements; both halves get
        their width recomputed from their own maxima and fresh allocations.
        """
        if self.count < 2:
            raise ValueError("cannot split a block of fewer than 2 elements")
        w = self.width
        half = (self.count + 1) // 2
        cut = half * w
        right = PackedBlock(self.limit)
        right.bits = self.bits >> cut
        right.count = self.count - half
        right.width = w
        self.bits &= (1 << cut) - 1
        self.count = half
        if self._cum is not None:
            c = self._cum
            right._cum = c[half:] - c[half - 1]
            self._cum = c[:half].copy()
            rsum = int(right._cum[-1])
        elif w <= _NP_WIDTH_MAX and right.count >= _NP_COUNT_MIN:
            rsum = int(right._field_values(right.count).sum())
        else:
            rsum = 0
            t = right.bits
            mask = (1 << w) - 1
            for _ in range(right.count):
                rsum += t & mask
                t >>= w
        right.sum = rsum
        self.sum -= rsum
        for blk in (self, right):
            m = blk._max_bitsize()
            if m < blk.width:
                blk._repack(m)
            else:
                blk._realloc()
        return right

    # ------------------------------------------------------------------
    # internals

    def _cumsum(self):
        """Inclusive cumulative sums of all fields, cached until mutated away."""
        c = self._cum
        if c is None:
            if self.width <= _NP_WIDTH_MAX:
                vals = self._field_values(self.count)
            else:  # decode wide fields pairwise to keep int64 math exact
                vals = np.fromiter(
                    self._decode_loop(), dtype=np.int64, count=self.count
                )
            c = self._cum = np.cumsum(vals)
        return c

    def _decode_loop(self):
        mask = (1 << self.width) - 1
        t = self.bits
        for _ in range(self.count):
            yield t & mask
            t >>= self.width

    def _field_values(self, n):
        """First n fields as an int64 numpy array (width <= 30 only)."""
        w = self.width
        nbits = self.count * w
        data = self.bits.to_bytes((nbits + 7) // 8, "little")
        m = np.unpackbits(np.frombuffer(data, np.uint8), count=n * w, bitorder="little")
        return m.reshape(n, w).astype(np.int64) @ (1 << np.arange(w, dtype=np.int64))

    def _bit_matrix(self):
        nbits = self.count * self.width
        data = self.bits.to_bytes((nbits + 7) // 8, "little")
        m = np.unpackbits(np.frombuffer(data, np.uint8), count=nbits, bitorder="little")
        return m.reshape(self.count, self.width)

    def _max_bitsize(self):
        if self.count == 0:
            return 1
        cols = np.flatnonzero(self._bit_matrix().any(axis=0))
        return int(cols[-1]) + 1 if cols.size else 1

    def _select_one(self, x):
        """Position of the (x+1)-th set bit (width-1 blocks, x < sum)."""
        if self.count < _NP_COUNT_MIN:
            t = self.bits
            need = x + 1
            for i in range(self.count):
                need -= t & 1
                if need == 0:
                    return i
                t >>= 1
        data = self.bits.to_bytes((self.count + 7) // 8, "little")
        arr = np.frombuffer(data, np.uint8)
        cum = _POP8[arr].cumsum()
        b = int(cum.searchsorted(x + 1, side="left"))
        prev = int(cum[b - 1]) if b else 0
        byte = data[b]
        need = x + 1 - prev
        for bit in range(8):
            if (byte >> bit) & 1:
                need -= 1
                if need == 0:
                    return b * 8 + bit
        raise IndexError("unreachable")  # pragma: no cover

    def _repack(self, new_width):
        """Re-encode every field at new_width and re-allocate."""
        if new_width > _CUM_WIDTH_MAX:
            self._cum = None  # int64 cache no longer exact
        if self.count == 0:
            self.width = new_width
            self._realloc()
            return
        m = self._bit_matrix()
        if new_width > self.width:
            pad = np.zeros((self.count, new_width - self.width), dtype=np.uint8)
            m = np.hstack((m, pad))
        else:
            m = m[:, :new_width]
        packed = np.packbits(m.reshape(-1), bitorder="little").tobytes()
        self.bits = int.from_bytes(packed, "little")
        self.width = new_width
        self._realloc()

    def _realloc(self):
        self.cap = min(self.limit, self.count + self.count // 8)
        self.alloc_words = (self.cap * self.width + WORD_BITS - 1) // WORD_BITS

    # ------------------------------------------------------------------

    def check(self, min_count=0):
        """Verify every block invariant (test hook)."""
        assert 0 <= self.count <= self.limit
        assert self.count >= min_count, f"underfull leaf: {self.count} < {min_count}"
        assert 1 <= self.width <= 64
        vals = list(self._decode_loop())  # straight from the packed payload
        assert all(0 <= v < (1 << self.width) for v in vals)
        maxb = max((bitsize(v) for v in vals), default=1)
        assert self.width == maxb, f"width {self.width} != max bitsize {maxb}"
        assert self.sum == sum(vals), "cached sum out of step"
        assert self.bits >> (self.count * self.width) == 0, "stray payload bits"
        assert self.cap >= self.count
        payload_bits = self.alloc_words * WORD_BITS
        slack = (self.count // 8) * self.width + WORD_BITS
        assert payload_bits <= self.count * self.width + slack, "allocation above slack bound"
        if self._cum is not None:
            import itertools
            want = list(itertools.accumulate(vals))
            assert [int(c) for c in self._cum] == want, "cumsum cache out of step"
