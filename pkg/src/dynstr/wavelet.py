"""Dynamic sequence over a general alphabet via a code trie of bitvectors.

Each internal node of the trie owns one succinct bitvector routing
positions left (0) or right (1); a symbol's path is its prefix code.
The trie topology is stored explicitly and grows lazily, which also
serves gamma-coded open alphabets where codes appear as symbols do.
"""

import numpy as np

from .bitvector import SuccinctBitvector
from .codes import PrefixCode

WT_BASE_BITS = 192
WT_NODE_BITS = 192   # symbol/flags plus two child handles
WT_BOOK_ENTRY_BITS = 128


class _WtNode:
    __slots__ = ("bv", "kids", "symbol")

    def __init__(self):
        self.bv = None
        self.kids = [None, None]
        self.symbol = None


class WaveletString:
    """rank/select/access/insert sequence, entropy-compressed by its code."""

    def __init__(self, code=None):
        self.code = code or PrefixCode.gamma()
        self._root = None
        self.n = 0
        self._nodes = 0

    def __len__(self):
        return self.n

    def insert(self, i, sym):
        if i < 0 or i > self.n:
            raise IndexError(f"insert position {i} out of range")
        code = self.code.encode(sym)
        if self._root is None:
            self._root = _WtNode()
            self._nodes += 1
        node = self._root
        for b in code:
            if node.bv is None:
                node.bv = SuccinctBitvector()
            r = node.bv.rank(i, b)
            node.bv.insert(i, b)
            if node.kids[b] is None:
                node.kids[b] = _WtNode()
                self._nodes += 1
            node = node.kids[b]
            i = r
        node.symbol = sym
        self.n += 1

    def access(self, i):
        if i < 0 or i >= self.n:
            raise IndexError(f"position {i} out of range")
        node = self._root
        while node.symbol is None:
            b = node.bv.access(i)
            i = node.bv.rank(i, b)
            node = node.kids[b]
        return node.symbol

    def rank(self, i, sym):
        """Occurrences of sym in the first i positions; 0 for unseen symbols."""
        if i < 0 or i > self.n:
            raise IndexError(f"prefix length {i} out of range")
        code = self.code.encode(sym)
        node = self._root
        for b in code:
            if node is None or node.bv is None:
                return 0
            i = node.bv.rank(i, b)
            node = node.kids[b]
        if node is None or node.symbol != sym:
            return 0
        return i

    def select(self, j, sym):
        """Position of the (j+1)-th occurrence of sym."""
        if j < 0 or j >= self.rank(self.n, sym):
            raise IndexError(f"occurrence {j} of {sym!r} out of range")
        code = self.code.encode(sym)
        path = []
        node = self._root
        for b in code:
            path.append((node, b))
            node = node.kids[b]
        pos = j
        for nd, b in reversed(path):
            pos = nd.bv.select(pos, b)
        return pos

    def audit_bits(self):
        bits = WT_BASE_BITS + self._nodes * WT_NODE_BITS
        if self.code.codebook:
            bits += len(self.code.codebook) * WT_BOOK_ENTRY_BITS
        stack = [self._root] if self._root else []
        while stack:
            node = stack.pop()
            if node.bv is not None:
                bits += node.bv.audit_bits()
            for kid in node.kids:
                if kid is not None:
                    stack.append(kid)
        return bits

    def to_list(self):
        """The whole sequence, decoded level by level (vectorized readout)."""
        out = [None] * self.n
        if self.n == 0:
            return out
        stack = [(self._root, np.arange(self.n, dtype=np.int64))]
        while stack:
            node, idx = stack.pop()
            if node.symbol is not None:
                for p in idx:
                    out[p] = node.symbol
                continue
            bits = node.bv.to_bits()
            if node.kids[0] is not None:
                stack.append((node.kids[0], idx[bits == 0]))
            if node.kids[1] is not None:
                stack.append((node.kids[1], idx[bits == 1]))
        return out
