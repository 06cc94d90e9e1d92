"""Prefix-free symbol codes for wavelet strings.

Three flavours: fixed-width over a known alphabet, Huffman from a
frequency table (optimal zero-order), and Elias-gamma for open-ended
alphabets whose size is unknown up front.
"""

import heapq

FIXED = "fixed"
HUFFMAN = "huffman"
GAMMA = "gamma"


def gamma_code(v):
    """Elias-gamma code of v + 1 as a tuple of bits (v >= 0)."""
    if v < 0:
        raise ValueError("gamma codes cover non-negative values only")
    x = v + 1
    body = [(x >> k) & 1 for k in range(x.bit_length() - 1, -1, -1)]
    return tuple([0] * (x.bit_length() - 1) + body)


class PrefixCode:
    """Maps symbols to prefix-free bit tuples; decodable by trie walk."""

    def __init__(self, mode, codebook=None):
        self.mode = mode
        self.codebook = codebook or {}

    @classmethod
    def fixed(cls, alphabet):
        """ceil(log2 |alphabet|) bits per symbol, symbols in sorted order."""
        syms = sorted(set(alphabet))
        if not syms:
            raise ValueError("alphabet must be non-empty")
        width = (len(syms) - 1).bit_length()
        book = {
            s: tuple((idx >> k) & 1 for k in range(width - 1, -1, -1))
            for idx, s in enumerate(syms)
        }
        return cls(FIXED, book)

    @classmethod
    def huffman(cls, freqs):
        """Optimal code for a frequency table.

        Ties merge the two cheapest nodes, preferring smaller symbols and
        then earlier-created merges, so the codebook is reproducible.
        """
        items = [(f, s) for s, f in freqs.items() if f > 0]
        if not items:
            raise ValueError("frequency table must be non-empty")
        if len(items) == 1:
            return cls(HUFFMAN, {items[0][1]: ()})
        heap = [(f, 0, s, s) for f, s in items]  # (freq, kind, tiebreak, payload)
        heapq.heapify(heap)
        counter = 0
        while len(heap) > 1:
            f1, _, _, t1 = heapq.heappop(heap)
            f2, _, _, t2 = heapq.heappop(heap)
            merged = (t1, t2)
            heapq.heappush(heap, (f1 + f2, 1, counter, merged))
            counter += 1
        book = {}

        def assign(tree, prefix):
            if isinstance(tree, tuple):
                assign(tree[0], prefix + (0,))
                assign(tree[1], prefix + (1,))
            else:
                book[tree] = prefix

        assign(heap[0][3], ())
        return cls(HUFFMAN, book)

    @classmethod
    def gamma(cls):
        return cls(GAMMA)

    def encode(self, sym):
        if self.mode == GAMMA:
            return gamma_code(sym)
        try:
            return self.codebook[sym]
        except KeyError:
            raise ValueError(f"symbol {sym!r} has no code") from None

    def __contains__(self, sym):
        if self.mode == GAMMA:
            return isinstance(sym, int) and sym >= 0
        return sym in self.codebook

    def decode_all(self, bits):
        """Decode a flat bit iterable back to symbols (round-trip helper)."""
        if self.mode == GAMMA:
            return self._decode_gamma(bits)
        trie = {}
        for sym, code in self.codebook.items():
            node = trie
            for b in code[:-1]:
                node = node.setdefault(b, {})
            if code:
                node[code[-1]] = sym
            else:
                return [sym for _ in bits] if bits else []
        out = []
        node = trie
        for b in bits:
            nxt = node[b]
            if isinstance(nxt, dict):
                node = nxt
            else:
                out.append(nxt)
                node = trie
        if node is not trie:
            raise ValueError("dangling bits at end of stream")
        return out

    @staticmethod
    def _decode_gamma(bits):
        out = []
        it = iter(bits)
        while True:
            zeros = 0
            try:
                b = next(it)
            except StopIteration:
                return out
            while b == 0:
                zeros += 1
                b = next(it)
            x = 1
            for _ in range(zeros):
                x = (x << 1) | next(it)
            out.append(x - 1)
