"""Searchable partial sums with inserts: a B-tree of packed integer blocks.

Internal nodes store cumulative (element count, subtree sum) pairs per
child, so every query is one root-to-leaf descent with a bisect per node.
Leaves are PackedBlock instances; splits happen preemptively on the way
down, so inserts never back up the tree. There is no delete.

The tree maintains ``allocated_bits``, a live audit of every payload and
bookkeeping bit the structure has allocated (leaf payloads including their
growth buffers, per-leaf headers, per-child counters/handles, node and
tree headers). Allocator metadata and interpreter overhead are outside
the audit by design.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .packed_block import LEAF_HEADER_BITS, PackedBlock

TREE_HEADER_BITS = 320
NODE_HEADER_BITS = 128
CHILD_ENTRY_BITS = 192  # per-child count + sum counters and a handle


@dataclass(frozen=True)
class SpsiConfig:
    """Tree shape: max integers per leaf and max children per node."""

    max_leaf_size: int = 256
    fanout: int = 16

    def __post_init__(self):
        if self.max_leaf_size < 2:
            raise ValueError("max_leaf_size must be >= 2")
        if self.fanout < 2:
            raise ValueError("fanout must be >= 2")


#: default shapes: 256/16 for integer sequences, 8192/16 for bit sequences
INT_CONFIG = SpsiConfig(256, 16)
BIT_CONFIG = SpsiConfig(8192, 16)


class _Node:
    __slots__ = ("children", "cum_counts", "cum_sums")

    def __init__(self, children, cum_counts, cum_sums):
        self.children = children
        self.cum_counts = cum_counts
        self.cum_sums = cum_sums


class SpsiTree:
    """Dynamic sequence of non-negative integers with prefix-sum search."""

    def __init__(self, config=None):
        self.config = config or INT_CONFIG
        self._root = PackedBlock(self.config.max_leaf_size)
        self.m = 0
        self.total = 0
        self.allocated_bits = TREE_HEADER_BITS + LEAF_HEADER_BITS

    def __len__(self):
        return self.m

    def audit_bits(self):
        return self.allocated_bits

    # ------------------------------------------------------------------
    # queries

    def at(self, i):
        if i < 0 or i >= self.m:
            raise IndexError(f"index {i} out of range for {self.m} elements")
        node = self._root
        while node.__class__ is _Node:
            cc = node.cum_counts
            k = bisect_right(cc, i)
            if k:
                i -= cc[k - 1]
            node = node.children[k]
        return node.at(i)

    def sum(self, i):
        """Sum of the first i elements, 0 <= i <= m."""
        if i < 0 or i > self.m:
            raise IndexError(f"prefix length {i} out of range")
        if i == 0:
            return 0
        if i == self.m:
            return self.total
        node = self._root
        acc = 0
        while node.__class__ is _Node:
            cc = node.cum_counts
            k = bisect_left(cc, i)
            if cc[k] == i:
                return acc + node.cum_sums[k]
            if k:
                acc += node.cum_sums[k - 1]
                i -= cc[k - 1]
            node = node.children[k]
        return acc + node.prefix_sum(i)

    def search(self, x):
        """Smallest 0-based i with sum(i + 1) > x; raises IndexError if x >= total."""
        return self.search_cum(x)[0]

    def search_cum(self, x):
        """Like search(x) but returns (index, sum(index + 1), element at index)."""
        if x < 0 or x >= self.total:
            raise IndexError(f"search key {x} not below total {self.total}")
        node = self._root
        ibase = 0
        sbase = 0
        while node.__class__ is _Node:
            cs = node.cum_sums
            k = bisect_right(cs, x)
            if k:
                x -= cs[k - 1]
                sbase += cs[k - 1]
                ibase += node.cum_counts[k - 1]
            node = node.children[k]
        i, cum, v = node.search_cum(x)
        return ibase + i, sbase + cum, v

    def search_zero(self, x):
        """Smallest i whose prefix holds x+1 zeros; elements must all be 0/1."""
        if self.total > self.m:
            raise ValueError("search_zero requires a 0/1 sequence")
        zeros = self.m - self.total
        if x < 0 or x >= zeros:
            raise IndexError(f"zero-rank {x} not below zero count {zeros}")
        node = self._root
        ibase = 0
        while node.__class__ is _Node:
            cc = node.cum_counts
            cs = node.cum_sums
            prev = 0
            for k in range(len(cc)):  # complement counters derived on the fly
                z = cc[k] - cs[k]
                if z > x:
                    break
                prev = z
            x -= prev
            if k:
                ibase += cc[k - 1]
            node = node.children[k]
        return ibase + node.search_zero(x)

    def search_excess(self, x):
        """Smallest i with sum(i + 1) - (i + 1) > x; for sequences of gaps >= 1."""
        excess = self.total - self.m
        if x < 0 or x >= excess:
            raise IndexError(f"excess key {x} not below {excess}")
        node = self._root
        ibase = 0
        while node.__class__ is _Node:
            cc = node.cum_counts
            cs = node.cum_sums
            prev = 0
            for k in range(len(cc)):
                e = cs[k] - cc[k]
                if e > x:
                    break
                prev = e
            x -= prev
            if k:
                ibase += cc[k - 1]
            node = node.children[k]
        return ibase + node.search_excess(x)

    def to_values(self):
        """The whole sequence as a list (leaf-order walk, no per-index descents)."""
        out = []
        for leaf in self.iter_leaves():
            out.extend(leaf.values())
        return out

    def iter_leaves(self):
        stack = [self._root]
        while stack:
            node = stack.pop()
            if node.__class__ is _Node:
                stack.extend(reversed(node.children))
            else:
                yield node

    # ------------------------------------------------------------------
    # mutations

    def insert(self, i, v):
        if i < 0 or i > self.m:
            raise IndexError(f"insert position {i} out of range")
        if v < 0 or v.bit_length() > 64:
            raise ValueError("value out of range")
        mls = self.config.max_leaf_size
        fo = self.config.fanout
        root = self._root
        if root.__class__ is PackedBlock:
            if root.count == mls:
                root = self._grow_root(root, root.count, root.sum)
        elif len(root.children) == fo:
            root = self._grow_root(root, root.cum_counts[-1], root.cum_sums[-1])
        node = root
        while node.__class__ is _Node:
            cc = node.cum_counts
            cs = node.cum_sums
            k = bisect_right(cc, i)
            if k == len(cc):
                k -= 1
            base = cc[k - 1] if k else 0
            child = node.children[k]
            if child.__class__ is PackedBlock:
                if child.count == mls:
                    self._split_child(node, k)
                    child = node.children[k]
                    if i - base > child.count:
                        base += child.count
                        k += 1
                        child = node.children[k]
            elif len(child.children) == fo:
                self._split_child(node, k)
                child = node.children[k]
                if i - base > child.cum_counts[-1]:
                    base += child.cum_counts[-1]
                    k += 1
                    child = node.children[k]
            for j in range(k, len(cc)):
                cc[j] += 1
            if v:
                for j in range(k, len(cs)):
                    cs[j] += v
            i -= base
            node = child
        prev = node.alloc_words
        node.insert(i, v)
        self.allocated_bits += (node.alloc_words - prev) << 6
        self.m += 1
        self.total += v

    def update(self, i, delta):
        if i < 0 or i >= self.m:
            raise IndexError(f"index {i} out of range")
        if delta == 0:
            return
        node = self._root
        path = []
        while node.__class__ is _Node:
            cc = node.cum_counts
            k = bisect_right(cc, i)
            path.append((node, k))
            if k:
                i -= cc[k - 1]
            node = node.children[k]
        prev = node.alloc_words
        node.update(i, delta)  # validates before mutating
        self.allocated_bits += (node.alloc_words - prev) << 6
        for nd, k in path:
            cs = nd.cum_sums
            for j in range(k, len(cs)):
                cs[j] += delta
        self.total += delta

    # ------------------------------------------------------------------
    # structure maintenance

    def _grow_root(self, old_root, count, total):
        new_root = _Node([old_root], [count], [total])
        self.allocated_bits += NODE_HEADER_BITS + CHILD_ENTRY_BITS
        self._split_child(new_root, 0)
        self._root = new_root
        return new_root

    def _split_child(self, parent, k):
        child = parent.children[k]
        if child.__class__ is PackedBlock:
            lw = child.alloc_words
            right = child.split()
            self.allocated_bits += ((child.alloc_words - lw + right.alloc_words) << 6)
            self.allocated_bits += LEAF_HEADER_BITS + CHILD_ENTRY_BITS
            lcnt, lsum = child.count, child.sum
        else:
            right = self._split_node(child)
            self.allocated_bits += NODE_HEADER_BITS + CHILD_ENTRY_BITS
            lcnt, lsum = child.cum_counts[-1], child.cum_sums[-1]
        cc = parent.cum_counts
        cs = parent.cum_sums
        base = cc[k - 1] if k else 0
        sbase = cs[k - 1] if k else 0
        parent.children.insert(k + 1, right)
        cc.insert(k, base + lcnt)
        cs.insert(k, sbase + lsum)

    @staticmethod
    def _split_node(node):
        ch = node.children
        cc = node.cum_counts
        cs = node.cum_sums
        h = (len(ch) + 1) // 2
        bc = cc[h - 1]
        bs = cs[h - 1]
        right = _Node(ch[h:], [x - bc for x in cc[h:]], [x - bs for x in cs[h:]])
        del ch[h:]
        del cc[h:]
        del cs[h:]
        return right

    # ------------------------------------------------------------------
    # diagnostics

    def height(self):
        """Number of nodes on a root-to-leaf path (1 for a lone leaf)."""
        h = 1
        node = self._root
        while node.__class__ is _Node:
            h += 1
            node = node.children[0]
        return h

    def check_integrity(self):
        """Recompute every counter and invariant bottom-up; raise on mismatch."""
        mls = self.config.max_leaf_size
        fo = self.config.fanout

        def walk(node, is_root):
            if node.__class__ is PackedBlock:
                node.check(min_count=0 if is_root else mls // 2)
                return node.count, node.sum, 1, LEAF_HEADER_BITS + (node.alloc_words << 6)
            nch = len(node.children)
            assert nch <= fo, "fanout exceeded"
            assert nch >= (2 if is_root else fo // 2), "underfull node"
            cnt = tot = 0
            depth = None
            bits = NODE_HEADER_BITS + nch * CHILD_ENTRY_BITS
            for k, child in enumerate(node.children):
                c, s, d, b = walk(child, False)
                cnt += c
                tot += s
                bits += b
                assert node.cum_counts[k] == cnt, "count counter out of step"
                assert node.cum_sums[k] == tot, "sum counter out of step"
                if depth is None:
                    depth = d
                assert d == depth, "leaves at unequal depth"
            return cnt, tot, depth + 1, bits

        cnt, tot, _, bits = walk(self._root, True)
        assert cnt == self.m, f"m {self.m} != recomputed {cnt}"
        assert tot == self.total, f"total {self.total} != recomputed {tot}"
        assert bits + TREE_HEADER_BITS == self.allocated_bits, (
            f"audit {self.allocated_bits} != recomputed {bits + TREE_HEADER_BITS}"
        )
