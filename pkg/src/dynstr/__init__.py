"""Dynamic succinct and compressed data structures for string manipulation.

Everything reduces to one searchable partial-sum tree with inserts:
bitvectors (gap-encoded and succinct), dynamic strings (wavelet and
run-length compressed), a dynamic BWT with left-extension, and an
FM-index with suffix-position sampling. On top sit whole-text transforms
(BWT, LZ77) that work in compressed space, a CLI, and an allocated-bits
audit that every structure maintains.
"""

from .bitvector import GapBitvector, SuccinctBitvector
from .codes import PrefixCode, gamma_code
from .compress import (
    Lz77Factor,
    build_bwt,
    invert_bwt,
    invert_bwt_compressed,
    lz77_decode,
    lz77_factorize,
)
from .fm import TERMINATOR, DynamicBwt, FmIndex
from .packed_block import PackedBlock, bitsize
from .rle import RleString
from .spsi import BIT_CONFIG, INT_CONFIG, SpsiConfig, SpsiTree
from .wavelet import WaveletString

__version__ = "0.1.0"

__all__ = [
    "BIT_CONFIG",
    "INT_CONFIG",
    "DynamicBwt",
    "FmIndex",
    "GapBitvector",
    "Lz77Factor",
    "PackedBlock",
    "PrefixCode",
    "RleString",
    "SpsiConfig",
    "SpsiTree",
    "SuccinctBitvector",
    "TERMINATOR",
    "WaveletString",
    "bitsize",
    "build_bwt",
    "gamma_code",
    "invert_bwt",
    "invert_bwt_compressed",
    "lz77_decode",
    "lz77_factorize",
]
