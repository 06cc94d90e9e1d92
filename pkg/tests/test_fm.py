import itertools
import random

import pytest

from dynstr import TERMINATOR, DynamicBwt, FmIndex

from helpers import count_occurrences, find_occurrences, naive_bwt


def bwt_of(text, mode="wavelet"):
    b = DynamicBwt(mode)
    for pos in range(len(text) - 1, -1, -1):
        b.extend_left(text[pos])
    return b


def fmi_of(text, mode="wavelet", k=4):
    f = FmIndex(mode=mode, k=k)
    for pos in range(len(text) - 1, -1, -1):
        f.extend_left(text[pos])
    return f


def test_single_extension():
    b = DynamicBwt("wavelet")
    b.extend_left(ord("a"))
    assert b.to_list() == naive_bwt(b"a")
    # iterating LF from the terminator row spells the text
    row = b.lf(b.term_pos)
    assert b.access(row) == ord("a")


@pytest.mark.parametrize("mode", ["wavelet", "rle"])
def test_mississippi_stepwise(mode):
    text = b"mississippi"
    b = DynamicBwt(mode)
    for pos in range(len(text) - 1, -1, -1):
        b.extend_left(text[pos])
        assert b.to_list() == naive_bwt(text[pos:])
    assert b.to_list() == naive_bwt(text)


def test_lf_is_permutation():
    b = bwt_of(b"mississippi")
    rows = b.rows
    seen = {b.lf(i) for i in range(rows)}
    assert seen == set(range(rows))


def test_lf_walk_spells_reversed_text():
    text = b"alabama"
    b = bwt_of(text)
    out = []
    i = b.lf(b.term_pos)  # row 0: the rotation starting with the terminator
    assert i == 0
    for _ in range(len(text)):
        out.append(b.access(i))
        i = b.lf(i)
    assert bytes(reversed(out)) == text


def test_lf_on_length_one():
    b = DynamicBwt("wavelet")
    b.extend_left(ord("x"))
    assert b.lf(b.term_pos) == 0


def test_lf_matches_rotation_matrix():
    rng = random.Random(83)
    for _ in range(30):
        n = rng.randint(1, 12)
        text = bytes(rng.choice(b"abc") for _ in range(n))
        b = bwt_of(text)
        t = list(text) + [TERMINATOR]
        rots = sorted(range(len(t)), key=lambda i: t[i:] + t[:i])
        # naive LF: row of rotation j maps to the row of rotation j-1
        row_of = {j: i for i, j in enumerate(rots)}
        for i, j in enumerate(rots):
            assert b.lf(i) == row_of[(j - 1) % len(t)]


@pytest.mark.parametrize("mode", ["wavelet", "rle"])
def test_exhaustive_small_alphabet(mode):
    for n in range(1, 8):
        for tup in itertools.product(b"abc", repeat=n):
            text = bytes(tup)
            assert bwt_of(text, mode).to_list() == naive_bwt(text)


def test_count_basic():
    f = fmi_of(b"mississippi")
    assert f.count(b"ssi") == 2
    assert f.count(b"mississippi") == 1
    assert f.count(b"zz") == 0
    with pytest.raises(ValueError):
        f.count(b"")


def test_locate_basic():
    f = fmi_of(b"mississippi")
    assert f.locate(b"si") == [3, 6]
    assert f.locate(b"zq") == []
    assert f.locate(b"i") == [1, 4, 7, 10]


@pytest.mark.parametrize("mode", ["wavelet", "rle"])
@pytest.mark.parametrize("k", [1, 2, 4, 16])
def test_count_locate_random(mode, k):
    rng = random.Random(100 * k + (mode == "rle"))
    text = bytes(rng.choice(b"abcd") for _ in range(400))
    f = fmi_of(text, mode, k)
    for _ in range(40):
        plen = rng.randint(1, 8)
        if rng.random() < 0.8:
            start = rng.randrange(len(text) - plen)
            pat = text[start : start + plen]
        else:
            pat = bytes(rng.choice(b"abcd") for _ in range(plen))
        assert f.count(pat) == count_occurrences(text, pat)
        assert f.locate(pat) == find_occurrences(text, pat)


def test_count_equals_locate_len():
    rng = random.Random(89)
    text = bytes(rng.choice(b"ab") for _ in range(300))
    f = fmi_of(text, k=3)
    for plen in (1, 2, 3, 5):
        pat = bytes(rng.choice(b"ab") for _ in range(plen))
        occ = f.locate(pat)
        assert f.count(pat) == len(occ)
        assert occ == sorted(set(occ))


def test_k1_every_row_sampled():
    text = b"bananaban"
    f = fmi_of(text, k=1)
    assert f.locate(b"an") == find_occurrences(text, b"an")
    assert f._samples.m == f._marks.rank(len(f._marks), 1) if hasattr(f._marks, "rank") else True


def test_count_after_every_extension():
    rng = random.Random(97)
    text = bytes(rng.choice(b"abcd") for _ in range(200))
    f = FmIndex(mode="wavelet", k=4)
    pat = b"ab"
    for pos in range(len(text) - 1, -1, -1):
        f.extend_left(text[pos])
        assert f.count(pat) == count_occurrences(text[pos:], pat)


def test_inadmissible_character_counts_zero():
    f = fmi_of(b"abab")
    assert f.count(b"a\xffb") == 0
    assert f.count(bytes([255])) == 0


def test_sample_rate_audit_monotonicity():
    rng = random.Random(101)
    text = bytes(rng.choice(b"abcd") for _ in range(2000))
    audits = []
    for k in (1, 2, 4, 8):
        f = fmi_of(text, "wavelet", k)
        audits.append(f.audit_bits())
        assert f.locate(b"ab") == find_occurrences(text, b"ab")
    assert all(a > b for a, b in zip(audits, audits[1:]))


def test_rle_fmi_space_envelope():
    import math

    rng = random.Random(103)
    block = bytes(rng.choice(b"abcde") for _ in range(50))
    text = bytearray(block * 400)
    for _ in range(100):
        text[rng.randrange(len(text))] = rng.choice(b"abcde")
    text = bytes(text)
    n = len(text)
    k = 16
    f = fmi_of(text, "rle", k)
    out = f.bwt.to_list()
    r = sum(1 for a, b in zip(out, out[1:]) if a != b) + 1
    sigma = 5
    envelope = (
        r
        * (
            4 * math.log2(n / r)
            + math.log2(sigma)
            + 4 * math.log2(math.log2(r))
            + 8 * math.log2(n) / math.log2(r)
        )
        * 1.5
        + 64 * sigma * math.log2(n)
        + 257 * 64  # first column: cumulative counts over the full byte domain
        + (n / k + 1) * 64
    )
    assert f.audit_bits() <= envelope


def test_bwt_readout_has_one_terminator():
    b = bwt_of(b"abcabc")
    out = b.to_list()
    assert out.count(TERMINATOR) == 1
    assert sorted(x for x in out if x != TERMINATOR) == sorted(b"abcabc")
