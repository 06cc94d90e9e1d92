"""Command-line front end: bwt/unbwt/lz77/unlz77 transforms and a bench harness.

File formats:
  BWT files escape on byte 0x00: the terminator is written as 0x00 0x00
  and a literal zero byte as 0x00 0x01, so arbitrary binary inputs work.
  LZ77 files are UTF-8 text, one "source,length,next" triple per line
  ("-" for a null source, next as a decimal byte), trailing newline
  required.

Exit codes: 0 ok, 1 missing input/unknown structure, 2 empty input,
3 malformed input. Transform commands print key=value metric lines
(peak_audit_bits, wall_time_s) on standard error. The bench command
draws everything from random.Random(seed) (Mersenne Twister), so a fixed
seed reproduces the same structures and query mix on any platform.
"""

import argparse
import csv
import io
import random
import sys
import time

from .bitvector import GapBitvector, SuccinctBitvector
from .compress import (
    TERMINATOR,
    Lz77Factor,
    build_bwt,
    invert_bwt_compressed,
    lz77_decode,
    lz77_factorize,
)
from .rle import RleString
from .spsi import SpsiTree
from .wavelet import WaveletString

BENCH_STRUCTURES = ("gap_bv", "suc_bv", "spsi", "wt_str", "rle_str")
CSV_HEADER = ["structure", "n", "density", "op", "mean_ns", "ops_measured", "audit_bits", "seed"]


def encode_bwt_file(symbols):
    out = bytearray()
    for s in symbols:
        if s == TERMINATOR:
            out += b"\x00\x00"
        elif s == 0:
            out += b"\x00\x01"
        else:
            out.append(s)
    return bytes(out)


def decode_bwt_file(data):
    out = []
    terms = 0
    i = 0
    while i < len(data):
        b = data[i]
        if b == 0:
            if i + 1 >= len(data):
                raise ValueError("truncated escape at end of file")
            nxt = data[i + 1]
            if nxt == 0:
                out.append(TERMINATOR)
                terms += 1
            elif nxt == 1:
                out.append(0)
            else:
                raise ValueError(f"bad escape byte {nxt} at offset {i + 1}")
            i += 2
        else:
            out.append(b)
            i += 1
    if terms != 1:
        raise ValueError(f"expected exactly one terminator, found {terms}")
    return out


def format_factors(factors):
    lines = []
    for f in factors:
        src = "-" if f.source is None else str(f.source)
        lines.append(f"{src},{f.length},{f.next}")
    return "\n".join(lines) + "\n"


def parse_factors(text):
    factors = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected source,length,next")
        src_s, len_s, next_s = parts
        try:
            source = None if src_s == "-" else int(src_s)
            length = int(len_s)
            nxt = int(next_s)
            factors.append(Lz77Factor(source, length, nxt))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return factors


def _read_input(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror}", file=sys.stderr)
        return None, 1
    if not data:
        print(f"error: {path} is empty", file=sys.stderr)
        return None, 2
    return data, 0


def _metrics(peak_bits, started):
    print(f"peak_audit_bits={peak_bits}", file=sys.stderr)
    print(f"wall_time_s={time.perf_counter() - started:.3f}", file=sys.stderr)


def cmd_bwt(args):
    data, rc = _read_input(args.input)
    if rc:
        return rc
    started = time.perf_counter()
    stats = {}
    bwt = build_bwt(data, mode=args.mode, stats=stats)
    with open(args.output, "wb") as fh:
        fh.write(encode_bwt_file(bwt))
    _metrics(stats["peak_audit_bits"], started)
    return 0


def cmd_unbwt(args):
    data, rc = _read_input(args.input)
    if rc:
        return rc
    started = time.perf_counter()
    try:
        symbols = decode_bwt_file(data)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    stats = {}
    text = invert_bwt_compressed(symbols, stats=stats)
    with open(args.output, "wb") as fh:
        fh.write(text)
    _metrics(stats["peak_audit_bits"], started)
    return 0


def cmd_lz77(args):
    data, rc = _read_input(args.input)
    if rc:
        return rc
    started = time.perf_counter()
    stats = {}
    factors = lz77_factorize(data, stats=stats)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(format_factors(factors))
    _metrics(stats["peak_audit_bits"], started)
    return 0


def cmd_unlz77(args):
    data, rc = _read_input(args.input)
    if rc:
        return rc
    started = time.perf_counter()
    try:
        factors = parse_factors(data.decode("utf-8"))
        text = lz77_decode(factors)
    except (ValueError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    with open(args.output, "wb") as fh:
        fh.write(text)
    print(f"wall_time_s={time.perf_counter() - started:.3f}", file=sys.stderr)
    return 0


# ----------------------------------------------------------------------
# bench

def _build_structure(name, n, density, rng):
    if name in ("gap_bv", "suc_bv"):
        bv = GapBitvector() if name == "gap_bv" else SuccinctBitvector()
        for size in range(n):
            bv.insert(rng.randint(0, size), 1 if rng.random() < density else 0)
        return bv
    if name == "spsi":
        vmax = max(2, round(1 / density)) if density > 0 else 2
        t = SpsiTree()
        for size in range(n):
            t.insert(rng.randint(0, size), rng.randrange(vmax))
        return t
    sigma = max(2, min(256, round(1 / density))) if density > 0 else 2
    s = WaveletString() if name == "wt_str" else RleString()
    for size in range(n):
        s.insert(rng.randint(0, size), rng.randrange(sigma))
    return s


def _time_ops(fn, queries):
    if not queries:
        return 0, 0
    t0 = time.perf_counter_ns()
    for q in queries:
        fn(q)
    t1 = time.perf_counter_ns()
    return (t1 - t0) // len(queries), len(queries)


def _bench_queries(structure, name, n, ops, rng):
    """Yield (op_name, mean_ns, measured) rows for the structure's op mix."""
    rows = []
    if name in ("gap_bv", "suc_bv"):
        bv = structure
        ones = bv.ones
        zeros = len(bv) - ones
        pos = [rng.randrange(len(bv)) for _ in range(ops)]
        rows.append(("access", *_time_ops(bv.access, pos)))
        pre = [rng.randint(0, len(bv)) for _ in range(ops)]
        rows.append(("rank0", *_time_ops(lambda i: bv.rank(i, 0), pre)))
        rows.append(("rank1", *_time_ops(lambda i: bv.rank(i, 1), pre)))
        sel0 = [rng.randrange(zeros) for _ in range(ops)] if zeros else []
        rows.append(("select0", *_time_ops(lambda j: bv.select(j, 0), sel0)))
        sel1 = [rng.randrange(ones) for _ in range(ops)] if ones else []
        rows.append(("select1", *_time_ops(lambda j: bv.select(j, 1), sel1)))
        ins = [(rng.randint(0, len(bv) + t), rng.randint(0, 1)) for t in range(ops)]
        rows.append(("insert", *_time_ops(lambda iv: bv.insert(*iv), ins)))
    elif name == "spsi":
        t = structure
        pos = [rng.randrange(t.m) for _ in range(ops)]
        rows.append(("access", *_time_ops(t.at, pos)))
        pre = [rng.randint(0, t.m) for _ in range(ops)]
        rows.append(("sum", *_time_ops(t.sum, pre)))
        keys = [rng.randrange(t.total) for _ in range(ops)] if t.total else []
        rows.append(("search", *_time_ops(t.search, keys)))
        ins = [(rng.randint(0, t.m + i), rng.randrange(64)) for i in range(ops)]
        rows.append(("insert", *_time_ops(lambda iv: t.insert(*iv), ins)))
    else:
        s = structure
        syms = sorted({s.access(rng.randrange(len(s))) for _ in range(32)})
        pos = [rng.randrange(len(s)) for _ in range(ops)]
        rows.append(("access", *_time_ops(s.access, pos)))
        rk = [(rng.randint(0, len(s)), rng.choice(syms)) for _ in range(ops)]
        rows.append(("rank", *_time_ops(lambda ic: s.rank(*ic), rk)))
        sel = []
        for _ in range(ops):
            c = rng.choice(syms)
            total = s.rank(len(s), c)
            if total:
                sel.append((rng.randrange(total), c))
        rows.append(("select", *_time_ops(lambda jc: s.select(*jc), sel)))
        ins = [(rng.randint(0, len(s) + i), rng.choice(syms)) for i in range(ops)]
        rows.append(("insert", *_time_ops(lambda ic: s.insert(*ic), ins)))
    return rows


def cmd_bench(args):
    if args.structure not in BENCH_STRUCTURES:
        print(f"error: unknown structure {args.structure!r}", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    structure = _build_structure(args.structure, args.n, args.density, rng)
    rows = _bench_queries(structure, args.structure, args.n, args.ops, rng)
    audit = structure.audit_bits() if args.structure != "spsi" else structure.allocated_bits
    if args.csv == "-":
        _write_csv(sys.stdout, args, rows, audit, header=True)
    else:
        try:
            with open(args.csv, "x", newline="") as fh:
                _write_csv(fh, args, rows, audit, header=True)
        except FileExistsError:
            with open(args.csv, "a", newline="") as fh:
                _write_csv(fh, args, rows, audit, header=False)
    return 0


def _write_csv(fh, args, rows, audit, header):
    w = csv.writer(fh)
    if header:
        w.writerow(CSV_HEADER)
    for op, mean_ns, measured in rows:
        w.writerow([args.structure, args.n, args.density, op, mean_ns, measured, audit, args.seed])


# ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="dynstr", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bwt", help="Burrows-Wheeler transform of a file")
    b.add_argument("input")
    b.add_argument("output")
    b.add_argument("--mode", choices=("rle", "wavelet"), default="rle",
                   help="working structure for the transform (output is identical)")
    b.set_defaults(fn=cmd_bwt)

    u = sub.add_parser("unbwt", help="invert a BWT file")
    u.add_argument("input")
    u.add_argument("output")
    u.set_defaults(fn=cmd_unbwt)

    l = sub.add_parser("lz77", help="LZ77 factorization of a file")
    l.add_argument("input")
    l.add_argument("output")
    l.set_defaults(fn=cmd_lz77)

    d = sub.add_parser("unlz77", help="decode an LZ77 factor file")
    d.add_argument("input")
    d.add_argument("output")
    d.set_defaults(fn=cmd_unlz77)

    n = sub.add_parser("bench", help="time one structure's op mix, append CSV")
    n.add_argument("--structure", required=True,
                   help="one of " + "|".join(BENCH_STRUCTURES))
    n.add_argument("--n", type=int, default=100_000, help="inserts used to build")
    n.add_argument("--density", type=float, default=0.5,
                   help="bit density; 1/density sizes values/alphabets otherwise")
    n.add_argument("--ops", type=int, default=10_000, help="queries per op kind")
    n.add_argument("--seed", type=int, default=42)
    n.add_argument("--csv", default="-", help="CSV path to append to ('-' = stdout)")
    n.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
