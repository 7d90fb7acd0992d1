"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines
and timings.  Tolerances and runtime budgets are pinned here, not tuned.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

import pitrec.metrics as metrics
from pitrec.codec import (
    PitrContainer,
    SymbolFile,
    basic_file,
    decode,
    encode,
    max_chunk_pits,
    pack_pits,
    symbol_byte_width,
    unpack_pits,
)
from pitrec.radix import Base, CodeParams, PitString, decompose

SEED = 20260810


@contextmanager
def criterion(cid, description, budget=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {cid} FAIL  {description}")
        raise
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        print(f"\nACCEPTANCE {cid} FAIL  {description} (runtime {elapsed:.2f}s over {budget:.0f}s budget)")
        raise AssertionError(f"{cid} exceeded its runtime budget: {elapsed:.2f}s > {budget}s")
    print(f"\nACCEPTANCE {cid} PASS  {description} ({elapsed:.2f}s)")


def test_c1_reference_table_reproduction():
    expected = {2: "0.76", 3: "0.72", 4: "0.89", 6: "0.7",
                13: "0.74", 15: "0.67", 16: "0.97", 256: "1"}
    with criterion("C1", "k_min for l_A=256 matches all 8 reference values within 0.0075",
                   budget=1.0):
        rows = metrics.reference_rows()
        assert [row.p for row in rows] == list(expected)
        for row in rows:
            assert row.reference == Fraction(expected[row.p])
            assert row.delta <= Fraction(75, 10000), (row.p, row.computed)
        # the widest gap is the truncated 0.74 entry at p=13
        worst = max(rows, key=lambda r: r.delta)
        assert worst.p == 13 and worst.computed == Fraction(573, 768)


def test_c2_closed_form_equals_greedy_for_every_remainder():
    chunk = 1 << 22
    with criterion("C2", "l2 closed form == greedy oracle for all 47,260,120 cases "
                         "(p in [2,16], n in [1,6], every valid d)", budget=30.0):
        rng = random.Random(SEED)
        total = 0
        for p in range(2, 17):
            # cums[j] = symbols coverable by lengths <= j; ksum[j] = their pit total
            cums = np.zeros(7, dtype=np.int64)
            ksum = np.zeros(7, dtype=np.int64)
            for k in range(1, 7):
                cums[k] = cums[k - 1] + p**k
                ksum[k] = ksum[k - 1] + k * p**k
            for n in range(1, 7):
                s = metrics.s_value(p, n)
                a0 = metrics.l2_case_a(p, n, 0)
                slope_a = metrics.l2_case_a(p, n, 1) - a0
                b0 = metrics.l2_case_b(p, n, 0)
                slope_b = metrics.l2_case_b(p, n, 1) - b0
                low = p ** (n - 1)
                dmax = low * (p - 1)
                for start in range(1, dmax + 1, chunk):
                    d = np.arange(start, min(start + chunk, dmax + 1), dtype=np.int64)
                    closed = np.where(d < s, a0 + slope_a * d, b0 + slope_b * d)
                    l_A = d + low
                    j = np.searchsorted(cums[: n + 1], l_A, side="left") - 1
                    greedy = ksum[j] + (j + 1) * (l_A - cums[j])
                    assert np.array_equal(closed, greedy)
                total += dmax
                # anchor the vectorized forms to the scalar library functions
                for _ in range(40):
                    d = rng.randint(1, dmax)
                    params = CodeParams(Base(p), low + d, n, d)
                    vec = a0 + slope_a * d if d < s else b0 + slope_b * d
                    assert metrics.l2_closed(params) == vec
                    assert metrics.l2_oracle_greedy(params) == vec
        assert total == 47_260_120


def test_c3_boundary_and_full_alphabet_identities():
    with criterion("C3", "case branches agree at d = S; full-alphabet k_min identities hold"):
        for p in range(2, 17):
            for n in range(2, 7):
                s = metrics.s_value(p, n)
                assert metrics.l2_case_a(p, n, s) == metrics.l2_case_b(p, n, s)
            for n in range(1, 7):
                full = metrics.l2_full(p, n)
                assert metrics.kmin_full_closed(p, n) == Fraction(full, n * p**n)
                assert full == metrics.l2_closed(decompose(p**n, p))
        assert metrics.kmin_full_closed(2, 2) == Fraction(3, 4)


def test_c4_greedy_fill_is_optimal():
    with criterion("C4", "greedy total equals the exhaustive minimum for p in [2,5], "
                         "l_A in [2,6]", budget=10.0):
        for p in range(2, 6):
            for l_A in range(2, 7):
                params = decompose(l_A, p)
                assert metrics.l2_oracle_exhaustive(params) == metrics.l2_oracle_greedy(params)


def test_c5_constructive_recoding_reaches_the_limit():
    pairs = [(p, 256) for p in (2, 3, 13, 15, 16, 255, 256)]
    pairs += [(p, l_A) for p in (2, 3) for l_A in (4, 27, 1000)]
    with criterion("C5", "payload pit count of the encoded once-per-symbol file equals "
                         "the closed-form L2 on all 13 pairs"):
        for p, l_A in pairs:
            container = encode(basic_file(l_A), p, 1)
            assert container.payload_pit_count == metrics.l2_closed(decompose(l_A, p)), (p, l_A)


def test_c6_codec_roundtrip_randomized():
    bases = (2, 3, 5, 13, 15, 16, 255)
    alphabets = (4, 27, 256, 1000)
    files = 1000
    with criterion("C6", f"decode(encode(f)) == f for {files} randomized files up to 64 KiB",
                   budget=60.0):
        rng = random.Random(SEED)
        for i in range(files):
            p = bases[rng.randrange(len(bases))]
            l_A = alphabets[rng.randrange(len(alphabets))]
            passes = 1 + i % 3
            if i == 0:
                l_A, size = 256, 65536  # exactly 64 KiB of one-byte symbols
            elif i == 1:
                size = 0
            else:
                roll = rng.random()
                if roll < 0.85:
                    size = rng.randrange(0, 1024)
                elif roll < 0.97:
                    size = rng.randrange(1024, 16384)
                else:
                    size = rng.randrange(16384, 65537)
            size = min(size, 65536 // symbol_byte_width(l_A))  # stay within 64 KiB on disk
            f = SymbolFile(l_A, tuple(rng.randrange(l_A) for _ in range(size)))
            container = PitrContainer.from_bytes(encode(f, p, passes).to_bytes())
            assert decode(container) == f, (p, l_A, passes, size)


def test_c7_global_optimum_for_byte_alphabet():
    with criterion("C7", "optimal base for l_A=256 is p=255 at 257/512; "
                         "k_min == (512-p)/512 for all p in [16,255]"):
        assert metrics.optimal_base(256) == (Base(255), Fraction(257, 512))
        for p in range(16, 256):
            assert metrics.report(decompose(256, p)).k_min == Fraction(512 - p, 512)


def test_c8_packing_is_invertible():
    bases = (2, 3, 10, 255, 65535)
    per_base = 2000
    with criterion("C8", f"unpack(pack(s)) == s on {per_base * len(bases)} random pit streams"):
        rng = random.Random(SEED)
        for p in bases:
            m = max_chunk_pits(p)
            for _ in range(per_base):
                count = rng.randrange(0, 3 * m + 5)
                s = PitString(Base(p), tuple(rng.randrange(p) for _ in range(count)))
                assert unpack_pits(pack_pits(s), count, p) == s
