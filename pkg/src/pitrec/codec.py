"""Pit-recoding file codec and the PITR container format.

Encoding maps each symbol of the input through the canonical shortlex
codebook for (p, l_A) and concatenates the codeword pits.  Further passes
pad the pit stream with zeros to a multiple of g = n(p, l_A), read each
g-pit block (first pit most significant) as a symbol of the full p**g
alphabet, and recode it the same way.  Because the code uses every short
word it is not prefix-free, so each pass stores its per-symbol codeword
lengths; that side channel is what makes decoding unique, and `measure`
prices it honestly next to the pit savings.

Container layout, all header integers little-endian:

    magic     4   b"PITR"
    version   1   0x01
    p         4   pit base
    l_A       4   alphabet size of the original file
    passes    1   number of recoding passes, >= 1
    per pass, in encoding order:
      g             1   pit width of one fixed-rank tuple (n, every pass)
      symbol_count  8
      pad_pits      1   zero pits appended before grouping; 0 for pass 1
      block_bytes   8   byte size of the lengths block that follows
      lengths block     length-1 per symbol, fixed max(1, ceil(log2 g))-bit
                        fields, MSB first, zero-padded to a byte boundary
    payload_pit_count  8
    packed payload        see pack_pits

Payload packing is chunked radix conversion: with m the largest exponent
where p**m <= 2**32, every full chunk of m pits becomes its value in
exactly 4 big-endian bytes; a final partial chunk of r pits becomes the
fewest B bytes with 256**B >= p**r.  Any deviation found while reading a
container raises CorruptContainer.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

from .codebook import ShortlexCoder
from .errors import (
    AlphabetTooLarge,
    AlphabetTooSmall,
    CorruptContainer,
    PassesOutOfRange,
    PitrecError,
    SymbolOutOfRange,
)
from .radix import MAX_ALPHABET, Base, CodeParams, PitString, decompose

MAGIC = b"PITR"
VERSION = 1
HEADER_BYTES = 14  # magic + version + p + l_A + pass count
PASS_FIXED_BYTES = 18  # g + symbol_count + pad_pits + block_bytes
MAX_PASSES = 255

_HEADER = struct.Struct("<4sBIIB")
_PASS_HEAD = struct.Struct("<BQBQ")
_U64 = struct.Struct("<Q")


@dataclass(frozen=True)
class SymbolFile:
    """A sequence of symbols drawn from an alphabet of l_A values."""

    l_A: int
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.l_A < 2:
            raise AlphabetTooSmall(f"alphabet needs at least 2 symbols, got {self.l_A}")
        if self.l_A > MAX_ALPHABET:
            raise AlphabetTooLarge(f"alphabet size {self.l_A} exceeds {MAX_ALPHABET}")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= self.l_A):
            raise SymbolOutOfRange(f"symbols must lie in [0, {self.l_A})")

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class PassRecord:
    """Side information for one recoding pass: everything decode needs."""

    symbol_count: int
    pad_pits: int
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if self.symbol_count != len(self.lengths):
            raise CorruptContainer(
                f"pass record claims {self.symbol_count} symbols, has {len(self.lengths)} lengths")
        if self.pad_pits < 0:
            raise CorruptContainer(f"negative pad_pits {self.pad_pits}")

    @property
    def output_pits(self) -> int:
        return sum(self.lengths)


@dataclass(frozen=True)
class PitrContainer:
    """Parsed (or freshly encoded) PITR container."""

    p: Base
    l_A: int
    pass_records: tuple[PassRecord, ...]
    payload: PitString
    payload_pit_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Base(self.p))
        object.__setattr__(self, "pass_records", tuple(self.pass_records))
        if not self.pass_records:
            raise CorruptContainer("container has no pass records")
        if len(self.pass_records) > MAX_PASSES:
            raise CorruptContainer(f"more than {MAX_PASSES} pass records")
        if self.payload.base != self.p:
            raise CorruptContainer("payload base differs from container base")
        if self.payload_pit_count != len(self.payload):
            raise CorruptContainer(
                f"payload_pit_count {self.payload_pit_count} != {len(self.payload)} digits")
        g = self.rank
        prev_out: int | None = None
        for i, rec in enumerate(self.pass_records):
            if i == 0 and rec.pad_pits != 0:
                raise CorruptContainer("pass 1 must not be padded")
            if rec.pad_pits >= g:
                raise CorruptContainer(f"pad_pits {rec.pad_pits} not below rank {g}")
            if rec.lengths and (min(rec.lengths) < 1 or max(rec.lengths) > g):
                raise CorruptContainer(f"codeword length outside [1, {g}] in pass {i + 1}")
            if i > 0 and prev_out + rec.pad_pits != g * rec.symbol_count:
                raise CorruptContainer(
                    f"pass {i + 1} consumes {g * rec.symbol_count} pits but pass {i} "
                    f"produced {prev_out} (+{rec.pad_pits} pad)")
            prev_out = rec.output_pits
        if prev_out != self.payload_pit_count:
            raise CorruptContainer(
                f"payload holds {self.payload_pit_count} pits, last pass produced {prev_out}")

    @property
    def rank(self) -> int:
        """Tuple width g shared by every pass: the rank of (p, l_A)."""
        try:
            return decompose(self.l_A, self.p).n
        except PitrecError as exc:
            raise CorruptContainer(str(exc)) from exc

    def to_bytes(self) -> bytes:
        """Serialize to the byte-exact PITR layout."""
        out = bytearray()
        out += _HEADER.pack(MAGIC, VERSION, int(self.p), self.l_A, len(self.pass_records))
        g = self.rank
        for rec in self.pass_records:
            block = _pack_lengths(rec.lengths, g)
            out += _PASS_HEAD.pack(g, rec.symbol_count, rec.pad_pits, len(block))
            out += block
        out += _U64.pack(self.payload_pit_count)
        out += _pack_digits(self.payload.digits, self.p)
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "PitrContainer":
        """Parse and fully validate a PITR container; byte-strict."""
        pos = 0

        def take(count: int, what: str) -> bytes:
            nonlocal pos
            if pos + count > len(data):
                raise CorruptContainer(f"truncated container: {what}")
            chunk = data[pos:pos + count]
            pos += count
            return chunk

        magic, version, p_raw, l_A, pass_count = _HEADER.unpack(take(_HEADER.size, "header"))
        if magic != MAGIC:
            raise CorruptContainer(f"bad magic {magic!r}")
        if version != VERSION:
            raise CorruptContainer(f"unsupported version {version}")
        try:
            params = decompose(l_A, p_raw)
        except PitrecError as exc:
            raise CorruptContainer(str(exc)) from exc
        if pass_count < 1:
            raise CorruptContainer("pass count must be >= 1")
        g = params.n
        records = []
        for i in range(pass_count):
            g_stored, symbol_count, pad_pits, block_bytes = _PASS_HEAD.unpack(
                take(_PASS_HEAD.size, f"pass {i + 1} record"))
            if g_stored != g:
                raise CorruptContainer(f"pass {i + 1} stores rank {g_stored}, expected {g}")
            if block_bytes != _lengths_block_size(symbol_count, g):
                raise CorruptContainer(f"pass {i + 1} lengths block size mismatch")
            block = take(block_bytes, f"pass {i + 1} lengths block")
            records.append(PassRecord(symbol_count, pad_pits, _unpack_lengths(block, symbol_count, g)))
        (pit_count,) = _U64.unpack(take(_U64.size, "payload pit count"))
        packed = take(_packed_size(pit_count, params.p), "packed payload")
        if pos != len(data):
            raise CorruptContainer(f"{len(data) - pos} trailing bytes after payload")
        digits = _unpack_digits(packed, pit_count, params.p)
        return cls(params.p, l_A, tuple(records), PitString(params.p, tuple(digits)), pit_count)


# -- length side channel ------------------------------------------------------

def _length_field_bits(g: int) -> int:
    return max(1, (g - 1).bit_length())


def _lengths_block_size(count: int, g: int) -> int:
    return (count * _length_field_bits(g) + 7) // 8


def _pack_lengths(lengths: tuple[int, ...], g: int) -> bytes:
    w = _length_field_bits(g)
    out = bytearray()
    acc = nbits = 0
    for ln in lengths:
        acc = (acc << w) | (ln - 1)
        nbits += w
        while nbits >= 8:
            nbits -= 8
            out.append((acc >> nbits) & 0xFF)
            acc &= (1 << nbits) - 1
    if nbits:
        out.append((acc << (8 - nbits)) & 0xFF)
    return bytes(out)


def _unpack_lengths(data: bytes, count: int, g: int) -> tuple[int, ...]:
    w = _length_field_bits(g)
    if len(data) != (count * w + 7) // 8:
        raise CorruptContainer("lengths block size mismatch")
    lengths = [0] * count
    acc = nbits = 0
    pos = 0
    for i in range(count):
        while nbits < w:
            acc = (acc << 8) | data[pos]
            pos += 1
            nbits += 8
        nbits -= w
        v = acc >> nbits
        acc &= (1 << nbits) - 1
        if v >= g:
            raise CorruptContainer(f"codeword length {v + 1} exceeds rank {g}")
        lengths[i] = v + 1
    if acc != 0:
        raise CorruptContainer("nonzero padding bits in lengths block")
    return tuple(lengths)


# -- payload packing ----------------------------------------------------------

def max_chunk_pits(p: int) -> int:
    """Largest m with p**m <= 2**32; full chunks of m pits fill 4 bytes."""
    base = Base(p)
    m, cap = 0, 1
    while cap * base <= 1 << 32:
        cap *= base
        m += 1
    return m


def _partial_bytes(p: int, r: int) -> int:
    # Fewest B with 256**B >= p**r.
    target = p**r
    b, cap = 0, 1
    while cap < target:
        cap <<= 8
        b += 1
    return b


def _packed_size(pit_count: int, p: int) -> int:
    full, r = divmod(pit_count, max_chunk_pits(p))
    return 4 * full + (_partial_bytes(p, r) if r else 0)


def _pack_digits(digits, p: int) -> bytes:
    m = max_chunk_pits(p)
    out = bytearray()
    total = len(digits)
    i = 0
    while total - i >= m:
        v = 0
        for j in range(i, i + m):
            v = v * p + digits[j]
        out += v.to_bytes(4, "big")
        i += m
    if i < total:
        v = 0
        for j in range(i, total):
            v = v * p + digits[j]
        out += v.to_bytes(_partial_bytes(p, total - i), "big")
    return bytes(out)


def _unpack_digits(data: bytes, pit_count: int, p: int) -> list[int]:
    if pit_count < 0:
        raise CorruptContainer(f"negative pit count {pit_count}")
    m = max_chunk_pits(p)
    full, r = divmod(pit_count, m)
    if len(data) != 4 * full + (_partial_bytes(p, r) if r else 0):
        raise CorruptContainer("packed payload size mismatch")
    digits = [0] * pit_count
    cap_full = p**m
    pos = idx = 0
    for _ in range(full):
        v = int.from_bytes(data[pos:pos + 4], "big")
        pos += 4
        if v >= cap_full:
            raise CorruptContainer(f"chunk value {v} not a valid {m}-pit group")
        for j in range(idx + m - 1, idx - 1, -1):
            v, digits[j] = divmod(v, p)
        idx += m
    if r:
        nb = _partial_bytes(p, r)
        v = int.from_bytes(data[pos:pos + nb], "big")
        if v >= p**r:
            raise CorruptContainer(f"chunk value {v} not a valid {r}-pit group")
        for j in range(idx + r - 1, idx - 1, -1):
            v, digits[j] = divmod(v, p)
    return digits


def pack_pits(pits: PitString) -> bytes:
    """Pack a pit string into bytes by chunked radix conversion."""
    return _pack_digits(pits.digits, pits.base)


def unpack_pits(data: bytes, pit_count: int, p: int) -> PitString:
    """Exact inverse of pack_pits for a stream of ``pit_count`` pits."""
    base = Base(p)
    return PitString(base, tuple(_unpack_digits(data, pit_count, base)))


# -- encode / decode ----------------------------------------------------------

def basic_file(l_A: int) -> SymbolFile:
    """The once-per-symbol file 0, 1, ..., l_A-1: the canonical benchmark."""
    if l_A < 2:
        raise AlphabetTooSmall(f"alphabet needs at least 2 symbols, got {l_A}")
    if l_A > MAX_ALPHABET:
        raise AlphabetTooLarge(f"alphabet size {l_A} exceeds {MAX_ALPHABET}")
    return SymbolFile(l_A, tuple(range(l_A)))


def _inner_params(p: Base, g: int) -> CodeParams:
    # Full alphabet of all g-pit blocks; decomposes to rank g exactly.
    return decompose(int(p) ** g, p)


def encode(file: SymbolFile, p: int, passes: int = 1) -> PitrContainer:
    """Apply pit recoding ``passes`` times and bundle the result.

    Pass 1 recodes symbols of the file's alphabet; every later pass
    zero-pads the pit stream to a multiple of g, groups it into g-pit
    blocks and recodes those as symbols of the full p**g alphabet.
    """
    base = Base(p)
    if not 1 <= passes <= MAX_PASSES:
        raise PassesOutOfRange(f"passes must be in [1, {MAX_PASSES}], got {passes}")
    params = decompose(file.l_A, base)
    g = params.n
    pits, lengths = ShortlexCoder(params).encode_symbols(file.symbols)
    records = [PassRecord(len(file.symbols), 0, tuple(lengths))]
    for _ in range(passes - 1):
        pad = (-len(pits)) % g
        if pad:
            pits.extend([0] * pad)
        coder = ShortlexCoder(_inner_params(base, g))
        word = coder.word
        out: list[int] = []
        lengths = []
        for i in range(0, len(pits), g):
            v = 0
            for j in range(i, i + g):
                v = v * base + pits[j]
            w = word(v)
            lengths.append(len(w))
            out.extend(w)
        records.append(PassRecord(len(lengths), pad, tuple(lengths)))
        pits = out
    return PitrContainer(base, file.l_A, tuple(records),
                         PitString(base, tuple(pits)), len(pits))


def _split_decode(pits: list[int], lengths: tuple[int, ...], coder: ShortlexCoder) -> list[int]:
    # Cut the stream at the recorded lengths and invert each codeword.
    if sum(lengths) != len(pits):
        raise CorruptContainer("pit count does not match recorded lengths")
    p = coder.p
    out = [0] * len(lengths)
    pos = 0
    for i, ln in enumerate(lengths):
        v = 0
        for j in range(pos, pos + ln):
            v = v * p + pits[j]
        pos += ln
        s = coder.symbol(ln, v)
        if s is None:
            raise CorruptContainer(f"codeword of length {ln} and value {v} was never assigned")
        out[i] = s
    return out


def decode(container: PitrContainer) -> SymbolFile:
    """Reverse every pass, newest first; exact inverse of encode."""
    base = container.p
    params = decompose(container.l_A, base)
    g = params.n
    pits = list(container.payload.digits)
    for idx in range(len(container.pass_records) - 1, 0, -1):
        rec = container.pass_records[idx]
        values = _split_decode(pits, rec.lengths, ShortlexCoder(_inner_params(base, g)))
        pits = [0] * (g * len(values))
        pos = 0
        for v in values:
            for j in range(pos + g - 1, pos - 1, -1):
                v, pits[j] = divmod(v, base)
            pos += g
        if rec.pad_pits:
            cut = len(pits) - rec.pad_pits
            if any(pits[cut:]):
                raise CorruptContainer("padding pits are not zero")
            del pits[cut:]
    symbols = _split_decode(pits, container.pass_records[0].lengths, ShortlexCoder(params))
    return SymbolFile(container.l_A, tuple(symbols))


# -- size accounting ----------------------------------------------------------

@dataclass(frozen=True)
class PassMeasure:
    """Cost breakdown of one pass: pit output vs side-channel bytes."""

    index: int
    g: int
    symbol_count: int
    pad_pits: int
    output_pits: int
    lengths_block_bytes: int
    record_bytes: int
    ratio: Fraction | None  # output pits / (g * symbol_count)


@dataclass(frozen=True)
class MeasureReport:
    """Container-level sizes; makes the side-channel cost explicit."""

    passes: tuple[PassMeasure, ...]
    header_bytes: int
    side_channel_bytes: int
    payload_bytes: int
    container_bytes: int
    payload_pits: int
    pit_ratio: Fraction | None  # pass-1 ratio: recoded pits over n * symbols


def measure(container: PitrContainer) -> MeasureReport:
    """Per-pass and total size report for an encoded container."""
    g = container.rank
    rows = []
    side = HEADER_BYTES
    for i, rec in enumerate(container.pass_records):
        block = _lengths_block_size(rec.symbol_count, g)
        record = PASS_FIXED_BYTES + block
        side += record
        out_pits = rec.output_pits
        ratio = Fraction(out_pits, g * rec.symbol_count) if rec.symbol_count else None
        rows.append(PassMeasure(i + 1, g, rec.symbol_count, rec.pad_pits,
                                out_pits, block, record, ratio))
    payload_bytes = _U64.size + _packed_size(container.payload_pit_count, container.p)
    return MeasureReport(
        passes=tuple(rows),
        header_bytes=HEADER_BYTES,
        side_channel_bytes=side,
        payload_bytes=payload_bytes,
        container_bytes=side + payload_bytes,
        payload_pits=container.payload_pit_count,
        pit_ratio=rows[0].ratio,
    )


# -- byte-file adapter ---------------------------------------------------------

def symbol_byte_width(l_A: int) -> int:
    """Bytes per symbol when a file of this alphabet is stored on disk."""
    return max(1, ((l_A - 1).bit_length() + 7) // 8)


def bytes_to_symbols(data: bytes, l_A: int) -> SymbolFile:
    """Read raw bytes as little-endian fixed-width symbols of alphabet l_A."""
    width = symbol_byte_width(l_A)
    if len(data) % width:
        raise ValueError(
            f"input length {len(data)} is not a multiple of the {width}-byte symbol width")
    if width == 1:
        return SymbolFile(l_A, tuple(data))
    symbols = tuple(
        int.from_bytes(data[i:i + width], "little") for i in range(0, len(data), width)
    )
    return SymbolFile(l_A, symbols)


def symbols_to_bytes(file: SymbolFile) -> bytes:
    """Inverse of bytes_to_symbols."""
    width = symbol_byte_width(file.l_A)
    if width == 1:
        return bytes(file.symbols)
    return b"".join(s.to_bytes(width, "little") for s in file.symbols)
