"""Canonical pit recoding: fixed-rank symbols onto shortest variable codewords.

Symbol ``i`` receives the ``i``-th codeword in shortlex order, so all p
length-1 words are handed out first, then the p**2 length-2 words, and so
on up to length n.  The map is injective by construction, reconstructible
from (p, l_A) alone, and its total length over a once-per-symbol file is
the exact minimum over all injective assignments into words of length <= n.

The assignment deliberately uses *every* short word, so it is not
prefix-free; decodability is the codec's job (it carries codeword lengths
out of band).
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass

from .errors import SymbolOutOfRange
from .radix import CodeParams, PitString, shortlex_codewords

# A codeword is simply a pit string of length 1..n.
Codeword = PitString


@dataclass(frozen=True)
class Codebook:
    """Materialized symbol -> codeword table for one parameter set."""

    params: CodeParams
    words: tuple[Codeword, ...]

    def __post_init__(self) -> None:
        if len(self.words) != self.params.l_A:
            raise ValueError(f"expected {self.params.l_A} codewords, got {len(self.words)}")
        lengths = [len(w) for w in self.words]
        if lengths and (min(lengths) < 1 or max(lengths) > self.params.n):
            raise ValueError(f"codeword length outside [1, {self.params.n}]")


def build_codebook(params: CodeParams) -> Codebook:
    """Assign the l_A shortest codewords, in shortlex order, to symbols 0..l_A-1."""
    return Codebook(params, tuple(shortlex_codewords(params.p, params.l_A, params.n)))


def codeword_of(book: Codebook, symbol: int) -> Codeword:
    """Codeword stored for ``symbol``."""
    if not 0 <= symbol < book.params.l_A:
        raise SymbolOutOfRange(f"symbol {symbol} outside [0, {book.params.l_A})")
    return book.words[symbol]


def length_histogram(book: Codebook) -> dict[int, int]:
    """Map codeword length -> number of symbols using that length."""
    return dict(Counter(len(w) for w in book.words))


class ShortlexCoder:
    """Arithmetic form of the shortlex assignment for one parameter set.

    Produces exactly the same symbol <-> codeword map as indexing
    ``build_codebook(params).words`` but never materializes more than
    ``_TABLE_LIMIT`` words, so it also serves the inner recoding passes
    whose alphabets of p**g symbols can be far too large to enumerate.
    """

    # Above this alphabet size, fall back to per-symbol arithmetic.
    _TABLE_LIMIT = 1 << 16

    __slots__ = ("params", "p", "n", "_cums", "_table")

    def __init__(self, params: CodeParams):
        self.params = params
        self.p = int(params.p)
        self.n = params.n
        # _cums[k] = number of symbols whose codeword has length <= k
        cums = [0]
        cap = 1
        for _ in range(params.n):
            cap *= self.p
            nxt = min(cums[-1] + cap, params.l_A)
            cums.append(nxt)
            if nxt == params.l_A:
                break
        self._cums = cums
        self._table: list[tuple[int, ...]] | None = None
        if params.l_A <= self._TABLE_LIMIT:
            table = []
            for k in range(1, len(cums)):
                for v in range(cums[k] - cums[k - 1]):
                    digits = [0] * k
                    for i in range(k - 1, -1, -1):
                        v, digits[i] = divmod(v, self.p)
                    table.append(tuple(digits))
            self._table = table

    def word(self, symbol: int) -> tuple[int, ...]:
        """Digits of the codeword assigned to ``symbol``."""
        if not 0 <= symbol < self.params.l_A:
            raise SymbolOutOfRange(f"symbol {symbol} outside [0, {self.params.l_A})")
        if self._table is not None:
            return self._table[symbol]
        cums = self._cums
        k = bisect_right(cums, symbol)
        v = symbol - cums[k - 1]
        digits = [0] * k
        for i in range(k - 1, -1, -1):
            v, digits[i] = divmod(v, self.p)
        return tuple(digits)

    def symbol(self, length: int, value: int) -> int | None:
        """Symbol owning the length-``length`` codeword of the given value.

        Returns None when no symbol was assigned that word (value past the
        used portion of that length, or length beyond the longest used).
        """
        cums = self._cums
        if not 1 <= length < len(cums) or value < 0:
            return None
        s = cums[length - 1] + value
        if s >= cums[length]:
            return None
        return s

    def encode_symbols(self, symbols) -> tuple[list[int], list[int]]:
        """Concatenate the codewords of ``symbols``; symbols must be in range.

        Returns (pit digits, per-symbol codeword lengths).
        """
        pits: list[int] = []
        lengths: list[int] = []
        table = self._table
        if table is not None:
            extend = pits.extend
            append = lengths.append
            for s in symbols:
                w = table[s]
                append(len(w))
                extend(w)
        else:
            word = self.word
            for s in symbols:
                w = word(s)
                lengths.append(len(w))
                pits.extend(w)
        return pits, lengths
