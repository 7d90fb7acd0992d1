"""Base-p alphabet decomposition and shortlex codeword enumeration.

A "pit" is a base-p cell, the p-valued generalization of a bit.  An
alphabet of ``l_A`` symbols written fixed-width in base ``p`` needs tuples
of ``n`` pits, where ``n`` is the unique rank satisfying

    l_A = p**(n-1) + d,    0 < d <= p**n - p**(n-1).

Equivalently: p**(n-1) < l_A <= p**n.  Exact powers sit on the boundary;
the strict lower bound d > 0 forces them to the lower rank with maximal
remainder, so l_A == p**m decomposes as (n=m, d=p**m - p**(m-1)).

Lengths everywhere in this package are counted in pits, not bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlphabetTooSmall,
    BaseOutOfRange,
    CapacityExceeded,
    PitOutOfRange,
)

#: Largest supported pit base; pits and bases fit in a machine half-word.
MAX_BASE = 1 << 16

#: Largest alphabet the codec container can describe (4-byte field).
MAX_ALPHABET = (1 << 32) - 1


class Base(int):
    """A pit base: an integer restricted to [2, 2**16].

    Subclasses ``int`` so values participate directly in arithmetic.
    """

    __slots__ = ()

    def __new__(cls, p: int) -> "Base":
        p = int(p)
        if p < 2 or p > MAX_BASE:
            raise BaseOutOfRange(f"base must be in [2, {MAX_BASE}], got {p}")
        return super().__new__(cls, p)

    def __repr__(self) -> str:
        return f"Base({int(self)})"


def validate_base(p: int) -> Base:
    """Check 2 <= p <= 2**16 and wrap the value as a :class:`Base`."""
    return Base(p)


@dataclass(frozen=True)
class PitString:
    """An immutable sequence of base-p digits."""

    base: Base
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", Base(self.base))
        object.__setattr__(self, "digits", tuple(self.digits))
        if self.digits and (min(self.digits) < 0 or max(self.digits) >= self.base):
            raise PitOutOfRange(f"digits must lie in [0, {int(self.base)})")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __str__(self) -> str:
        if self.base <= 10:
            return "".join(str(d) for d in self.digits)
        return ".".join(str(d) for d in self.digits)

    def value(self) -> int:
        """The integer this string denotes, first digit most significant."""
        v = 0
        for d in self.digits:
            v = v * self.base + d
        return v

    @classmethod
    def from_value(cls, base: int, value: int, length: int) -> "PitString":
        """Fixed-width base-p rendering of ``value`` in ``length`` digits."""
        b = Base(base)
        if value < 0 or value >= b**length:
            raise PitOutOfRange(f"value {value} does not fit in {length} base-{int(b)} digits")
        digits = [0] * length
        for i in range(length - 1, -1, -1):
            value, digits[i] = divmod(value, b)
        return cls(b, tuple(digits))


@dataclass(frozen=True)
class CodeParams:
    """A validated decomposition (p, l_A, n, d) with l_A = p**(n-1) + d."""

    p: Base
    l_A: int
    n: int
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Base(self.p))
        if self.l_A < 2:
            raise AlphabetTooSmall(f"alphabet needs at least 2 symbols, got {self.l_A}")
        if self.n < 1:
            raise ValueError(f"rank must be >= 1, got {self.n}")
        low = self.p ** (self.n - 1)
        if self.d <= 0 or self.d > low * (self.p - 1):
            raise ValueError(f"remainder {self.d} outside (0, p**n - p**(n-1)]")
        if low + self.d != self.l_A:
            raise ValueError(f"inconsistent params: {int(self.p)}**{self.n - 1} + {self.d} != {self.l_A}")


def decompose(l_A: int, p: int) -> CodeParams:
    """Split ``l_A`` as p**(n-1) + d for the unique admissible rank n.

    The rank is the smallest n with p**n >= l_A; exact powers l_A == p**m
    yield (n=m, d=p**m - p**(m-1)) because d must stay positive.
    """
    base = Base(p)
    if l_A < 2:
        raise AlphabetTooSmall(f"alphabet needs at least 2 symbols, got {l_A}")
    n, cap = 1, int(base)
    while cap < l_A:
        n += 1
        cap *= base
    return CodeParams(base, l_A, n, l_A - base ** (n - 1))


def shortlex_codewords(p: int, count: int, max_len: int) -> list[PitString]:
    """First ``count`` base-p strings in shortlex order, lengths in [1, max_len].

    Shortlex: ascending length, then ascending value within a length.  The
    order is total, so repeated calls with equal arguments are identical.
    """
    base = Base(p)
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    capacity = sum(base**k for k in range(1, max_len + 1))
    if count > capacity:
        raise CapacityExceeded(
            f"{count} codewords requested but only {capacity} exist with length <= {max_len}"
        )
    out: list[PitString] = []
    k = 1
    while len(out) < count:
        take = min(base**k, count - len(out))
        for v in range(take):
            out.append(PitString.from_value(base, v, k))
        k += 1
    return out
