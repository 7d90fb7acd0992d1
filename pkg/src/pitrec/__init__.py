"""pitrec: exact pit-recoding compression limits and a working codec.

A pit is a base-p cell, the p-valued generalization of a bit.  This
package canonically recodes fixed-rank symbol alphabets onto the shortest
available variable-length pit tuples, evaluates the exact compression
limit that recoding achieves, and ships a file codec (PITR containers)
that demonstrates the procedure, its side-information cost, and its
multi-pass repetition.
"""

from .codebook import Codebook, Codeword, ShortlexCoder, build_codebook, codeword_of, length_histogram
from .codec import (
    MeasureReport,
    PassRecord,
    PitrContainer,
    SymbolFile,
    basic_file,
    bytes_to_symbols,
    decode,
    encode,
    measure,
    pack_pits,
    symbols_to_bytes,
    unpack_pits,
)
from .errors import (
    AlphabetTooLarge,
    AlphabetTooSmall,
    BaseOutOfRange,
    CapacityExceeded,
    CorruptContainer,
    InstanceTooLarge,
    PassesOutOfRange,
    PitOutOfRange,
    PitrecError,
    SymbolOutOfRange,
)
from .metrics import (
    CaseTag,
    CompressionReport,
    kmin_full_closed,
    l1,
    l2_closed,
    l2_full,
    l2_oracle_exhaustive,
    l2_oracle_greedy,
    optimal_base,
    report,
    run_verification,
    s_value,
    sweep,
)
from .radix import Base, CodeParams, PitString, decompose, shortlex_codewords, validate_base

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Base",
    "CodeParams",
    "PitString",
    "decompose",
    "shortlex_codewords",
    "validate_base",
    "Codebook",
    "Codeword",
    "ShortlexCoder",
    "build_codebook",
    "codeword_of",
    "length_histogram",
    "CaseTag",
    "CompressionReport",
    "s_value",
    "l1",
    "l2_closed",
    "l2_full",
    "kmin_full_closed",
    "report",
    "l2_oracle_greedy",
    "l2_oracle_exhaustive",
    "sweep",
    "optimal_base",
    "run_verification",
    "SymbolFile",
    "PassRecord",
    "PitrContainer",
    "MeasureReport",
    "basic_file",
    "encode",
    "decode",
    "measure",
    "pack_pits",
    "unpack_pits",
    "bytes_to_symbols",
    "symbols_to_bytes",
    "PitrecError",
    "BaseOutOfRange",
    "AlphabetTooSmall",
    "AlphabetTooLarge",
    "CapacityExceeded",
    "SymbolOutOfRange",
    "PitOutOfRange",
    "InstanceTooLarge",
    "PassesOutOfRange",
    "CorruptContainer",
]
