"""dawg-morph - Morphological analysis and synthesis over directed acyclic word graphs."""

__version__ = "0.1.0"

from dawg_morph.coding import CodingTable, default_coding_table
from dawg_morph.dawg import STOP, Dawg, DawgStats, IntegrityReport, IntegrityViolation
from dawg_morph.encoding import (
    Entry,
    FeatureQuery,
    FeatureSet,
    decode_entry,
    decode_features,
    encode_entry,
    encode_features,
    reverse_string,
)
from dawg_morph.engine import Analysis, Inflection, Lexicon
from dawg_morph.exceptions import (
    AmbiguousTypeError,
    BenchmarkError,
    ChecksumMismatchError,
    CodingTableError,
    CodingTableMismatchError,
    CompiledImageError,
    DawgError,
    DawgFrozenError,
    DawgMorphError,
    EmptyStringError,
    EncodingError,
    FeatureCodeError,
    InvalidCombinationError,
    LexiconParseError,
    MalformedEntryError,
    RejectedSymbolError,
    ReservedSymbolError,
    StorageError,
    UnknownCodeError,
    UnknownFeatureError,
    VersionMismatchError,
)
from dawg_morph.ingest import IngestResult, LexiconRecord, ingest_lines, ingest_tsv
from dawg_morph.pattern import WILDCARD, Pattern
from dawg_morph.storage import load_compiled, save_compiled
from dawg_morph.types import DawgMode, ViolationKind

__all__ = [
    "STOP",
    "WILDCARD",
    "Analysis",
    "CodingTable",
    "Dawg",
    "DawgMode",
    "DawgStats",
    "Entry",
    "FeatureQuery",
    "FeatureSet",
    "Inflection",
    "IngestResult",
    "IntegrityReport",
    "IntegrityViolation",
    "Lexicon",
    "LexiconRecord",
    "Pattern",
    "ViolationKind",
    "decode_entry",
    "decode_features",
    "default_coding_table",
    "encode_entry",
    "encode_features",
    "ingest_lines",
    "ingest_tsv",
    "load_compiled",
    "reverse_string",
    "save_compiled",
    "DawgMorphError",
    "DawgError",
    "RejectedSymbolError",
    "EmptyStringError",
    "DawgFrozenError",
    "CodingTableError",
    "EncodingError",
    "FeatureCodeError",
    "UnknownCodeError",
    "AmbiguousTypeError",
    "InvalidCombinationError",
    "UnknownFeatureError",
    "ReservedSymbolError",
    "MalformedEntryError",
    "LexiconParseError",
    "StorageError",
    "CompiledImageError",
    "ChecksumMismatchError",
    "VersionMismatchError",
    "CodingTableMismatchError",
    "BenchmarkError",
]
