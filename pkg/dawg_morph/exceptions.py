"""Custom exceptions for dawg-morph."""


class DawgMorphError(Exception):
    """Base exception for all dawg-morph errors."""

    pass


class DawgError(DawgMorphError):
    """Raised when a word graph operation is rejected."""

    pass


class RejectedSymbolError(DawgError):
    """Raised when a string contains the reserved stop symbol."""

    pass


class EmptyStringError(DawgError):
    """Raised when an empty string is inserted."""

    pass


class DawgFrozenError(DawgError):
    """Raised when inserting into a graph whose build phase has ended."""

    pass


class CodingTableError(DawgMorphError):
    """Raised when a feature coding table is malformed."""

    pass


class EncodingError(DawgMorphError):
    """Raised when an entry or feature set cannot be encoded or decoded."""

    pass


class FeatureCodeError(EncodingError):
    """Raised when a feature code string is invalid."""

    pass


class UnknownCodeError(FeatureCodeError):
    """Raised for a code character that belongs to no dimension."""

    pass


class AmbiguousTypeError(FeatureCodeError):
    """Raised when a TYPE character cannot be resolved under the word's part of speech."""

    pass


class InvalidCombinationError(FeatureCodeError):
    """Raised when a dimension or value does not apply to the part of speech."""

    pass


class UnknownFeatureError(FeatureCodeError):
    """Raised for a dimension or value name missing from the coding table."""

    pass


class ReservedSymbolError(EncodingError):
    """Raised when a surface form or lemma contains a reserved symbol."""

    pass


class MalformedEntryError(EncodingError):
    """Raised when an encoded entry string is not of the form surface(codes)amel."""

    pass


class LexiconParseError(DawgMorphError):
    """Raised when a lexicon file line cannot be parsed in strict mode."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class StorageError(DawgMorphError):
    """Raised when reading or writing lexicon files fails."""

    pass


class CompiledImageError(DawgMorphError):
    """Raised when a compiled lexicon image is invalid."""

    pass


class ChecksumMismatchError(CompiledImageError):
    """Raised when an image fails checksum validation (corrupt or truncated)."""

    pass


class VersionMismatchError(CompiledImageError):
    """Raised when an image was written with an unsupported format version."""

    pass


class CodingTableMismatchError(CompiledImageError):
    """Raised when an image was compiled against a different coding table."""

    pass


class BenchmarkError(DawgMorphError):
    """Raised when a benchmark cannot be run."""

    pass
