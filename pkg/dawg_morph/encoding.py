"""Lexicon entries and their canonical string encoding.

An entry (surface form, features, lemma) is stored as::

    surface(codes)amel

where `codes` holds one character per present feature, most suffix-dependent
dimension first, followed by the part-of-speech codes of the word and of its
lemma, and `amel` is the lemma reversed.

Examples:
    >>> fs = FeatureSet.create("adjective", case="genitive", number="singular",
    ...                        gender="neutral", degree="comparative")
    >>> encode_entry(Entry("μονιμότερον", fs, "μόνιμος"))
    'μονιμότερον(bhlsEE)ςομινόμ'
"""

import logging
from dataclasses import dataclass

from dawg_morph.coding import (
    RESERVED_CHARACTERS,
    TYPE_DIMENSION,
    CodingTable,
    default_coding_table,
)
from dawg_morph.exceptions import (
    AmbiguousTypeError,
    InvalidCombinationError,
    MalformedEntryError,
    ReservedSymbolError,
    UnknownCodeError,
    UnknownFeatureError,
)

logger = logging.getLogger(__name__)

OPEN = "("
CLOSE = ")"
POS_KEY = "pos"
LEMMA_POS_KEY = "lemma_pos"

FeatureValues = tuple[tuple[str, str], ...]


def _normalize(values: FeatureValues | dict[str, str]) -> FeatureValues:
    pairs = tuple(values.items()) if isinstance(values, dict) else tuple(values)
    names = [name for name, _ in pairs]
    if len(set(names)) != len(names):
        raise InvalidCombinationError(f"Dimension given twice in {pairs}")
    return tuple(sorted(pairs))


@dataclass(frozen=True)
class FeatureSet:
    """Grammatical description of a word form.

    `values` holds (dimension, value) name pairs; absent dimensions are omitted.
    """

    pos_word: str
    pos_lemma: str
    values: FeatureValues = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _normalize(self.values))

    @classmethod
    def create(cls, pos: str, lemma_pos: str | None = None, **values: str) -> "FeatureSet":
        return cls(pos, lemma_pos or pos, tuple(values.items()))

    def get(self, dimension: str) -> str | None:
        for name, value in self.values:
            if name == dimension:
                return value
        return None

    def as_dict(self) -> dict[str, str]:
        return dict(self.values)


@dataclass(frozen=True)
class FeatureQuery:
    """Partial feature set; every slot left out matches anything."""

    pos_word: str | None = None
    pos_lemma: str | None = None
    values: FeatureValues = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _normalize(self.values))

    @classmethod
    def create(
        cls, pos: str | None = None, lemma_pos: str | None = None, **values: str
    ) -> "FeatureQuery":
        return cls(pos, lemma_pos, tuple(values.items()))

    @classmethod
    def from_features(cls, features: FeatureSet) -> "FeatureQuery":
        """Query matching exactly `features`."""
        return cls(features.pos_word, features.pos_lemma, features.values)

    @property
    def is_empty(self) -> bool:
        return self.pos_word is None and self.pos_lemma is None and not self.values

    def get(self, dimension: str) -> str | None:
        for name, value in self.values:
            if name == dimension:
                return value
        return None

    def matches(self, features: FeatureSet) -> bool:
        if self.pos_word is not None and self.pos_word != features.pos_word:
            return False
        if self.pos_lemma is not None and self.pos_lemma != features.pos_lemma:
            return False
        return all(features.get(name) == value for name, value in self.values)


@dataclass(frozen=True)
class Entry:
    """A lexicon entry: inflected form, its features and its lemma."""

    surface: str
    features: FeatureSet
    lemma: str


def reverse_string(s: str) -> str:
    """Reverse `s` code point by code point (no final-sigma normalization)."""
    return s[::-1]


def validate_features(features: FeatureSet, table: CodingTable | None = None) -> list[str]:
    """Problems with `features` that lenient encoding tolerates.

    Returns one message per dimension that the coding table leaves blank for the
    word's part of speech, or whose value is outside the allowed set.

    Raises:
        UnknownFeatureError: If a part of speech, dimension or value is unknown
    """
    table = table or default_coding_table()
    pos = table.pos(features.pos_word)
    table.pos(features.pos_lemma)
    problems = []
    for name, value in features.values:
        if name != TYPE_DIMENSION:
            table.value_code(pos, name, value)
        if not pos.applies(name):
            problems.append(f"dimension {name!r} does not apply to {pos.name}")
        elif value not in pos.allowed_values(name):
            problems.append(f"{name}={value} is not a {pos.name} value")
    return problems


def encode_features(
    features: FeatureSet,
    table: CodingTable | None = None,
    strict: bool = False,
    *,
    warn: bool = True,
) -> str:
    """Encode a feature set as its code string.

    Args:
        features: Feature set to encode
        table: Coding table (default: packaged Greek table)
        strict: Raise instead of warning for dimensions not applicable to the POS
        warn: Log tolerated problems (off when the caller reports them itself)

    Returns:
        Code string ending with the word and lemma POS codes

    Raises:
        UnknownFeatureError: For names missing from the coding table
        InvalidCombinationError: For inapplicable dimensions (strict mode), type
            values not defined for the POS, or codes that would not decode back

    Examples:
        >>> encode_features(FeatureSet.create("preposition"))
        'PP'
    """
    table = table or default_coding_table()
    pos_word = table.pos(features.pos_word)
    pos_lemma = table.pos(features.pos_lemma)
    type_value = features.get(TYPE_DIMENSION)
    if type_value is not None and type_value not in pos_word.types:
        raise InvalidCombinationError(f"Type {type_value!r} is not defined for {pos_word.name}")

    for problem in validate_features(features, table):
        if strict:
            raise InvalidCombinationError(problem.capitalize())
        if warn:
            logger.warning("Accepting feature set with %s", problem)

    present = features.as_dict()
    codes = []
    for dimension in table.dimensions:
        value = present.get(dimension.name)
        if value is not None:
            codes.append(table.value_code(pos_word, dimension.name, value))
    code = "".join(codes) + pos_word.code + pos_lemma.code

    try:
        decoded = decode_features(code, table)
    except (UnknownCodeError, AmbiguousTypeError, InvalidCombinationError) as e:
        raise InvalidCombinationError(f"Code {code!r} cannot be decoded: {e}") from e
    if decoded != features:
        raise InvalidCombinationError(f"Code {code!r} does not decode to the same features")
    return code


def decode_features(code: str, table: CodingTable | None = None) -> FeatureSet:
    """Decode a code string into a feature set.

    Type codes are resolved under the word's part of speech, which is read first
    from the second-to-last character.

    Raises:
        MalformedEntryError: If the part-of-speech pair is missing
        UnknownCodeError: For a character that belongs to no dimension
        AmbiguousTypeError: For a type code not resolvable under the word's POS
        InvalidCombinationError: If dimensions repeat or are out of order
    """
    table = table or default_coding_table()
    if len(code) < 2:
        raise MalformedEntryError(f"Feature code {code!r} lacks the part-of-speech pair")
    pos_word = table.pos_by_code(code[-2])
    pos_lemma = table.pos_by_code(code[-1])
    for ch, pos in ((code[-2], pos_word), (code[-1], pos_lemma)):
        if pos is None:
            raise UnknownCodeError(f"Unknown part-of-speech code {ch!r} in {code!r}")
    assert pos_word is not None and pos_lemma is not None

    type_rank = table.dimension(TYPE_DIMENSION).rank
    values: list[tuple[str, str]] = []
    last_rank = -1
    for ch in code[:-2]:
        candidates: list[tuple[str, str, int]] = []
        dimension = table.dimension_for_code(ch)
        if dimension is not None:
            candidates.append((dimension.name, dimension.values[ch], dimension.rank))
        if ch in pos_word.type_names:
            candidates.append((TYPE_DIMENSION, pos_word.type_names[ch], type_rank))
        if not candidates:
            if table.is_type_code_anywhere(ch):
                raise AmbiguousTypeError(
                    f"Type code {ch!r} is not defined for part of speech {pos_word.name}"
                )
            raise UnknownCodeError(f"Unknown feature code {ch!r} in {code!r}")

        candidates = [c for c in candidates if c[2] > last_rank]
        if not candidates:
            raise InvalidCombinationError(f"Feature code {code!r} repeats or misorders {ch!r}")
        if len(candidates) > 1:
            applicable = [c for c in candidates if pos_word.applies(c[0])]
            if len(applicable) != 1:
                raise AmbiguousTypeError(
                    f"Code {ch!r} is ambiguous for part of speech {pos_word.name}"
                )
            candidates = applicable

        name, value, last_rank = candidates[0]
        values.append((name, value))
    return FeatureSet(pos_word.name, pos_lemma.name, tuple(values))


def _check_text(text: str, what: str) -> None:
    if not text:
        raise MalformedEntryError(f"Empty {what}")
    reserved = sorted(set(text) & RESERVED_CHARACTERS)
    if reserved:
        raise ReservedSymbolError(f"{what.capitalize()} {text!r} contains reserved {reserved}")


def encode_entry(
    entry: Entry, table: CodingTable | None = None, strict: bool = False, *, warn: bool = True
) -> str:
    """Encode an entry as ``surface(codes)amel``.

    Raises:
        MalformedEntryError: If surface or lemma is empty
        ReservedSymbolError: If surface or lemma contains "(", ")" or U+0000
    """
    _check_text(entry.surface, "surface form")
    _check_text(entry.lemma, "lemma")
    codes = encode_features(entry.features, table, strict, warn=warn)
    return f"{entry.surface}{OPEN}{codes}{CLOSE}{reverse_string(entry.lemma)}"


def decode_entry(
    s: str, table: CodingTable | None = None, cache: dict[str, FeatureSet] | None = None
) -> Entry:
    """Decode an encoded entry string.

    `cache` maps code strings to already decoded feature sets and is filled as
    entries are decoded.

    Raises:
        MalformedEntryError: Missing, repeated or misplaced delimiters, or empty parts
    """
    if s.count(OPEN) != 1 or s.count(CLOSE) != 1:
        raise MalformedEntryError(f"Entry {s!r} must contain exactly one '(' and one ')'")
    start = s.index(OPEN)
    end = s.index(CLOSE)
    if end < start:
        raise MalformedEntryError(f"Entry {s!r} has ')' before '('")
    surface, code, reversed_lemma = s[:start], s[start + 1 : end], s[end + 1 :]
    if not surface or not reversed_lemma:
        raise MalformedEntryError(f"Entry {s!r} has an empty surface form or lemma")
    features = cache.get(code) if cache is not None else None
    if features is None:
        features = decode_features(code, table)
        if cache is not None:
            cache[code] = features
    return Entry(surface, features, reverse_string(reversed_lemma))


def _split_pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for item in text.replace(",", ";").split(";"):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UnknownFeatureError(f"Expected dimension=value, got {item!r}")
        pairs.append((key, value))
    return pairs


def parse_feature_query(text: str, table: CodingTable | None = None) -> FeatureQuery:
    """Parse ``"pos=noun;case=genitive"`` (``;`` or ``,`` separated) into a query.

    Raises:
        UnknownFeatureError: For malformed pairs or names missing from the table
        InvalidCombinationError: If a key is given twice
    """
    table = table or default_coding_table()
    pos_word = None
    pos_lemma = None
    values: dict[str, str] = {}
    for key, value in _split_pairs(text):
        if key in (POS_KEY, LEMMA_POS_KEY):
            table.pos(value)
            if (pos_word if key == POS_KEY else pos_lemma) is not None:
                raise InvalidCombinationError(f"{key!r} given twice")
            if key == POS_KEY:
                pos_word = value
            else:
                pos_lemma = value
            continue
        dimension = table.dimension(key)
        if key in values:
            raise InvalidCombinationError(f"{key!r} given twice")
        if key == TYPE_DIMENSION:
            if not any(value in pos.types for pos in table.parts_of_speech.values()):
                raise UnknownFeatureError(f"Unknown type {value!r}")
        elif value not in dimension.codes:
            raise UnknownFeatureError(f"Unknown {key} value {value!r}")
        values[key] = value
    return FeatureQuery(pos_word, pos_lemma, tuple(values.items()))


def parse_feature_set(text: str, table: CodingTable | None = None) -> FeatureSet:
    """Parse a complete feature set; ``pos`` is required, ``lemma_pos`` defaults to it."""
    query = parse_feature_query(text, table)
    if query.pos_word is None:
        raise UnknownFeatureError(f"Missing 'pos' in {text!r}")
    return FeatureSet(query.pos_word, query.pos_lemma or query.pos_word, query.values)


def _ordered_values(values: FeatureValues, table: CodingTable) -> list[tuple[str, str]]:
    rank = {name: i for i, name in enumerate(table.encode_order)}
    return sorted(values, key=lambda pair: (rank.get(pair[0], len(rank)), pair[0]))


def feature_dict(features: FeatureSet, table: CodingTable | None = None) -> dict[str, str]:
    """Ordered name mapping for JSON output: pos, lemma_pos, then dimensions."""
    table = table or default_coding_table()
    result = {POS_KEY: features.pos_word, LEMMA_POS_KEY: features.pos_lemma}
    result.update(_ordered_values(features.values, table))
    return result


def format_feature_pairs(
    features: FeatureSet | FeatureQuery, table: CodingTable | None = None, separator: str = ";"
) -> str:
    """Render features as ``pos=...;case=...`` in canonical order.

    ``lemma_pos`` is only written when it differs from ``pos``.
    """
    table = table or default_coding_table()
    pairs: list[tuple[str, str]] = []
    if features.pos_word is not None:
        pairs.append((POS_KEY, features.pos_word))
    if features.pos_lemma is not None and features.pos_lemma != features.pos_word:
        pairs.append((LEMMA_POS_KEY, features.pos_lemma))
    pairs.extend(_ordered_values(features.values, table))
    return separator.join(f"{key}={value}" for key, value in pairs)
