"""Morphological analysis, synthesis and reinflection over a word graph of entries."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from dawg_morph.coding import (
    RESERVED_CHARACTERS,
    TYPE_DIMENSION,
    CodingTable,
    default_coding_table,
)
from dawg_morph.dawg import Dawg, DawgStats
from dawg_morph.encoding import (
    CLOSE,
    OPEN,
    Entry,
    FeatureQuery,
    FeatureSet,
    decode_entry,
    encode_entry,
    reverse_string,
)
from dawg_morph.pattern import WILDCARD, Element, Pattern
from dawg_morph.types import DawgMode

logger = logging.getLogger(__name__)

# Each delimiter occurs once per entry; wildcards in search patterns never cross one.
DELIMITERS = (OPEN, CLOSE)


@dataclass(frozen=True)
class Analysis:
    """Lemma and grammatical description of a surface form."""

    lemma: str
    features: FeatureSet


@dataclass(frozen=True)
class Inflection:
    """An inflected form returned by synthesis or reinflection."""

    surface: str
    features: FeatureSet
    lemma: str


class Lexicon:
    """Full-form lexicon stored as encoded entries in a word graph.

    Build with `add_entry`, then `freeze()` before sharing between threads.
    """

    def __init__(
        self,
        coding: CodingTable | None = None,
        mode: DawgMode = DawgMode.DETERMINISTIC,
        dawg: Dawg | None = None,
    ) -> None:
        """Initialize an empty lexicon, or wrap an existing graph.

        Args:
            coding: Feature coding table (default: packaged Greek table)
            mode: Storage mode for a new graph
            dawg: Existing graph of encoded entries (its mode wins over `mode`)
        """
        self.coding = coding or default_coding_table()
        self.dawg = dawg if dawg is not None else Dawg(mode)
        self._features: dict[str, FeatureSet] = {}

    @property
    def mode(self) -> DawgMode:
        return self.dawg.mode

    @property
    def entry_count(self) -> int:
        return self.dawg.string_count

    def __len__(self) -> int:
        return self.entry_count

    def freeze(self) -> None:
        self.dawg.freeze()

    def stats(self) -> DawgStats:
        return self.dawg.stats()

    def add_entry(self, entry: Entry, strict: bool = False, *, warn: bool = True) -> bool:
        """Insert an entry.

        Args:
            entry: Entry to add
            strict: Reject dimensions the coding table leaves blank for the POS
            warn: Log dimensions accepted in lenient mode

        Returns:
            True if the entry was new

        Raises:
            EncodingError: If the entry cannot be encoded
            DawgFrozenError: If the lexicon has been frozen
        """
        return self.dawg.insert(encode_entry(entry, self.coding, strict, warn=warn))

    def add_entries(self, entries: Iterable[Entry], strict: bool = False) -> int:
        """Insert several entries; returns how many were new."""
        return sum(1 for entry in entries if self.add_entry(entry, strict))

    def entries(self) -> list[Entry]:
        """All entries, ordered by their encoded form."""
        return [decode_entry(s, self.coding, self._features) for s in self.dawg.enumerate()]

    def __contains__(self, entry: object) -> bool:
        if not isinstance(entry, Entry):
            return False
        return encode_entry(entry, self.coding, warn=False) in self.dawg

    def analyze(self, surface: str) -> list[Analysis]:
        """All analyses of a surface form (empty if unknown).

        Searches forward with the pattern ``surface(*``.
        """
        if not surface or set(surface) & RESERVED_CHARACTERS:
            return []
        pattern = Pattern.literal(surface) + Pattern.of(OPEN, WILDCARD)
        analyses = []
        for encoded in self.dawg.match_forward(pattern):
            entry = decode_entry(encoded, self.coding, self._features)
            analyses.append(Analysis(entry.lemma, entry.features))
        return analyses

    def feature_pattern(self, query: FeatureQuery | None) -> Pattern | None:
        """Sub-pattern over the code string that every match of `query` satisfies.

        Specified dimensions become literals in encoding order separated by
        wildcards; results still need filtering with `query.matches`. Returns None
        when no code string can satisfy the query.
        """
        query = query or FeatureQuery()
        pos_word = self.coding.pos(query.pos_word) if query.pos_word is not None else None
        elements: list[Element] = [WILDCARD]
        for dimension in self.coding.dimensions:
            value = query.get(dimension.name)
            if value is None:
                continue
            if dimension.name == TYPE_DIMENSION:
                if pos_word is None:
                    continue
                code = pos_word.types.get(value)
            else:
                code = dimension.codes.get(value)
            if code is None:
                return None
            elements.extend((code, WILDCARD))
        if pos_word is not None:
            elements.append(pos_word.code)
        if query.pos_lemma is not None:
            elements.append(self.coding.pos(query.pos_lemma).code)
        else:
            elements.append(WILDCARD)
        return Pattern(tuple(elements))

    def _search_entries(
        self, pattern: Pattern, query: FeatureQuery | None, reverse: bool
    ) -> list[tuple[str, Entry]]:
        found = self.dawg.match_reverse(pattern) if reverse else self.dawg.match_forward(pattern)
        results = []
        for encoded in found:
            entry = decode_entry(encoded, self.coding, self._features)
            if query is None or query.matches(entry.features):
                results.append((encoded, entry))
        return results

    def _synthesize_encoded(
        self, lemma: str, query: FeatureQuery | None, reverse: bool
    ) -> list[tuple[str, Entry]]:
        if not lemma or set(lemma) & RESERVED_CHARACTERS:
            return []
        features = self.feature_pattern(query)
        if features is None:
            return []
        pattern = (
            Pattern.of(WILDCARD, OPEN)
            + features
            + Pattern.of(CLOSE)
            + Pattern.literal(reverse_string(lemma))
        ).with_barrier(DELIMITERS)
        return self._search_entries(pattern, query, reverse)

    def synthesize(
        self, lemma: str, query: FeatureQuery | None = None, use_reverse_search: bool = True
    ) -> list[Inflection]:
        """Inflected forms of `lemma` matching a partial feature set.

        Args:
            lemma: Citation form
            query: Wanted features; unspecified slots match anything
            use_reverse_search: Search from the terminal node upwards (the default)
                or from the initial node downwards; both give the same result

        Returns:
            Matching forms ordered by encoded entry
        """
        return [
            Inflection(entry.surface, entry.features, entry.lemma)
            for _, entry in self._synthesize_encoded(lemma, query, use_reverse_search)
        ]

    def reinflect(self, surface: str, target: FeatureQuery | None = None) -> list[Inflection]:
        """Forms of every lemma of `surface` that match `target`."""
        found: dict[str, Entry] = {}
        for analysis in self.analyze(surface):
            for encoded, entry in self._synthesize_encoded(analysis.lemma, target, True):
                found.setdefault(encoded, entry)
        return [
            Inflection(entry.surface, entry.features, entry.lemma)
            for _, entry in sorted(found.items())
        ]

    def fuzzy_lookup(
        self, surface_pattern: Pattern, query: FeatureQuery | None = None
    ) -> list[tuple[str, Analysis]]:
        """Content-addressable search: wildcards in the surface and in the features.

        Args:
            surface_pattern: Pattern over surface forms, e.g. ``Pattern.parse("μονιμ*")``
            query: Partial features the entries must carry

        Returns:
            (surface, analysis) pairs ordered by encoded entry
        """
        features = self.feature_pattern(query)
        if features is None:
            return []
        pattern = surface_pattern + Pattern.of(OPEN) + features + Pattern.of(CLOSE, WILDCARD)
        pattern = pattern.with_barrier(DELIMITERS)
        # A literal prefix prunes best from the initial node, otherwise start from the end.
        reverse = not surface_pattern.elements or surface_pattern.elements[0] is WILDCARD
        return [
            (entry.surface, Analysis(entry.lemma, entry.features))
            for _, entry in self._search_entries(pattern, query, reverse)
        ]
