"""Ingestion of human-editable TSV lexicon files.

One record per line::

    surface<TAB>lemma<TAB>pos=adjective;degree=comparative;case=genitive

Blank lines and lines starting with ``#`` are ignored.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from dawg_morph.coding import CodingTable, default_coding_table
from dawg_morph.encoding import Entry, parse_feature_set, validate_features
from dawg_morph.engine import Lexicon
from dawg_morph.exceptions import (
    EncodingError,
    InvalidCombinationError,
    LexiconParseError,
    MalformedEntryError,
    StorageError,
)
from dawg_morph.types import DawgMode

logger = logging.getLogger(__name__)

COMMENT_PREFIX = "#"


@dataclass(frozen=True)
class LexiconRecord:
    """One parsed TSV line."""

    line_number: int
    surface: str
    lemma: str
    feature_text: str

    def to_entry(self, table: CodingTable | None = None) -> Entry:
        return Entry(self.surface, parse_feature_set(self.feature_text, table), self.lemma)


@dataclass
class IngestResult:
    """Outcome of an ingestion run."""

    lexicon: Lexicon
    warnings: list[str] = field(default_factory=list)
    records: int = 0
    duplicates: int = 0


def parse_record(line: str, line_number: int) -> LexiconRecord:
    """Split a TSV line into its three columns.

    Raises:
        MalformedEntryError: If the line does not have three non-empty columns
    """
    columns = [column.strip() for column in line.split("\t")]
    if len(columns) != 3:
        raise MalformedEntryError(f"expected 3 tab-separated columns, found {len(columns)}")
    surface, lemma, feature_text = columns
    if not surface or not lemma or not feature_text:
        raise MalformedEntryError("surface form, lemma and features must be non-empty")
    return LexiconRecord(line_number, surface, lemma, feature_text)


def ingest_lines(
    lines: Iterable[str],
    table: CodingTable | None = None,
    strict: bool = False,
    mode: DawgMode = DawgMode.DETERMINISTIC,
) -> IngestResult:
    """Build a lexicon from TSV lines.

    Args:
        lines: Lines of the lexicon file (line numbers start at 1)
        table: Coding table (default: packaged Greek table)
        strict: Raise on the first problem instead of warning
        mode: Storage mode of the resulting lexicon

    Returns:
        Lexicon plus collected warnings and counts

    Raises:
        LexiconParseError: On a malformed or invalid line in strict mode
    """
    table = table or default_coding_table()
    result = IngestResult(Lexicon(table, mode))
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith(COMMENT_PREFIX):
            continue
        try:
            entry = parse_record(line, line_number).to_entry(table)
            problems = validate_features(entry.features, table)
            if problems and strict:
                raise InvalidCombinationError(problems[0])
            # Problems go to the result, once per line.
            added = result.lexicon.add_entry(entry, warn=False)
        except EncodingError as e:
            if strict:
                raise LexiconParseError(line_number, str(e)) from e
            logger.debug("Skipping line %d: %s", line_number, e)
            result.warnings.append(f"line {line_number}: {e}")
            continue

        result.warnings.extend(f"line {line_number}: {problem}" for problem in problems)
        result.records += 1
        if not added:
            result.duplicates += 1

    logger.info(
        "Ingested %d records (%d duplicates, %d warnings)",
        result.records,
        result.duplicates,
        len(result.warnings),
    )
    return result


def ingest_tsv(
    path: str | Path,
    table: CodingTable | None = None,
    strict: bool = False,
    mode: DawgMode = DawgMode.DETERMINISTIC,
) -> IngestResult:
    """Build a lexicon from a UTF-8 TSV file.

    Raises:
        StorageError: If the file cannot be read or is not UTF-8
        LexiconParseError: On a malformed line in strict mode
    """
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as e:
        raise StorageError(f"Failed to read lexicon {path}: {e}") from e
    logger.debug("Read lexicon file %s", path)
    return ingest_lines(text.split("\n"), table, strict, mode)
