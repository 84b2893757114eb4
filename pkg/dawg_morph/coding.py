"""Feature coding tables: single-character codes for grammatical features."""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

from dawg_morph.exceptions import CodingTableError, UnknownFeatureError

logger = logging.getLogger(__name__)

TYPE_DIMENSION = "type"
RESERVED_CHARACTERS = frozenset("()\x00")

DEFAULT_TABLE_PATH = Path(__file__).parent / "data" / "greek.json"


@dataclass(frozen=True)
class Dimension:
    """A grammatical dimension (case, number, ...) and its value codes.

    `rank` is the position in encoding order (case = 0 ... type = last). The type
    dimension has no global codes; they are scoped per part of speech.
    """

    name: str
    rank: int
    codes: dict[str, str] = field(default_factory=dict)  # value name -> code
    values: dict[str, str] = field(default_factory=dict)  # code -> value name


@dataclass(frozen=True)
class PartOfSpeech:
    """A part of speech row: its code, applicable dimensions and type codes."""

    name: str
    code: str
    dimensions: dict[str, tuple[str, ...]]
    types: dict[str, str]  # type name -> code
    type_names: dict[str, str]  # code -> type name

    def applies(self, dimension: str) -> bool:
        if dimension == TYPE_DIMENSION:
            return bool(self.types)
        return dimension in self.dimensions

    def allowed_values(self, dimension: str) -> tuple[str, ...]:
        if dimension == TYPE_DIMENSION:
            return tuple(self.types)
        return self.dimensions.get(dimension, ())


class CodingTable:
    """Coding table loaded from JSON.

    The JSON lists dimensions from least to most suffix-dependent; entries encode
    features in the reverse order, most suffix-dependent first.
    """

    def __init__(self, data: dict[str, Any]) -> None:
        """Build and validate a table from its parsed JSON.

        Args:
            data: Parsed coding-table document

        Raises:
            CodingTableError: If the table is malformed or codes collide
        """
        try:
            self.name: str = str(data["name"])
            self.version: int = int(data.get("version", 1))
            raw_dimensions = list(data["dimensions"])
            raw_pos = dict(data["parts_of_speech"])
        except (KeyError, TypeError, ValueError) as e:
            raise CodingTableError(f"Malformed coding table: {e}") from e

        canonical = json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
        self.digest: bytes = hashlib.sha256(canonical.encode("utf-8")).digest()

        count = len(raw_dimensions)
        dimensions: dict[str, Dimension] = {}
        for column, raw in enumerate(raw_dimensions):
            name = str(raw.get("name", ""))
            if not name or name in dimensions or name in ("pos", "lemma_pos"):
                raise CodingTableError(f"Invalid or duplicate dimension name {name!r}")
            codes = {str(v): str(c) for v, c in dict(raw.get("values", {})).items()}
            if name == TYPE_DIMENSION and codes:
                raise CodingTableError("Type codes must be declared per part of speech")
            values = {c: v for v, c in codes.items()}
            if len(values) != len(codes):
                raise CodingTableError(f"Dimension {name!r} reuses a code character")
            dimensions[name] = Dimension(name, count - 1 - column, codes, values)
        if TYPE_DIMENSION not in dimensions:
            raise CodingTableError("Coding table has no 'type' dimension")

        self.dimensions: tuple[Dimension, ...] = tuple(
            sorted(dimensions.values(), key=lambda d: d.rank)
        )
        self._dimensions = dimensions

        self._code_to_dimension: dict[str, Dimension] = {}
        for dimension in self.dimensions:
            for code in dimension.values:
                self._check_code(code, f"{dimension.name} code")
                if code in self._code_to_dimension:
                    other = self._code_to_dimension[code].name
                    raise CodingTableError(
                        f"Code {code!r} is used by both {other!r} and {dimension.name!r}"
                    )
                self._code_to_dimension[code] = dimension

        self.parts_of_speech: dict[str, PartOfSpeech] = {}
        self._pos_by_code: dict[str, PartOfSpeech] = {}
        for pos_name, raw in raw_pos.items():
            pos = self._build_pos(str(pos_name), dict(raw))
            if pos.code in self._pos_by_code:
                raise CodingTableError(f"Part-of-speech code {pos.code!r} is used twice")
            if pos.code in self._code_to_dimension:
                raise CodingTableError(f"Part-of-speech code {pos.code!r} is also a feature code")
            self.parts_of_speech[pos.name] = pos
            self._pos_by_code[pos.code] = pos
        if not self.parts_of_speech:
            raise CodingTableError("Coding table defines no parts of speech")

        logger.debug(
            "Loaded coding table %s v%d (%d dimensions, %d parts of speech)",
            self.name,
            self.version,
            len(self.dimensions),
            len(self.parts_of_speech),
        )

    def _check_code(self, code: str, what: str) -> None:
        if len(code) != 1:
            raise CodingTableError(f"{what} {code!r} must be a single character")
        if code in RESERVED_CHARACTERS:
            raise CodingTableError(f"{what} {code!r} is a reserved character")

    def _build_pos(self, name: str, raw: dict[str, Any]) -> PartOfSpeech:
        code = str(raw.get("code", ""))
        self._check_code(code, f"Part-of-speech {name!r} code")
        types = {str(t): str(c) for t, c in dict(raw.get("types", {})).items()}
        type_names = {c: t for t, c in types.items()}
        if len(type_names) != len(types):
            raise CodingTableError(f"Part of speech {name!r} reuses a type code")
        for type_code in type_names:
            self._check_code(type_code, f"Type code under {name!r}")
        dimensions: dict[str, tuple[str, ...]] = {}
        for dim_name, allowed in dict(raw.get("dimensions", {})).items():
            dimension = self._dimensions.get(dim_name)
            if dimension is None or dim_name == TYPE_DIMENSION:
                raise CodingTableError(
                    f"Part of speech {name!r} lists unknown dimension {dim_name!r}"
                )
            unknown = [v for v in allowed if v not in dimension.codes]
            if unknown:
                raise CodingTableError(
                    f"Part of speech {name!r} allows unknown {dim_name} values {unknown}"
                )
            dimensions[dim_name] = tuple(allowed)
        return PartOfSpeech(name, code, dimensions, types, type_names)

    @classmethod
    def load(cls, path: str | Path) -> "CodingTable":
        """Load a coding table from a JSON file.

        Args:
            path: Path to the JSON document

        Returns:
            Validated coding table

        Raises:
            CodingTableError: If the file cannot be read or is invalid
        """
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise CodingTableError(f"Failed to load coding table {path}: {e}") from e
        if not isinstance(data, dict):
            raise CodingTableError(f"Coding table {path} is not a JSON object")
        return cls(data)

    @property
    def digest_hex(self) -> str:
        return self.digest.hex()

    @property
    def encode_order(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.dimensions)

    def dimension(self, name: str) -> Dimension:
        try:
            return self._dimensions[name]
        except KeyError:
            raise UnknownFeatureError(f"Unknown dimension {name!r}") from None

    def pos(self, name: str) -> PartOfSpeech:
        try:
            return self.parts_of_speech[name]
        except KeyError:
            raise UnknownFeatureError(f"Unknown part of speech {name!r}") from None

    def pos_by_code(self, code: str) -> PartOfSpeech | None:
        return self._pos_by_code.get(code)

    def dimension_for_code(self, code: str) -> Dimension | None:
        """Non-type dimension owning `code`, if any."""
        return self._code_to_dimension.get(code)

    def is_type_code_anywhere(self, code: str) -> bool:
        return any(code in pos.type_names for pos in self.parts_of_speech.values())

    def value_code(self, pos: PartOfSpeech, dimension: str, value: str) -> str:
        """Code character of `value` in `dimension` (type codes resolved under `pos`).

        Raises:
            UnknownFeatureError: If the dimension or value is not in the table
        """
        if dimension == TYPE_DIMENSION:
            if value in pos.types:
                return pos.types[value]
            raise UnknownFeatureError(f"Unknown type {value!r} for part of speech {pos.name!r}")
        code = self.dimension(dimension).codes.get(value)
        if code is None:
            raise UnknownFeatureError(f"Unknown {dimension} value {value!r}")
        return code

    def __repr__(self) -> str:
        return (
            f"CodingTable(name={self.name!r}, version={self.version}, "
            f"digest={self.digest_hex[:12]})"
        )


@lru_cache(maxsize=1)
def default_coding_table() -> CodingTable:
    """The packaged Greek coding table."""
    return CodingTable.load(DEFAULT_TABLE_PATH)


def resolve_coding_table(path: str | Path | None) -> CodingTable:
    """Load the table at `path`, or the packaged default when `path` is None."""
    if path is None:
        return default_coding_table()
    return CodingTable.load(path)
