"""Type definitions for dawg-morph."""

from enum import Enum
from typing import TypedDict

from typing_extensions import NotRequired


class DawgMode(Enum):
    """Storage mode of a word graph."""

    DETERMINISTIC = "det"
    NONDETERMINISTIC = "nondet"


class ViolationKind(Enum):
    """Kind of structural problem found by an integrity check."""

    CYCLE = "cycle"
    PRUNING = "pruning"
    DETERMINISM = "determinism"
    STOP_SYMBOL = "stop-symbol"


class StatsReport(TypedDict):
    """Statistics of a compiled lexicon (JSON schema of `stats --json`)."""

    nodes: int
    edges: int
    entries: int
    trie_nodes: int
    ratio: float | None  # trie_nodes / nodes, None for an empty lexicon
    mode: str  # "det" or "nondet"


class AnalysisRecord(TypedDict):
    """One analysis of a surface form."""

    lemma: str
    features: dict[str, str]


class AnalyzeRecord(TypedDict):
    """All analyses of one queried word (JSON schema of `analyze --json`)."""

    surface: str
    analyses: list[AnalysisRecord]


class FormRecord(TypedDict):
    """One inflected form returned by synthesis or reinflection."""

    surface: str
    features: dict[str, str]
    lemma: NotRequired[str]


class BenchReport(TypedDict):
    """Throughput benchmark result (JSON schema of `bench --json`)."""

    queries: int
    repeat: int
    threads: int
    entries: int
    analyses: int  # analyses produced per run
    runs_per_sec: list[float]  # timing
    median_per_sec: float  # timing
    reference_per_sec: int
    speedup: float  # timing
    meets_reference: bool  # timing


class DumpEdge(TypedDict):
    """One edge of a dumped graph."""

    source: int
    label: str
    target: int


class DumpReport(TypedDict):
    """Graph dump (JSON schema of `dump --json`)."""

    mode: str
    nodes: int
    initial: int
    terminal: int
    edges: list[DumpEdge]
