"""Analysis throughput benchmark."""

import logging
import random
import statistics
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from dawg_morph.encoding import OPEN
from dawg_morph.engine import Lexicon
from dawg_morph.exceptions import BenchmarkError, StorageError
from dawg_morph.types import BenchReport

logger = logging.getLogger(__name__)

REFERENCE_WORDS_PER_SEC = 10_000
DEFAULT_REPEAT = 5


def surfaces(lexicon: Lexicon) -> list[str]:
    """Distinct surface forms of the lexicon, sorted."""
    return sorted({encoded.partition(OPEN)[0] for encoded in lexicon.dawg.enumerate()})


def generate_queries(lexicon: Lexicon, n: int, seed: int = 0) -> list[str]:
    """Draw `n` surface forms from the lexicon (with replacement, reproducible).

    Raises:
        BenchmarkError: If n is not positive or the lexicon is empty
    """
    if n <= 0:
        raise BenchmarkError(f"Number of generated queries must be positive, got {n}")
    words = surfaces(lexicon)
    if not words:
        raise BenchmarkError("Cannot generate queries from an empty lexicon")
    rng = random.Random(seed)
    return [rng.choice(words) for _ in range(n)]


def load_queries(path: str | Path) -> list[str]:
    """One query word per line; blank lines are skipped.

    Raises:
        StorageError: If the file cannot be read
    """
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as e:
        raise StorageError(f"Failed to read queries {path}: {e}") from e
    return [line.strip() for line in text.split("\n") if line.strip()]


def _analyze_all(lexicon: Lexicon, words: Sequence[str]) -> int:
    return sum(len(lexicon.analyze(word)) for word in words)


def run_benchmark(
    lexicon: Lexicon,
    queries: Sequence[str],
    repeat: int = DEFAULT_REPEAT,
    threads: int = 1,
) -> BenchReport:
    """Time `analyze` over the query list.

    Only query execution is timed. With several threads the queries are split
    into interleaved chunks analyzed concurrently on the frozen lexicon.

    Args:
        lexicon: Lexicon to query (frozen here if it is not already)
        queries: Surface forms to analyze
        repeat: Number of timed runs
        threads: Number of reader threads

    Returns:
        Report with per-run and median rates in words per second

    Raises:
        BenchmarkError: If there are no queries or repeat/threads are not positive
    """
    if not queries:
        raise BenchmarkError("No queries to run")
    if repeat < 1 or threads < 1:
        raise BenchmarkError("repeat and threads must be at least 1")
    if not lexicon.dawg.frozen:
        lexicon.freeze()

    chunks = [list(queries[i::threads]) for i in range(threads)]
    rates: list[float] = []
    analyses = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for run in range(repeat):
            start = time.perf_counter()
            if threads == 1:
                analyses = _analyze_all(lexicon, queries)
            else:
                analyses = sum(pool.map(lambda chunk: _analyze_all(lexicon, chunk), chunks))
            elapsed = max(time.perf_counter() - start, 1e-9)
            rates.append(len(queries) / elapsed)
            logger.debug("Run %d: %.0f words/sec", run + 1, rates[-1])

    median = statistics.median(rates)
    return {
        "queries": len(queries),
        "repeat": repeat,
        "threads": threads,
        "entries": lexicon.entry_count,
        "analyses": analyses,
        "runs_per_sec": rates,
        "median_per_sec": median,
        "reference_per_sec": REFERENCE_WORDS_PER_SEC,
        "speedup": median / REFERENCE_WORDS_PER_SEC,
        "meets_reference": median >= REFERENCE_WORDS_PER_SEC,
    }
