"""Tests for the throughput benchmark."""

import tempfile
from pathlib import Path

import pytest

from dawg_morph.bench import (
    REFERENCE_WORDS_PER_SEC,
    generate_queries,
    load_queries,
    run_benchmark,
    surfaces,
)
from dawg_morph.engine import Lexicon
from dawg_morph.exceptions import BenchmarkError, StorageError
from dawg_morph.ingest import ingest_tsv

from tests.paradigms import generate_entries

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def sample_lexicon() -> Lexicon:
    """Sample lexicon, not yet frozen."""
    return ingest_tsv(FIXTURES / "greek_sample.tsv").lexicon


def test_surfaces(sample_lexicon):
    """Test distinct surface forms of a lexicon."""
    words = surfaces(sample_lexicon)
    assert "του" in words
    assert len(words) == len(set(words)) == 18


def test_generate_queries_is_reproducible(sample_lexicon):
    """Test seeded query generation."""
    first = generate_queries(sample_lexicon, 50, seed=1)
    assert first == generate_queries(sample_lexicon, 50, seed=1)
    assert len(first) == 50
    assert set(first) <= set(surfaces(sample_lexicon))


@pytest.mark.parametrize("n", [0, -5])
def test_generate_queries_rejects_non_positive(sample_lexicon, n):
    """Test that a non-positive query count is an error."""
    with pytest.raises(BenchmarkError):
        generate_queries(sample_lexicon, n)


def test_generate_queries_from_empty_lexicon():
    """Test generation from an empty lexicon."""
    with pytest.raises(BenchmarkError):
        generate_queries(Lexicon(), 10)


def test_load_queries():
    """Test reading a query file."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "queries.txt"
        path.write_text("λόγος\n\n  του  \n", encoding="utf-8")
        assert load_queries(path) == ["λόγος", "του"]
        with pytest.raises(StorageError):
            load_queries(Path(tmpdir) / "missing.txt")


def test_run_benchmark_report(sample_lexicon):
    """Test the report fields of a small run."""
    report = run_benchmark(sample_lexicon, ["του", "λόγος", "άγνωστο"], repeat=3)
    assert sample_lexicon.dawg.frozen
    assert report["queries"] == 3
    assert report["repeat"] == 3
    assert report["entries"] == 19
    assert report["analyses"] == 3
    assert len(report["runs_per_sec"]) == 3
    assert report["reference_per_sec"] == REFERENCE_WORDS_PER_SEC
    assert report["speedup"] == pytest.approx(report["median_per_sec"] / REFERENCE_WORDS_PER_SEC)
    assert report["meets_reference"] is (report["median_per_sec"] >= REFERENCE_WORDS_PER_SEC)


def test_run_benchmark_threads(sample_lexicon):
    """Test that concurrent readers produce the same analysis count."""
    queries = generate_queries(sample_lexicon, 200, seed=3)
    single = run_benchmark(sample_lexicon, queries, repeat=1, threads=1)
    several = run_benchmark(sample_lexicon, queries, repeat=1, threads=4)
    assert single["analyses"] == several["analyses"]
    assert several["threads"] == 4


def test_run_benchmark_rejects_bad_arguments(sample_lexicon):
    """Test empty query lists and non-positive counts."""
    with pytest.raises(BenchmarkError):
        run_benchmark(sample_lexicon, [])
    with pytest.raises(BenchmarkError):
        run_benchmark(sample_lexicon, ["του"], repeat=0)
    with pytest.raises(BenchmarkError):
        run_benchmark(sample_lexicon, ["του"], threads=0)


@pytest.mark.slow
def test_throughput_meets_reference():
    """Test at least 10,000 analyses per second on a lexicon of over 10,000 entries."""
    lexicon = Lexicon()
    lexicon.add_entries(generate_entries(lemmas_per_pos=8, seed=11))
    assert lexicon.entry_count >= 10_000
    queries = generate_queries(lexicon, 20_000, seed=0)
    report = run_benchmark(lexicon, queries, repeat=5)
    assert report["meets_reference"], report["median_per_sec"]
