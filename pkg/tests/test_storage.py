"""Tests for compiled lexicon images."""

import hashlib
import json
import os
import random
import struct
import tempfile
from pathlib import Path

import pytest

from dawg_morph.coding import DEFAULT_TABLE_PATH, CodingTable, default_coding_table
from dawg_morph.dawg import STOP
from dawg_morph.encoding import FeatureQuery
from dawg_morph.engine import Lexicon
from dawg_morph.exceptions import (
    ChecksumMismatchError,
    CodingTableMismatchError,
    CompiledImageError,
    StorageError,
    VersionMismatchError,
)
from dawg_morph.ingest import ingest_tsv
from dawg_morph.pattern import Pattern
from dawg_morph.storage import (
    CHECKSUM_SIZE,
    EDGE,
    FORMAT_VERSION,
    HEADER,
    MAGIC,
    decode_image,
    encode_image,
    load_compiled,
    save_compiled,
)
from dawg_morph.types import DawgMode

from tests.paradigms import generate_entries

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def temp_dir():
    """Create temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(scope="module")
def paradigm_pool():
    """Entries to draw random lexicons from."""
    return generate_entries(lemmas_per_pos=2, seed=5)


@pytest.fixture
def sample_image() -> bytes:
    """Image bytes of the sample lexicon."""
    return encode_image(ingest_tsv(FIXTURES / "greek_sample.tsv").lexicon)


def _queries(lexicon: Lexicon) -> tuple:
    entries = lexicon.entries()
    surfaces = sorted({e.surface for e in entries})[:20]
    lemmas = sorted({e.lemma for e in entries})[:10]
    return (
        [lexicon.analyze(s) for s in surfaces],
        [lexicon.synthesize(lemma) for lemma in lemmas],
        [lexicon.synthesize(lemma, FeatureQuery.create(number="plural")) for lemma in lemmas],
        lexicon.fuzzy_lookup(Pattern.parse("*ος")),
    )


def test_save_and_load_sample(temp_dir):
    """Test saving and loading the sample lexicon."""
    lexicon = ingest_tsv(FIXTURES / "greek_sample.tsv").lexicon
    path = temp_dir / "sample.dawg"
    save_compiled(lexicon, path)

    loaded = load_compiled(path)
    assert loaded.dawg.frozen
    assert loaded.entry_count == lexicon.entry_count
    assert loaded.dawg.enumerate() == lexicon.dawg.enumerate()
    assert loaded.stats() == lexicon.stats()
    assert not (temp_dir / "sample.dawg.tmp").exists()


def test_persistence_fidelity_on_random_lexicons(paradigm_pool):
    """Test that 50 random lexicons survive save and load unchanged."""
    rng = random.Random(50)
    for i in range(50):
        mode = DawgMode.NONDETERMINISTIC if i % 2 else DawgMode.DETERMINISTIC
        lexicon = Lexicon(mode=mode)
        lexicon.add_entries(rng.sample(paradigm_pool, rng.randint(1, 120)))
        image = encode_image(lexicon)

        loaded = decode_image(image)
        assert loaded.mode is mode
        assert loaded.dawg.enumerate() == lexicon.dawg.enumerate()
        assert loaded.stats() == lexicon.stats()
        if mode is DawgMode.DETERMINISTIC:
            assert loaded.dawg.export_graph() == lexicon.dawg.export_graph()
        assert _queries(loaded) == _queries(lexicon)
        assert encode_image(loaded) == image


def test_empty_lexicon_round_trips():
    """Test an image without entries."""
    loaded = decode_image(encode_image(Lexicon()))
    assert loaded.entry_count == 0
    assert loaded.dawg.enumerate() == []


def test_image_is_independent_of_insertion_order(paradigm_pool):
    """Test canonical numbering gives identical bytes."""
    entries = paradigm_pool[:80]
    forward, backward = Lexicon(), Lexicon()
    forward.add_entries(entries)
    backward.add_entries(reversed(entries))
    assert encode_image(forward) == encode_image(backward)


def test_truncated_image(sample_image):
    """Test images cut short."""
    with pytest.raises(ChecksumMismatchError):
        decode_image(sample_image[:-1])
    with pytest.raises(ChecksumMismatchError):
        decode_image(sample_image[:10])
    with pytest.raises(ChecksumMismatchError):
        decode_image(b"")


def test_flipped_byte(sample_image):
    """Test a corrupt body."""
    corrupt = bytearray(sample_image)
    corrupt[HEADER.size + 3] ^= 0xFF
    with pytest.raises(ChecksumMismatchError):
        decode_image(bytes(corrupt))


def _rewrite_header(image: bytes, **changes: object) -> bytes:
    body = image[:-CHECKSUM_SIZE]
    fields = list(HEADER.unpack_from(body))
    names = ["magic", "version", "mode", "reserved", "digest", "nodes", "edges", "entries"]
    for name, value in changes.items():
        fields[names.index(name)] = value
    body = HEADER.pack(*fields) + body[HEADER.size :]
    return body + hashlib.sha256(body).digest()


def test_bad_magic(sample_image):
    """Test a file that is not an image."""
    with pytest.raises(CompiledImageError, match="magic"):
        decode_image(_rewrite_header(sample_image, magic=b"NOTDWG"))


def test_unsupported_version(sample_image):
    """Test an image from a newer format version."""
    with pytest.raises(VersionMismatchError):
        decode_image(_rewrite_header(sample_image, version=99))


def test_unknown_mode_byte(sample_image):
    """Test an image with an unknown storage mode."""
    with pytest.raises(CompiledImageError, match="mode"):
        decode_image(_rewrite_header(sample_image, mode=7))


def test_inconsistent_counts(sample_image):
    """Test header counts that do not match the tables."""
    with pytest.raises(CompiledImageError):
        decode_image(_rewrite_header(sample_image, edges=1))
    nodes = HEADER.unpack_from(sample_image)[5]
    entries = HEADER.unpack_from(sample_image)[7]
    with pytest.raises(CompiledImageError, match="entries"):
        decode_image(_rewrite_header(sample_image, entries=entries + 1))
    assert nodes > 2


def _pack_image(
    edges: list[tuple[int, str, int]], nodes: int, entries: int, mode_byte: int = 0
) -> bytes:
    """Checksum-valid image over hand-written edges (initial 0, terminal 1)."""
    degrees = [0] * nodes
    for source, _, _ in edges:
        degrees[source] += 1
    body = HEADER.pack(
        MAGIC,
        FORMAT_VERSION,
        mode_byte,
        0,
        default_coding_table().digest,
        nodes,
        len(edges),
        entries,
        0,
        1,
    )
    body += struct.pack(f"<{nodes}I", *degrees)
    for _, label, target in sorted(edges, key=lambda e: e[0]):
        body += EDGE.pack(ord(label), target)
    return body + hashlib.sha256(body).digest()


@pytest.mark.parametrize("mode_byte", [0, 1])
def test_hand_built_image_loads(mode_byte):
    """Test that a well-formed hand-written graph loads in both modes."""
    edges = [(0, "a", 2), (2, "b", 3), (3, STOP, 1)]
    lexicon = decode_image(_pack_image(edges, nodes=4, entries=1, mode_byte=mode_byte))
    assert lexicon.dawg.enumerate() == ["ab"]
    expected = DawgMode.DETERMINISTIC if mode_byte == 0 else DawgMode.NONDETERMINISTIC
    assert lexicon.mode is expected


@pytest.mark.parametrize("mode_byte", [0, 1])
def test_cyclic_image_is_rejected(mode_byte):
    """Test that a checksum-valid image whose graph has a cycle does not load."""
    edges = [(0, "a", 2), (2, "b", 0), (2, STOP, 1)]
    image = _pack_image(edges, nodes=3, entries=1, mode_byte=mode_byte)
    with pytest.raises(CompiledImageError, match="integrity.*cycle"):
        decode_image(image)


@pytest.mark.parametrize("mode_byte", [0, 1])
def test_nondeterministic_edges_in_image_are_rejected(mode_byte):
    """Test that two same-label edges leaving one node make the image invalid."""
    edges = [(0, "a", 2), (0, "a", 3), (2, "b", 4), (3, "c", 4), (4, STOP, 1)]
    image = _pack_image(edges, nodes=5, entries=2, mode_byte=mode_byte)
    with pytest.raises(CompiledImageError, match="determinism"):
        decode_image(image)


def test_coding_table_mismatch(sample_image):
    """Test loading with a different coding table."""
    with open(DEFAULT_TABLE_PATH, encoding="utf-8") as f:
        data = json.load(f)
    data["version"] = 2
    with pytest.raises(CodingTableMismatchError):
        decode_image(sample_image, CodingTable(data))


def test_load_missing_file(temp_dir):
    """Test loading a file that does not exist."""
    with pytest.raises(StorageError):
        load_compiled(temp_dir / "missing.dawg")


def test_save_into_missing_directory(temp_dir):
    """Test that a failed write raises and leaves no temporary file."""
    target = temp_dir / "nope" / "lexicon.dawg"
    with pytest.raises(StorageError):
        save_compiled(Lexicon(), target)
    assert not target.exists()


def test_saved_image_permissions(temp_dir):
    """Test that images are world-readable but not world-writable."""
    path = temp_dir / "perm.dawg"
    save_compiled(Lexicon(), path)
    mode = os.stat(path).st_mode & 0o777
    assert not mode & 0o022


def test_header_layout(sample_image):
    """Test the fixed header fields."""
    magic, version, mode, _, digest, nodes, edges, entries, initial, terminal = (
        HEADER.unpack_from(sample_image)
    )
    assert magic == b"MDAWG1"
    assert version == 1
    assert mode == 0
    assert len(digest) == 32
    assert entries == 19
    assert (initial, terminal) == (0, 1)
    degrees = struct.unpack_from(f"<{nodes}I", sample_image, HEADER.size)
    assert sum(degrees) == edges
