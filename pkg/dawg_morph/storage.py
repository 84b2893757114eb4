"""Compiled lexicon images.

Layout (little-endian):

    header      magic "MDAWG1", u16 version, u8 mode, u8 reserved, 32-byte coding-table
                digest, u32 node count, u32 edge count, u32 entry count,
                u32 initial node, u32 terminal node
    degrees     u32 out-degree per node, in node order
    edges       (u32 label code point, u32 target) per edge, grouped by source node
    checksum    SHA-256 of everything above

The stored graph is always the stop-terminated deterministic graph with canonical
node numbering; the non-deterministic view is derived again on load.
"""

import hashlib
import logging
import os
import struct
import sys
from pathlib import Path

from dawg_morph.coding import CodingTable, default_coding_table
from dawg_morph.dawg import Dawg
from dawg_morph.engine import Lexicon
from dawg_morph.exceptions import (
    ChecksumMismatchError,
    CodingTableMismatchError,
    CompiledImageError,
    StorageError,
    VersionMismatchError,
)
from dawg_morph.types import DawgMode

logger = logging.getLogger(__name__)

MAGIC = b"MDAWG1"
FORMAT_VERSION = 1
HEADER = struct.Struct("<6sHBB32sIIIII")
EDGE = struct.Struct("<II")
CHECKSUM_SIZE = hashlib.sha256().digest_size

_MODE_BYTES = {DawgMode.DETERMINISTIC: 0, DawgMode.NONDETERMINISTIC: 1}
_BYTE_MODES = {value: mode for mode, value in _MODE_BYTES.items()}


def encode_image(lexicon: Lexicon) -> bytes:
    """Serialize a lexicon to image bytes."""
    graph = lexicon.dawg.export_graph(source=True)
    degrees = [0] * graph.node_count
    for source, _, _ in graph.edges:
        degrees[source] += 1

    parts = [
        HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            _MODE_BYTES[lexicon.mode],
            0,
            lexicon.coding.digest,
            graph.node_count,
            len(graph.edges),
            lexicon.entry_count,
            graph.initial,
            graph.terminal,
        ),
        struct.pack(f"<{graph.node_count}I", *degrees),
    ]
    parts.extend(EDGE.pack(ord(label), target) for _, label, target in graph.edges)
    body = b"".join(parts)
    return body + hashlib.sha256(body).digest()


def decode_image(data: bytes, table: CodingTable | None = None) -> Lexicon:
    """Rebuild a lexicon from image bytes.

    Args:
        data: Image bytes
        table: Coding table the image must have been compiled with

    Returns:
        Frozen lexicon

    Raises:
        ChecksumMismatchError: If the image is truncated or corrupt
        CompiledImageError: If the magic number or table sizes are wrong
        VersionMismatchError: If the format version is not supported
        CodingTableMismatchError: If the image was compiled with another coding table
    """
    table = table or default_coding_table()
    if len(data) < HEADER.size + CHECKSUM_SIZE:
        raise ChecksumMismatchError(f"Image is truncated ({len(data)} bytes)")
    body, checksum = data[:-CHECKSUM_SIZE], data[-CHECKSUM_SIZE:]
    if hashlib.sha256(body).digest() != checksum:
        raise ChecksumMismatchError("Image checksum does not match its contents")

    (
        magic,
        version,
        mode_byte,
        _,
        digest,
        node_count,
        edge_count,
        entry_count,
        initial,
        terminal,
    ) = HEADER.unpack_from(body)
    if magic != MAGIC:
        raise CompiledImageError(f"Not a compiled lexicon image (magic {magic!r})")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"Image format version {version} is not supported (expected {FORMAT_VERSION})"
        )
    if digest != table.digest:
        raise CodingTableMismatchError(
            f"Image was compiled with coding table {digest.hex()[:12]}, "
            f"not {table.name} ({table.digest_hex[:12]})"
        )
    mode = _BYTE_MODES.get(mode_byte)
    if mode is None:
        raise CompiledImageError(f"Unknown storage mode byte {mode_byte}")

    expected = HEADER.size + 4 * node_count + EDGE.size * edge_count
    if len(body) != expected or max(initial, terminal) >= node_count:
        raise CompiledImageError("Image tables do not match the header counts")

    degrees = struct.unpack_from(f"<{node_count}I", body, HEADER.size)
    if sum(degrees) != edge_count:
        raise CompiledImageError("Out-degree table does not match the edge count")
    edges = []
    offset = HEADER.size + 4 * node_count
    for source, degree in enumerate(degrees):
        for _ in range(degree):
            label, target = EDGE.unpack_from(body, offset)
            offset += EDGE.size
            if target >= node_count or label > sys.maxunicode:
                raise CompiledImageError(f"Edge {source} -> {target} out of range")
            edges.append((source, chr(label), target))

    # The stored graph is deterministic whatever the mode; check it before deriving views.
    dawg = Dawg.from_edges(edges, initial=initial, terminal=terminal)
    report = dawg.check_integrity()
    if not report.ok:
        first = report.violations[0]
        raise CompiledImageError(
            f"Image graph fails its integrity check ({len(report.violations)} violations, "
            f"first: {first.kind.value} at node {first.node}: {first.detail})"
        )
    if mode is not DawgMode.DETERMINISTIC:
        dawg = dawg.copy(mode)
    if dawg.string_count != entry_count:
        raise CompiledImageError(
            f"Image holds {dawg.string_count} entries, header says {entry_count}"
        )
    lexicon = Lexicon(table, dawg=dawg)
    lexicon.freeze()
    return lexicon


def save_compiled(lexicon: Lexicon, path: str | Path) -> None:
    """Write a compiled image atomically.

    Raises:
        StorageError: If writing fails
    """
    path = Path(path)
    data = encode_image(lexicon)
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        fd = os.open(tmp_path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o644)
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_path, path)
    except OSError as e:
        tmp_path.unlink(missing_ok=True)
        raise StorageError(f"Failed to save compiled lexicon {path}: {e}") from e
    logger.info("Saved %d entries (%d bytes) to %s", lexicon.entry_count, len(data), path)


def load_compiled(path: str | Path, table: CodingTable | None = None) -> Lexicon:
    """Load a compiled image.

    Raises:
        StorageError: If the file cannot be read
        CompiledImageError: If the image is invalid (see `decode_image`)
    """
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise StorageError(f"Failed to read compiled lexicon {path}: {e}") from e
    lexicon = decode_image(data, table)
    logger.info("Loaded %d entries from %s", lexicon.entry_count, path)
    return lexicon
