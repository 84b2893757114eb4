"""Statistics reports and graph dumps."""

import logging
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from dawg_morph.dawg import STOP, Dawg
from dawg_morph.engine import Lexicon
from dawg_morph.number_format import format_count, format_rate, format_ratio
from dawg_morph.types import BenchReport, DawgMode, DumpEdge, DumpReport, StatsReport

logger = logging.getLogger(__name__)

STOP_DISPLAY = "␀"
DUMP_FORMATS = ("text", "dot")


def display_symbol(label: str) -> str:
    """Printable form of an edge label (the stop symbol is shown as ␀)."""
    return STOP_DISPLAY if label == STOP else label


def dot_label(label: str) -> str:
    """Edge label escaped for a double-quoted Graphviz string."""
    return display_symbol(label).replace("\\", "\\\\").replace('"', '\\"')


def _environment() -> Environment:
    templates_dir = Path(__file__).parent / "templates"
    env = Environment(
        loader=FileSystemLoader(str(templates_dir)),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["number"] = format_count
    env.filters["ratio"] = format_ratio
    env.filters["rate"] = format_rate
    env.filters["dot_label"] = dot_label
    return env


def build_stats_report(lexicon: Lexicon) -> StatsReport:
    """Node, edge, entry and trie-equivalent counts of a lexicon.

    Args:
        lexicon: Lexicon to measure

    Returns:
        Report with the fixed JSON keys nodes, edges, entries, trie_nodes, ratio, mode
    """
    stats = lexicon.stats()
    return {
        "nodes": stats.node_count,
        "edges": stats.edge_count,
        "entries": stats.string_count,
        "trie_nodes": stats.trie_node_count,
        "ratio": stats.compression_ratio,
        "mode": stats.mode.value,
    }


def render_stats_text(report: StatsReport) -> str:
    return _environment().get_template("stats.txt.j2").render(report=report)


def compression_summary(lexicon: Lexicon) -> dict[str, int]:
    """Node counts of the trie and of both graph modes for the same entries."""
    counts = {"trie": lexicon.stats().trie_node_count}
    for mode in DawgMode:
        dawg = lexicon.dawg if mode is lexicon.mode else lexicon.dawg.copy(mode)
        counts[mode.value] = dawg.stats().node_count
    return counts


def build_dump(dawg: Dawg) -> DumpReport:
    """Canonically numbered nodes and edges of the graph in its own mode."""
    graph = dawg.export_graph()
    edges: list[DumpEdge] = [
        {"source": source, "label": display_symbol(label), "target": target}
        for source, label, target in graph.edges
    ]
    return {
        "mode": graph.mode.value,
        "nodes": graph.node_count,
        "initial": graph.initial,
        "terminal": graph.terminal,
        "edges": edges,
    }


def render_dump(dawg: Dawg, fmt: str = "text") -> str:
    """Render the graph as a tab-separated edge list or as Graphviz DOT.

    Raises:
        ValueError: If `fmt` is not "text" or "dot"
    """
    if fmt not in DUMP_FORMATS:
        raise ValueError(f"Unknown dump format {fmt!r}")
    dump = build_dump(dawg)
    return _environment().get_template(f"dump.{fmt}.j2").render(dump=dump)


def render_bench_text(report: BenchReport) -> str:
    return _environment().get_template("bench.txt.j2").render(report=report)
