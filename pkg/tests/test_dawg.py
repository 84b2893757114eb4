"""Tests for the directed acyclic word graph."""

import threading

import pytest

from dawg_morph.dawg import STOP, Dawg
from dawg_morph.exceptions import DawgFrozenError, EmptyStringError, RejectedSymbolError
from dawg_morph.pattern import WILDCARD, Pattern
from dawg_morph.types import DawgMode, ViolationKind

from tests.oracles import minimal_dfa_node_count, regex_filter, trie_node_count


@pytest.fixture(params=list(DawgMode), ids=lambda m: m.value)
def mode(request):
    """Run a test in both storage modes."""
    return request.param


def test_new_dawg_is_empty(mode):
    """Test that a new graph accepts nothing."""
    dawg = Dawg(mode)
    assert dawg.enumerate() == []
    assert dawg.string_count == 0
    assert len(dawg) == 0
    assert dawg.stats().string_count == 0
    assert dawg.stats().edge_count == 0


def test_single_string_chain():
    """Test that one string gives a t-o-p-stop chain of five nodes."""
    dawg = Dawg()
    assert dawg.insert("top") is True
    assert dawg.enumerate() == ["top"]
    assert dawg.stats().node_count == 5
    assert dawg.stats().edge_count == 4
    labels = [label for _, label, _ in dawg.export_graph().edges]
    assert sorted(labels) == sorted(["t", "o", "p", STOP])


def test_shared_suffix_is_minimal():
    """Test that top/tap share their suffix and match the minimal automaton size."""
    dawg = Dawg.from_strings(["top", "tap"])
    assert dawg.enumerate() == ["tap", "top"]
    assert dawg.stats().node_count == minimal_dfa_node_count(["top", "tap"])
    assert dawg.stats().node_count == 5


def test_insert_into_existing_set():
    """Test that insertion extends the accepted set and keeps old strings."""
    words = ["stop", "star", "tops", "taps", "stare"]
    dawg = Dawg.from_strings(words)
    dawg.insert("stair")
    assert dawg.enumerate() == sorted(words + ["stair"])
    assert dawg.stats().node_count == minimal_dfa_node_count(words + ["stair"])
    assert dawg.check_integrity().ok


def test_prefix_of_stored_string_is_not_stored():
    """Test that prefixes are not accepted."""
    dawg = Dawg.from_strings(["top"])
    assert dawg.contains("top")
    assert not dawg.contains("to")
    assert not dawg.contains("tops")
    assert "top" in dawg
    assert 42 not in dawg


def test_contains_on_empty_graph(mode):
    """Test membership on an empty graph."""
    assert not Dawg(mode).contains("a")
    assert not Dawg(mode).contains("")


def test_string_and_its_extension():
    """Test that a string and its proper prefix can both be stored."""
    dawg = Dawg.from_strings(["to", "top", "t"])
    assert dawg.enumerate() == ["t", "to", "top"]
    assert dawg.stats().node_count == minimal_dfa_node_count(["t", "to", "top"])


def test_enumerate_is_lexicographic():
    """Test ordering by code point."""
    dawg = Dawg.from_strings(["b", "a"])
    assert dawg.enumerate() == ["a", "b"]
    assert list(dawg) == ["a", "b"]


def test_duplicate_insert_is_a_no_op():
    """Test that re-inserting leaves the graph unchanged."""
    dawg = Dawg.from_strings(["top", "tap"])
    before = dawg.export_graph()
    assert dawg.insert("top") is False
    assert dawg.string_count == 2
    assert dawg.export_graph() == before


def test_rejected_inputs():
    """Test the stop symbol and empty strings are rejected."""
    dawg = Dawg()
    with pytest.raises(RejectedSymbolError):
        dawg.insert("a\x00b")
    with pytest.raises(EmptyStringError):
        dawg.insert("")
    assert dawg.string_count == 0


def test_frozen_graph_rejects_inserts(mode):
    """Test that inserts after freeze() fail."""
    dawg = Dawg.from_strings(["a"], mode)
    dawg.freeze()
    assert dawg.frozen
    with pytest.raises(DawgFrozenError):
        dawg.insert("b")


def test_confluence_node_is_cloned():
    """Test insertion through a node shared by two prefixes."""
    # "ab" and "cb" share the node after the first letter once minimized
    dawg = Dawg.from_strings(["ab", "cb"])
    dawg.insert("abx")
    assert dawg.enumerate() == ["ab", "abx", "cb"]
    assert not dawg.contains("cbx")
    assert dawg.stats().node_count == minimal_dfa_node_count(["ab", "cb", "abx"])
    assert dawg.check_integrity().ok


def test_match_forward_prefix_pattern(mode):
    """Test forward search with a literal prefix."""
    dawg = Dawg.from_strings(["top", "tap", "ton"], mode)
    assert dawg.match_forward(Pattern.of("to", WILDCARD)) == ["ton", "top"]


def test_match_forward_universal_pattern(mode):
    """Test that a lone wildcard enumerates everything."""
    dawg = Dawg.from_strings(["top", "tap", "ton"], mode)
    assert dawg.match_forward(Pattern((WILDCARD,))) == ["tap", "ton", "top"]


def test_match_forward_exact_literal(mode):
    """Test that a pattern without wildcards is membership."""
    dawg = Dawg.from_strings(["top", "tap"], mode)
    assert dawg.match_forward(Pattern.literal("top")) == ["top"]
    assert dawg.match_forward(Pattern.literal("to")) == []


def test_match_reverse_suffix_pattern(mode):
    """Test reverse search anchored on a literal suffix."""
    dawg = Dawg.from_strings(["top", "tap", "ton"], mode)
    assert dawg.match_reverse(Pattern.of(WILDCARD, "p")) == ["tap", "top"]


def test_match_reverse_on_empty_graph(mode):
    """Test reverse search on an empty graph."""
    assert Dawg(mode).match_reverse(Pattern((WILDCARD,))) == []
    assert Dawg(mode).match_forward(Pattern((WILDCARD,))) == []


@pytest.mark.parametrize(
    "glob", ["*", "t*", "*p", "t*p", "*o*", "top", "*a*p*", "x*", "**n", "top*", "potato*", "*tapa"]
)
def test_forward_and_reverse_agree_with_oracle(mode, glob):
    """Test both search directions against a regex filter."""
    words = ["top", "tap", "ton", "stop", "tops", "a", "potato", "tapa"]
    dawg = Dawg.from_strings(words, mode)
    pattern = Pattern.parse(glob)
    expected = regex_filter(words, pattern)
    assert dawg.match_forward(pattern) == expected
    assert dawg.match_reverse(pattern) == expected


def test_stats_against_trie():
    """Test trie size and compression for a small set."""
    words = ["top", "tap"]
    stats = Dawg.from_strings(words).stats()
    assert stats.trie_node_count == trie_node_count(words)
    assert stats.node_count <= stats.trie_node_count
    assert stats.compression_ratio == stats.trie_node_count / stats.node_count


def test_empty_stats():
    """Test statistics of an empty graph."""
    stats = Dawg().stats()
    assert (stats.node_count, stats.edge_count, stats.trie_node_count) == (0, 0, 0)
    assert stats.compression_ratio is None


def test_nondeterministic_view_is_never_larger():
    """Test the folded view against the deterministic graph."""
    words = ["top", "tap", "tops", "taps", "stop", "star", "stare"]
    det = Dawg.from_strings(words)
    nondet = det.copy(DawgMode.NONDETERMINISTIC)
    assert nondet.enumerate() == det.enumerate()
    assert nondet.stats().node_count < det.stats().node_count
    assert nondet.stats().trie_node_count == det.stats().trie_node_count
    assert nondet.check_integrity().ok


def test_nondeterministic_view_has_no_stop_symbol():
    """Test that stop edges are folded away."""
    dawg = Dawg.from_strings(["to", "top"], DawgMode.NONDETERMINISTIC)
    assert all(label != STOP for _, label, _ in dawg.export_graph().edges)
    assert STOP in {label for _, label, _ in dawg.export_graph(source=True).edges}
    assert dawg.contains("to") and dawg.contains("top") and not dawg.contains("t")


def test_check_integrity_empty(mode):
    """Test that an empty graph is healthy."""
    assert Dawg(mode).check_integrity().violations == ()


def test_check_integrity_reports_determinism_violation():
    """Test a hand-built graph with two same-labeled edges."""
    edges = [(0, "a", 2), (0, "a", 3), (2, "b", 4), (3, "c", 4), (4, STOP, 1)]
    dawg = Dawg.from_edges(edges, initial=0, terminal=1)
    report = dawg.check_integrity()
    assert len(report.violations) == 1
    assert report.violations[0].kind is ViolationKind.DETERMINISM
    assert report.violations[0].node == 0


def test_check_integrity_reports_cycle_and_pruning():
    """Test hand-built graphs with a cycle and with a dead end."""
    cyclic = Dawg.from_edges([(0, "a", 2), (2, "b", 0), (2, STOP, 1)], initial=0, terminal=1)
    assert cyclic.check_integrity().of_kind(ViolationKind.CYCLE)

    dead_end = Dawg.from_edges([(0, "a", 2), (2, STOP, 1), (0, "b", 3)], initial=0, terminal=1)
    pruning = dead_end.check_integrity().of_kind(ViolationKind.PRUNING)
    assert [v.node for v in pruning] == [3]


def test_check_integrity_reports_misplaced_stop():
    """Test a stop edge that does not enter the terminal node."""
    edges = [(0, "a", 2), (2, STOP, 3), (3, "b", 1)]
    report = Dawg.from_edges(edges, initial=0, terminal=1).check_integrity()
    assert report.of_kind(ViolationKind.STOP_SYMBOL)


def test_from_edges_round_trip():
    """Test rebuilding a graph from its canonical export."""
    dawg = Dawg.from_strings(["top", "tap", "ton", "to"])
    export = dawg.export_graph(source=True)
    rebuilt = Dawg.from_edges(export.edges, initial=export.initial, terminal=export.terminal)
    assert rebuilt.enumerate() == dawg.enumerate()
    assert rebuilt.string_count == 4
    rebuilt.insert("tan")
    assert rebuilt.stats().node_count == minimal_dfa_node_count(["top", "tap", "ton", "to", "tan"])


def test_export_is_independent_of_insertion_order():
    """Test canonical numbering for permuted input."""
    words = ["μονιμότερον", "μόνιμος", "μόνιμου", "λόγος", "λόγου"]
    first = Dawg.from_strings(words).export_graph()
    second = Dawg.from_strings(reversed(words)).export_graph()
    assert first == second


def test_concurrent_reads_on_frozen_graph(mode):
    """Test that several threads can search a frozen graph."""
    words = [f"w{i:03d}x" for i in range(200)]
    dawg = Dawg.from_strings(words, mode)
    dawg.freeze()
    results: list[list[str]] = []

    def worker() -> None:
        results.append(dawg.match_reverse(Pattern.of(WILDCARD, "5", WILDCARD)))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    expected = regex_filter(words, Pattern.of(WILDCARD, "5", WILDCARD))
    assert results == [expected] * 8


def test_prefix_query_respects_barrier(mode):
    """Test that a restricted trailing wildcard still stops at barrier symbols."""
    dawg = Dawg.from_strings(["ab(c", "abc", "ab"], mode)
    pattern = Pattern.parse("ab*").with_barrier("(")
    assert dawg.match_forward(pattern) == ["ab", "abc"]
    assert dawg.match_reverse(pattern) == ["ab", "abc"]
    assert dawg.match_forward(Pattern.parse("ab*")) == ["ab", "ab(c", "abc"]
