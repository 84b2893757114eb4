"""Directed acyclic word graph (DAWG) with on-line minimal construction.

Strings are stored as paths from a single initial node to a single terminal node.
In deterministic mode every stored string is followed by the reserved stop symbol
(U+0000) whose edge enters the terminal node, and the graph is kept minimal after
every insertion. Insertion runs in three stages:

1. follow the longest stored prefix of the new string, cloning the path from the
   first confluence node (a node with more than one parent) onwards;
2. append a fresh chain of nodes for the unmatched remainder;
3. walk back towards the initial node, replacing every new or changed node with an
   already registered node of identical out-edges, or registering it.

The non-deterministic mode is a view derived from the deterministic graph: stop
edges are folded into the terminal node and nodes with identical out-edge sets are
merged. It is never larger than the deterministic graph, but gives no minimality
guarantee.
"""

import logging
import threading
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from dawg_morph.exceptions import DawgFrozenError, EmptyStringError, RejectedSymbolError
from dawg_morph.pattern import WILDCARD, Pattern, PatternMatcher
from dawg_morph.types import DawgMode, ViolationKind

logger = logging.getLogger(__name__)

STOP = "\x00"

Signature = tuple[tuple[str, int], ...]
Edge = tuple[int, str, int]


@dataclass(frozen=True)
class DawgStats:
    """Structural statistics of a word graph."""

    node_count: int
    edge_count: int
    string_count: int
    mode: DawgMode
    trie_node_count: int

    @property
    def compression_ratio(self) -> float | None:
        """Trie nodes per graph node, or None for an empty graph."""
        if not self.node_count:
            return None
        return self.trie_node_count / self.node_count


@dataclass(frozen=True)
class IntegrityViolation:
    """A single structural problem."""

    kind: ViolationKind
    node: int | None
    detail: str


@dataclass(frozen=True)
class IntegrityReport:
    """Result of `Dawg.check_integrity` (empty = healthy)."""

    violations: tuple[IntegrityViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: ViolationKind) -> list[IntegrityViolation]:
        return [v for v in self.violations if v.kind is kind]


@dataclass(frozen=True)
class GraphExport:
    """Canonically numbered edge list (initial = 0, terminal = 1)."""

    mode: DawgMode
    node_count: int
    edges: tuple[Edge, ...]
    initial: int = 0
    terminal: int = 1


class _Graph:
    """Labeled multigraph with forward and backward adjacency."""

    def __init__(self) -> None:
        self.out: dict[int, dict[str, set[int]]] = {}
        self.inn: dict[int, dict[str, set[int]]] = {}
        self.initial = -1
        self.terminal = -1
        self._next_id = 0

    @classmethod
    def with_endpoints(cls) -> "_Graph":
        graph = cls()
        graph.initial = graph.add_node()
        graph.terminal = graph.add_node()
        return graph

    def add_node(self, node: int | None = None) -> int:
        if node is None:
            node = self._next_id
        self._next_id = max(self._next_id, node + 1)
        self.out.setdefault(node, {})
        self.inn.setdefault(node, {})
        return node

    def remove_node(self, node: int) -> None:
        for label, targets in list(self.out[node].items()):
            for target in list(targets):
                self.remove_edge(node, label, target)
        for label, sources in list(self.inn[node].items()):
            for source in list(sources):
                self.remove_edge(source, label, node)
        del self.out[node]
        del self.inn[node]

    def add_edge(self, source: int, label: str, target: int) -> None:
        self.out[source].setdefault(label, set()).add(target)
        self.inn[target].setdefault(label, set()).add(source)

    def remove_edge(self, source: int, label: str, target: int) -> None:
        targets = self.out[source][label]
        targets.discard(target)
        if not targets:
            del self.out[source][label]
        sources = self.inn[target][label]
        sources.discard(source)
        if not sources:
            del self.inn[target][label]

    def redirect(self, source: int, label: str, old: int, new: int) -> None:
        self.remove_edge(source, label, old)
        self.add_edge(source, label, new)

    def target(self, node: int, label: str) -> int | None:
        targets = self.out[node].get(label)
        if not targets:
            return None
        return next(iter(targets))

    def has_several_parents(self, node: int) -> bool:
        total = 0
        for sources in self.inn[node].values():
            total += len(sources)
            if total > 1:
                return True
        return False

    def signature(self, node: int) -> Signature:
        return tuple(
            sorted(
                (label, target) for label, targets in self.out[node].items() for target in targets
            )
        )

    def clone(self, node: int) -> int:
        copy = self.add_node()
        for label, targets in self.out[node].items():
            for target in targets:
                self.add_edge(copy, label, target)
        return copy

    def edges(self) -> Iterator[Edge]:
        for source, labels in self.out.items():
            for label, targets in labels.items():
                for target in targets:
                    yield source, label, target

    def edge_count(self) -> int:
        return sum(len(targets) for labels in self.out.values() for targets in labels.values())

    def copy(self) -> "_Graph":
        graph = _Graph()
        graph.out = {n: {lb: set(ts) for lb, ts in lbs.items()} for n, lbs in self.out.items()}
        graph.inn = {n: {lb: set(ss) for lb, ss in lbs.items()} for n, lbs in self.inn.items()}
        graph.initial = self.initial
        graph.terminal = self.terminal
        graph._next_id = self._next_id
        return graph


def _topological_order(graph: _Graph) -> list[int] | None:
    """Kahn's algorithm; None if the graph has a cycle."""
    indegree = {
        node: sum(len(sources) for sources in labels.values())
        for node, labels in graph.inn.items()
    }
    queue = deque(sorted(node for node, degree in indegree.items() if degree == 0))
    order: list[int] = []
    while queue:
        node = queue.popleft()
        order.append(node)
        for targets in graph.out[node].values():
            for target in targets:
                indegree[target] -= 1
                if indegree[target] == 0:
                    queue.append(target)
    if len(order) != len(graph.out):
        return None
    return order


def _reachable(graph: _Graph, start: int, forward: bool) -> set[int]:
    adjacency = graph.out if forward else graph.inn
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for neighbours in adjacency[node].values():
            for neighbour in neighbours:
                if neighbour not in seen:
                    seen.add(neighbour)
                    stack.append(neighbour)
    return seen


def _merge_equivalent(graph: _Graph) -> None:
    """Merge nodes whose out-edge sets are identical, children first."""
    order = _topological_order(graph)
    if order is None:
        return
    register: dict[frozenset[tuple[str, int]], int] = {}
    for node in reversed(order):
        if node in (graph.initial, graph.terminal):
            continue
        signature = frozenset(
            (label, target) for label, targets in graph.out[node].items() for target in targets
        )
        existing = register.get(signature)
        if existing is None:
            register[signature] = node
            continue
        for label, sources in list(graph.inn[node].items()):
            for source in list(sources):
                graph.redirect(source, label, node, existing)
        graph.remove_node(node)


def _fold(source: _Graph) -> _Graph:
    """Derive the non-deterministic view of a stop-terminated graph."""
    graph = source.copy()
    terminal = graph.terminal
    stop_nodes = sorted(graph.inn[terminal].get(STOP, set()))
    for node in stop_nodes:
        for label, parents in list(graph.inn[node].items()):
            for parent in list(parents):
                graph.add_edge(parent, label, terminal)
    for node in stop_nodes:
        graph.remove_edge(node, STOP, terminal)
        if not graph.out[node]:
            graph.remove_node(node)
    _merge_equivalent(graph)
    return graph


def _canonical_numbering(graph: _Graph) -> dict[int, int]:
    numbering = {graph.initial: 0, graph.terminal: 1}
    queue = deque([graph.initial])
    while queue:
        node = queue.popleft()
        for label in sorted(graph.out[node]):
            for target in sorted(graph.out[node][label]):
                if target not in numbering:
                    numbering[target] = len(numbering)
                    queue.append(target)
    for node in sorted(graph.out):
        if node not in numbering:
            numbering[node] = len(numbering)
    return numbering


def _anchor(pattern: Pattern) -> str:
    """Leading literal symbols of a pattern."""
    symbols = []
    for element in pattern.elements:
        if not isinstance(element, str) or element == STOP:
            break
        symbols.append(element)
    return "".join(symbols)


def _walk_anchor(
    adjacency: dict[int, dict[str, set[int]]],
    start: set[int],
    end: int,
    anchor: str,
    matcher: PatternMatcher,
    found: set[str],
    backwards: bool,
) -> list[tuple[int, int, str]]:
    """Follow `anchor` from `start`; a string completed by it goes into `found`.

    The anchor holds only literals, so it is walked edge by edge without stepping
    the matcher.

    Returns the (node, matcher state, text so far) triples to continue from.
    """
    states = set(start)
    for symbol in anchor:
        following: set[int] = set()
        for state in states:
            following.update(adjacency[state].get(symbol, ()))
        if not following:
            return []
        states = following
    mask = matcher.after_literals(len(anchor))
    if end in states:
        states.discard(end)
        if matcher.accepts(mask):
            found.add(anchor[::-1] if backwards else anchor)
    return [(state, mask, anchor) for state in sorted(states)]


class Dawg:
    """Directed acyclic word graph storing a finite set of strings.

    Reads (contains, enumerate, match_*, stats) are safe from several threads once
    the graph is frozen; insertion needs exclusive access.
    """

    def __init__(self, mode: DawgMode = DawgMode.DETERMINISTIC) -> None:
        """Create an empty graph.

        Args:
            mode: Storage mode used by queries, statistics and dumps
        """
        self.mode = mode
        self._graph = _Graph.with_endpoints()
        self._register: dict[Signature, int] = {(): self._graph.terminal}
        self._string_count = 0
        self._frozen = False
        self._folded: _Graph | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_strings(
        cls, strings: Iterable[str], mode: DawgMode = DawgMode.DETERMINISTIC
    ) -> "Dawg":
        dawg = cls(mode)
        for s in strings:
            dawg.insert(s)
        return dawg

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Edge],
        *,
        initial: int,
        terminal: int,
        mode: DawgMode = DawgMode.DETERMINISTIC,
    ) -> "Dawg":
        """Rebuild a graph from a stop-terminated (deterministic) edge list.

        The edges always describe the deterministic graph; `mode` only selects the
        view used for queries. No validation is done here: use `check_integrity`.

        Args:
            edges: (source, label, target) triples
            initial: Initial node id
            terminal: Terminal node id
            mode: Storage mode

        Returns:
            Graph over the given edges
        """
        dawg = cls(mode)
        graph = _Graph()
        graph.initial = graph.add_node(initial)
        graph.terminal = graph.add_node(terminal)
        for source, label, target in edges:
            graph.add_node(source)
            graph.add_node(target)
            graph.add_edge(source, label, target)
        dawg._graph = graph
        dawg._register = {}
        for node in graph.out:
            if node != graph.initial:
                dawg._register.setdefault(graph.signature(node), node)
        dawg._string_count = dawg._count_paths()
        return dawg

    def copy(self, mode: DawgMode | None = None) -> "Dawg":
        """Unfrozen copy of this graph, optionally in another mode."""
        dawg = Dawg(mode or self.mode)
        dawg._graph = self._graph.copy()
        dawg._register = dict(self._register)
        dawg._string_count = self._string_count
        return dawg

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def string_count(self) -> int:
        return self._string_count

    def freeze(self) -> None:
        """End the build phase; later inserts raise DawgFrozenError."""
        self._frozen = True
        self._view()

    def __len__(self) -> int:
        return self._string_count

    def __contains__(self, s: object) -> bool:
        return isinstance(s, str) and self.contains(s)

    def __iter__(self) -> Iterator[str]:
        return iter(self.enumerate())

    def insert(self, s: str) -> bool:
        """Add a string.

        Args:
            s: Non-empty string without the stop symbol

        Returns:
            True if the string was new, False if it was already stored

        Raises:
            EmptyStringError: If s is empty
            RejectedSymbolError: If s contains the stop symbol
            DawgFrozenError: If the graph has been frozen
        """
        if self._frozen:
            raise DawgFrozenError("Cannot insert into a frozen graph")
        if not s:
            raise EmptyStringError("Cannot insert an empty string")
        if STOP in s:
            raise RejectedSymbolError(f"String {s!r} contains the reserved stop symbol U+0000")
        if not self._add(s + STOP):
            return False
        self._string_count += 1
        self._folded = None
        return True

    def _add(self, word: str) -> bool:
        graph = self._graph

        # Stage 1: longest stored prefix
        path = [graph.initial]
        node = graph.initial
        index = 0
        while index < len(word):
            child = graph.target(node, word[index])
            if child is None:
                break
            path.append(child)
            node = child
            index += 1
        if index == len(word):
            return False

        confluence = next(
            (j for j in range(1, len(path)) if graph.has_several_parents(path[j])), len(path)
        )
        for node in path[1:confluence]:
            self._unregister(node)
        for j in range(confluence, len(path)):
            clone = graph.clone(path[j])
            graph.redirect(path[j - 1], word[j - 1], path[j], clone)
            path[j] = clone

        # Stage 2: fresh chain for the remainder
        chain: list[Edge] = []
        node = path[-1]
        for symbol in word[index:-1]:
            child = graph.add_node()
            graph.add_edge(node, symbol, child)
            chain.append((node, symbol, child))
            node = child
        graph.add_edge(node, STOP, graph.terminal)

        # Stage 3: merge with equivalent registered nodes, bottom-up
        for parent, symbol, child in reversed(chain):
            self._replace_or_register(parent, symbol, child)
        for j in range(len(path) - 1, 0, -1):
            self._replace_or_register(path[j - 1], word[j - 1], path[j])
        return True

    def _unregister(self, node: int) -> None:
        signature = self._graph.signature(node)
        if self._register.get(signature) == node:
            del self._register[signature]

    def _replace_or_register(self, parent: int, symbol: str, child: int) -> None:
        # child has exactly one parent here: it is new, a clone, or below no confluence node
        signature = self._graph.signature(child)
        existing = self._register.get(signature)
        if existing is None:
            self._register[signature] = child
        elif existing != child:
            self._graph.redirect(parent, symbol, child, existing)
            self._graph.remove_node(child)

    def _view(self) -> _Graph:
        if self.mode is DawgMode.DETERMINISTIC:
            return self._graph
        folded = self._folded
        if folded is None:
            with self._lock:
                if self._folded is None:
                    self._folded = _fold(self._graph)
                    logger.debug(
                        "Folded %d nodes into %d non-deterministic nodes",
                        len(self._graph.out),
                        len(self._folded.out),
                    )
                folded = self._folded
        return folded

    def _stop_terminated(self) -> bool:
        return self.mode is DawgMode.DETERMINISTIC

    def contains(self, s: str) -> bool:
        """True iff s is stored."""
        if not s or STOP in s:
            return False
        graph = self._view()
        word = s + STOP if self._stop_terminated() else s
        states = {graph.initial}
        for symbol in word:
            following: set[int] = set()
            for state in states:
                following.update(graph.out[state].get(symbol, ()))
            if not following:
                return False
            states = following
        return graph.terminal in states

    def enumerate(self) -> list[str]:
        """All stored strings in lexicographic (code point) order."""
        return self.match_forward(Pattern((WILDCARD,)))

    def match_forward(self, pattern: Pattern) -> list[str]:
        """Stored strings matching `pattern`, searched from the initial node.

        The literal prefix of the pattern is followed edge by edge; the rest is
        searched depth-first.

        Args:
            pattern: Literal symbols and wildcards

        Returns:
            Matching strings in lexicographic order
        """
        graph = self._view()
        matcher = pattern.compile()
        # Past the anchor of a prefix query the matcher state never changes.
        open_tail = pattern.is_prefix_query
        found: set[str] = set()
        seeds = _walk_anchor(
            graph.out, {graph.initial}, graph.terminal, _anchor(pattern), matcher, found, False
        )
        terminal = graph.terminal
        stack = list(seeds)
        while stack:
            node, mask, prefix = stack.pop()
            for label, targets in graph.out[node].items():
                if label == STOP:
                    if matcher.accepts(mask):
                        found.add(prefix)
                    continue
                following = mask if open_tail else matcher.step(mask, label)
                if not following:
                    continue
                text = prefix + label
                for target in targets:
                    if target == terminal:
                        if matcher.accepts(following):
                            found.add(text)
                    else:
                        stack.append((target, following, text))
        return sorted(found)

    def match_reverse(self, pattern: Pattern) -> list[str]:
        """Stored strings matching `pattern`, searched from the terminal node upwards.

        Same result as `match_forward`. The literal suffix of the pattern is
        followed backwards edge by edge, so ``*(features)amel`` visits only entries
        ending in that suffix.
        """
        graph = self._view()
        backwards = pattern.reversed()
        matcher = backwards.compile()
        open_tail = backwards.is_prefix_query
        found: set[str] = set()
        if self._stop_terminated():
            start = set(graph.inn[graph.terminal].get(STOP, ()))
        else:
            start = {graph.terminal}
        seeds = _walk_anchor(
            graph.inn, start, graph.initial, _anchor(backwards), matcher, found, True
        )
        initial = graph.initial
        stack = list(seeds)
        while stack:
            node, mask, suffix = stack.pop()
            for label, sources in graph.inn[node].items():
                if label == STOP:
                    following, text = mask, suffix
                else:
                    following = mask if open_tail else matcher.step(mask, label)
                    if not following:
                        continue
                    text = suffix + label
                for source in sources:
                    if source == initial:
                        if matcher.accepts(following):
                            found.add(text[::-1])
                    else:
                        stack.append((source, following, text))
        return sorted(found)

    def _count_paths(self) -> int:
        graph = self._graph
        order = _topological_order(graph)
        if order is None:
            return 0
        paths = dict.fromkeys(graph.out, 0)
        paths[graph.initial] = 1
        for node in order:
            for targets in graph.out[node].values():
                for target in targets:
                    paths[target] += paths[node]
        return paths[graph.terminal]

    def _trie_node_count(self) -> int:
        # Distinct prefixes of the stop-terminated strings = paths from the initial node
        # to every node of the deterministic graph.
        graph = self._graph
        order = _topological_order(graph)
        if order is None:
            return 0
        paths = dict.fromkeys(graph.out, 0)
        paths[graph.initial] = 1
        for node in order:
            for targets in graph.out[node].values():
                for target in targets:
                    paths[target] += paths[node]
        return sum(paths.values())

    def stats(self) -> DawgStats:
        """Node, edge and string counts, plus the size of an equivalent trie."""
        if not self._string_count:
            return DawgStats(0, 0, 0, self.mode, 0)
        graph = self._view()
        return DawgStats(
            node_count=len(graph.out),
            edge_count=graph.edge_count(),
            string_count=self._string_count,
            mode=self.mode,
            trie_node_count=self._trie_node_count(),
        )

    def check_integrity(self) -> IntegrityReport:
        """Verify acyclicity, pruning, determinism and stop-symbol placement."""
        graph = self._view()
        violations: list[IntegrityViolation] = []

        if _topological_order(graph) is None:
            violations.append(
                IntegrityViolation(ViolationKind.CYCLE, None, "graph contains a directed cycle")
            )

        if graph.edge_count():
            forward = _reachable(graph, graph.initial, forward=True)
            backward = _reachable(graph, graph.terminal, forward=False)
            for node in sorted(graph.out):
                if node not in forward:
                    violations.append(
                        IntegrityViolation(
                            ViolationKind.PRUNING, node, "not reachable from the initial node"
                        )
                    )
                elif node not in backward:
                    violations.append(
                        IntegrityViolation(
                            ViolationKind.PRUNING, node, "cannot reach the terminal node"
                        )
                    )

        stop_terminated = self._stop_terminated()
        for node in sorted(graph.out):
            for label, targets in sorted(graph.out[node].items()):
                if stop_terminated and len(targets) > 1:
                    violations.append(
                        IntegrityViolation(
                            ViolationKind.DETERMINISM,
                            node,
                            f"{len(targets)} departing edges labeled {label!r}",
                        )
                    )
                if label == STOP and not stop_terminated:
                    violations.append(
                        IntegrityViolation(
                            ViolationKind.STOP_SYMBOL, node, "stop symbol in non-deterministic mode"
                        )
                    )
                elif stop_terminated and (label == STOP) != (targets == {graph.terminal}):
                    violations.append(
                        IntegrityViolation(
                            ViolationKind.STOP_SYMBOL,
                            node,
                            f"edge labeled {label!r} misplaced relative to the terminal node",
                        )
                    )
        return IntegrityReport(tuple(violations))

    def export_graph(self, source: bool = False) -> GraphExport:
        """Edges numbered breadth-first over sorted labels (initial 0, terminal 1).

        Args:
            source: Export the stop-terminated deterministic graph regardless of mode

        Returns:
            Canonically numbered graph
        """
        graph = self._graph if source else self._view()
        numbering = _canonical_numbering(graph)
        edges = sorted(
            (numbering[src], label, numbering[dst]) for src, label, dst in graph.edges()
        )
        mode = DawgMode.DETERMINISTIC if source else self.mode
        return GraphExport(mode=mode, node_count=len(graph.out), edges=tuple(edges))
