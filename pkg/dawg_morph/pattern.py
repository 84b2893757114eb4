"""Wildcard patterns over stored strings.

A pattern is a sequence of literal symbols and wildcards. A wildcard matches any
substring, including the empty one, that contains none of the pattern's barrier
symbols (none by default). Patterns are matched against paths of the word
graph by simulating a small nondeterministic automaton whose states are pattern
positions, packed into an int bitmask.
"""

from collections.abc import Iterable
from dataclasses import dataclass


class _Wildcard:
    """Wildcard pattern element (singleton)."""

    _instance: "_Wildcard | None" = None

    def __new__(cls) -> "_Wildcard":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "WILDCARD"


WILDCARD = _Wildcard()

Element = str | _Wildcard


def _canonicalize(elements: Iterable[Element]) -> tuple[Element, ...]:
    result: list[Element] = []
    for element in elements:
        if element is WILDCARD:
            if result and result[-1] is WILDCARD:
                continue
        elif not isinstance(element, str) or len(element) != 1:
            raise ValueError(f"Pattern literal must be a single character, got {element!r}")
        result.append(element)
    return tuple(result)


@dataclass(frozen=True)
class Pattern:
    """Immutable sequence of literal symbols and wildcards.

    Adjacent wildcards are merged on construction. Wildcards never match a symbol
    in `barrier`.
    """

    elements: tuple[Element, ...] = ()
    barrier: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", _canonicalize(self.elements))
        object.__setattr__(self, "barrier", frozenset(self.barrier))

    @classmethod
    def of(cls, *parts: str | _Wildcard) -> "Pattern":
        """Build a pattern from literal strings and wildcards.

        Args:
            parts: Literal strings (split into one element per character) or WILDCARD

        Returns:
            Pattern

        Examples:
            >>> Pattern.of("to", WILDCARD)
            Pattern(elements=('t', 'o', WILDCARD), barrier=frozenset())
        """
        elements: list[Element] = []
        for part in parts:
            if part is WILDCARD:
                elements.append(WILDCARD)
            else:
                elements.extend(str(part))
        return cls(tuple(elements))

    @classmethod
    def literal(cls, text: str) -> "Pattern":
        """Pattern matching exactly `text`."""
        return cls(tuple(text))

    @classmethod
    def parse(cls, glob: str, wildcard: str = "*") -> "Pattern":
        """Parse a glob such as ``"μονιμ*"`` where `wildcard` stands for any substring."""
        return cls(tuple(WILDCARD if ch == wildcard else ch for ch in glob))

    def __add__(self, other: "Pattern") -> "Pattern":
        return Pattern(self.elements + other.elements, self.barrier | other.barrier)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "".join("*" if e is WILDCARD else str(e) for e in self.elements)

    def reversed(self) -> "Pattern":
        """Pattern matching the reversal of every string this pattern matches."""
        return Pattern(tuple(reversed(self.elements)), self.barrier)

    def with_barrier(self, symbols: Iterable[str]) -> "Pattern":
        """Same pattern with wildcards that cannot match any of `symbols`."""
        return Pattern(self.elements, self.barrier | frozenset(symbols))

    @property
    def wildcard_count(self) -> int:
        return sum(1 for e in self.elements if e is WILDCARD)

    @property
    def is_prefix_query(self) -> bool:
        """True for literals followed by a single unrestricted wildcard, e.g. ``λόγ*``."""
        return (
            not self.barrier
            and self.wildcard_count == 1
            and bool(self.elements)
            and self.elements[-1] is WILDCARD
        )

    def compile(self) -> "PatternMatcher":
        return PatternMatcher(self)


class PatternMatcher:
    """Position-set automaton for a pattern, with memoized transitions.

    Not thread-safe: create one matcher per search.
    """

    def __init__(self, pattern: Pattern) -> None:
        self._wild = tuple(e is WILDCARD for e in pattern.elements)
        self._literal = tuple(None if e is WILDCARD else e for e in pattern.elements)
        self._size = len(pattern.elements)
        self._barrier = pattern.barrier
        self.accept_bit = 1 << self._size
        self.start = self._closure(1)
        self._cache: dict[tuple[int, str], int] = {}

    def _closure(self, mask: int) -> int:
        # A wildcard may match the empty substring, so its position also reaches the next one.
        for i in range(self._size):
            if mask >> i & 1 and self._wild[i]:
                mask |= 1 << (i + 1)
        return mask

    def step(self, mask: int, symbol: str) -> int:
        """Positions reachable from `mask` after reading `symbol` (0 = dead)."""
        key = (mask, symbol)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = 0
        for i in range(self._size):
            if not mask >> i & 1:
                continue
            if self._wild[i]:
                if symbol not in self._barrier:
                    result |= 1 << i
            elif self._literal[i] == symbol:
                result |= 1 << (i + 1)
        result = self._closure(result) if result else 0
        self._cache[key] = result
        return result

    def after_literals(self, count: int) -> int:
        """State after reading the first `count` elements, all of them literals."""
        return self._closure(1 << count)

    def accepts(self, mask: int) -> bool:
        return bool(mask & self.accept_bit)

    def matches(self, text: str) -> bool:
        """Match a whole string (used for filtering and tests)."""
        mask = self.start
        for symbol in text:
            mask = self.step(mask, symbol)
            if not mask:
                return False
        return self.accepts(mask)
