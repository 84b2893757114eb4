"""Tests for wildcard patterns."""

import pytest

from dawg_morph.pattern import WILDCARD, Pattern


def test_adjacent_wildcards_are_merged():
    """Test that consecutive wildcards collapse into one."""
    pattern = Pattern((WILDCARD, WILDCARD, "a", WILDCARD, WILDCARD))
    assert pattern.elements == (WILDCARD, "a", WILDCARD)


def test_concatenation_merges_wildcards_at_the_seam():
    """Test that joining two patterns keeps the canonical form."""
    pattern = Pattern.of("ab", WILDCARD) + Pattern.of(WILDCARD, "c")
    assert pattern.elements == ("a", "b", WILDCARD, "c")


def test_parse_glob():
    """Test parsing of '*' globs."""
    assert Pattern.parse("μονιμ*").elements == ("μ", "ο", "ν", "ι", "μ", WILDCARD)
    assert str(Pattern.parse("t**p")) == "t*p"


def test_literal_must_be_single_character():
    """Test that multi-character literals are rejected."""
    with pytest.raises(ValueError):
        Pattern(("ab",))


def test_reversed():
    """Test pattern reversal."""
    assert Pattern.parse("ab*c").reversed() == Pattern.parse("c*ba")


@pytest.mark.parametrize(
    "glob,text,expected",
    [
        ("*", "", True),
        ("*", "anything", True),
        ("", "", True),
        ("", "a", False),
        ("to*", "top", True),
        ("to*", "tap", False),
        ("*p", "tap", True),
        ("t*p", "tp", True),
        ("a*b*c", "aXbYc", True),
        ("a*b*c", "acb", False),
        ("abc", "abc", True),
        ("abc", "abcd", False),
    ],
)
def test_matcher_matches(glob, text, expected):
    """Test the position-set matcher against whole strings."""
    assert Pattern.parse(glob).compile().matches(text) is expected


def test_step_returns_zero_when_dead():
    """Test that an impossible continuation yields the dead state."""
    matcher = Pattern.literal("ab").compile()
    assert matcher.step(matcher.start, "x") == 0
    state = matcher.step(matcher.start, "a")
    assert state and not matcher.accepts(state)
    assert matcher.accepts(matcher.step(state, "b"))


def test_wildcards_do_not_cross_barrier():
    """Test barrier symbols are only matched by literals."""
    pattern = Pattern.parse("*(*)*").with_barrier("()")
    matcher = pattern.compile()
    assert matcher.matches("ab(cd)ef")
    assert not matcher.matches("a(b(c)d")
    assert not Pattern.parse("a*").with_barrier("(").compile().matches("a(")
    assert Pattern.parse("a*").compile().matches("a(")


def test_barrier_survives_concatenation_and_reversal():
    """Test that derived patterns keep the barrier."""
    left = Pattern.parse("a*").with_barrier("(")
    joined = left + Pattern.parse("*b")
    assert joined.barrier == frozenset("(")
    assert joined.reversed().barrier == frozenset("(")


@pytest.mark.parametrize(
    ("glob", "expected"),
    [("ab*", True), ("*", True), ("ab", False), ("*b", False), ("a*b*", False), ("a*b", False)],
)
def test_prefix_query(glob, expected):
    """Test recognition of literals followed by one trailing wildcard."""
    assert Pattern.parse(glob).is_prefix_query is expected


def test_barrier_disables_prefix_query():
    """Test that a restricted wildcard is not treated as a prefix query."""
    assert not Pattern.parse("ab*").with_barrier("(").is_prefix_query


def test_state_after_literals_matches_stepping():
    """Test that skipping over a literal prefix gives the same state as stepping."""
    for glob in ("ab*", "abc", "ab*c", "a*"):
        matcher = Pattern.parse(glob).compile()
        state = matcher.start
        for symbol in glob.split("*")[0]:
            state = matcher.step(state, symbol)
        assert matcher.after_literals(len(glob.split("*")[0])) == state
