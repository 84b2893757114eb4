"""Locale-aware number formatting for text reports."""

from babel.numbers import format_decimal

REPORT_LOCALE = "en_US"


def format_count(value: int, locale: str = REPORT_LOCALE) -> str:
    """Format an integer count with grouping separators.

    Examples:
        >>> format_count(12345)
        "12,345"
    """
    return str(format_decimal(value, format="#,##0", locale=locale))


def format_ratio(ratio: float | None, locale: str = REPORT_LOCALE) -> str:
    """Format a compression ratio with two decimals, or "n/a" when undefined.

    Examples:
        >>> format_ratio(3.14159)
        "3.14"
        >>> format_ratio(None)
        "n/a"
    """
    if ratio is None:
        return "n/a"
    return str(format_decimal(ratio, format="#,##0.00", locale=locale))


def format_rate(value: float, locale: str = REPORT_LOCALE) -> str:
    """Format a throughput in words per second, rounded to whole words."""
    return str(format_decimal(round(value), format="#,##0", locale=locale))
