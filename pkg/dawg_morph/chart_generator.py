"""Chart generation utilities using matplotlib."""

import io

import matplotlib
import matplotlib.pyplot as plt

# Use non-interactive backend for matplotlib
matplotlib.use("Agg")

_BARS = (
    ("trie", "Trie", "#9E9E9E"),
    ("det", "Deterministic DAWG", "#2196F3"),
    ("nondet", "Non-deterministic DAWG", "#4CAF50"),
)


def generate_compression_chart(counts: dict[str, int], title: str = "Lexicon size") -> bytes:
    """Generate a bar chart comparing node counts of the three representations.

    Args:
        counts: Node counts keyed by "trie", "det" and "nondet"
        title: Chart title

    Returns:
        PNG image as bytes
    """
    labels = [label for key, label, _ in _BARS if key in counts]
    values = [counts[key] for key, _, _ in _BARS if key in counts]
    colors = [color for key, _, color in _BARS if key in counts]

    fig, ax = plt.subplots(figsize=(8, 5))
    bars = ax.bar(labels, values, color=colors)
    ax.bar_label(bars, labels=[f"{v:,}" for v in values], padding=3, fontsize=11)
    ax.set_ylabel("Nodes")
    ax.set_title(title)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.margins(y=0.12)

    buf = io.BytesIO()
    plt.savefig(buf, format="png", dpi=120, bbox_inches="tight", facecolor="white")
    plt.close(fig)
    buf.seek(0)

    return buf.read()
