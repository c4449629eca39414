# cli/graph_text.py
"""Plain-text adjacency export: one `u v num/den` line per edge, `u u num/den` per loop."""
from fractions import Fraction
from typing import List

from duality.match_graph import MatchGraph


def _weight(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


def graph_text(g: MatchGraph, with_labels: bool = False) -> str:
    """Edges and loops sorted by endpoints"""
    lines: List[str] = [f"# {g.describe()}"]
    if with_labels:
        for i, label in enumerate(g.labels):
            cells = sorted(label) if isinstance(label, frozenset) else [label]
            lines.append(f"# {i} " + " ".join(c.label() for c in cells))
    rows = [(i, j, w) for (i, j), w in g.edges.items()] + [(i, i, w) for i, w in g.loops.items()]
    for i, j, w in sorted(rows, key=lambda r: (r[0], r[1])):
        lines.append(f"{i} {j} {_weight(w)}")
    return "\n".join(lines) + "\n"
