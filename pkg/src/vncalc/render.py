"""Graphviz output: an element as a pair of leaf-matched trees."""

from __future__ import annotations

from .element import VnElement
from .words import EPS, Word


def _prefixes(words) -> list[Word]:
    seen = {EPS}
    for w in words:
        for k in range(1, len(w) + 1):
            seen.add(w.take(k))
    return sorted(seen)


def _node_id(side: str, w: Word) -> str:
    return f"{side}_eps" if len(w) == 0 else f"{side}_" + "_".join(str(x) for x in w)


def _tree_lines(side: str, title: str, leaves) -> list[str]:
    leaf_set = set(leaves)
    nodes = _prefixes(leaves)
    lines = [f"  subgraph cluster_{side} {{", f'    label="{title}";']
    for w in nodes:
        shape = "box" if w in leaf_set else "point"
        label = f', label="{w}"' if w in leaf_set else ""
        lines.append(f'    {_node_id(side, w)} [shape={shape}{label}];')
    for w in nodes:
        if len(w):
            lines.append(f"    {_node_id(side, w.parent())} -> {_node_id(side, w)};")
    lines.append("  }")
    return lines


def render_dot(g: VnElement) -> str:
    """Deterministic DOT text: domain tree, range tree, dashed leaf matching."""
    lines = ["digraph tree_pair {", "  rankdir=TB;"]
    lines += _tree_lines("d", "domain", g.domain.words)
    lines += _tree_lines("r", "range", sorted(g.images))
    for w, v in g.pairs():
        lines.append(f"  {_node_id('d', w)} -> {_node_id('r', v)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
