"""ASCII rendering of configurations for eyeball debugging.

Glyphs mirror the node-label codes: '.' empty, 'm' meeting node,
'2' single robot on a meeting node, '3' multiplicity on a meeting node,
'r' single robot elsewhere, 'R' multiplicity elsewhere.  Rows print with
y increasing upward.
"""

from __future__ import annotations

from .grid import Configuration, NodeLabel, mer

_GLYPHS = {
    NodeLabel.EMPTY: ".",
    NodeLabel.MEETING: "m",
    NodeLabel.SINGLE_ON_MEETING: "2",
    NodeLabel.MULTI_ON_MEETING: "3",
    NodeLabel.SINGLE_OFF_MEETING: "r",
    NodeLabel.MULTI_OFF_MEETING: "R",
}


def render_ascii(c: Configuration, margin: int = 0) -> str:
    box = mer(c)
    rows = []
    for y in range(box.max_y + margin, box.min_y - margin - 1, -1):
        row = []
        for x in range(box.min_x - margin, box.max_x + margin + 1):
            row.append(_GLYPHS[c.label((x, y))])
        rows.append("".join(row))
    return "\n".join(rows)
