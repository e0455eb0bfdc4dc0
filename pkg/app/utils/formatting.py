"""
Plain-text rendering of groups, bigraded tables and the named-link table.
"""

from itertools import groupby
from typing import Callable, List, NamedTuple, Sequence

GROUP_SEPARATOR = " + "


def format_group(group, separator: str = GROUP_SEPARATOR) -> str:
    """Z^7 + Z/3, Z^11 + (Z/3)^2; the trivial group is 0"""
    pieces = []
    if group.free_rank == 1:
        pieces.append("Z")
    elif group.free_rank > 1:
        pieces.append(f"Z^{group.free_rank}")
    for order, run in groupby(group.torsion):
        count = len(list(run))
        pieces.append(f"Z/{order}" if count == 1 else f"(Z/{order})^{count}")
    return separator.join(pieces) if pieces else "0"


class NamedTorusLink(NamedTuple):
    name: str
    m: int
    symbolic: str
    free_rank: Callable[[int], int]
    torsion_copies: int


# Named rows with their closed forms in N
NAMED_TORUS_LINKS: List[NamedTorusLink] = [
    NamedTorusLink("unknot", 1, "Z^N", lambda n: n, 0),
    NamedTorusLink("Hopf link", 2, "Z^(N^2)", lambda n: n * n, 0),
    NamedTorusLink("trefoil", 3, "Z^(3N-2) + Z/N", lambda n: 3 * n - 2, 1),
    NamedTorusLink("Solomon's knot", 4, "Z^(N^2+2N-2) + Z/N", lambda n: n * n + 2 * n - 2, 1),
    NamedTorusLink("cinquefoil", 5, "Z^(5N-4) + (Z/N)^2", lambda n: 5 * n - 4, 2),
]


def render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(str(cell))) for w, cell in zip(widths, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def format_bigraded(group) -> str:
    """One line per nonzero (h, q) entry"""
    if not group.groups:
        return "  (zero)"
    return "\n".join(f"  h={h:>3} q={q:>4}: {format_group(g)}" for (h, q), g in group.groups.items())


def format_graded(group) -> str:
    """One line per nonzero cohomological degree"""
    if not group.degrees:
        return "  (zero)"
    return "\n".join(f"  H^{d}: {format_group(g)}" for d, g in group.degrees.items())
