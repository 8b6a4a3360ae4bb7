"""Published best-known values for RM(r, z, 2) graphs, used for comparison."""

from typing import NamedTuple

from .moore import moore_profile


class TableRow(NamedTuple):
    r: int
    z: int
    M: int
    edges: int
    arcs: int
    status: int
    norm1: int
    optimal: bool


REFERENCE_ROWS = (
    TableRow(1, 1, 6, 3, 6, 50, 2, True),
    TableRow(2, 1, 11, 11, 11, 195, 8, True),
    TableRow(1, 2, 12, 6, 24, 229, 2, True),
    TableRow(3, 1, 18, 27, 18, 550, 10, False),
    TableRow(2, 2, 19, 19, 38, 633, 25, False),
    TableRow(1, 3, 20, 10, 60, 689, 9, False),
    TableRow(3, 2, 28, 42, 56, 1457, 85, False),
    TableRow(2, 3, 29, 29, 87, 1579, 100, False),
    TableRow(3, 3, 40, 60, 120, 3190, 310, False),
    TableRow(4, 1, 27, 54, 27, 1348, 79, False),
    TableRow(4, 2, 39, 78, 78, 3082, 354, False),
    TableRow(2, 4, 41, 41, 164, 3473, 439, False),
    TableRow(5, 1, 38, 95, 38, 2802, 218, False),
)

# best known status 1-norm per (r, z); None marks an open case
BEST_KNOWN_NORM1 = {
    (1, 1): 2, (2, 1): 8, (3, 1): 10, (4, 1): 79, (5, 1): 218, (6, 1): 910, (7, 1): 1769,
    (1, 2): 2, (2, 2): 25, (3, 2): 85, (4, 2): 439,
    (1, 3): 2, (2, 3): 100, (3, 3): 310, (7, 3): 18,
    (1, 4): 2, (2, 4): 354,
    (1, 5): 2,
}


def reference_row(r: int, z: int):
    for row in REFERENCE_ROWS:
        if (row.r, row.z) == (r, z):
            return row
    return None


def consistency_note(row: TableRow):
    """Explain a row whose printed status and 1-norm disagree, else None."""
    implied = row.status - moore_profile(row.r, row.z, 2).s_total
    if implied == row.norm1:
        return None
    return (f"printed 1-norm {row.norm1} disagrees with printed status {row.status}: "
            f"status - M*s = {implied}")
