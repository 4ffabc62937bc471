"""Partitions, Young-diagram geometry, and rim-hook removal.

A partition is represented as a plain tuple of weakly decreasing positive
integers; the empty tuple is the empty partition.  All functions here return
canonical tuples (no trailing zeros), so equality is structural and
partitions can be used directly as dict keys.

Rim hooks follow the "anchored" convention: the rim hook of length ``n`` is
the path of ``n`` boxes along the rim (boundary) of the diagram starting at
the top-right box and walking toward the bottom-left corner.  It is unique
when it exists.  Removing it may leave a diagram that is not top-justified
or not weakly decreasing; in that case the removal does not exist and the
result is zero.  No re-sorting of rows is ever performed.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

Partition = tuple[int, ...]


class SignedPartition(NamedTuple):
    """Result of a rim-hook removal: a partition with an attached sign."""

    sign: int
    parts: Partition


def partition(seq: Iterable[int]) -> Partition:
    """Canonicalize ``seq`` as a partition, stripping trailing zeros.

    Raises ``ValueError`` if the entries are negative or not weakly
    decreasing.
    """
    parts = tuple(int(p) for p in seq)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    for k, p in enumerate(parts):
        if p < 0:
            raise ValueError(f"negative part in partition {seq!r}")
        if k + 1 < len(parts) and p < parts[k + 1]:
            raise ValueError(f"parts not weakly decreasing: {seq!r}")
    return parts


def transpose(lam: Partition) -> Partition:
    """Conjugate diagram: rows and columns exchanged."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > c) for c in range(lam[0]))


def fits_box(lam: Partition, rows: int, cols: int) -> bool:
    """True iff the diagram fits inside a ``rows x cols`` rectangle."""
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def add_first_row(lam: Partition, m: int) -> Partition:
    """Add ``m >= 0`` boxes to the first row (the first row of () is 0)."""
    if m < 0:
        raise ValueError("cannot add a negative number of boxes")
    if not lam:
        return (m,) if m else ()
    return (lam[0] + m,) + lam[1:]


def _rim_path(lam: Partition) -> list[int]:
    """Row indices of the rim boxes, walking from top-right to bottom-left.

    The rim of ``lam`` consists of the boxes (i, j) with no box at
    (i+1, j+1); in row i these are the columns from max(lam[i+1], 1) up to
    lam[i] (1-indexed).  Only the row index of each box on the path is
    needed for removal bookkeeping.
    """
    rows = []
    for i, width in enumerate(lam):
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        rows.extend([i] * (width - max(nxt - 1, 0)))
    return rows


def remove_rim_hook(lam: Partition, n: int) -> Optional[SignedPartition]:
    """Remove the length-``n`` rim hook anchored at the top-right box.

    Returns ``SignedPartition((-1)**(h+1), mu)`` where ``h`` is the number
    of rows the hook meets, or ``None`` when the removal does not exist:
    either the rim is shorter than ``n`` boxes, or removing the hook leaves
    a diagram that is not a partition (rows must stay top-justified and
    weakly decreasing; they are never re-sorted).
    """
    if n <= 0:
        raise ValueError("rim-hook length must be positive")
    path = _rim_path(lam)
    if n > len(path):
        return None
    taken = [0] * len(lam)
    for i in path[:n]:
        taken[i] += 1
    remaining = [width - t for width, t in zip(lam, taken)]
    for k in range(len(remaining) - 1):
        if remaining[k] < remaining[k + 1]:
            return None
    height = 1 + path[n - 1] - path[0]
    return SignedPartition(-1 if height % 2 == 0 else 1, partition(remaining))


def box_partitions(rows: int, cols: int) -> list[Partition]:
    """All partitions inside a ``rows x cols`` box, in graded order.

    Ordered by size, then lexicographically with wider partitions first;
    this is the order used to enumerate ring bases and to print classes.
    """
    out: list[Partition] = [()]
    stack = [(cols, ())]
    while stack:
        limit, prefix = stack.pop()
        if len(prefix) == rows:
            continue
        for first in range(1, limit + 1):
            lam = prefix + (first,)
            out.append(lam)
            stack.append((first, lam))
    out.sort(key=grading_key)
    return out


def grading_key(lam: Partition) -> tuple:
    """Sort key: by size, then lexicographically with wider parts first."""
    return (sum(lam), tuple(-p for p in lam))
