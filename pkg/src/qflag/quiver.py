"""Quivers with dimension vectors and their numerical invariants.

A quiver here is finite and acyclic with a unique source, vertex 0, of
dimension 1.  Vertices are numbered so that arrows only go from lower to
higher indices; the numbering supplied by the user is kept as is.  Inputs
are assumed graph-reduced; no grafting detection is performed.

All derived data (incoming/outgoing ranks, the Fano predicate, the
abelianized quiver) is computed at construction time and the object is
immutable afterwards, so specs can be shared freely between workers.
"""

from __future__ import annotations

from math import comb
from typing import Mapping, NamedTuple


class QuiverError(ValueError):
    """Raised when a quiver spec violates a structural invariant."""


class VertexRanks(NamedTuple):
    s_in: int
    s_out: int


class QuiverSpec:
    """An acyclic source-rooted quiver with multiplicities and dimensions.

    ``dims`` lists the dimensions r_1..r_rho of the non-source vertices
    (r_0 = 1 is implicit).  ``arrows`` maps (i, j) with 0 <= i < j <= rho to
    the number of arrows from i to j; missing or zero entries mean no arrow.

    Construction validates the standing assumptions: every vertex has an
    incoming arrow, and the incoming rank s_i strictly exceeds r_i.
    """

    def __init__(self, dims, arrows: Mapping[tuple[int, int], int]):
        self.dims = tuple(int(r) for r in dims)
        self.rho = len(self.dims)
        if self.rho == 0:
            raise QuiverError("at least one non-source vertex required")
        if any(r <= 0 for r in self.dims):
            raise QuiverError("positive dimension required")
        table = [[0] * (self.rho + 1) for _ in range(self.rho + 1)]
        for (i, j), m in arrows.items():
            if m < 0:
                raise QuiverError(f"negative multiplicity on arrow ({i}, {j})")
            if not (0 <= i < j <= self.rho):
                raise QuiverError(f"arrow with i >= j: ({i}, {j})")
            table[i][j] += int(m)
        self.mult = tuple(tuple(row) for row in table)
        self.ranks: tuple[VertexRanks, ...] = tuple(
            VertexRanks(
                sum(table[j][i] * self.rank(j) for j in range(i)),
                sum(table[i][j] * self.rank(j) for j in range(i + 1, self.rho + 1)),
            )
            for i in range(1, self.rho + 1)
        )
        for i in range(1, self.rho + 1):
            s_in, _ = self.ranks[i - 1]
            if all(table[j][i] == 0 for j in range(i)):
                raise QuiverError(f"no incoming arrows at vertex {i}")
            if s_in <= self.rank(i):
                raise QuiverError(f"degenerate vertex {i}: s_{i} <= r_{i}")

    def rank(self, i: int) -> int:
        return 1 if i == 0 else self.dims[i - 1]

    def s(self, i: int) -> int:
        """Incoming rank of vertex i >= 1."""
        return self.ranks[i - 1].s_in

    def s_out(self, i: int) -> int:
        """Outgoing rank of vertex i >= 1."""
        return self.ranks[i - 1].s_out

    @property
    def is_fano(self) -> bool:
        """True iff s_i - s_i' > 0 at every vertex."""
        return all(s_in > s_out for s_in, s_out in self.ranks)

    def box(self, i: int) -> tuple[int, int]:
        """The rectangle r_i x (s_i - r_i) bounding basis partitions at i."""
        return (self.rank(i), self.s(i) - self.rank(i))

    def dimension(self) -> int:
        return sum(self.rank(i) * (self.s(i) - self.rank(i)) for i in range(1, self.rho + 1))

    def basis_count(self) -> int:
        return _prod(comb(self.s(i), self.rank(i)) for i in range(1, self.rho + 1))

    def abelianize(self) -> "AbelianizedQuiver":
        return AbelianizedQuiver(self)

    def q_degree(self, d) -> int:
        """Degree of the quantum monomial q^d under the Fano grading."""
        return sum(di * (s_in - s_out) for di, (s_in, s_out) in zip(d, self.ranks))

    def _key(self):
        return (self.dims, self.mult)

    def __eq__(self, other):
        return isinstance(other, QuiverSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        arrows = {
            (i, j): m
            for i, row in enumerate(self.mult)
            for j, m in enumerate(row)
            if m
        }
        return f"QuiverSpec(dims={self.dims}, arrows={arrows})"


class AbelianizedQuiver:
    """The quiver with each vertex i split into r_i copies (i, 1)..(i, r_i).

    Arrow multiplicities between any copy of i and any copy of j equal
    n_ij.  When all dimensions are 1 this is the input quiver itself.  The
    copies are ordered (1,1) < (1,2) < ... < (2,1) < ...; ``index`` maps a
    copy to its position in that flat order, which is also the variable
    order used by the toric oracle.
    """

    def __init__(self, spec: QuiverSpec):
        self.spec = spec
        self.vertices: list[tuple[int, int]] = [
            (i, j) for i in range(1, spec.rho + 1) for j in range(1, spec.rank(i) + 1)
        ]
        self.index = {v: k for k, v in enumerate(self.vertices)}
        dims = (1,) * len(self.vertices)
        arrows: dict[tuple[int, int], int] = {}
        for (i, j) in self.vertices:
            m = spec.mult[0][i]
            if m:
                arrows[(0, 1 + self.index[(i, j)])] = m
        for (i, j) in self.vertices:
            for (k, l) in self.vertices:
                m = spec.mult[i][k]
                if m:
                    arrows[(1 + self.index[(i, j)], 1 + self.index[(k, l)])] = m
        self.quiver = QuiverSpec(dims, arrows)

    def s(self, v: tuple[int, int]) -> int:
        """Incoming rank of copy v; equals s_i of the underlying vertex."""
        return self.quiver.s(1 + self.index[v])


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
