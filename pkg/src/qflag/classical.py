"""The classical cohomology ring of a quiver flag variety.

Classes are sparse dicts mapping basis tuples (one partition per non-source
vertex) to exact rational coefficients.  Products are computed per vertex
with Littlewood-Richardson coefficients and then reduced to the canonical
basis by iterated rim-hook removal: a partition at vertex i that is too wide
for its r_i x (s_i - r_i) box is rewritten as a signed sum of rim-hook
removals times elementary symmetric classes pushed to the source vertices of
the arrows into i.  Each step moves boxes to strictly lower-indexed
vertices, so the rewriting terminates.

Reduction always picks the highest-indexed offending vertex first, making
runs reproducible.  Rings cache reductions and basis products; the cached
values are immutable, so sharing a ring between threads is safe.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .partitions import add_first_row, box_partitions, remove_rim_hook
from .quiver import QuiverSpec
from .schur import _lr_items, _pieri_items

BasisTuple = tuple[tuple[int, ...], ...]
CohClass = dict[BasisTuple, Fraction]


class ClassicalRing:
    def __init__(self, spec: QuiverSpec):
        self.spec = spec
        self._basis: list[BasisTuple] | None = None
        self._nf: dict[BasisTuple, dict] = {}
        self._pair_cache: dict = {}

    @property
    def one(self) -> CohClass:
        return {((),) * self.spec.rho: 1}

    def basis(self) -> list[BasisTuple]:
        """All basis tuples, vertex 1 most significant, graded order within
        each vertex (see ``partitions.box_partitions``)."""
        if self._basis is None:
            lists = [box_partitions(*self.spec.box(i)) for i in range(1, self.spec.rho + 1)]
            self._basis = [t for t in product(*lists)]
        return self._basis

    def degree_of(self, t: BasisTuple) -> int:
        return sum(sum(lam) for lam in t)

    def degree_split(self, cls: CohClass) -> dict[int, CohClass]:
        """Split a class into its homogeneous components."""
        out: dict[int, CohClass] = {}
        for t, c in cls.items():
            out.setdefault(self.degree_of(t), {})[t] = c
        return out

    def reduce(self, raw) -> CohClass:
        """Canonical form of a raw combination of partition tuples.

        ``raw`` maps tuples of partitions (length <= r_i, any width) to
        coefficients.  Tuples with a partition longer than r_i denote the
        zero polynomial and are dropped.
        """
        out: CohClass = {}
        for t, c in raw.items():
            if not c or self._too_long(t):
                continue
            for t2, c2 in self._reduce_tuple(t).items():
                _accum(out, t2, c * c2)
        return _strip(out)

    def multiply(self, a: CohClass, b: CohClass) -> CohClass:
        out: CohClass = {}
        for ta, ca in a.items():
            for tb, cb in b.items():
                for t2, c2 in self.basis_product(ta, tb).items():
                    _accum(out, t2, ca * cb * c2)
        return _strip(out)

    def basis_product(self, ta: BasisTuple, tb: BasisTuple) -> CohClass:
        key = (ta, tb)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = self.reduce(_raw_product(self.spec, ta, tb))
            self._pair_cache[key] = cached
        return cached

    def _too_long(self, t: BasisTuple) -> bool:
        return any(len(lam) > self.spec.rank(i + 1) for i, lam in enumerate(t))

    def _offending_vertex(self, t: BasisTuple) -> int:
        """Highest vertex whose partition is too wide, or 0 if none."""
        spec = self.spec
        for i in range(spec.rho, 0, -1):
            lam = t[i - 1]
            if lam and lam[0] > spec.s(i) - spec.rank(i):
                return i
        return 0

    def _reduce_tuple(self, t: BasisTuple) -> dict:
        cached = self._nf.get(t)
        if cached is not None:
            return cached
        i = self._offending_vertex(t)
        if i == 0:
            result = {t: 1}
        else:
            out: dict = {}
            for coeff, nu, ops in classical_emissions(self.spec, i, t[i - 1]):
                base = t[: i - 1] + (nu,) + t[i:]
                for t2, c2 in _apply_ops(self.spec, base, ops).items():
                    for t3, c3 in self._reduce_tuple(t2).items():
                        _accum(out, t3, coeff * c2 * c3)
            result = _strip(out)
        self._nf[t] = result
        return result


@lru_cache(maxsize=None)
def classical_emissions(spec: QuiverSpec, i: int, lam) -> tuple:
    """Rewrite data for a too-wide partition at vertex i.

    Returns tuples ``(coeff, nu, ops)``: the offending s^i_lam equals the sum
    of coeff * s^i_nu times elementary classes e_k applied at the slots named
    in ``ops`` (a tuple of (vertex, k) pairs).  Arrows from the source admit
    only the trivial choice and are skipped; if every arrow into i comes from
    the source the emission list is empty and s^i_lam reduces to zero.
    """
    s_i = spec.s(i)
    sources = _incoming(spec, i)
    out: dict = {}
    for ks in product(*[range(spec.rank(j) + 1) for j in sources]):
        k = sum(ks)
        if k == 0:
            continue
        hook = remove_rim_hook(add_first_row(lam, s_i - k), s_i)
        if hook is None:
            continue
        sign = 1 if k % 2 == 1 else -1
        ops = tuple(sorted((j, ka) for j, ka in zip(sources, ks) if ka))
        key = (hook.parts, ops)
        out[key] = out.get(key, 0) + sign * hook.sign
    return tuple(
        (coeff, nu, ops) for (nu, ops), coeff in sorted(out.items()) if coeff
    )


def _incoming(spec: QuiverSpec, i: int) -> list[int]:
    """Non-source arrows into i, one entry per parallel arrow."""
    out = []
    for j in range(1, i):
        out.extend([j] * spec.mult[j][i])
    return out


def _apply_ops(spec: QuiverSpec, t: BasisTuple, ops) -> dict:
    """Multiply elementary classes into slots of a tuple, expanding by
    vertical-strip Pieri at each step."""
    states = {t: 1}
    for j, k in ops:
        nxt: dict = {}
        for st, c in states.items():
            for mu, c2 in _pieri_items(st[j - 1], k, spec.rank(j)):
                key = st[: j - 1] + (mu,) + st[j:]
                _accum(nxt, key, c * c2)
        states = nxt
    return states


def _raw_product(spec: QuiverSpec, ta: BasisTuple, tb: BasisTuple) -> dict:
    """Vertex-wise Littlewood-Richardson product, unreduced."""
    factors = [
        _lr_items(ta[i], tb[i], spec.rank(i + 1)) for i in range(spec.rho)
    ]
    raw: dict = {}
    for combo in product(*factors):
        t = tuple(nu for nu, _ in combo)
        c = 1
        for _, ci in combo:
            c *= ci
        _accum(raw, t, c)
    return raw


def _accum(d: dict, key, val) -> None:
    cur = d.get(key)
    if cur is None:
        d[key] = val
    else:
        d[key] = cur + val


def _strip(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}
