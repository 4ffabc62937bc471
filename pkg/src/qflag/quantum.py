"""The small quantum cohomology ring of a Fano quiver flag variety.

Quantum classes are sparse dicts keyed by (q-exponents, basis tuple) with
exact rational coefficients.  Reduction extends the classical rim-hook
rewriting: each step at vertex i emits the classical terms (arrows into i)
plus a quantum correction proportional to q_i whose elementary classes sit
at the targets of the arrows out of i.  Under the Fano grading
deg q_i = s_i - s_i' > 0, every quantum emission strictly lowers the total
box count, so the rewriting terminates; reduction order matches the
classical ring (highest offending vertex first) for reproducibility.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .classical import (
    BasisTuple,
    ClassicalRing,
    CohClass,
    _accum,
    _apply_ops,
    _raw_product,
    _strip,
    classical_emissions,
)
from .partitions import add_first_row, remove_rim_hook
from .quiver import QuiverSpec

QMonomial = tuple[int, ...]
QKey = tuple[QMonomial, BasisTuple]
QuantumClass = dict[QKey, Fraction]


class QuantumRing:
    def __init__(self, spec: QuiverSpec):
        if not spec.is_fano:
            raise ValueError("quantum ring is defined here only for Fano quivers")
        self.spec = spec
        self.classical = ClassicalRing(spec)
        self._emissions: dict = {}
        self._nf: dict[BasisTuple, dict] = {}
        self._pair_cache: dict = {}

    @property
    def one(self) -> QuantumClass:
        return {((0,) * self.spec.rho, ((),) * self.spec.rho): 1}

    def basis(self) -> list[BasisTuple]:
        return self.classical.basis()

    def total_degree(self, key: QKey) -> int:
        d, t = key
        return self.spec.q_degree(d) + sum(sum(lam) for lam in t)

    def reduce(self, raw) -> QuantumClass:
        """Canonical form of a raw combination keyed by (q-exponents, tuple)."""
        out: QuantumClass = {}
        for (d, t), c in raw.items():
            if not c or self.classical._too_long(t):
                continue
            for (dd, t2), c2 in self._reduce_tuple(t).items():
                _accum(out, (_add(d, dd), t2), c * c2)
        return _strip(out)

    def multiply(self, a: QuantumClass, b: QuantumClass) -> QuantumClass:
        out: QuantumClass = {}
        for (da, ta), ca in a.items():
            for (db, tb), cb in b.items():
                for (dd, t2), c2 in self.basis_product(ta, tb).items():
                    _accum(out, (_add(_add(da, db), dd), t2), ca * cb * c2)
        return _strip(out)

    def classical_limit(self, cls: QuantumClass) -> CohClass:
        """Drop every term carrying a nonzero quantum monomial."""
        zero = (0,) * self.spec.rho
        return {t: c for (d, t), c in cls.items() if d == zero}

    def lift_classical(self, cls: CohClass) -> QuantumClass:
        zero = (0,) * self.spec.rho
        return {(zero, t): c for t, c in cls.items()}

    def basis_product(self, ta: BasisTuple, tb: BasisTuple) -> QuantumClass:
        key = (ta, tb)
        cached = self._pair_cache.get(key)
        if cached is None:
            raw = _raw_product(self.spec, ta, tb)
            zero = (0,) * self.spec.rho
            cached = self.reduce({(zero, t): c for t, c in raw.items()})
            self._pair_cache[key] = cached
        return cached

    def _reduce_tuple(self, t: BasisTuple) -> dict:
        cached = self._nf.get(t)
        if cached is not None:
            return cached
        i = self.classical._offending_vertex(t)
        zero = (0,) * self.spec.rho
        if i == 0:
            result = {(zero, t): 1}
        else:
            out: dict = {}
            for coeff, nu, ops, dq in self._vertex_emissions(i, t[i - 1]):
                base = t[: i - 1] + (nu,) + t[i:]
                for t2, c2 in _apply_ops(self.spec, base, ops).items():
                    for (dd, t3), c3 in self._reduce_tuple(t2).items():
                        _accum(out, (_add(dd, dq), t3), coeff * c2 * c3)
            result = _strip(out)
        self._nf[t] = result
        return result

    def _vertex_emissions(self, i: int, lam) -> tuple:
        key = (i, lam)
        cached = self._emissions.get(key)
        if cached is None:
            cached = tuple(
                (coeff, nu, ops, (0,) * self.spec.rho)
                for coeff, nu, ops in classical_emissions(self.spec, i, lam)
            ) + quantum_emissions(self.spec, i, lam)
            self._emissions[key] = cached
        return cached


@lru_cache(maxsize=None)
def quantum_emissions(spec: QuiverSpec, i: int, lam) -> tuple:
    """The q_i-proportional rewrite terms for a too-wide partition at i.

    Elementary classes are applied at the targets of the arrows out of i;
    when i has no outgoing arrows the correction is the single term
    (-1)^(r_i - 1) q_i HR(s_lam).
    """
    s_i, s_out = spec.s(i), spec.s_out(i)
    targets = [j for j in range(i + 1, spec.rho + 1) for _ in range(spec.mult[i][j])]
    base_sign = 1 if spec.rank(i) % 2 == 1 else -1
    dq = tuple(1 if v == i else 0 for v in range(1, spec.rho + 1))
    out: dict = {}
    for ks in product(*[range(spec.rank(j) + 1) for j in targets]):
        k = sum(ks)
        hook = remove_rim_hook(add_first_row(lam, s_out - k), s_i)
        if hook is None:
            continue
        sign = base_sign * (1 if (s_out - k) % 2 == 0 else -1)
        ops = tuple(sorted((j, ka) for j, ka in zip(targets, ks) if ka))
        key = (hook.parts, ops)
        out[key] = out.get(key, 0) + sign * hook.sign
    return tuple(
        (coeff, nu, ops, dq) for (nu, ops), coeff in sorted(out.items()) if coeff
    )


def _add(d1: QMonomial, d2: QMonomial) -> QMonomial:
    return tuple(a + b for a, b in zip(d1, d2))
