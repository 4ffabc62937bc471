"""Independent toric verification layer.

The abelianized quiver of a quiver flag variety is toric, and its (quantum)
cohomology ring is a polynomial quotient with one generator x_v per
abelianized vertex and one relation per generator.  Each relation has
leading term x_v^{s}, so the quotient carries a dedicated confluent rewrite
system: replace x_v^{s} by the lower-order terms of its relation until every
exponent is below its bound.  Everything here is exact; coefficients are
integers except for the final rational normalization of integrals.

Products in the nonabelian ring are checked against this model through the
anti-invariant

    omega = prod_i prod_{j<k} (x_{ij} - x_{ik}):

a claimed product equals the true one iff both sides, lifted to the toric
ring and multiplied by omega, have the same normal form.  Integrals over
the quiver flag variety are computed as toric integrals against omega^2
scaled by (-1)^{#root pairs} / #Weyl; the toric integral itself reads off
the coefficient of the top monomial prod x_v^{s_v - 1} of the classical
normal form, normalized to 1 on the iterated projective-bundle structure.

Polynomials are dicts mapping (q-exponents, x-exponents) to coefficients.
The rewrite system and its normal-form cache are immutable once built, and
normal_form is pure, so an oracle instance can be shared between workers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from .classical import BasisTuple, CohClass, _accum, _strip
from .quiver import QuiverSpec
from .schur import _monomial_items

Monomial = tuple[tuple[int, ...], tuple[int, ...]]
ToricPolynomial = dict[Monomial, Fraction]


class ToricOracle:
    def __init__(self, spec: QuiverSpec):
        self.spec = spec
        self.ab = spec.abelianize()
        self.nvars = len(self.ab.vertices)
        self._zero_q = (0,) * spec.rho
        self._zero_x = (0,) * self.nvars
        self.bounds = tuple(self.ab.s(v) for v in self.ab.vertices)
        self.rules_classical = tuple(
            self._build_rule(v, quantum=False) for v in self.ab.vertices
        )
        self.rules_quantum = (
            tuple(self._build_rule(v, quantum=True) for v in self.ab.vertices)
            if spec.is_fano
            else None
        )
        self._nf_cache: dict[bool, dict] = {False: {}, True: {}}
        self._lift_cache: dict[BasisTuple, ToricPolynomial] = {}
        self._omega: ToricPolynomial | None = None

    # -- rewrite system -----------------------------------------------------

    def _build_rule(self, v: tuple[int, int], quantum: bool) -> ToricPolynomial:
        """Replacement for x_v^{s_i}: the lower-order terms of the toric
        relation at v, solved for the leading power."""
        i, _ = v
        spec = self.spec
        s_i, s_out = spec.s(i), spec.s_out(i)
        vi = self.ab.index[v]
        rhs: ToricPolynomial = {}
        classical = self._relation_side(
            vi,
            [j for j in range(1, i) for _ in range(spec.mult[j][i])],
            s_i,
            lambda k: -1 if k % 2 == 1 else 1,
        )
        for key, c in classical.items():
            if key[1][vi] == s_i:
                continue
            _accum(rhs, key, -c)
        if quantum:
            base = 1 if spec.rank(i) % 2 == 1 else -1
            dq = tuple(1 if u == i else 0 for u in range(1, spec.rho + 1))
            qside = self._relation_side(
                vi,
                [j for j in range(i + 1, spec.rho + 1) for _ in range(spec.mult[i][j])],
                s_out,
                lambda k: base * (1 if (s_out - k) % 2 == 0 else -1),
            )
            for (d, e), c in qside.items():
                _accum(rhs, (_tadd(d, dq), e), c)
        return _strip(rhs)

    def _relation_side(self, vi: int, legs: list[int], top: int, sign) -> ToricPolynomial:
        """sum_k sign(k) x_vi^{top-k} * e-products over the given vertices.

        ``legs`` lists the non-source vertices at the far ends of the arrows,
        one entry per parallel arrow; each contributes a factor
        sum_{k_a} e_{k_a} of its own variables, tagged by total degree k.
        """
        expanded: dict = {(0, self._zero_x): 1}
        for j in legs:
            vars_j = [self.ab.index[(j, m)] for m in range(1, self.spec.rank(j) + 1)]
            nxt: dict = {}
            for k in range(self.spec.rank(j) + 1):
                for combo in combinations(vars_j, k):
                    e = [0] * self.nvars
                    for u in combo:
                        e[u] = 1
                    eb = tuple(e)
                    for (ka, ea), ca in expanded.items():
                        _accum(nxt, (ka + k, _tadd(ea, eb)), ca)
            expanded = nxt
        result: ToricPolynomial = {}
        for (k, e), c in expanded.items():
            if k > top:
                continue
            key = (self._zero_q, _tadd(e, _unit(self.nvars, vi, top - k)))
            _accum(result, key, sign(k) * c)
        return _strip(result)

    def normal_form(self, p: ToricPolynomial, quantum: bool = False) -> ToricPolynomial:
        """Reduce every x-exponent below its bound; exact and confluent."""
        out: ToricPolynomial = {}
        for (d, e), c in p.items():
            if not c:
                continue
            for (dd, e2), c2 in self._nf_monomial(e, quantum).items():
                _accum(out, (_tadd(d, dd), e2), c * c2)
        return _strip(out)

    def _nf_monomial(self, e: tuple[int, ...], quantum: bool) -> dict:
        cache = self._nf_cache[quantum]
        cached = cache.get(e)
        if cached is not None:
            return cached
        v = self._reducible_at(e)
        if v < 0:
            result = {(self._zero_q, e): 1}
        else:
            rules = self.rules_quantum if quantum else self.rules_classical
            rest = list(e)
            rest[v] -= self.bounds[v]
            out: dict = {}
            for (dr, er), cr in rules[v].items():
                target = _tadd(tuple(rest), er)
                for (dd, e2), c2 in self._nf_monomial(target, quantum).items():
                    _accum(out, (_tadd(dr, dd), e2), cr * c2)
            result = _strip(out)
        cache[e] = result
        return result

    def _reducible_at(self, e: tuple[int, ...]) -> int:
        for v in range(self.nvars - 1, -1, -1):
            if e[v] >= self.bounds[v]:
                return v
        return -1

    # -- lifting and omega ----------------------------------------------------

    def lift(self, t: BasisTuple) -> ToricPolynomial:
        """Natural lift of a basis tuple: the product over vertices of the
        Schur polynomial in that vertex's variables."""
        cached = self._lift_cache.get(t)
        if cached is not None:
            return cached
        poly: ToricPolynomial = {(self._zero_q, self._zero_x): 1}
        offset = 0
        for i in range(1, self.spec.rho + 1):
            r = self.spec.rank(i)
            items = _monomial_items(t[i - 1], r)
            nxt: ToricPolynomial = {}
            for (d, e), c in poly.items():
                for exps, c2 in items:
                    e2 = list(e)
                    for m, x in enumerate(exps):
                        e2[offset + m] += x
                    _accum(nxt, (d, tuple(e2)), c * c2)
            poly = nxt
            offset += r
        self._lift_cache[t] = poly
        return poly

    def lift_class(self, cls, quantum: bool = False) -> ToricPolynomial:
        """Lift a classical or quantum class, q-monomials passing through."""
        out: ToricPolynomial = {}
        for key, c in cls.items():
            d, t = key if quantum else (self._zero_q, key)
            for (d2, e), c2 in self.lift(t).items():
                _accum(out, (_tadd(d, d2), e), c * c2)
        return _strip(out)

    def omega(self) -> ToricPolynomial:
        """prod_i prod_{j<k} (x_{ij} - x_{ik}), unnormalized."""
        if self._omega is None:
            poly: ToricPolynomial = {(self._zero_q, self._zero_x): 1}
            for i in range(1, self.spec.rho + 1):
                vars_i = [self.ab.index[(i, m)] for m in range(1, self.spec.rank(i) + 1)]
                for a, b in combinations(vars_i, 2):
                    diff = {
                        (self._zero_q, _unit(self.nvars, a, 1)): 1,
                        (self._zero_q, _unit(self.nvars, b, 1)): -1,
                    }
                    poly = poly_mul(poly, diff)
            self._omega = poly
        return self._omega

    # -- verification and integration ----------------------------------------

    def verify_product(self, a, b, claimed, quantum: bool = False) -> bool:
        """True iff (lift of claimed)*omega and (lift a)(lift b)*omega agree
        in the toric quotient ring."""
        w = self.omega()
        lhs = poly_mul(self.lift_class(claimed, quantum), w)
        rhs = poly_mul(poly_mul(self.lift_class(a, quantum), self.lift_class(b, quantum)), w)
        return self.normal_form(lhs, quantum) == self.normal_form(rhs, quantum)

    def toric_integral(self, p: ToricPolynomial) -> Fraction:
        """Coefficient of prod x_v^{s_v - 1} in the classical normal form."""
        top = tuple(s - 1 for s in self.bounds)
        nf = self.normal_form(p, quantum=False)
        return nf.get((self._zero_q, top), 0)

    def integral(self, cls: CohClass) -> Fraction:
        """Integral over the quiver flag variety of a classical class."""
        spec = self.spec
        pairs = sum(r * (r - 1) // 2 for r in spec.dims)
        weyl = 1
        for r in spec.dims:
            weyl *= factorial(r)
        w = self.omega()
        value = self.toric_integral(poly_mul(self.lift_class(cls), poly_mul(w, w)))
        return Fraction((-1) ** pairs, weyl) * value

    def pairing_matrix(self, ring) -> list[list[Fraction]]:
        """Gram matrix of the Poincare pairing on the given classical ring's
        basis; symmetric and nondegenerate."""
        basis = ring.basis()
        integrals = {t: self.integral({t: 1}) for t in basis}
        out = []
        for ta in basis:
            row = []
            for tb in basis:
                prod_cls = ring.basis_product(ta, tb)
                row.append(sum((c * integrals[t] for t, c in prod_cls.items()), Fraction(0)))
            out.append(row)
        return out


def poly_mul(p: ToricPolynomial, q: ToricPolynomial) -> ToricPolynomial:
    out: ToricPolynomial = {}
    for (da, ea), ca in p.items():
        for (db, eb), cb in q.items():
            _accum(out, (_tadd(da, db), _tadd(ea, eb)), ca * cb)
    return _strip(out)


def _tadd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _unit(n: int, pos: int, value: int) -> tuple[int, ...]:
    e = [0] * n
    e[pos] = value
    return tuple(e)
