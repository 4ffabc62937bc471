"""Laurent superpotential of a Fano quiver flag variety.

The potential lives on the torus of the abelianized quiver enlarged by one
variable y^i_{jk} for every ordered pair of distinct copies of a vertex:

    W = sum_a x_a + sum_i sum_{j != k} y^i_{jk},

subject to one multiplicative constraint per abelianized vertex (i, j)
identifying the fiber of the quantum-parameter projection:

    prod_{t(a)=(i,j)} x_a / prod_{s(a)=(i,j)} x_a
        * prod_{k != j} y^i_{kj} / y^i_{jk}  =  q_i.

Solving the constraints along a lattice basis of arrows (one chosen arrow
per original vertex, transported to every copy) turns W into a Laurent
polynomial W_q.  On the critical locus the y-ratio collapses to the sign
(-1)^(r_i - 1), leaving one monomial relation per abelianized vertex:

    x_{a_ij} = (-1)^(r_i - 1) q_i A_ij,

with A_ij a Laurent monomial in the non-basis variables and quantum
parameters (basis variables are eliminated by substituting the relations of
later vertices, which terminates because the quiver is acyclic).  Each
relation records its derivation from the raw constraint so that the ideal
comparison with the toric rewrite system can be replayed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .classical import _accum, _strip
from .quiver import QuiverSpec

Vertex = tuple[int, int]


class Arrow(NamedTuple):
    src: Vertex  # (0, 1) is the source
    dst: Vertex
    copy: int

    def label(self) -> str:
        return f"{self.src[0]}.{self.src[1]}->{self.dst[0]}.{self.dst[1]}#{self.copy}"


class LaurentTerm(NamedTuple):
    """coeff * q^{q} * prod var^exp, with integer (possibly negative)
    exponents; ``exps`` is a sorted tuple of (variable tag, exponent)."""

    coeff: Fraction
    q: tuple[int, ...]
    exps: tuple

    def render(self) -> str:
        parts = []
        c = Fraction(self.coeff)
        if c != 1 or (not self.exps and not any(self.q)):
            parts.append(str(c))
        for var, e in self.exps:
            if var[0] == "x":
                parts.append(f"x[{var[1].label()}]^{e}")
            else:
                _, i, j, k = var
                parts.append(f"y[{i},{j},{k}]^{e}")
        for i, e in enumerate(self.q, start=1):
            if e:
                parts.append(f"q[{i}]^{e}")
        return " * ".join(parts)


class Superpotential(NamedTuple):
    terms: tuple[LaurentTerm, ...]
    constraints: tuple[LaurentTerm, ...]  # monomials constrained to equal 1


@dataclass(frozen=True)
class CriticalRelation:
    """x_arrow * denom = sign * q^{q} * numer, basis variables eliminated.

    ``multiplier`` and ``corrections`` replay the elimination:
    relation = multiplier * raw_constraint - sum of h * relation(vertex)
    over the corrections (h, vertex), as exact polynomials over the arrow
    variables.
    """

    vertex: Vertex
    arrow: int
    sign: int
    q: tuple[int, ...]
    numer: tuple[int, ...]
    denom: tuple[int, ...]
    multiplier: tuple[int, ...]
    corrections: tuple


def abelian_arrows(spec: QuiverSpec) -> tuple[Arrow, ...]:
    """All arrows of the abelianized quiver in a fixed order."""
    ab = spec.abelianize()
    out = []
    for (i, j) in ab.vertices:
        for m in range(1, spec.mult[0][i] + 1):
            out.append(Arrow((0, 1), (i, j), m))
    for (i, j) in ab.vertices:
        for (k, l) in ab.vertices:
            for m in range(1, spec.mult[i][k] + 1):
                out.append(Arrow((i, j), (k, l), m))
    return tuple(out)


def default_choice(spec: QuiverSpec) -> dict[int, int]:
    """Per original vertex, the lowest-numbered source of an incoming arrow."""
    return {
        i: min(j for j in range(i) if spec.mult[j][i])
        for i in range(1, spec.rho + 1)
    }


def basis_arrows(spec: QuiverSpec, choice: Optional[dict[int, int]] = None) -> dict[Vertex, int]:
    """Index of the lattice-basis arrow into each abelianized vertex: the
    first copy of the chosen arrow, emanating from copy 1 of its source."""
    choice = default_choice(spec) if choice is None else choice
    arrows = abelian_arrows(spec)
    ab = spec.abelianize()
    out = {}
    for (i, j) in ab.vertices:
        src = (choice[i], 1) if choice[i] else (0, 1)
        out[(i, j)] = arrows.index(Arrow(src, (i, j), 1))
    return out


def _y_vars(spec: QuiverSpec) -> list[tuple]:
    out = []
    for i in range(1, spec.rho + 1):
        r = spec.rank(i)
        out.extend(
            ("y", i, j, k)
            for j in range(1, r + 1)
            for k in range(1, r + 1)
            if j != k
        )
    return out


def superpotential(spec: QuiverSpec) -> Superpotential:
    """The raw potential and its multiplicative constraints."""
    if not spec.is_fano:
        raise ValueError("superpotential is emitted only for Fano quivers")
    arrows = abelian_arrows(spec)
    zero = (0,) * spec.rho
    terms = [LaurentTerm(Fraction(1), zero, ((("x", a), 1),)) for a in arrows]
    terms += [LaurentTerm(Fraction(1), zero, ((v, 1),)) for v in _y_vars(spec)]
    constraints = []
    for (i, j) in spec.abelianize().vertices:
        exps: dict = {}
        for a in arrows:
            if a.dst == (i, j):
                exps[("x", a)] = exps.get(("x", a), 0) + 1
            if a.src == (i, j):
                exps[("x", a)] = exps.get(("x", a), 0) - 1
        for k in range(1, spec.rank(i) + 1):
            if k != j:
                exps[("y", i, k, j)] = exps.get(("y", i, k, j), 0) + 1
                exps[("y", i, j, k)] = exps.get(("y", i, j, k), 0) - 1
        q = tuple(-1 if u == i else 0 for u in range(1, spec.rho + 1))
        constraints.append(
            LaurentTerm(Fraction(1), q, tuple(sorted((v, e) for v, e in exps.items() if e)))
        )
    return Superpotential(tuple(terms), tuple(constraints))


def _raw_parts(spec: QuiverSpec, v: Vertex, basis: dict[Vertex, int], arrows):
    """(denominator, numerator) exponent vectors of the raw solve at v:
    x_basis * denom = sign * q_i * numer before any substitution."""
    b = basis[v]
    n = len(arrows)
    denom = [0] * n
    numer = [0] * n
    for idx, a in enumerate(arrows):
        if a.dst == v and idx != b:
            denom[idx] += 1
        if a.src == v:
            numer[idx] += 1
    return tuple(denom), tuple(numer)


def critical_relations(
    spec: QuiverSpec, choice: Optional[dict[int, int]] = None
) -> tuple[CriticalRelation, ...]:
    """Solved critical-locus relations, one per abelianized vertex.

    Returned in reverse vertex order (the order in which basis variables are
    eliminated); each relation's numerator and denominator involve only
    non-basis arrows and quantum parameters.
    """
    if not spec.is_fano:
        raise ValueError("critical relations are emitted only for Fano quivers")
    arrows = abelian_arrows(spec)
    basis = basis_arrows(spec, choice)
    vertex_of_basis = {idx: v for v, idx in basis.items()}
    final: dict[Vertex, CriticalRelation] = {}
    out = []
    for v in reversed(spec.abelianize().vertices):
        i = v[0]
        sign = 1 if spec.rank(i) % 2 == 1 else -1
        q = tuple(1 if u == i else 0 for u in range(1, spec.rho + 1))
        denom, numer = _raw_parts(spec, v, basis, arrows)
        multiplier = (0,) * len(arrows)
        corrections: list[tuple] = []
        while True:
            pending = [
                idx
                for idx, e in enumerate(numer)
                if e and idx in vertex_of_basis and idx != basis[v]
            ]
            if not pending:
                break
            idx = pending[0]
            sub = final[vertex_of_basis[idx]]
            cofactor_exps = list(numer)
            cofactor_exps[idx] -= 1
            corrections = [
                (c, cq, _tadd(ce, sub.denom), cv) for c, cq, ce, cv in corrections
            ]
            corrections.append((-sign, q, tuple(cofactor_exps), sub.vertex))
            numer = _tadd(tuple(cofactor_exps), sub.numer)
            denom = _tadd(denom, sub.denom)
            multiplier = _tadd(multiplier, sub.denom)
            sign *= sub.sign
            q = _tadd(q, sub.q)
        rel = CriticalRelation(
            vertex=v,
            arrow=basis[v],
            sign=sign,
            q=q,
            numer=numer,
            denom=denom,
            multiplier=multiplier,
            corrections=tuple(corrections),
        )
        final[v] = rel
        out.append(rel)
    return tuple(out)


def solved_potential(
    spec: QuiverSpec, choice: Optional[dict[int, int]] = None
) -> tuple[LaurentTerm, ...]:
    """W_q: the potential with basis variables solved out of the constraints.

    Substitutes x_{a_ij} = q_i * A_ij * (y-ratio) before imposing
    criticality, so the y variables survive; for a quiver with all
    dimensions 1 there are no y variables and the result is the familiar
    toric mirror of the abelianization.
    """
    if not spec.is_fano:
        raise ValueError("superpotential is emitted only for Fano quivers")
    arrows = abelian_arrows(spec)
    basis = basis_arrows(spec, choice)
    vertex_of_basis = {idx: v for v, idx in basis.items()}
    # solved[v]: (q, x-exponents over arrows, y-exponent dict) for x_{a_v}
    solved: dict[Vertex, tuple] = {}
    for v in reversed(spec.abelianize().vertices):
        i = v[0]
        q = tuple(1 if u == i else 0 for u in range(1, spec.rho + 1))
        denom, numer = _raw_parts(spec, v, basis, arrows)
        exps = tuple(n - d for n, d in zip(numer, denom))
        ys: dict = {}
        for k in range(1, spec.rank(i) + 1):
            if k != v[1]:
                ys[("y", i, v[1], k)] = ys.get(("y", i, v[1], k), 0) + 1
                ys[("y", i, k, v[1])] = ys.get(("y", i, k, v[1]), 0) - 1
        while True:
            pending = [idx for idx, e in enumerate(exps) if e > 0 and idx in vertex_of_basis]
            if not pending:
                break
            idx = pending[0]
            q2, exps2, ys2 = solved[vertex_of_basis[idx]]
            once = list(exps)
            once[idx] -= 1
            exps = _tadd(tuple(once), exps2)
            q = _tadd(q, q2)
            for var, e in ys2.items():
                ys[var] = ys.get(var, 0) + e
        solved[v] = (q, exps, {var: e for var, e in ys.items() if e})
    zero = (0,) * spec.rho
    terms = [
        LaurentTerm(Fraction(1), zero, ((("x", a), 1),))
        for idx, a in enumerate(arrows)
        if idx not in vertex_of_basis
    ]
    terms += [LaurentTerm(Fraction(1), zero, ((v, 1),)) for v in _y_vars(spec)]
    for v in spec.abelianize().vertices:
        q, exps, ys = solved[v]
        tags: dict = dict(ys)
        for idx, e in enumerate(exps):
            if e:
                tags[("x", arrows[idx])] = e
        terms.append(LaurentTerm(Fraction(1), q, tuple(sorted(tags.items()))))
    return tuple(terms)


def relation_poly(rel: CriticalRelation, n: int) -> dict:
    """The cleared relation as a polynomial over the arrow variables:
    x_arrow * denom - sign * q^{q} * numer."""
    zero_q = (0,) * len(rel.q)
    lhs = list(rel.denom)
    lhs[rel.arrow] += 1
    return _strip({
        (zero_q, tuple(lhs)): 1,
        (rel.q, rel.numer): -rel.sign,
    })


def raw_constraint_poly(
    spec: QuiverSpec, v: Vertex, choice: Optional[dict[int, int]] = None
) -> dict:
    """The cleared pre-substitution constraint at v (critical-locus signs):
    x_basis * denom - (-1)^(r_i - 1) q_i * numer."""
    arrows = abelian_arrows(spec)
    basis = basis_arrows(spec, choice)
    denom, numer = _raw_parts(spec, v, basis, arrows)
    i = v[0]
    sign = 1 if spec.rank(i) % 2 == 1 else -1
    q = tuple(1 if u == i else 0 for u in range(1, spec.rho + 1))
    lhs = list(denom)
    lhs[basis[v]] += 1
    return _strip({
        ((0,) * spec.rho, tuple(lhs)): 1,
        (q, numer): -sign,
    })


def arrow_poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (da, ea), ca in p.items():
        for (db, eb), cb in q.items():
            _accum(out, (_tadd(da, db), _tadd(ea, eb)), ca * cb)
    return _strip(out)


def to_vertex_variables(spec: QuiverSpec, poly: dict) -> dict:
    """Change of basis into the toric oracle's variables: every arrow factor
    becomes the difference of the head and tail hyperplane classes."""
    arrows = abelian_arrows(spec)
    ab = spec.abelianize()
    nv = len(ab.vertices)
    diffs = []
    for a in arrows:
        term: dict = {}
        e = [0] * nv
        e[ab.index[a.dst]] = 1
        term[tuple(e)] = 1
        if a.src != (0, 1):
            e = [0] * nv
            e[ab.index[a.src]] = 1
            term[tuple(e)] = -1
        diffs.append(term)
    out: dict = {}
    for (d, exps), c in poly.items():
        term: dict = {(0,) * nv: c}
        for idx, e in enumerate(exps):
            if e < 0:
                raise ValueError("clear denominators before changing basis")
            for _ in range(e):
                nxt: dict = {}
                for ea, ca in term.items():
                    for eb, cb in diffs[idx].items():
                        _accum(nxt, _tadd(ea, eb), ca * cb)
                term = nxt
        for e2, c2 in term.items():
            _accum(out, (d, e2), c2)
    return _strip(out)


def _tadd(a, b):
    return tuple(x + y for x, y in zip(a, b))
