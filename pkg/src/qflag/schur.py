"""Schur polynomial arithmetic in a fixed number of variables.

All three operations work with sparse dictionaries and exact integer
coefficients.  A "Schur combination" is a dict mapping partitions to
integers; partitions of length greater than the number of variables are the
zero polynomial and are never stored.

``lr_multiply`` computes Littlewood-Richardson products by expanding one
factor through the dual Jacobi-Trudi determinant into elementary symmetric
polynomials and applying iterated vertical-strip (Pieri) insertions; results
are memoized.  ``monomial_expansion`` enumerates semistandard tableaux
through the branching rule and serves as an independent cross-check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .partitions import Partition, transpose

SchurCombination = dict[Partition, int]


def pieri_vertical(lam: Partition, k: int, r: int) -> SchurCombination:
    """Multiply ``s_lam`` by the k-th elementary symmetric polynomial.

    Returns the sum of ``s_mu`` over all ways of adding a vertical k-strip
    (at most one box per row) to ``lam``, truncated to partitions of length
    at most ``r``.  ``k = 0`` is the identity.
    """
    if k < 0 or k > r:
        raise ValueError(f"vertical strip size {k} outside 0..{r}")
    if len(lam) > r:
        raise ValueError(f"partition {lam} longer than {r}")
    widths = lam + (0,) * (r - len(lam))
    out: SchurCombination = {}
    # states: (row index, boxes left to place, previous new width, prefix)
    stack: list[tuple[int, int, int, tuple[int, ...]]] = [(0, k, k + (widths[0] if r else 0) + 1, ())]
    while stack:
        i, left, prev, prefix = stack.pop()
        if left == 0:
            mu = prefix + widths[i:]
            while mu and mu[-1] == 0:
                mu = mu[:-1]
            out[mu] = out.get(mu, 0) + 1
            continue
        if i == r or left > r - i:
            continue
        w = widths[i]
        stack.append((i + 1, left, w, prefix + (w,)))
        if w + 1 <= prev:
            stack.append((i + 1, left - 1, w + 1, prefix + (w + 1,)))
    return out


@lru_cache(maxsize=None)
def _pieri_items(lam: Partition, k: int, r: int) -> tuple[tuple[Partition, int], ...]:
    return tuple(sorted(pieri_vertical(lam, k, r).items()))


@lru_cache(maxsize=None)
def _lr_items(lam: Partition, mu: Partition, r: int) -> tuple[tuple[Partition, int], ...]:
    # dual Jacobi-Trudi: expand s_mu as det(e_{mu'_i - i + j}), then fold the
    # resulting elementary factors into s_lam by vertical Pieri insertions.
    mut = transpose(mu)
    m = len(mut)
    out: dict[Partition, int] = {}
    for sigma in permutations(range(m)):
        sign = _perm_sign(sigma)
        degrees = []
        ok = True
        for i in range(m):
            d = mut[i] - i + sigma[i]
            if d < 0:
                ok = False
                break
            if d > 0:
                degrees.append(d)
        if not ok:
            continue
        terms: dict[Partition, int] = {lam: sign}
        for d in degrees:
            if d > r:
                terms = {}
                break
            nxt: dict[Partition, int] = {}
            for nu, c in terms.items():
                for tau, c2 in _pieri_items(nu, d, r):
                    nxt[tau] = nxt.get(tau, 0) + c * c2
            terms = nxt
        for nu, c in terms.items():
            out[nu] = out.get(nu, 0) + c
    return tuple(sorted((nu, c) for nu, c in out.items() if c))


def _perm_sign(sigma) -> int:
    s = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                s = -s
    return s


def lr_multiply(lam: Partition, mu: Partition, r: int) -> SchurCombination:
    """Littlewood-Richardson product ``s_lam * s_mu`` in ``r`` variables.

    Partitions of length greater than ``r`` are dropped from the result (they
    are the zero polynomial); inputs longer than ``r`` are rejected.
    """
    if len(lam) > r or len(mu) > r:
        raise ValueError(f"input partition longer than {r}")
    return dict(_lr_items(lam, mu, r))


@lru_cache(maxsize=None)
def _monomial_items(lam: Partition, r: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if len(lam) > r:
        return ()
    if r == 0:
        return (((), 1),)
    out: dict[tuple[int, ...], int] = {}
    for mu in _interlacing(lam):
        boxes = sum(lam) - sum(mu)
        for exps, c in _monomial_items(mu, r - 1):
            key = exps + (boxes,)
            out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


def _interlacing(lam: Partition):
    """Partitions mu with lam/mu a horizontal strip (branching rule)."""
    if not lam:
        yield ()
        return
    ranges = [range(lam[i + 1] if i + 1 < len(lam) else 0, lam[i] + 1) for i in range(len(lam))]
    for choice in product(*ranges):
        mu = choice
        while mu and mu[-1] == 0:
            mu = mu[:-1]
        yield mu


def monomial_expansion(lam: Partition, r: int) -> dict[tuple[int, ...], int]:
    """Expand ``s_lam(x_1..x_r)`` into monomials.

    Keys are exponent tuples of length ``r``; the expansion sums the content
    monomial over all semistandard fillings with entries in 1..r.  Returns
    the zero polynomial when ``lam`` is longer than ``r``.
    """
    return dict(_monomial_items(lam, r))
