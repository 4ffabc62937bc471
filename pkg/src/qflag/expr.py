"""Parsing and deterministic printing of class expressions.

Grammar (whitespace insensitive):

    expr := ['-'] term (('+' | '-') term)*
    term := [rational] qfactor* sfactor*
    rational := INT ['/' INT]
    qfactor  := 'q' INT ['^' INT]
    sfactor  := 's' INT '[' INT (',' INT)* ']'

``1`` denotes the identity class.  A term multiplies its factors together;
factors repeated at the same vertex are multiplied in the ring, so
expressions such as ``s1[1] s1[1]`` are legal inputs to ``reduce``.

Printing is deterministic: terms are sorted by q-degree, then q-exponents,
then vertex-wise by the graded order on partitions (``--order lex`` sorts
plainly by exponents and partition tuples instead), and every printed class
re-parses to an equal class.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .partitions import grading_key, partition
from .quiver import QuiverSpec


class ExprError(ValueError):
    """Raised on a malformed class expression."""


_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<q>q\d+(?:\^\d+)?)|(?P<s>s\d+\[[^\]]*\])|(?P<sign>[+-]))"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ExprError(f"unexpected input at position {pos}: {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("rat", "q", "s", "sign"):
            tok = m.group(kind)
            if tok is not None:
                out.append((kind, tok))
                break
    return out


def parse(text: str, spec: QuiverSpec) -> list[tuple[Fraction, tuple[int, ...], list]]:
    """Parse into a list of terms (coefficient, q-exponents, s-factors).

    Each s-factor is a (vertex, partition) pair; factors are kept in input
    order and may repeat.  Vertex and q indices are checked against the
    spec.
    """
    tokens = tokenize(text)
    if not tokens:
        raise ExprError("empty expression")
    terms = []
    idx = 0
    sign = 1
    if tokens[0][0] == "sign":
        sign = -1 if tokens[0][1] == "-" else 1
        idx = 1
    while idx <= len(tokens):
        coeff = Fraction(sign)
        qexp = [0] * spec.rho
        factors: list = []
        saw = False
        saw_rat = False
        while idx < len(tokens) and tokens[idx][0] != "sign":
            kind, tok = tokens[idx]
            if kind == "rat":
                if saw_rat or factors or any(qexp):
                    raise ExprError(f"misplaced rational {tok!r}")
                coeff *= Fraction(tok)
                saw_rat = True
            elif kind == "q":
                body = tok[1:]
                if "^" in body:
                    num, power = body.split("^")
                else:
                    num, power = body, "1"
                i = int(num)
                if not 1 <= i <= spec.rho:
                    raise ExprError(f"no quantum parameter q{i}")
                qexp[i - 1] += int(power)
            else:
                m = re.fullmatch(r"s(\d+)\[([^\]]*)\]", tok)
                i = int(m.group(1))
                if not 1 <= i <= spec.rho:
                    raise ExprError(f"no vertex {i}")
                body = m.group(2).strip()
                if not body:
                    raise ExprError(f"empty partition in {tok!r}")
                try:
                    lam = partition(int(p) for p in body.split(","))
                except ValueError as exc:
                    raise ExprError(str(exc)) from None
                factors.append((i, lam))
            saw = True
            idx += 1
        if not saw:
            raise ExprError("missing term")
        terms.append((coeff, tuple(qexp), factors))
        if idx == len(tokens):
            break
        sign = -1 if tokens[idx][1] == "-" else 1
        idx += 1
    return terms


def evaluate_quantum(text: str, ring) -> dict:
    """Evaluate an expression in the quantum ring (raw products of the
    named Schur generators, then one reduction to canonical form)."""
    spec = ring.spec
    raw: dict = {}
    for coeff, qexp, factors in parse(text, spec):
        for key, c in _term_raw(spec, factors).items():
            cur = raw.get((qexp, key), 0)
            raw[(qexp, key)] = cur + coeff * c
    return ring.reduce(raw)

def evaluate_classical(text: str, ring) -> dict:
    spec = ring.spec
    raw: dict = {}
    for coeff, qexp, factors in parse(text, spec):
        if any(qexp):
            raise ExprError("quantum parameters in a classical expression")
        for key, c in _term_raw(spec, factors).items():
            raw[key] = raw.get(key, 0) + coeff * c
    return ring.reduce(raw)


def _term_raw(spec: QuiverSpec, factors) -> dict:
    """Multiply the s-factors of one term as raw per-vertex LR products;
    partitions longer than their vertex dimension give zero."""
    from .schur import _lr_items

    states: dict = {((),) * spec.rho: 1}
    for i, lam in factors:
        if len(lam) > spec.rank(i):
            return {}
        nxt: dict = {}
        for t, c in states.items():
            for mu, c2 in _lr_items(t[i - 1], lam, spec.rank(i)):
                key = t[: i - 1] + (mu,) + t[i:]
                nxt[key] = nxt.get(key, 0) + c * c2
        states = nxt
    return states


def term_sort_key(spec: QuiverSpec, order: str):
    def deg_key(item):
        (d, t) = item
        return (spec.q_degree(d), d, tuple(grading_key(lam) for lam in t))

    def lex_key(item):
        (d, t) = item
        return (d, t)

    return deg_key if order == "deg" else lex_key


def format_class(cls, spec: QuiverSpec, quantum: bool = False, order: str = "deg") -> str:
    """Render a class in the expression grammar; '0' for the zero class."""
    items = []
    zero = (0,) * spec.rho
    for key, c in cls.items():
        d, t = key if quantum else (zero, key)
        items.append(((d, t), Fraction(c)))
    if not items:
        return "0"
    items.sort(key=lambda kv: term_sort_key(spec, order)(kv[0]))
    pieces = []
    for (d, t), c in items:
        body = _format_term(d, t, abs(c))
        if not pieces:
            pieces.append(body if c > 0 else f"- {body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def _format_term(d, t, coeff: Fraction) -> str:
    factors = []
    for i, e in enumerate(d, start=1):
        if e == 1:
            factors.append(f"q{i}")
        elif e:
            factors.append(f"q{i}^{e}")
    for i, lam in enumerate(t, start=1):
        if lam:
            factors.append(f"s{i}[{','.join(str(p) for p in lam)}]")
    if coeff != 1 or not factors:
        factors.insert(0, str(coeff))
    return " ".join(factors)
