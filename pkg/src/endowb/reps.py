"""Finite-dimensional representation combinatorics on a root datum.

Everything here is stated on the character side of the datum passed in.  Callers that
need the dual group (Satake, branching of dual representations) pass ``d.dual()``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .qpoly import ONE, ZERO, QPoly
from .rootdatum import RootDatum, Vector, check_subdatum, graded_lex_key, weyl_group

TABLE_GUARD = 10**6


class NotDominant(ValueError):
    pass


class TableTooLarge(RuntimeError):
    pass


def _require_dominant(d: RootDatum, lam: Sequence) -> Vector:
    lam = la.vec(lam)
    if len(lam) != d.rank:
        raise ValueError(f"weight {lam} has length {len(lam)}, expected {d.rank}")
    if not la.is_integral(lam) or not d.is_dominant(lam):
        raise NotDominant(f"{la.normalize(lam)} is not a dominant integral weight of {d.label}")
    return lam


def dim_rep(d: RootDatum, lam: Sequence) -> int:
    """Weyl dimension formula."""
    lam = _require_dominant(d, lam)
    shifted = la.add(lam, d.rho)
    num = den = Fraction(1)
    for c in d.positive_coroots:
        num *= la.dot(shifted, c)
        den *= la.dot(d.rho, c)
    value = num / den
    assert value.denominator == 1
    return value.numerator


def n_value(d: RootDatum, lam: Sequence) -> Fraction | None:
    """min over positive roots of <lam, alpha^vee>; None when there are no roots."""
    lam = la.vec(lam)
    if not d.positive_coroots:
        return None
    return min(la.dot(lam, c) for c in d.positive_coroots)


def m_value(d: RootDatum, lam: Sequence) -> Fraction | None:
    """min over positive roots of <lam + rho, alpha^vee>; None when there are no roots."""
    return n_value(d, la.add(la.vec(lam), d.rho))


def dominant_weights_below(d: RootDatum, lam: Sequence, guard: int = TABLE_GUARD) -> list[Vector]:
    """Dominant mu <= lam, highest first (by height of lam - mu), ties graded-lex."""
    lam = la.vec(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for a in d.positive_roots:
            nu = la.sub(mu, a)
            if nu not in seen and d.is_dominant(nu):
                seen.add(nu)
                if len(seen) > guard:
                    raise TableTooLarge(f"more than {guard} dominant weights below {la.normalize(lam)}")
                queue.append(nu)
    return sorted(seen, key=lambda mu: (d.height(la.sub(lam, mu)), graded_lex_key(mu)))


def _form(d: RootDatum):
    # W-invariant form sum_{alpha > 0} <x, alpha^vee><y, alpha^vee>
    cos = d.positive_coroots

    def b(x, y):
        return sum((la.dot(x, c) * la.dot(y, c) for c in cos), Fraction(0))

    return b


@dataclass(frozen=True)
class MultiplicityTable:
    datum: RootDatum
    highest: Vector
    entries: dict  # dominant weight -> multiplicity

    def __getitem__(self, mu: Sequence) -> int:
        rep, _ = self.datum.dominant_representative(mu)
        return self.entries.get(rep, 0)

    def dominant_items(self) -> list[tuple[Vector, int]]:
        return sorted(self.entries.items(), key=lambda kv: graded_lex_key(kv[0]))

    def full(self) -> dict[Vector, int]:
        """Multiplicities of every weight (Weyl completion)."""
        out = {}
        for mu, m in self.entries.items():
            for nu in self.datum.orbit(mu):
                out[nu] = m
        return out

    def total(self) -> int:
        return sum(m * len(self.datum.orbit(mu)) for mu, m in self.entries.items())

    def to_tsv(self) -> str:
        lines = []
        for mu, m in self.dominant_items():
            lines.append(",".join(str(x) for x in la.normalize(mu)) + f"\t{m}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"datum": self.datum.label, "highest": [str(x) for x in la.normalize(self.highest)],
                "entries": [[[str(x) for x in la.normalize(mu)], m] for mu, m in self.dominant_items()]}


def weight_multiplicities(d: RootDatum, lam: Sequence, guard: int = TABLE_GUARD) -> MultiplicityTable:
    """Freudenthal's recursion on the dominant weights below ``lam``."""
    lam = _require_dominant(d, lam)
    order = dominant_weights_below(d, lam, guard)
    b = _form(d)
    top = la.add(lam, d.rho)
    top_sq = b(top, top)
    mult: dict[Vector, int] = {lam: 1}

    def lookup(nu):
        rep, _ = d.dominant_representative(nu)
        return mult.get(rep, 0)

    for mu in order[1:]:
        acc = Fraction(0)
        for a in d.positive_roots:
            k = 1
            while True:
                nu = la.add(mu, la.scale(k, a))
                m = lookup(nu)
                if not m:
                    break
                acc += b(nu, a) * m
                k += 1
        shifted = la.add(mu, d.rho)
        value = 2 * acc / (top_sq - b(shifted, shifted))
        assert value.denominator == 1 and value >= 0, (mu, value)
        if value:
            mult[mu] = value.numerator
    return MultiplicityTable(d, lam, mult)


# -- Kostant partition functions ------------------------------------------------------------

def _partition_counts(d: RootDatum, coords: tuple[int, ...]) -> dict[int, int]:
    """{k: number of ways to write coords as a sum of k positive roots}."""
    cache = d.__dict__.setdefault("_kostant_cache", {})
    roots = d.positive_root_coords

    def rec(j: int, c: tuple[int, ...]) -> dict[int, int]:
        key = (j, c)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if j == len(roots):
            out = {0: 1} if not any(c) else {}
        else:
            out: dict[int, int] = {}
            r = roots[j]
            k = 0
            cur = c
            while all(x >= 0 for x in cur):
                for parts, n in rec(j + 1, cur).items():
                    out[parts + k] = out.get(parts + k, 0) + n
                k += 1
                cur = tuple(x - y for x, y in zip(cur, r))
        cache[key] = out
        return out

    return rec(0, coords)


def kostant_partition(d: RootDatum, beta: Sequence, graded: bool = True) -> QPoly:
    """Kostant partition function of ``beta``; q^k marks decompositions into k parts."""
    c = d.simple_coords(beta)
    if c is None or not la.is_integral(c) or any(x < 0 for x in c):
        return ZERO
    counts = _partition_counts(d, la.as_int_vec(c))
    if graded:
        return QPoly({2 * k: n for k, n in counts.items()})
    return QPoly.const(sum(counts.values()))


def lusztig_q_analog(d: RootDatum, lam: Sequence, mu: Sequence) -> QPoly:
    """Alternating Weyl sum of graded partition functions; at q = 1 the weight multiplicity."""
    lam = _require_dominant(d, lam)
    mu = _require_dominant(d, mu)
    if lam == mu:
        return ONE
    if not d.leq(mu, lam):
        return ZERO
    top = la.add(lam, d.rho)
    base = la.add(mu, d.rho)
    total = ZERO
    for w in weyl_group(d):
        p = kostant_partition(d, la.sub(w.act(top), base), graded=True)
        if p:
            total = total + p * w.sign
    return total


# -- branching -----------------------------------------------------------------------------

def branch(dG: RootDatum, dH: RootDatum, lam: Sequence, guard: int = TABLE_GUARD) -> dict[Vector, int]:
    """Decompose the restriction of V_lam from dG to the sub-root-datum dH."""
    check_subdatum(dG, dH)
    lam = _require_dominant(dG, lam)
    remaining: dict[Vector, int] = {}
    for nu, m in weight_multiplicities(dG, lam, guard).full().items():
        if dH.is_dominant(nu):
            remaining[nu] = m
    out: dict[Vector, int] = {}
    while remaining:
        # maximal for the dH order, since its positive roots are positive for dG
        top = max(remaining, key=lambda nu: (dG.height(nu), graded_lex_key(nu)))
        c = remaining[top]
        out[top] = c
        for nu, m in weight_multiplicities(dH, top, guard).entries.items():
            left = remaining.get(nu, 0) - c * m
            if left < 0:
                raise ArithmeticError(f"negative branching remainder at {nu}")
            if left:
                remaining[nu] = left
            else:
                remaining.pop(nu, None)
    return dict(sorted(out.items(), key=lambda kv: graded_lex_key(kv[0])))
