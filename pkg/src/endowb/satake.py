"""Spherical Hecke algebras in Satake coordinates (split groups only).

Dominant coweights of G are the dominant weights of the dual datum, so the character
chi_lam of the dual representation and all q-analogs are computed on ``d.dual()``.

Normalizations, with rho = rho_G and K the q-analog on the dual datum:

    S^{-1}(chi_lam) = sum_mu q^{-<mu, rho>} D[lam, mu] tau_mu,   D[lam, mu] = K_{lam, mu}(q^{-1})
    S(tau_lam)      = q^{<lam, rho>} sum_mu B[lam, mu] chi_mu,    B = D^{-1}

Both D and B are unitriangular for the dominance order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _linalg as la
from .qpoly import ONE, ZERO, QPoly
from .reps import NotDominant, lusztig_q_analog, weight_multiplicities
from .rootdatum import RootDatum, Vector, dominant_weights_in_box, graded_lex_key, weyl_group

INDEX_GUARD = 400


class NotSplit(ValueError):
    pass


class CutoffTooLarge(ValueError):
    pass


class BasisSingular(ValueError):
    pass


def _require_split(d: RootDatum) -> None:
    if not d.is_split:
        raise NotSplit(f"{d.label} has nontrivial frobenius; only split data are supported")


# -- norms, projection, truncations ----------------------------------------------------------

def _basis_inverse(d: RootDatum, basis: Sequence[Sequence] | None):
    if basis is None:
        return None
    rows = [la.vec(b) for b in basis]
    if len(rows) != d.rank or any(len(r) != d.rank for r in rows):
        raise BasisSingular("basis must consist of rank-many vectors of length rank")
    if la.det(rows) == 0:
        raise BasisSingular("basis vectors are linearly dependent")
    return la.inverse(rows)


def norm_B(d: RootDatum, lam: Sequence, basis: Sequence[Sequence] | None = None) -> Fraction:
    """max over the Weyl orbit of the largest |coordinate| in ``basis`` (standard basis if None)."""
    inv = _basis_inverse(d, basis)
    lam = la.vec(lam)
    best = Fraction(0)
    for w in weyl_group(d):
        v = w.act_coweight(lam)
        coords = v if inv is None else la.matvec(la.transpose(inv), v)
        best = max(best, max((abs(x) for x in coords), default=Fraction(0)))
    return best


def project_Q(d: RootDatum, lam: Sequence) -> Vector:
    """Sum of w(lam) over the Weyl group, on the coweight side."""
    total = tuple(Fraction(0) for _ in range(d.rank))
    for w in weyl_group(d):
        total = la.add(total, w.act_coweight(la.vec(lam)))
    return la.vec(total)


def dominant_coweights(d: RootDatum, cutoff: int) -> list[Vector]:
    """Dominant coweights of standard orbit norm at most ``cutoff``, graded-lex."""
    return dominant_weights_in_box(d.dual(), cutoff)


def truncated_algebra(d: RootDatum, kappa: int, basis: Sequence[Sequence] | None = None,
                      central: Sequence[Sequence[int]] | None = None, window: int = 1) -> list[Vector]:
    """Indices lam of the generators tau_lam with ||lam||_B <= kappa.

    With ``central`` generators z_i, also every lam with ||lam + zeta||_B <= kappa for some
    zeta = sum n_i z_i, |n_i| <= window (the infinite union truncated to that window).
    """
    rows = [la.vec(b) for b in basis] if basis is not None else [la.vec(r) for r in la.identity(d.rank)]
    _basis_inverse(d, rows)
    bound = int(kappa * max(sum(abs(r[j]) for r in rows) for j in range(d.rank)))
    dual = d.dual()
    core = []
    for coords in itertools.product(range(-bound, bound + 1), repeat=d.rank):
        v = la.vec(coords)
        if dual.is_dominant(v) and norm_B(d, v, rows) <= kappa:
            core.append(v)
    if not central:
        return sorted(core, key=graded_lex_key)
    gens = [la.vec(z) for z in central]
    for z in gens:
        if any(la.dot(z, a) != 0 for a in d.simple_roots):
            raise ValueError(f"{la.normalize(z)} is not central (pairs nontrivially with a root)")
    out = set()
    for ns in itertools.product(range(-window, window + 1), repeat=len(gens)):
        zeta = tuple(sum((n * z[j] for n, z in zip(ns, gens)), Fraction(0)) for j in range(d.rank))
        out.update(la.sub(mu, zeta) for mu in core)
    return sorted(out, key=graded_lex_key)


# -- Hecke elements --------------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeElement:
    """Finitely supported map from dominant coweights to coefficients.

    ``basis`` is "tau" (double cosets), "chi" (characters) or "orbit" (monomial orbit sums).
    Coefficients are QPoly or TwistedPoly values.
    """

    datum: RootDatum
    basis: str
    terms: Mapping[Vector, object]

    def __post_init__(self):
        dual = self.datum.dual()
        clean = {}
        for k, v in self.terms.items():
            k = la.vec(k)
            if not dual.is_dominant(k):
                raise NotDominant(f"{la.normalize(k)} is not a dominant coweight of {self.datum.label}")
            if v:
                clean[k] = clean[k] + v if k in clean else v
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __getitem__(self, lam):
        return self.terms.get(la.vec(lam), ZERO)

    def items(self) -> list[tuple[Vector, object]]:
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def support(self) -> list[Vector]:
        return [k for k, _ in self.items()]

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if other.basis != self.basis or other.datum != self.datum:
            raise ValueError("cannot add Hecke elements in different bases or on different data")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return HeckeElement(self.datum, self.basis, terms)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.datum, self.basis, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, HeckeElement) and self.basis == other.basis and self.datum == other.datum
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.basis, self.datum, frozenset(self.terms.items())))


def tau(d: RootDatum, lam: Sequence) -> HeckeElement:
    return HeckeElement(d, "tau", {la.vec(lam): ONE})


def chi_basis_element(d: RootDatum, lam: Sequence) -> HeckeElement:
    """chi_lam in monomial orbit-sum coordinates: coefficient of mu is dim V_lam(mu)."""
    _require_split(d)
    table = weight_multiplicities(d.dual(), lam)
    return HeckeElement(d, "orbit", {mu: QPoly.const(m) for mu, m in table.entries.items()})


# -- triangular change of basis --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TriangularMatrix:
    datum: RootDatum
    index: tuple[Vector, ...]
    entries: Mapping[tuple[Vector, Vector], QPoly]
    side: str  # "b" or "d"

    def __getitem__(self, key) -> QPoly:
        lam, mu = key
        return self.entries.get((la.vec(lam), la.vec(mu)), ZERO)

    @property
    def unitriangular(self) -> bool:
        dual = self.datum.dual()
        for (lam, mu), p in self.entries.items():
            if p and not dual.leq(mu, lam):
                return False
        return all(self.entries.get((lam, lam)) == ONE for lam in self.index)

    def row(self, lam) -> dict[Vector, QPoly]:
        lam = la.vec(lam)
        return {mu: p for (l, mu), p in self.entries.items() if l == lam}

    def __matmul__(self, other: "TriangularMatrix") -> dict[tuple[Vector, Vector], QPoly]:
        if self.index != other.index:
            raise ValueError("index sets differ")
        out = {}
        for lam in self.index:
            row = self.row(lam)
            for mu in self.index:
                acc = ZERO
                for nu, p in row.items():
                    acc = acc + p * other[nu, mu]
                if acc:
                    out[(lam, mu)] = acc
        return out

    def coordinate_list(self, at_q=None) -> list[tuple[Vector, Vector, str]]:
        """(row, column, value) rows in index order; values as strings."""
        pos = {v: i for i, v in enumerate(self.index)}
        rows = []
        for (lam, mu), p in sorted(self.entries.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]])):
            rows.append((lam, mu, str(p) if at_q is None else str(p.at_q(at_q))))
        return rows


def _index(d: RootDatum, cutoff: int, guard: int) -> tuple[Vector, ...]:
    _require_split(d)
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    idx = dominant_coweights(d, cutoff)
    if len(idx) > guard:
        raise CutoffTooLarge(f"{len(idx)} dominant coweights below cutoff {cutoff} (guard {guard})")
    dual = d.dual()
    return tuple(sorted(idx, key=lambda v: (dual.height(v), graded_lex_key(v))))


def d_matrix(d: RootDatum, cutoff: int, guard: int = INDEX_GUARD) -> TriangularMatrix:
    """D[lam, mu] = K_{lam, mu}(q^{-1}) on the dual datum, over the truncation."""
    idx = _index(d, cutoff, guard)
    dual = d.dual()
    entries = {}
    for lam in idx:
        for mu in idx:
            if dual.leq(mu, lam):
                p = lusztig_q_analog(dual, lam, mu).invert_q()
                if p:
                    entries[(lam, mu)] = p
    return TriangularMatrix(d, idx, entries, "d")


def invert_unitriangular(m: TriangularMatrix, side: str) -> TriangularMatrix:
    """Back substitution: rows of the inverse, columns taken from the top down."""
    dual = m.datum.dual()
    entries = {}
    for lam in m.index:
        entries[(lam, lam)] = ONE
        below = [mu for mu in m.index if mu != lam and dual.leq(mu, lam)]
        below.sort(key=lambda v: -dual.height(la.sub(v, lam)))
        # below is ordered with the largest mu first
        for mu in below:
            acc = ZERO
            for nu in m.index:
                if nu != mu and (lam, nu) in entries and dual.leq(mu, nu):
                    acc = acc + entries[(lam, nu)] * m[nu, mu]
            if acc:
                entries[(lam, mu)] = -acc
    return TriangularMatrix(m.datum, m.index, entries, side)


def b_matrix(d: RootDatum, cutoff: int, guard: int = INDEX_GUARD) -> TriangularMatrix:
    """B = D^{-1}, normalized so that S(tau_lam) = q^{<lam, rho>} sum_mu B[lam, mu] chi_mu."""
    return invert_unitriangular(d_matrix(d, cutoff, guard), "b")


def satake_matrices(d: RootDatum, cutoff: int, guard: int = INDEX_GUARD) -> tuple[TriangularMatrix, TriangularMatrix]:
    dm = d_matrix(d, cutoff, guard)
    return invert_unitriangular(dm, "b"), dm


def rho_pairing(d: RootDatum, lam: Sequence) -> Fraction:
    return la.dot(la.vec(lam), d.rho)


def satake_coefficient(d: RootDatum, bm: TriangularMatrix, lam, mu) -> QPoly:
    """Coefficient of chi_mu in S(tau_lam)."""
    return QPoly.q_power(rho_pairing(d, lam)) * bm[lam, mu]


def inverse_satake_coefficient(d: RootDatum, dm: TriangularMatrix, lam, mu) -> QPoly:
    """Coefficient of tau_mu in S^{-1}(chi_lam)."""
    return QPoly.q_power(-rho_pairing(d, mu)) * dm[lam, mu]


def is_identity(product: Mapping[tuple[Vector, Vector], QPoly], index: Iterable[Vector]) -> bool:
    index = list(index)
    want = {(v, v): ONE for v in index}
    return dict(product) == want
