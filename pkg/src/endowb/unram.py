"""Unramified transfer of spherical Hecke functions from G to an endoscopic H.

With S the Satake transform and B_G, D_H the triangular matrices of ``satake``,

    a_lam(xi) = q^{<lam, rho_G> - <xi, rho_H>} sum_{mu, nu} B_G[lam, mu] alpha_mu(nu) c_mu(nu) D_H[nu, xi]

where c_mu(nu) branches the dual representation of G to the dual of H and alpha_mu(nu)
is the rotation nu(t) of a root-orthogonal twist t.  All data are given on the group side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Sequence

from . import _linalg as la
from .qpoly import QPoly, TwistedPoly, rotation
from .reps import branch
from .rootdatum import RootDatum, Vector, check_subdatum, graded_lex_key, norm_std
from .satake import HeckeElement, TriangularMatrix, rho_pairing, satake_matrices


class OrderViolation(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class CentralTwist:
    """A point of the identity component of the dual centre: t in X^* (x) Q with <t, coroots> = 0."""

    datum: RootDatum
    t: Vector

    def __post_init__(self):
        t = la.vec(self.t)
        if len(t) != self.datum.rank:
            raise ValueError("twist vector has the wrong length")
        if any(la.dot(t, c) != 0 for c in self.datum.simple_coroots):
            raise ValueError(f"twist {la.normalize(t)} pairs nontrivially with a coroot of {self.datum.label}")
        object.__setattr__(self, "t", t)

    @classmethod
    def trivial(cls, d: RootDatum) -> "CentralTwist":
        return cls(d, tuple(Fraction(0) for _ in range(d.rank)))

    @property
    def is_trivial(self) -> bool:
        return all(x.denominator == 1 for x in self.t)

    def value(self, nu: Sequence) -> Fraction:
        """nu(t) as a rotation."""
        return rotation(la.dot(self.t, la.vec(nu)))


def eta_character(twist: CentralTwist, lam: Sequence) -> Fraction:
    """The character K lam(pi) K -> lam(t) on double cosets, as a rotation."""
    return twist.value(lam)


@dataclass(frozen=True)
class PullbackEntry:
    c: int
    rotation: Fraction
    exact: bool  # alpha_mu(nu) = nu(t) exactly (split case), not only bounded by it


def _branch_dual(dG: RootDatum, dH: RootDatum, mu: Vector) -> dict:
    return _branch_cached(dG.dual(), dH.dual(), mu)


@lru_cache(maxsize=4096)
def _branch_cached(gd: RootDatum, hd: RootDatum, mu: Vector) -> dict:
    return branch(gd, hd, mu)


def pullback_b_eta(dG: RootDatum, dH: RootDatum, mu: Sequence, twist: CentralTwist | None = None) -> dict[Vector, PullbackEntry]:
    """nu -> (c_mu(nu), alpha_mu(nu)) for the restriction of the dual representation mu."""
    check_subdatum(dG, dH)
    twist = twist or CentralTwist.trivial(dG)
    mu = la.vec(mu)
    return {nu: PullbackEntry(c, twist.value(nu), dG.is_split) for nu, c in _branch_dual(dG, dH, mu).items()}


@lru_cache(maxsize=256)
def _matrices(d: RootDatum, cutoff: int) -> tuple[TriangularMatrix, TriangularMatrix]:
    return satake_matrices(d, cutoff)


@lru_cache(maxsize=256)
def _rows(m: TriangularMatrix) -> dict[Vector, dict[Vector, QPoly]]:
    out: dict[Vector, dict[Vector, QPoly]] = {v: {} for v in m.index}
    for (lam, mu), p in m.entries.items():
        out[lam][mu] = p
    return out


def _cutoff(dG: RootDatum, lam: Vector) -> int:
    return max(0, ceil(norm_std(dG.dual(), lam)))


def tau_transfer(dG: RootDatum, dH: RootDatum, lam: Sequence, twist: CentralTwist | None = None,
                 ramified: bool = False) -> HeckeElement:
    """Transfer of tau_lam to the tau basis of dH (zero when H is flagged ramified)."""
    check_subdatum(dG, dH)
    twist = twist or CentralTwist.trivial(dG)
    lam = la.vec(lam)
    if ramified:
        return HeckeElement(dH, "tau", {})
    k = _cutoff(dG, lam)
    bG, _ = _matrices(dG, k)
    _, dH_m = _matrices(dH, k)
    if lam not in bG.index:
        raise ValueError(f"{la.normalize(lam)} is not a dominant coweight of {dG.label}")
    lead = rho_pairing(dG, lam)
    rows = _rows(dH_m)
    acc: dict[Vector, TwistedPoly] = {}
    for mu, bcoef in bG.row(lam).items():
        for nu, c in _branch_dual(dG, dH, mu).items():
            r = twist.value(nu)
            for xi, dcoef in rows[nu].items():
                term = bcoef * dcoef * c * QPoly.q_power(lead - rho_pairing(dH, xi))
                acc[xi] = acc.get(xi, TwistedPoly()) + TwistedPoly.lift(term, r)
    return HeckeElement(dH, "tau", acc)


def a_coefficient(dG: RootDatum, dH: RootDatum, lam: Sequence, xi: Sequence,
                  twist: CentralTwist | None = None) -> TwistedPoly:
    lam, xi = la.vec(lam), la.vec(xi)
    if not dG.dual().leq(xi, lam):
        raise OrderViolation(f"{la.normalize(xi)} is not below {la.normalize(lam)}")
    return tau_transfer(dG, dH, lam, twist)[xi] or TwistedPoly()


def leading_coefficient(dG: RootDatum, dH: RootDatum, lam: Sequence, twist: CentralTwist | None = None) -> TwistedPoly:
    """The coefficient of tau^H_lam in the transfer of tau^G_lam (the diagonal of the triple sum)."""
    return a_coefficient(dG, dH, lam, lam, twist)


def twist_stripped(value: TwistedPoly) -> QPoly:
    """xi(t)^{-1} a when every term carries the same rotation; raises otherwise."""
    single = value.single_rotation()
    if single is None:
        raise ValueError("coefficient mixes several rotations")
    return single[1]


def transfer_composite(path_groups: Sequence[RootDatum], lam: Sequence,
                       twists: Sequence[CentralTwist | None] | None = None) -> HeckeElement:
    """Apply one-step transfers successively along a chain of sub-root-data."""
    twists = list(twists) if twists is not None else [None] * (len(path_groups) - 1)
    current = HeckeElement(path_groups[0], "tau", {la.vec(lam): TwistedPoly.lift(QPoly.const(1))})
    for g, h, tw in zip(path_groups, path_groups[1:], twists):
        out = HeckeElement(h, "tau", {})
        for mu, coeff in current.items():
            step = tau_transfer(g, h, mu, tw)
            out = out + HeckeElement(h, "tau", {k: v * coeff for k, v in step.terms.items()})
        current = out
    return current


# -- z-extensions ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ZExtensionData:
    """Cocharacter data of a z-extension, supplied by the caller.

    ``sublattice`` generates X_*(A_Z) inside the extended lattice Z^extended_rank;
    ``characters`` gives chi(z_i) as a rotation for each generator; ``projection``
    (base_rank x extended_rank) maps extended cocharacters to those of the original torus.
    """

    extended_rank: int
    sublattice: tuple[tuple[int, ...], ...] = ()
    characters: tuple[Fraction, ...] = ()
    projection: tuple[tuple[int, ...], ...] | None = None
    base_rank: int | None = field(default=None)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.sublattice)
        object.__setattr__(self, "sublattice", gens)
        object.__setattr__(self, "characters", tuple(rotation(c) for c in self.characters))
        if len(self.characters) != len(gens):
            raise ValueError("one character value per sublattice generator is required")
        if any(len(g) != self.extended_rank for g in gens):
            raise ValueError("sublattice generators have the wrong length")
        if gens and la.rank(gens) != len(gens):
            raise ValueError("sublattice generators are linearly dependent")
        base = self.extended_rank - len(gens)
        if self.base_rank is not None and self.base_rank != base:
            raise ValueError("extended rank minus sublattice rank must equal the base rank")
        object.__setattr__(self, "base_rank", base)
        if self.projection is not None:
            p = tuple(tuple(int(x) for x in r) for r in self.projection)
            object.__setattr__(self, "projection", p)
            if len(p) != base or any(len(r) != self.extended_rank for r in p):
                raise ValueError("projection must be base_rank x extended_rank")
            if la.rank(p) != base:
                raise ValueError("projection is not surjective rationally")
            for g in gens:
                if any(x != 0 for x in la.matvec(p, g)):
                    raise ValueError("projection does not kill the extending sublattice")

    def character(self, ns: Sequence[int]) -> Fraction:
        return rotation(sum((n * c for n, c in zip(ns, self.characters)), Fraction(0)))


@dataclass(frozen=True)
class WindowedSum:
    """A symmetric window of an infinite formal sum; never a complete object."""

    terms: tuple[tuple[Vector, Fraction], ...]
    radius: int
    truncated: bool

    def __len__(self):
        return len(self.terms)


def tau0_transfer_zext(z: ZExtensionData, radius: int = 1) -> WindowedSum:
    """Terms chi(lam) tau_lam over lam in X_*(A_Z) with generator coefficients in [-radius, radius]."""
    zero = tuple(Fraction(0) for _ in range(z.extended_rank))
    if not z.sublattice:
        return WindowedSum(((zero, Fraction(0)),), radius, False)
    if radius <= 0:
        raise WindowTooSmall("a nontrivial extending torus needs a window radius of at least 1")
    terms = []
    for ns in itertools.product(range(-radius, radius + 1), repeat=len(z.sublattice)):
        lam = tuple(Fraction(sum(n * g[j] for n, g in zip(ns, z.sublattice))) for j in range(z.extended_rank))
        terms.append((lam, z.character(ns)))
    terms.sort(key=lambda t: graded_lex_key(t[0]))
    return WindowedSum(tuple(terms), radius, True)
