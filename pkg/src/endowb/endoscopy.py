"""Elliptic endoscopic data from torsion points of the dual torus, and iterated paths of them.

A point s of the dual torus is represented by x in X^* (x) Q modulo X^*, with the dual root
alpha^vee evaluating to exp(2 pi i <x, alpha^vee>).  The centralizer of s has as roots the
alpha^vee with <x, alpha^vee> integral; on the group side these are the matching roots alpha.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm
from typing import Sequence

from . import _linalg as la
from .rootdatum import RootDatum, Vector, subdatum, weyl_group


class PathInvalid(ValueError):
    pass


class PathLengthExceeded(RuntimeError):
    pass


def reduce_mod_lattice(x: Sequence) -> Vector:
    return tuple(Fraction(v) - floor(Fraction(v)) for v in la.vec(x))


def integral_roots(d: RootDatum, x: Sequence) -> list[tuple[int, ...]]:
    x = la.vec(x)
    return [r for r in d.roots if la.dot(x, d.coroot_of[r]).denominator == 1]


def centralizer_subdatum(d: RootDatum, x: Sequence, name: str = "") -> RootDatum:
    """Sub-root-datum of the roots pairing integrally with x, positivity inherited from d."""
    roots = integral_roots(d, x)
    if len(roots) == len(d.roots):
        return d
    return subdatum(d, roots, name)


def _invariant_complement(d: RootDatum, coroots: Sequence[Sequence[int]]) -> list[Vector]:
    """Basis of {y in X^* (x) Q : <y, c> = 0 for the given coroots, F y = y}."""
    f = d.frobenius
    rows = [tuple(Fraction(x) for x in c) for c in coroots]
    rows += [tuple(Fraction(f[i][j] - (i == j)) for j in range(d.rank)) for i in range(d.rank)]
    rows = [r for r in rows if any(r)]
    return la.nullspace(rows, d.rank)


def is_elliptic(d: RootDatum, h: RootDatum) -> bool:
    """The Frobenius-fixed part of h's root-orthogonal space lies in d's root-orthogonal space."""
    for y in _invariant_complement(d, h.coroots):
        if any(la.dot(y, c) != 0 for c in d.positive_coroots):
            return False
    return True


def pairing_key(d: RootDatum, x: Sequence) -> Vector:
    """Simple-coroot pairings of x mod 1; determines s modulo the centre of the dual group."""
    x = la.vec(x)
    return reduce_mod_lattice([la.dot(x, c) for c in d.simple_coroots])


def _frobenius_stable(d: RootDatum, roots: Sequence[tuple[int, ...]]) -> bool:
    if d.is_split:
        return True
    rs = set(roots)
    return all(tuple(int(v) for v in la.matvec(d.frobenius, r)) in rs for r in rs)


def _frobenius_fixed(d: RootDatum, x: Vector) -> bool:
    if d.is_split:
        return True
    return pairing_key(d, la.matvec(d.frobenius, x)) == pairing_key(d, x)


def admissible(d: RootDatum, x: Sequence) -> bool:
    """s is Frobenius-fixed modulo the centre and its centralizer roots are Frobenius-stable."""
    x = la.vec(x)
    return _frobenius_fixed(d, x) and _frobenius_stable(d, integral_roots(d, x))


def _orbit_points(d: RootDatum, x: Vector) -> list[Vector]:
    return [reduce_mod_lattice(w.act(x)) for w in weyl_group(d)]


def canonical_point(d: RootDatum, x: Sequence) -> tuple[Vector, Vector] | None:
    """(pairing key, representative) minimal over the admissible Weyl conjugates of x.

    Returns None when no conjugate is admissible.
    """
    cands = [(pairing_key(d, y), y) for y in _orbit_points(d, la.vec(x)) if admissible(d, y)]
    return min(cands) if cands else None


@dataclass(frozen=True)
class EndoscopicDatum:
    parent: RootDatum
    s_point: Vector
    h_datum: RootDatum
    elliptic: bool
    ramified: bool = False

    @property
    def denominator(self) -> int:
        return lcm(1, *(x.denominator for x in self.s_point))

    @property
    def proper(self) -> bool:
        return len(self.h_datum.roots) < len(self.parent.roots)

    @property
    def key(self) -> Vector:
        return pairing_key(self.parent, self.s_point)

    def label(self) -> str:
        return self.h_datum.type_label

    def to_dict(self) -> dict:
        return {"parent": self.parent.label, "s_point": [str(x) for x in la.normalize(self.s_point)],
                "denominator": self.denominator, "h_type": self.h_datum.type_label,
                "h_simple_roots": [list(r) for r in self.h_datum.simple_roots],
                "h_root_count": len(self.h_datum.roots), "elliptic": self.elliptic}


def endoscopic_datum(d: RootDatum, x: Sequence, ramified: bool = False) -> EndoscopicDatum:
    x = reduce_mod_lattice(x)
    h = centralizer_subdatum(d, x, name=f"{d.label}[{','.join(str(v) for v in la.normalize(x))}]")
    return EndoscopicDatum(d, x, h, is_elliptic(d, h), ramified)


@lru_cache(maxsize=256)
def _enumerate(d: RootDatum, max_denominator: int) -> tuple[EndoscopicDatum, ...]:
    found: dict[Vector, EndoscopicDatum] = {}
    checked: set[Vector] = set()
    for n in range(2, max_denominator + 1):
        for ks in itertools.product(range(n), repeat=d.rank):
            x = tuple(Fraction(k, n) for k in ks)
            if pairing_key(d, x) in checked:
                continue
            orbit = _orbit_points(d, x)
            checked.update(pairing_key(d, y) for y in orbit)
            if len(integral_roots(d, x)) == len(d.roots):
                continue
            cands = [(pairing_key(d, y), y) for y in orbit if admissible(d, y)]
            if not cands:
                continue
            key, rep = min(cands)
            e = endoscopic_datum(d, rep)
            if e.elliptic:
                found[key] = e
    return tuple(sorted(found.values(), key=lambda e: (e.denominator, -len(e.h_datum.roots), e.key)))


def enumerate_endoscopic(d: RootDatum, max_denominator: int | None = None) -> list[EndoscopicDatum]:
    """Elliptic proper data with denominator at most ``max_denominator``, one per Weyl class of x.

    The default bound is the Coxeter number of d.
    """
    n = d.coxeter_number if max_denominator is None else max_denominator
    if n < 2:
        raise ValueError("max_denominator must be at least 2")
    weyl_group(d)
    return list(_enumerate(d, n))


@dataclass(frozen=True)
class HyperPath:
    steps: tuple[EndoscopicDatum, ...]
    groups: tuple[RootDatum, ...] = field(init=False)

    def __post_init__(self):
        if not self.steps:
            raise PathInvalid("a path needs at least one step")
        groups = [self.steps[0].parent]
        for i, e in enumerate(self.steps):
            if e.parent != groups[-1]:
                raise PathInvalid(f"step {i} is not taken inside the previous group")
            if not e.proper:
                raise PathInvalid(f"step {i} is not proper")
            if not e.elliptic:
                raise PathInvalid(f"step {i} is not elliptic")
            groups.append(e.h_datum)
        object.__setattr__(self, "groups", tuple(groups))

    @property
    def source(self) -> RootDatum:
        return self.groups[0]

    @property
    def terminal(self) -> RootDatum:
        return self.groups[-1]

    def __len__(self):
        return len(self.steps)

    def label(self) -> str:
        return " > ".join(g.type_label for g in self.groups)

    def to_dict(self) -> dict:
        return {"chain": [g.type_label for g in self.groups], "length": len(self),
                "s_points": [[str(x) for x in la.normalize(e.s_point)] for e in self.steps]}


def enumerate_hyper_paths(d: RootDatum, max_denominator: int | None = None,
                          check_length: bool = True) -> list[HyperPath]:
    """Depth-first expansion of proper elliptic data, each step inside the previous group."""
    out: list[HyperPath] = []

    def extend(prefix: tuple[EndoscopicDatum, ...], group: RootDatum):
        if group.semisimple_rank == 0:
            return
        n = max_denominator if max_denominator is not None else group.coxeter_number
        for e in enumerate_endoscopic(group, max(n, 2)):
            path = HyperPath(prefix + (e,))
            if check_length and len(path) > d.semisimple_rank:
                raise PathLengthExceeded(f"path {path.label()} longer than semisimple rank {d.semisimple_rank}")
            out.append(path)
            extend(path.steps, e.h_datum)

    extend((), d)
    return out
