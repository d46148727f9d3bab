"""Based root data on Z^rank, their root systems and Weyl groups.

Characters X^* and cocharacters X_* are both modelled as Z^rank with the dot
product as the canonical pairing.  Weights are plain tuples of Fractions; every
function takes the datum they live on explicitly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import yaml

from . import _linalg as la

Vector = tuple[Fraction, ...]

WEYL_GUARD = 10**6


class RootDatumError(ValueError):
    """Base class for invalid root-datum input."""


class NonCartan(RootDatumError):
    pass


class FrobeniusInvalid(RootDatumError):
    pass


class GroupTooLarge(RootDatumError):
    pass


class NotSubdatum(RootDatumError):
    pass


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _reflection_matrix(root: Sequence[int], coroot: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    n = len(root)
    return tuple(tuple(int(i == j) - root[i] * coroot[j] for j in range(n)) for i in range(n))


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: reduced word plus its action on X^* (column vectors)."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    @cached_property
    def comatrix(self) -> tuple[tuple[int, ...], ...]:
        # action on X_*: inverse transpose; W is generated by involutions
        inv = la.inverse(self.matrix)
        return tuple(tuple(int(x) for x in row) for row in la.transpose(inv))

    def act(self, lam: Sequence) -> Vector:
        return la.vec(la.matvec(self.matrix, la.vec(lam)))

    def act_coweight(self, mu: Sequence) -> Vector:
        return la.vec(la.matvec(self.comatrix, la.vec(mu)))

    def label(self) -> str:
        return "e" if not self.word else "".join(f"s{i + 1}" for i in self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement({self.label()})"


def weyl_element_from_word(d: "RootDatum", word: Sequence[int]) -> WeylElement:
    m = la.identity(d.rank)
    for i in word:
        m = la.matmul(m, d.simple_reflection_matrices[i])
    return WeylElement(tuple(word), tuple(tuple(int(x) for x in r) for r in m))


@dataclass(frozen=True, eq=False)
class RootDatum:
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    frobenius: tuple[tuple[int, ...], ...] | None = None
    name: str = ""
    weyl_guard: int = field(default=WEYL_GUARD, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", tuple(tuple(int(x) for x in r) for r in self.simple_roots))
        object.__setattr__(self, "simple_coroots", tuple(tuple(int(x) for x in r) for r in self.simple_coroots))
        if self.frobenius is None:
            object.__setattr__(self, "frobenius", la.identity(self.rank))
        else:
            object.__setattr__(self, "frobenius", tuple(tuple(int(x) for x in r) for r in self.frobenius))
        if self.rank <= 0:
            raise RootDatumError("rank must be positive")
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDatumError("simple roots and coroots differ in number")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise RootDatumError(f"vector {v} does not have length {self.rank}")
        _check_cartan(self.cartan)
        _check_frobenius(self)
        self._generate_roots()

    # -- identity ------------------------------------------------------------------------
    def _key(self):
        return (self.rank, self.simple_roots, self.simple_coroots, self.frobenius, self.name)

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"RootDatum({self.label!r}, rank={self.rank}, type={self.type_label})"

    @property
    def label(self) -> str:
        return self.name or self.type_label

    # -- basic structure -----------------------------------------------------------------
    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_idot(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def simple_reflection_matrices(self) -> tuple:
        return tuple(_reflection_matrix(a, c) for a, c in zip(self.simple_roots, self.simple_coroots))

    def _generate_roots(self):
        n = len(self.simple_roots)
        start = []
        for i in range(n):
            coords = tuple(int(j == i) for j in range(n))
            start.append((self.simple_roots[i], self.simple_coroots[i], coords))
        seen = {s[0]: s for s in start}
        queue = deque(start)
        limit = 10**5
        while queue:
            root, coroot, coords = queue.popleft()
            for i in range(n):
                a, c = self.simple_roots[i], self.simple_coroots[i]
                k = _idot(root, c)
                new_root = tuple(r - k * x for r, x in zip(root, a))
                kc = _idot(a, coroot)
                new_coroot = tuple(r - kc * x for r, x in zip(coroot, c))
                new_coords = tuple(co - (k if j == i else 0) for j, co in enumerate(coords))
                if new_root not in seen:
                    seen[new_root] = (new_root, new_coroot, new_coords)
                    queue.append(seen[new_root])
                    if len(seen) > limit:
                        raise NonCartan("root closure does not terminate")
        pos = [v for v in seen.values() if all(c >= 0 for c in v[2])]
        neg = [v for v in seen.values() if all(c <= 0 for c in v[2])]
        if len(pos) + len(neg) != len(seen):
            raise NonCartan("generated roots are neither positive nor negative")
        pos.sort(key=lambda v: (sum(v[2]), tuple(-c for c in v[2])))
        object.__setattr__(self, "positive_roots", tuple(v[0] for v in pos))
        object.__setattr__(self, "positive_coroots", tuple(v[1] for v in pos))
        object.__setattr__(self, "positive_root_coords", tuple(v[2] for v in pos))
        roots = tuple(v[0] for v in pos) + tuple(tuple(-x for x in v[0]) for v in pos)
        object.__setattr__(self, "roots", roots)
        coroot_of = {}
        for v in pos:
            coroot_of[v[0]] = v[1]
            coroot_of[tuple(-x for x in v[0])] = tuple(-x for x in v[1])
        object.__setattr__(self, "coroot_of", coroot_of)

    @property
    def coroots(self) -> tuple:
        return tuple(self.coroot_of[r] for r in self.roots)

    @cached_property
    def rho(self) -> Vector:
        """Half the sum of the positive roots."""
        total = [Fraction(0)] * self.rank
        for r in self.positive_roots:
            total = [t + x for t, x in zip(total, r)]
        return tuple(t / 2 for t in total)

    @cached_property
    def rho_check(self) -> Vector:
        """Half the sum of the positive coroots."""
        total = [Fraction(0)] * self.rank
        for r in self.positive_coroots:
            total = [t + x for t, x in zip(total, r)]
        return tuple(t / 2 for t in total)

    @cached_property
    def _span_projector(self):
        return la.span_coordinates(self.simple_roots)

    @cached_property
    def _components(self) -> list[list[int]]:
        n = len(self.simple_roots)
        seen, comps = set(), []
        for i in range(n):
            if i in seen:
                continue
            comp, stack = [], [i]
            seen.add(i)
            while stack:
                j = stack.pop()
                comp.append(j)
                for k in range(n):
                    if k not in seen and self.cartan[j][k] != 0:
                        seen.add(k)
                        stack.append(k)
            comps.append(sorted(comp))
        return comps

    @cached_property
    def component_types(self) -> list[tuple[str, int]]:
        out = []
        for comp in self._components:
            n = len(comp)
            count = 2 * sum(1 for c in self.positive_root_coords if any(c[j] for j in comp))
            symmetric = all(self.cartan[i][j] == self.cartan[j][i] for i in comp for j in comp)
            out.append((_classify(n, count, symmetric, [self.cartan[i][j] for i in comp for j in comp], comp, self), n))
        return sorted(out)

    @cached_property
    def type_label(self) -> str:
        parts = [f"{t}{n}" for t, n in self.component_types]
        central = self.rank - self.semisimple_rank
        label = "x".join(parts) if parts else "T"
        if parts and central:
            label += f"+T{central}"
        elif not parts:
            label = f"T{self.rank}"
        return label

    @cached_property
    def weyl_order(self) -> int:
        order = 1
        for t, n in self.component_types:
            order *= _weyl_order(t, n)
        return order

    @cached_property
    def coxeter_number(self) -> int:
        """Largest Coxeter number of a simple factor (1 for a torus)."""
        best = 1
        for comp in self._components:
            count = 2 * sum(1 for c in self.positive_root_coords if any(c[j] for j in comp))
            best = max(best, count // len(comp))
        return best

    @property
    def is_split(self) -> bool:
        return self.frobenius == la.identity(self.rank)

    # -- pairings and order --------------------------------------------------------------
    def coroot_pairings(self, lam: Sequence) -> tuple[Fraction, ...]:
        lam = la.vec(lam)
        return tuple(la.dot(lam, c) for c in self.simple_coroots)

    def is_dominant(self, lam: Sequence) -> bool:
        return all(p >= 0 for p in self.coroot_pairings(lam))

    def is_regular(self, lam: Sequence) -> bool:
        lam = la.vec(lam)
        return all(la.dot(lam, c) != 0 for c in self.positive_coroots)

    def is_dominant_regular(self, lam: Sequence) -> bool:
        return all(p > 0 for p in self.coroot_pairings(lam))

    def simple_coords(self, beta: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of ``beta`` in the simple roots, or None if outside their span."""
        beta = la.vec(beta)
        if not self.simple_roots:
            return () if all(x == 0 for x in beta) else None
        c = la.vec(la.matvec(la.transpose(self._span_projector), beta))
        back = tuple(sum((ci * a[k] for ci, a in zip(c, self.simple_roots)), Fraction(0)) for k in range(self.rank))
        if back != beta:
            return None
        return c

    def in_root_lattice(self, beta: Sequence) -> bool:
        c = self.simple_coords(beta)
        return c is not None and la.is_integral(c)

    def leq(self, mu: Sequence, lam: Sequence) -> bool:
        """mu <= lam: lam - mu is a nonnegative integer combination of positive roots."""
        c = self.simple_coords(la.sub(la.vec(lam), la.vec(mu)))
        return c is not None and all(x.denominator == 1 and x >= 0 for x in c)

    @cached_property
    def _height_functional(self) -> Vector:
        # y with <alpha_i, y> = 1 on simple roots, vanishing off the root span
        p = self._span_projector
        if p is None:
            return tuple(Fraction(0) for _ in range(self.rank))
        return tuple(sum(p[k], Fraction(0)) for k in range(self.rank))

    def height(self, lam: Sequence) -> Fraction:
        """Linear functional equal to 1 on every simple root."""
        return la.dot(la.vec(lam), self._height_functional)

    def reflect(self, lam: Sequence, i: int) -> Vector:
        lam = la.vec(lam)
        k = la.dot(lam, self.simple_coroots[i])
        return tuple(x - k * a for x, a in zip(lam, self.simple_roots[i]))

    def dual(self) -> "RootDatum":
        f = la.inverse(self.frobenius)
        f = tuple(tuple(int(x) for x in row) for row in la.transpose(f))
        name = f"{self.name}^" if self.name else ""
        return RootDatum(self.rank, self.simple_coroots, self.simple_roots, f, name)

    def is_integral(self, lam: Sequence) -> bool:
        return la.is_integral(lam)

    # -- Weyl group ----------------------------------------------------------------------
    def weyl_group(self, guard: int | None = None) -> list[WeylElement]:
        return weyl_group(self, guard)

    def orbit(self, lam: Sequence) -> set[Vector]:
        lam = la.vec(lam)
        seen = {lam}
        queue = [lam]
        while queue:
            v = queue.pop()
            for i in range(self.semisimple_rank):
                w = self.reflect(v, i)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def dominant_representative(self, lam: Sequence) -> tuple[Vector, WeylElement]:
        return dominant_representative(self, lam)


def _check_cartan(a: tuple[tuple[int, ...], ...]) -> None:
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            raise NonCartan(f"diagonal entry {i} is {a[i][i]}, expected 2")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise NonCartan(f"positive off-diagonal entry at ({i}, {j})")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise NonCartan(f"asymmetric zero pattern at ({i}, {j})")
    # symmetrize: d_i a_ij = d_j a_ji
    dsym: list[Fraction | None] = [None] * n
    for start in range(n):
        if dsym[start] is not None:
            continue
        dsym[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0:
                    want = dsym[i] * a[i][j] / a[j][i]
                    if dsym[j] is None:
                        dsym[j] = want
                        stack.append(j)
                    elif dsym[j] != want:
                        raise NonCartan("pairing matrix is not symmetrizable")
    sym = [[dsym[i] * a[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if la.det([row[:k] for row in sym[:k]]) <= 0:
            raise NonCartan("pairing matrix is not of finite type")


def _check_frobenius(d: RootDatum) -> None:
    f = d.frobenius
    if len(f) != d.rank or any(len(r) != d.rank for r in f):
        raise FrobeniusInvalid("frobenius must be a rank x rank matrix")
    if abs(la.det(f)) != 1:
        raise FrobeniusInvalid("frobenius is not a lattice automorphism")
    if f == la.identity(d.rank):
        return
    fc = la.transpose(la.inverse(f))
    index = {r: i for i, r in enumerate(d.simple_roots)}
    for i, (a, c) in enumerate(zip(d.simple_roots, d.simple_coroots)):
        image = tuple(int(x) for x in la.matvec(f, a))
        if image not in index:
            raise FrobeniusInvalid(f"frobenius sends simple root {a} outside the simple roots")
        j = index[image]
        cimage = tuple(la.matvec(fc, c))
        if cimage != tuple(Fraction(x) for x in d.simple_coroots[j]):
            raise FrobeniusInvalid("frobenius does not preserve the pairing")


def _classify(n, count, symmetric, entries, comp, d) -> str:
    if symmetric:
        if count == n * (n + 1):
            return "A"
        if n >= 4 and count == 2 * n * (n - 1):
            return "D"
        if (n, count) in {(6, 72), (7, 126), (8, 240)}:
            return "E"
        raise NonCartan("unrecognised simply-laced component")
    if n == 2 and count == 12:
        return "G"
    if n == 4 and count == 48:
        return "F"
    if count == 2 * n * n:
        if n == 2:
            return "B"
        # B_n has a single short simple root, C_n a single long one
        lengths = _relative_lengths(d, comp)
        short = sum(1 for x in lengths if x == min(lengths))
        return "B" if short == 1 else "C"
    raise NonCartan("unrecognised component")


def _relative_lengths(d: RootDatum, comp: list[int]) -> list[Fraction]:
    # |alpha_i|^2 / |alpha_j|^2 = a_ij / a_ji
    base = comp[0]
    lengths = {base: Fraction(1)}
    stack = [base]
    while stack:
        i = stack.pop()
        for j in comp:
            if j not in lengths and d.cartan[i][j] != 0:
                lengths[j] = lengths[i] * Fraction(d.cartan[j][i], d.cartan[i][j])
                stack.append(j)
    return [lengths[i] for i in comp]


def _weyl_order(t: str, n: int) -> int:
    from math import factorial

    if t == "A":
        return factorial(n + 1)
    if t in "BC":
        return 2**n * factorial(n)
    if t == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(t, n)]


def build_root_datum(spec: dict) -> RootDatum:
    """Validate a datum description (``rank``, ``simple_roots``, ``simple_coroots``, ...)."""
    try:
        rank = int(spec["rank"])
        roots = spec.get("simple_roots") or []
        coroots = spec.get("simple_coroots") or []
    except (KeyError, TypeError, ValueError) as exc:
        raise RootDatumError(f"malformed datum description: {exc}") from exc
    return RootDatum(
        rank,
        tuple(tuple(r) for r in roots),
        tuple(tuple(c) for c in coroots),
        tuple(tuple(r) for r in spec["frobenius"]) if spec.get("frobenius") is not None else None,
        str(spec.get("name") or ""),
    )


def weyl_group(d: RootDatum, guard: int | None = None) -> list[WeylElement]:
    """All Weyl group elements, identity first, ordered by length then word."""
    guard = d.weyl_guard if guard is None else guard
    if d.weyl_order > guard:
        raise GroupTooLarge(f"|W| = {d.weyl_order} exceeds guard {guard}")
    cache = d.__dict__.setdefault("_weyl_cache", {})
    if "elements" in cache:
        return cache["elements"]
    ident = la.identity(d.rank)
    level = [WeylElement((), ident)]
    seen = {ident}
    out = list(level)
    while level:
        nxt = []
        for w in level:
            for i, s in enumerate(d.simple_reflection_matrices):
                m = tuple(tuple(int(x) for x in r) for r in la.matmul(w.matrix, s))
                if m not in seen:
                    seen.add(m)
                    nxt.append(WeylElement(w.word + (i,), m))
        nxt.sort(key=lambda w: w.word)
        out.extend(nxt)
        level = nxt
    if len(out) != d.weyl_order:
        raise RootDatumError(f"enumerated {len(out)} Weyl elements, expected {d.weyl_order}")
    cache["elements"] = out
    return out


def dominant_representative(d: RootDatum, lam: Sequence) -> tuple[Vector, WeylElement]:
    """Dominant weight in the Weyl orbit of ``lam`` with an element carrying ``lam`` to it."""
    v = la.vec(lam)
    applied: list[int] = []
    while True:
        pairings = d.coroot_pairings(v)
        for i, p in enumerate(pairings):
            if p < 0:
                v = d.reflect(v, i)
                applied.append(i)
                break
        else:
            break
    return v, weyl_element_from_word(d, tuple(reversed(applied)))


def dominant_coweight_representative(d: RootDatum, mu: Sequence) -> Vector:
    return dominant_representative(d.dual(), mu)[0]


# -- sub-root-data -----------------------------------------------------------------------

def subdatum(d: RootDatum, roots: Iterable[Sequence[int]], name: str = "") -> RootDatum:
    """Sub-root-datum on the same lattices whose roots are ``roots`` (a subset of d's).

    Positivity is inherited from ``d``; the simple system is the set of indecomposable
    positive roots.
    """
    rs = {tuple(int(x) for x in r) for r in roots}
    for r in rs:
        if r not in d.coroot_of:
            raise NotSubdatum(f"{r} is not a root of {d.label}")
        if tuple(-x for x in r) not in rs:
            raise NotSubdatum(f"root set is not symmetric at {r}")
    pos = [r for r in d.positive_roots if r in rs]
    pos_set = set(pos)
    simple = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, s)) in pos_set for s in pos):
            simple.append(r)
    # stability under the subsystem's own reflections
    for a in simple:
        c = d.coroot_of[a]
        for r in rs:
            k = _idot(r, c)
            if tuple(x - k * y for x, y in zip(r, a)) not in rs:
                raise NotSubdatum("root set is not a root subsystem")
    frob = d.frobenius
    if not d.is_split:
        images = {tuple(int(x) for x in la.matvec(frob, a)) for a in simple}
        if images != set(simple):
            frob = None
    h = RootDatum(d.rank, tuple(simple), tuple(d.coroot_of[a] for a in simple), frob, name)
    if set(h.roots) != rs:
        raise NotSubdatum("root set is not a root subsystem")
    return h


def is_subdatum(d: RootDatum, h: RootDatum) -> bool:
    if h.rank != d.rank:
        return False
    return all(r in d.coroot_of and d.coroot_of[r] == h.coroot_of[r] for r in h.roots)


def check_subdatum(d: RootDatum, h: RootDatum) -> None:
    if not is_subdatum(d, h):
        raise NotSubdatum(f"{h.label} is not a sub-root-datum of {d.label}")
    if not all(r in set(d.positive_roots) for r in h.positive_roots):
        raise NotSubdatum(f"positive roots of {h.label} are not positive in {d.label}")


def torus_subdatum(d: RootDatum) -> RootDatum:
    return RootDatum(d.rank, (), (), None, f"T{d.rank}")


# -- datum files -------------------------------------------------------------------------

def datum_to_dict(d: RootDatum) -> dict:
    out = {"name": d.name, "rank": d.rank,
           "simple_roots": [list(r) for r in d.simple_roots],
           "simple_coroots": [list(c) for c in d.simple_coroots]}
    if not d.is_split:
        out["frobenius"] = [list(r) for r in d.frobenius]
    return out


class _FlowList(list):
    pass


def _flow_representer(dumper, data):
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=True)


yaml.SafeDumper.add_representer(_FlowList, _flow_representer)


def serialize_datum(d: RootDatum, extra: dict | None = None) -> str:
    data = datum_to_dict(d)
    for key in ("simple_roots", "simple_coroots", "frobenius"):
        if key in data:
            data[key] = [_FlowList(r) for r in data[key]]
    if extra:
        data.update(extra)
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=False)


def parse_datum(text: str) -> RootDatum:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise RootDatumError(f"unreadable datum file: {exc}") from exc
    if not isinstance(data, dict):
        raise RootDatumError("datum file must be a mapping")
    return build_root_datum(data)


# -- weights -----------------------------------------------------------------------------

def fundamental_weights(d: RootDatum) -> list[Vector]:
    """Rational weights in the root span with <w_i, alpha_j^vee> = delta_ij."""
    if not d.simple_roots:
        return []
    cart_inv = la.inverse(d.cartan)
    # w_i = sum_k (A^{-1})_{k i} alpha_k  since <alpha_k, alpha_j^vee> = A_kj
    return [tuple(sum((cart_inv[i][k] * d.simple_roots[k][m] for k in range(d.semisimple_rank)), Fraction(0))
                  for m in range(d.rank)) for i in range(d.semisimple_rank)]


def norm_std(d: RootDatum, lam: Sequence) -> Fraction:
    """Weyl-orbit maximum of the absolute standard coordinates."""
    return max(max(abs(x) for x in v) for v in d.orbit(lam))


def dominant_weights_in_box(d: RootDatum, bound: int, *, regular: bool = False) -> list[Vector]:
    """Dominant integral weights with standard orbit norm at most ``bound``, graded-lex order."""
    import itertools

    out = []
    for coords in itertools.product(range(-bound, bound + 1), repeat=d.rank):
        v = la.vec(coords)
        if not (d.is_dominant_regular(v) if regular else d.is_dominant(v)):
            continue
        if norm_std(d, v) <= bound:
            out.append(v)
    return sorted(out, key=graded_lex_key)


def graded_lex_key(v: Sequence) -> tuple:
    return (sum(abs(x) for x in v), tuple(v))
