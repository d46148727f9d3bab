"""Sparse Laurent polynomials in v = q^(1/2), rational rotations, and exact values in Q(sqrt q).

A ``QPoly`` stores integer coefficients keyed by the exponent of v, so ``q^k`` for
half-integral ``k`` is ``v^(2k)``.  A unit complex number exp(2 pi i r) with rational
``r`` is a *rotation* and is stored as ``r`` reduced into [0, 1).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping


class QPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            a = _as_int(a)
            if a:
                c[int(e)] = c.get(int(e), 0) + a
        self._c = {e: a for e, a in c.items() if a}
        self._hash = None

    # -- constructors -----------------------------------------------------------------
    @classmethod
    def const(cls, a: int) -> "QPoly":
        return cls({0: a})

    @classmethod
    def q_power(cls, k, coeff: int = 1) -> "QPoly":
        """coeff * q^k for integral or half-integral k."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError(f"q^{k} is not a power of q^(1/2)")
        return cls({int(e): coeff})

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "QPoly":
        return cls({e: coeff})

    # -- inspection -------------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def terms(self) -> list[tuple[int, int]]:
        """(v-exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    def is_const(self) -> bool:
        return all(e == 0 for e in self._c)

    # -- arithmetic -------------------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return QPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return QPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, a), = self._c.items()
            if abs(a) != 1:
                raise ValueError("monomial coefficient is not a unit")
            return QPoly({-e * (-n): a ** (-n)})
        out = QPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- substitutions ----------------------------------------------------------------
    def invert_q(self) -> "QPoly":
        """Substitute q -> q^(-1)."""
        return QPoly({-e: a for e, a in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def at_q(self, q) -> "Surd":
        """Exact value at a positive rational q, as an element of Q(sqrt q)."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("q must be positive")
        a = b = Fraction(0)
        for e, c in self._c.items():
            k, r = divmod(e, 2)
            term = c * q ** k
            if r:
                b += term
            else:
                a += term
        return Surd(a, b, q)

    def abs_coeffs(self) -> "QPoly":
        return QPoly({e: abs(a) for e, a in self._c.items()})

    # -- text -------------------------------------------------------------------------
    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for e, a in self.terms():
            mono = _mono(e)
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"QPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return cls()
        c: dict[int, int] = {}
        for sign, body in _split_terms(text):
            coeff = 1
            e = 0
            if "*" in body:
                num, mono = body.split("*", 1)
                coeff = int(num)
                e = _parse_mono(mono)
            elif body.startswith("q"):
                e = _parse_mono(body)
            else:
                coeff = int(body)
            c[e] = c.get(e, 0) + (-coeff if sign == "-" else coeff)
        return cls(c)


def _mono(e: int) -> str:
    if e == 0:
        return ""
    k = Fraction(e, 2)
    if k == 1:
        return "q"
    if k.denominator == 1:
        return f"q^{k.numerator}" if k > 0 else f"q^({k.numerator})"
    return f"q^({k.numerator}/{k.denominator})"


def _parse_mono(s: str) -> int:
    if s == "q":
        return 2
    m = re.fullmatch(r"q\^\(?(-?\d+)(?:/(\d+))?\)?", s)
    if not m:
        raise ValueError(f"bad monomial {s!r}")
    k = Fraction(int(m.group(1)), int(m.group(2) or 1))
    return int(k * 2)


def _split_terms(text: str) -> list[tuple[str, str]]:
    s = text.replace(" ", "")
    out, depth, start, sign = [], 0, 0, "+"
    if s and s[0] in "+-":
        sign, start = s[0], 1
    i = start
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[i - 1] != "^":
            out.append((sign, s[start:i]))
            sign, start = ch, i + 1
        i += 1
    out.append((sign, s[start:]))
    return out


def _as_int(a) -> int:
    if isinstance(a, int):
        return a
    f = Fraction(a)
    if f.denominator != 1:
        raise ValueError(f"QPoly coefficients must be integers, got {a}")
    return f.numerator


def _lift(x):
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly.const(x)
    return NotImplemented


ZERO = QPoly()
ONE = QPoly.const(1)


class Surd:
    """a + b*sqrt(q) with rational a, b and positive rational q, compared exactly."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        q = Fraction(q)
        a, b = Fraction(a), Fraction(b)
        r = _rational_sqrt(q)
        if r is not None:
            a, b = a + b * r, Fraction(0)
        self.a, self.b, self.q = a, b, q

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.q != self.q and other.b and self.b:
                raise ValueError("surds over different q")
            return other
        return Surd(Fraction(other), 0, self.q)

    def __add__(self, other):
        o = self._coerce(other)
        q = self.q if self.b else o.q
        return Surd(self.a + o.a, self.b + o.b, q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        q = self.q if self.b else o.q
        return Surd(self.a * o.a + self.b * o.b * q, self.a * o.b + self.b * o.a, q)

    __rmul__ = __mul__

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 q
        diff = a * a - b * b * self.q
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        return hash((self.a, self.b, self.q if self.b else None))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __repr__(self):
        if not self.b:
            return f"Surd({self.a})"
        return f"Surd({self.a} + {self.b}*sqrt({self.q}))"

    def __str__(self):
        if not self.b:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.q})"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


# -- rotations -----------------------------------------------------------------------------

def rotation(r) -> Fraction:
    """Reduce an angle (in turns) into [0, 1)."""
    r = Fraction(r)
    return r - math.floor(r)


def rotation_str(r: Fraction) -> str:
    r = rotation(r)
    return "1" if r == 0 else f"exp(2pi i*{r})"


class TwistedPoly:
    """Finite sum of exp(2 pi i r) * P_r(q) over rotations r."""

    __slots__ = ("_parts",)

    def __init__(self, parts: Mapping | Iterable = ()):
        items = parts.items() if isinstance(parts, Mapping) else parts
        acc: dict[Fraction, QPoly] = {}
        for r, p in items:
            r = rotation(r)
            acc[r] = acc.get(r, ZERO) + p
        self._parts = {r: p for r, p in acc.items() if p}

    @classmethod
    def lift(cls, p: QPoly, r=0) -> "TwistedPoly":
        return cls({r: p})

    @property
    def parts(self) -> dict[Fraction, QPoly]:
        return dict(self._parts)

    def is_zero(self) -> bool:
        return not self._parts

    def __bool__(self):
        return bool(self._parts)

    def __add__(self, other):
        other = other if isinstance(other, TwistedPoly) else TwistedPoly.lift(_lift(other))
        return TwistedPoly(list(self._parts.items()) + list(other._parts.items()))

    __radd__ = __add__

    def __neg__(self):
        return TwistedPoly({r: -p for r, p in self._parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QPoly, int)):
            return TwistedPoly({r: p * other for r, p in self._parts.items()})
        out = []
        for r1, p1 in self._parts.items():
            for r2, p2 in other._parts.items():
                out.append((r1 + r2, p1 * p2))
        return TwistedPoly(out)

    __rmul__ = __mul__

    def rotate(self, r) -> "TwistedPoly":
        return TwistedPoly({s + Fraction(r): p for s, p in self._parts.items()})

    def __eq__(self, other):
        if isinstance(other, (QPoly, int)):
            other = TwistedPoly.lift(_lift(other))
        return isinstance(other, TwistedPoly) and self._parts == other._parts

    def __hash__(self):
        return hash(frozenset(self._parts.items()))

    def single_rotation(self) -> tuple[Fraction, QPoly] | None:
        """(r, P) when the value is exp(2 pi i r) P(q); None if several rotations occur."""
        if not self._parts:
            return Fraction(0), ZERO
        if len(self._parts) == 1:
            return next(iter(self._parts.items()))
        return None

    def stripped(self) -> QPoly:
        """Sum of the untwisted parts; equals |value| * unit when a single rotation occurs."""
        total = ZERO
        for p in self._parts.values():
            total = total + p
        return total

    def modulus_bound(self, q) -> Surd:
        """Triangle-inequality bound sum_r |P_r(q)|, exact when one rotation occurs."""
        total = Surd(0, 0, q)
        for p in self._parts.values():
            total = total + abs(p.at_q(q))
        return total

    def __str__(self):
        if not self._parts:
            return "0"
        pieces = []
        for r, p in sorted(self._parts.items()):
            pieces.append(str(p) if r == 0 else f"{rotation_str(r)}*({p})")
        return " + ".join(pieces)

    def __repr__(self):
        return f"TwistedPoly({self})"
