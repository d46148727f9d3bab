"""Small exact linear-algebra helpers on Fraction tuples (sympy does the heavy lifting)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def vec(xs: Sequence) -> Vector:
    return tuple(frac(x) for x in xs)


def to_sympy(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(frac(x).numerator, frac(x).denominator) for x in r] for r in rows])


def from_sympy(m: sympy.Matrix) -> Matrix:
    return tuple(tuple(frac(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return to_sympy(rows).rank()


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of {y in Q^n : r . y = 0 for every row r}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return [tuple(frac(x) for x in v) for v in to_sympy(rows).nullspace()]


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), 0) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def inverse(m: Sequence[Sequence]) -> Matrix:
    return from_sympy(to_sympy(m).inv())


def det(m: Sequence[Sequence]) -> Fraction:
    return frac(to_sympy(m).det())


def span_coordinates(basis: Sequence[Sequence]) -> Matrix | None:
    """Matrix P with v = (v @ P) @ basis for every v in the row span of ``basis``.

    Returns None for an empty basis.
    """
    if not basis:
        return None
    s = to_sympy(basis)
    p = s.T * (s * s.T).inv()
    return from_sympy(p)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_integral(v: Sequence) -> bool:
    return all(frac(x).denominator == 1 for x in v)


def as_int_vec(v: Sequence) -> tuple[int, ...]:
    out = []
    for x in v:
        x = frac(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral coordinate {x}")
        out.append(x.numerator)
    return tuple(out)


def normalize(v: Sequence) -> tuple:
    """Store integral entries as int, the rest as Fraction."""
    out = []
    for x in v:
        x = frac(x)
        out.append(x.numerator if x.denominator == 1 else x)
    return tuple(out)
