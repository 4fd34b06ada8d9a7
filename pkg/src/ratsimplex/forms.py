"""Rational quadratic forms as diagonal coefficient lists.

Symmetric matrices are diagonalized by congruence on ingestion; equivalence
over Q is decided through the complete invariant set (rank, determinant
class, real signature, local Hasse invariants).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import REAL, Place, Rational, ZeroInput, square_class, support_primes
from .local import Sign, hilbert_symbol


class BadDimension(ValueError):
    """Dimension argument out of range."""


class DegenerateMatrix(ValueError):
    """Congruence diagonalization needs a nonsingular matrix."""


class ZeroScale(ValueError):
    """Scaling a form by zero would degenerate it."""


@dataclass(frozen=True)
class SymmetricMatrix:
    """A square matrix of rationals with entries[i][j] == entries[j][i]."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if any(len(row) != n for row in rows):
            raise BadDimension("matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def dimension(self) -> int:
        return len(self.entries)


def gram_regular_simplex(d: int) -> SymmetricMatrix:
    """Gram matrix of the edge vectors of a regular d-simplex with edge^2 = 2.

    The d x d matrix with 2 on the diagonal and 1 elsewhere (identity plus
    all-ones); its determinant is d + 1.
    """
    if d < 1:
        raise BadDimension(f"d must be >= 1, got {d}")
    two, one = Fraction(2), Fraction(1)
    return SymmetricMatrix(
        tuple(tuple(two if i == j else one for j in range(d)) for i in range(d))
    )


@dataclass(frozen=True)
class DiagonalForm:
    """Nondegenerate diagonal quadratic form <a_1, ..., a_r>, rank = length."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if any(c == 0 for c in coeffs):
            raise ZeroInput("diagonal coefficients must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def det(self) -> Fraction:
        out = Fraction(1)
        for c in self.coefficients:
            out *= c
        return out


def unit_form(n: int) -> DiagonalForm:
    """The Euclidean form n * <1>."""
    if n < 0:
        raise BadDimension(f"rank must be >= 0, got {n}")
    return DiagonalForm((Fraction(1),) * n)


def direct_sum(f: DiagonalForm, g: DiagonalForm) -> DiagonalForm:
    """Orthogonal sum: concatenation of the coefficient lists."""
    return DiagonalForm(f.coefficients + g.coefficients)


def scale(f: DiagonalForm, a: Rational | int) -> DiagonalForm:
    """Multiply every coefficient by a nonzero rational."""
    a = Fraction(a)
    if a == 0:
        raise ZeroScale("cannot scale a form by 0")
    return DiagonalForm(tuple(a * c for c in f.coefficients))


def _pivot_candidates(m: list[list[Fraction]], k: int, n: int, pivot: str) -> int | None:
    indices = range(k, n) if pivot == "first" else range(n - 1, k - 1, -1)
    for j in indices:
        if m[j][j] != 0:
            return j
    return None


def diagonalize_congruence(g: SymmetricMatrix, pivot: str = "first") -> DiagonalForm:
    """Diagonalize by a rational congruence P^T g P; returns the diagonal.

    Symmetric elimination with a diagonal pivot; when every diagonal entry of
    the trailing block vanishes, a row+column addition creates one (which is
    where char 0 matters).  Rank and determinant class are preserved.  The
    pivot strategy ("first" or "last" nonzero diagonal) must not affect the
    invariants of the result.
    """
    if pivot not in ("first", "last"):
        raise ValueError(f"unknown pivot strategy {pivot!r}")
    n = g.dimension
    m = [list(row) for row in g.entries]
    coeffs: list[Fraction] = []
    for k in range(n):
        j = _pivot_candidates(m, k, n, pivot)
        if j is None:
            # all diagonal entries vanish; find any off-diagonal nonzero
            loc = next(
                ((i, l) for i in range(k, n) for l in range(i + 1, n) if m[i][l] != 0),
                None,
            )
            if loc is None:
                raise DegenerateMatrix("matrix is singular")
            i, l = loc
            for t in range(k, n):
                m[i][t] += m[l][t]
            for t in range(k, n):
                m[t][i] += m[t][l]
            j = i
        if j != k:
            m[j], m[k] = m[k], m[j]
            for row in m:
                row[j], row[k] = row[k], row[j]
        pivot_val = m[k][k]
        coeffs.append(pivot_val)
        row_k = m[k][:]
        # Schur complement: clearing row and column k below the pivot leaves
        # m[i][t] - m[i][k]*m[k][t]/pivot on the trailing block (symmetric).
        for i in range(k + 1, n):
            factor = m[i][k] / pivot_val
            if factor == 0:
                continue
            for t in range(k + 1, n):
                m[i][t] -= factor * row_k[t]
        for t in range(k + 1, n):
            m[k][t] = Fraction(0)
            m[t][k] = Fraction(0)
    return DiagonalForm(tuple(coeffs))


@dataclass(frozen=True)
class FormInvariants:
    """Complete equivalence invariants of a rational quadratic form.

    hasse_support lists the places where the Hasse invariant is -1; the full
    map is recovered as {v: -1 for v in hasse_support}, +1 elsewhere.
    """

    rank: int
    det_class: int
    positive_count: int
    negative_count: int
    hasse_support: frozenset[Place]


def hasse_invariant(f: DiagonalForm, v: Place) -> Sign:
    """Product of Hilbert symbols over coefficient pairs (empty product = +1)."""
    sign = 1
    coeffs = f.coefficients
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            sign *= hilbert_symbol(coeffs[i], coeffs[j], v)
    return sign


def _relevant_places(f: DiagonalForm) -> tuple[Place, ...]:
    primes: set[int] = {2}
    for c in f.coefficients:
        primes.update(support_primes(c))
    return (REAL, *(Place(p) for p in sorted(primes)))


@lru_cache(maxsize=4096)
def invariants(f: DiagonalForm) -> FormInvariants:
    """Rank, determinant class, signature, and the finite Hasse data."""
    pos = sum(1 for c in f.coefficients if c > 0)
    neg = f.rank - pos
    det_class = square_class(f.det()) if f.rank else 1
    support = frozenset(v for v in _relevant_places(f) if hasse_invariant(f, v) == -1)
    return FormInvariants(f.rank, det_class, pos, neg, support)


def forms_equivalent(f: DiagonalForm, g: DiagonalForm) -> bool:
    """Equivalence over Q: equality of the complete invariant sets."""
    return invariants(f) == invariants(g)
