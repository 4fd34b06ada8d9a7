"""Independent solvability oracle for the Hilbert symbol tests.

Decides ax^2 + by^2 = z^2 over Q_p by brute-force search for primitive
solutions modulo p^k (k = 3 for odd p, k = 6 for p = 2), after reducing the
coefficients to integers with p-valuation 0 or 1 (a square-class operation
that never consults quadratic characters).  The closed-form implementation
in ratsimplex.local must agree with this search everywhere.

Lifting bound: for a primitive solution some coordinate is a p-unit, so the
gradient (2ax, 2by, -2z) has valuation at most 1 (odd p) or 2 (p = 2) there,
and k > 2*val suffices for Hensel lifting; conversely a p-adic solution
scales to a primitive one and reduces mod p^k.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

K_ODD = 3
K_TWO = 6


def modulus(p: int) -> int:
    return p ** (K_TWO if p == 2 else K_ODD)


def reduce_coefficient(x: Fraction, p: int) -> int:
    """Integer in the square class of x with p-valuation 0 or 1."""
    a = x.numerator * x.denominator
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return a * p ** (v % 2)


def _value_sets(coeff: int, p: int, pk: int):
    """Values of coeff*x^2 mod p^k, split by whether x is a unit."""
    xs = np.arange(pk, dtype=np.int64)
    vals = (coeff % pk) * ((xs * xs) % pk) % pk
    unit_mask = xs % p != 0
    return np.unique(vals[unit_mask]), np.unique(vals)


def _hits(u: np.ndarray, v: np.ndarray, table: np.ndarray, pk: int) -> bool:
    if len(u) == 0 or len(v) == 0:
        return False
    sums = (u[:, None] + v[None, :]) % pk
    return bool(table[sums].any())


def solvable_primitive(a_red: int, b_red: int, p: int) -> bool:
    """Primitive solution of a x^2 + b y^2 = z^2 mod p^k, coefficients reduced."""
    pk = modulus(p)
    zs = np.arange(pk, dtype=np.int64)
    sq_vals = (zs * zs) % pk
    sq_any = np.zeros(pk, dtype=bool)
    sq_any[sq_vals] = True
    sq_unit = np.zeros(pk, dtype=bool)
    sq_unit[sq_vals[zs % p != 0]] = True

    a_unit, a_all = _value_sets(a_red, p, pk)
    b_unit, b_all = _value_sets(b_red, p, pk)
    # a triple is primitive iff x, y, or z is a unit
    return (
        _hits(a_unit, b_all, sq_any, pk)
        or _hits(a_all, b_unit, sq_any, pk)
        or _hits(a_all, b_all, sq_unit, pk)
    )


def hilbert_symbol_bruteforce(a: Fraction | int, b: Fraction | int, p: int) -> int:
    """The Hilbert symbol at p decided purely by the mod-p^k search."""
    a_red = reduce_coefficient(Fraction(a), p)
    b_red = reduce_coefficient(Fraction(b), p)
    return 1 if solvable_primitive(a_red, b_red, p) else -1


class MemoizedOracle:
    """The same brute force, memoized on the local square class at p.

    The canonical class representative is found with a unit-square table
    built by enumeration (u ~ r iff u*r is a unit square mod p^k), so the
    reduction never consults the closed-form machinery it is checking.
    Multiplying a coefficient by a unit square permutes the solution set of
    the mod-p^k equation, so the memoization is exact for the brute force.
    """

    def __init__(self, p: int):
        self.p = p
        self.pk = modulus(p)
        zs = np.arange(self.pk, dtype=np.int64)
        sq = (zs * zs) % self.pk
        self.unit_square = np.zeros(self.pk, dtype=bool)
        self.unit_square[sq[zs % p != 0]] = True
        self._canon_cache: dict[int, int] = {}
        self._solvable: dict[tuple[int, int, int, int], bool] = {}

    def local_key(self, x: Fraction) -> tuple[int, int]:
        """(valuation mod 2, canonical unit representative mod p^k)."""
        a = x.numerator * x.denominator
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        u = a % self.pk
        canon = self._canon_cache.get(u)
        if canon is None:
            for r in range(1, self.pk):
                if r % self.p and self.unit_square[(u * r) % self.pk]:
                    canon = r
                    break
            assert canon is not None
            self._canon_cache[u] = canon
        return v % 2, canon

    def symbol(self, key_a: tuple[int, int], key_b: tuple[int, int]) -> int:
        key = key_a + key_b
        hit = self._solvable.get(key)
        if hit is None:
            a_red = self.p ** key_a[0] * key_a[1]
            b_red = self.p ** key_b[0] * key_b[1]
            hit = solvable_primitive(a_red, b_red, self.p)
            self._solvable[key] = hit
        return 1 if hit else -1
