"""Local computations over the completions of Q.

Quadratic residues, local squares, and the Hilbert symbol, all by closed-form
local formulas (real sign check; valuation + Legendre character at odd p; the
mod-8 characters at p = 2).  Signs are plain ints +1/-1.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import REAL, Place, Rational, ZeroInput, _int_valuation, is_prime, support_primes

Sign = int


class BadModulus(ValueError):
    """Legendre symbol needs an odd prime modulus."""


class NotCoprime(ValueError):
    """Legendre symbol needs an argument coprime to the modulus."""


def legendre(u: int, p: int) -> Sign:
    """Legendre symbol of u modulo an odd prime, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise BadModulus(f"modulus must be an odd prime, got {p}")
    if u % p == 0:
        raise NotCoprime(f"{u} is divisible by {p}")
    return 1 if pow(u, (p - 1) // 2, p) == 1 else -1


def _split_unit(q: Fraction, p: int) -> tuple[int, int]:
    """Valuation of q at p, and the residue class of its unit part.

    The second component is num*den with the powers of p stripped: it equals
    the unit part num/den times the square den^2, so it represents the same
    class for every quadratic-character purpose (and is literally congruent
    to num/den mod 8 when p = 2, odd squares being 1 mod 8).
    """
    num, den = q.numerator, q.denominator
    vn = _int_valuation(num, p)
    vd = _int_valuation(den, p)
    return vn - vd, (num // p**vn) * (den // p**vd)


def is_local_square(q: Rational | int, v: Place) -> bool:
    """Whether q is a square in the completion at v.

    Real place: positivity.  Odd p: even valuation and unit part a residue
    mod p.  p = 2: even valuation and unit part congruent to 1 mod 8.
    """
    if type(q) is not Fraction:
        q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 is not a unit in any completion")
    if v.is_real:
        return q > 0
    p = v.p
    val, unit = _split_unit(q, p)
    if val % 2:
        return False
    if p == 2:
        return unit % 8 == 1
    return legendre(unit, p) == 1


def hilbert_symbol(a: Rational | int, b: Rational | int, v: Place) -> Sign:
    """Hilbert symbol at v: +1 iff ax^2 + by^2 = z^2 has a nontrivial solution.

    Computed by the closed-form local formulas; bimultiplicative, symmetric,
    and invariant under multiplying either argument by a nonzero square.
    """
    if type(a) is not Fraction:
        a = Fraction(a)
    if type(b) is not Fraction:
        b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha, a_unit = _split_unit(a, p)
    beta, b_unit = _split_unit(b, p)
    if p == 2:
        u = a_unit % 8
        w = b_unit % 8
        eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
        omega_u, omega_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
        exponent = eps_u * eps_w + alpha * omega_w + beta * omega_u
        return -1 if exponent % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= legendre(a_unit, p)
    if alpha % 2:
        sign *= legendre(b_unit, p)
    return sign


def symbol_support(a: Rational | int, b: Rational | int) -> dict[Place, Sign]:
    """Places where the Hilbert symbol of (a, b) is -1, in deterministic order.

    Only the real place, 2, and primes dividing a or b can carry -1; entries
    with value +1 are dropped, so a trivial family is the empty map.
    """
    if type(a) is not Fraction:
        a = Fraction(a)
    if type(b) is not Fraction:
        b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    primes = sorted({2, *support_primes(a), *support_primes(b)})
    out: dict[Place, Sign] = {}
    for v in (REAL, *(Place(p) for p in primes)):
        if hilbert_symbol(a, b, v) == -1:
            out[v] = -1
    return out
