"""Decides which squared edge lengths admit a regular d-simplex in Q^n.

Two deliberately independent deciders answer every query:

* ``classify_table`` dispatches on the codimension c = n - d (clipped at 3)
  and on d mod 4, evaluating closed-form square-class, norm-group, and
  Hilbert-symbol conditions.
* ``classify_engine`` reduces the embedding to the existence of a positive
  definite complement of rank c with prescribed determinant class and local
  Hasse data, and decides that existence place by place (for c = 0 it falls
  back to a full form-equivalence check).

They share only the arithmetic primitives; their agreement on large grids is
part of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import (
    REAL,
    Place,
    Rational,
    is_rational_square,
    square_class,
    squarefree_part,
    support_primes,
)
from .forms import (
    DiagonalForm,
    diagonalize_congruence,
    forms_equivalent,
    gram_regular_simplex,
    scale,
    unit_form,
)
from .local import hilbert_symbol, is_local_square, symbol_support


class InvalidQuery(ValueError):
    """Queries need 1 <= d <= n and m > 0."""


class NotSquarefree(ValueError):
    """Norm-group membership is defined for squarefree field discriminants."""


class MissingForms(ValueError):
    """The codimension-0 branch needs both concrete forms."""


class MethodsDisagree(RuntimeError):
    """Bug trap: the two deciders returned different answers."""


class PreconditionViolated(ValueError):
    """Stabilization hypotheses (matching squarefree part, d mod 4) failed."""


@dataclass(frozen=True)
class Query:
    """One membership question: does edge^2 = m occur for a d-simplex in Q^n?"""

    d: int
    n: int
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        if self.d < 1 or self.n < self.d or self.m <= 0:
            raise InvalidQuery(f"need 1 <= d <= n and m > 0, got {self.d}, {self.n}, {self.m}")


@dataclass(frozen=True)
class DerivedParams:
    """Parameters every branch consumes: a = m/2, c = n-d, d+1 = s*u^2."""

    a: Fraction
    c: int
    s: int
    u: int
    parity_dplus1: int
    parity_tri: int


# (d+1) mod 2 and d(d+1)/2 mod 2, indexed by d mod 4
_PARITY_TABLE = {0: (1, 0), 1: (0, 1), 2: (1, 1), 3: (0, 0)}


def derive(q: Query) -> DerivedParams:
    """Derived parameters of a query; parities follow the d mod 4 table."""
    s = squarefree_part(q.d + 1)
    u = isqrt((q.d + 1) // s)
    parity_dplus1, parity_tri = _PARITY_TABLE[q.d % 4]
    assert s * u * u == q.d + 1
    assert parity_dplus1 == (q.d + 1) % 2
    assert parity_tri == (q.d * (q.d + 1) // 2) % 2
    return DerivedParams(q.m / 2, q.n - q.d, s, u, parity_dplus1, parity_tri)


@dataclass(frozen=True)
class EtaFamily:
    """Finite places where the complement's target Hasse invariant is -1.

    The real entry is provably +1 (both arguments positive), and Hilbert
    reciprocity forces an even number of -1 entries.
    """

    support: frozenset[Place]

    def __post_init__(self):
        if any(v.is_real for v in self.support):
            raise ValueError("the real place cannot carry -1 here")
        if len(self.support) % 2:
            raise ValueError("reciprocity violated: odd number of -1 entries")


def eta_family(params: DerivedParams) -> EtaFamily:
    """Target Hasse signs for the complement: (a,-1)^t1 * (a,s)^t2 pointwise."""
    signs: dict[Place, int] = {}
    if params.parity_tri:
        for v, sgn in symbol_support(params.a, Fraction(-1)).items():
            signs[v] = signs.get(v, 1) * sgn
    if params.parity_dplus1:
        for v, sgn in symbol_support(params.a, Fraction(params.s)).items():
            signs[v] = signs.get(v, 1) * sgn
    support = frozenset(v for v, sgn in signs.items() if sgn == -1)
    return EtaFamily(support)


@dataclass(frozen=True)
class LocalCheck:
    """One condition consulted during classification.

    place is None for structural conditions that are not tied to a place
    (for example the squarefree-part test in codimension 0).
    """

    place: Place | None
    kind: str  # "symbol-condition" | "square-class-condition" | "norm-condition"
    passed: bool
    detail: str


@dataclass(frozen=True)
class Verdict:
    """Decision plus explanation: row is the clipped codimension min(c, 3)."""

    member: bool
    method: str  # "table" | "engine"
    row: int
    column: int
    checks: tuple[LocalCheck, ...] = ()


def _norm_places(a: Fraction, t: int) -> tuple[Place, ...]:
    primes = sorted({2, *support_primes(a), *support_primes(t)})
    return (REAL, *(Place(p) for p in primes))


def in_norm_group_positive(a: Rational | int, t: int) -> bool:
    """Whether a > 0 is a value of x^2 - t*y^2 over the rationals.

    For squarefree t != 1 this is the Hasse norm criterion: the symbol
    (a, t)_v must be +1 at every place that could obstruct (positivity of a
    already settles the real place for t > 0).  N_1 is all of Q_{>0}.
    """
    a = Fraction(a)
    if a <= 0:
        raise InvalidQuery(f"need a > 0, got {a}")
    if squarefree_part(t) != t:
        raise NotSquarefree(f"{t} is not squarefree")
    if t == 1:
        return True
    return all(hilbert_symbol(a, t, v) == 1 for v in _norm_places(a, t))


def _finite_condition_places(a: Fraction, extra: int | None = None) -> tuple[int, ...]:
    primes = {2, *support_primes(a)}
    if extra is not None:
        primes.update(support_primes(extra))
    return tuple(sorted(primes))


def in_H(a: Rational | int, s: int) -> bool:
    """Codimension-2 condition for d = 0 mod 4: (a,s)_p = +1 wherever -s is
    a square in Q_p.  Only p = 2, primes of a, and primes of s can fail."""
    a = Fraction(a)
    if a <= 0:
        raise InvalidQuery(f"need a > 0, got {a}")
    if s <= 0 or squarefree_part(s) != s:
        raise NotSquarefree(f"{s} is not a positive squarefree integer")
    for p in _finite_condition_places(a, s):
        v = Place(p)
        if is_local_square(Fraction(-s), v) and hilbert_symbol(a, Fraction(s), v) != 1:
            return False
    return True


def in_U(a: Rational | int, s: int) -> bool:
    """Codimension-2 condition for d = 1 mod 4: (a,-1)_p = +1 wherever -a*s
    is a square in Q_p.  Only p = 2 and primes of a can fail."""
    a = Fraction(a)
    if a <= 0:
        raise InvalidQuery(f"need a > 0, got {a}")
    if s <= 0 or squarefree_part(s) != s:
        raise NotSquarefree(f"{s} is not a positive squarefree integer")
    for p in _finite_condition_places(a):
        v = Place(p)
        if is_local_square(-a * s, v) and hilbert_symbol(a, Fraction(-1), v) != 1:
            return False
    return True


def complement_exists(
    c: int,
    det_class: int,
    eta: EtaFamily,
    codim0_lhs: DiagonalForm | None = None,
    codim0_rhs: DiagonalForm | None = None,
) -> bool:
    """Whether a positive definite rank-c form with determinant class
    det_class and Hasse signs eta exists.

    Rank >= 3 always works (local existence plus global assembly).  Rank 2
    works iff -det_class is a non-square in every completion where eta wants
    -1.  Rank 1 has trivial Hasse data, so eta must be empty.  Rank 0 is an
    equality of the two supplied concrete forms.
    """
    if c < 0:
        raise InvalidQuery(f"codimension must be >= 0, got {c}")
    if det_class <= 0 or squarefree_part(det_class) != det_class:
        raise NotSquarefree(f"{det_class} is not a positive squarefree integer")
    if c >= 3:
        return True
    if c == 2:
        return all(not is_local_square(Fraction(-det_class), v) for v in eta.support)
    if c == 1:
        return not eta.support
    if codim0_lhs is None or codim0_rhs is None:
        raise MissingForms("codimension 0 needs both concrete forms")
    return forms_equivalent(codim0_lhs, codim0_rhs)


@lru_cache(maxsize=None)
def _simplex_diagonal(d: int) -> DiagonalForm:
    return diagonalize_congruence(gram_regular_simplex(d))


def classify_engine(q: Query) -> Verdict:
    """Decide membership by constructing the complement's required invariants.

    The target determinant class is the square class of a^d * s (a for odd d,
    1 for even d, times s) and the target Hasse family is eta; existence of
    the positive definite complement is then a local question, except in
    codimension 0 where the scaled simplex form is compared with n * <1>.
    """
    params = derive(q)
    a, c, s, d = params.a, params.c, params.s, q.d
    det_class = square_class(a * s) if d % 2 else square_class(Fraction(s))
    eta = eta_family(params)
    checks: list[LocalCheck] = []
    if c == 0:
        lhs = scale(_simplex_diagonal(d), a)
        rhs = unit_form(q.n)
        member = complement_exists(0, det_class, eta, lhs, rhs)
        checks.append(
            LocalCheck(
                None,
                "square-class-condition",
                member,
                f"scaled simplex form {'is' if member else 'is not'} equivalent to {q.n}*<1>",
            )
        )
    elif c == 1:
        member = not eta.support
        for v in sorted(eta.support):
            checks.append(
                LocalCheck(
                    v,
                    "symbol-condition",
                    False,
                    f"rank-1 complement has Hasse invariant +1 at {v} but the target is -1",
                )
            )
    elif c == 2:
        results = []
        for v in sorted(eta.support):
            ok = not is_local_square(Fraction(-det_class), v)
            results.append(ok)
            checks.append(
                LocalCheck(
                    v,
                    "square-class-condition",
                    ok,
                    f"target sign -1 at {v} is realizable iff -{det_class} is a"
                    f" non-square in Q_{v}; it is {'not ' if ok else ''}a square",
                )
            )
        member = all(results)
    else:
        member = True
    return Verdict(member, "engine", min(c, 3), d % 4, tuple(checks))


def _norm_group_checks(a: Fraction, t: int, detailed: bool) -> tuple[bool, list[LocalCheck]]:
    checks = []
    ok_all = True
    for v in _norm_places(a, t):
        ok = hilbert_symbol(a, Fraction(t), v) == 1
        ok_all = ok_all and ok
        if detailed or not ok:
            checks.append(
                LocalCheck(
                    v,
                    "norm-condition",
                    ok,
                    f"(a, {t})_{v} = {'+1' if ok else '-1'}; membership in the"
                    f" norm group of sqrt({t}) needs +1",
                )
            )
    return ok_all, checks


def _table_eval(q: Query, detailed: bool) -> Verdict:
    params = derive(q)
    a, c, s, d = params.a, params.c, params.s, q.d
    col = d % 4
    checks: list[LocalCheck] = []

    if c >= 3:
        member = True
        if detailed:
            checks.append(
                LocalCheck(
                    None,
                    "square-class-condition",
                    True,
                    "codimension >= 3: the complement absorbs every local"
                    " invariant, no condition on m",
                )
            )
    elif c == 2:
        if col == 0:
            member = True
            for p in _finite_condition_places(a, s):
                v = Place(p)
                applies = is_local_square(Fraction(-s), v)
                if applies:
                    ok = hilbert_symbol(a, Fraction(s), v) == 1
                    member = member and ok
                    checks.append(
                        LocalCheck(
                            v,
                            "symbol-condition",
                            ok,
                            f"(a, {s})_{p} = {'+1' if ok else '-1'} required"
                            f" because -{s} is a square in Q_{p}",
                        )
                    )
                elif detailed:
                    checks.append(
                        LocalCheck(
                            v,
                            "symbol-condition",
                            True,
                            f"no condition at {p}: -{s} is not a square in Q_{p}",
                        )
                    )
        elif col == 1:
            member = True
            for p in _finite_condition_places(a):
                v = Place(p)
                applies = is_local_square(-a * s, v)
                if applies:
                    ok = hilbert_symbol(a, Fraction(-1), v) == 1
                    member = member and ok
                    checks.append(
                        LocalCheck(
                            v,
                            "symbol-condition",
                            ok,
                            f"(a, -1)_{p} = {'+1' if ok else '-1'} required"
                            f" because -a*s is a square in Q_{p}",
                        )
                    )
                elif detailed:
                    checks.append(
                        LocalCheck(
                            v,
                            "symbol-condition",
                            True,
                            f"no condition at {p}: -a*s is not a square in Q_{p}",
                        )
                    )
        else:
            member = True
            if detailed:
                witness = "a" if col == 2 else "1"
                checks.append(
                    LocalCheck(
                        None,
                        "symbol-condition",
                        True,
                        f"no local condition in this cell; the binary complement"
                        f" with first coefficient x = {witness} works at every place",
                    )
                )
    elif c == 1:
        targets = {0: s, 1: -1, 2: -s, 3: None}
        t = targets[col]
        if t is None:
            member = True
            if detailed:
                checks.append(
                    LocalCheck(
                        None,
                        "norm-condition",
                        True,
                        "no condition: the rank-1 complement target is trivial",
                    )
                )
        else:
            member, norm_checks = _norm_group_checks(a, t, detailed)
            checks.extend(norm_checks)
    else:  # c == 0
        if col == 0:
            member = s == 1
            checks.append(
                LocalCheck(
                    None,
                    "square-class-condition",
                    member,
                    f"squarefree part of d+1 is {s}; a full-dimensional embedding"
                    f" forces it to be 1",
                )
            )
        elif col == 1:
            sq_ok = is_rational_square(a / s)
            checks.append(
                LocalCheck(
                    None,
                    "square-class-condition",
                    sq_ok,
                    f"m/(2*{s}) = {a / s} must be a rational square; it is"
                    f" {'' if sq_ok else 'not '}one",
                )
            )
            norm_ok, norm_checks = _norm_group_checks(Fraction(s), -1, detailed)
            checks.extend(norm_checks)
            member = sq_ok and norm_ok
        elif col == 2:
            member = False
            checks.append(
                LocalCheck(
                    None,
                    "square-class-condition",
                    False,
                    "d = 2 mod 4: d+1 = 3 mod 4 is never a perfect square, so"
                    " the determinant condition fails for every m",
                )
            )
        else:
            member = is_rational_square(a / s)
            checks.append(
                LocalCheck(
                    None,
                    "square-class-condition",
                    member,
                    f"m/(2*{s}) = {a / s} must be a rational square; it is"
                    f" {'' if member else 'not '}one",
                )
            )
    return Verdict(member, "table", min(c, 3), col, tuple(checks))


def classify_table(q: Query) -> Verdict:
    """Decide membership by the closed-form classification table."""
    return _table_eval(q, detailed=False)


def explain(q: Query) -> Verdict:
    """classify_table's verdict with every consulted place and outcome listed."""
    verdict = _table_eval(q, detailed=True)
    assert verdict.member == classify_table(q).member
    return verdict


def classify(d: int, n: int, m: Rational | int, method: str = "table") -> Verdict:
    """Convenience wrapper building the query and dispatching on method."""
    q = Query(d, n, Fraction(m))
    if method == "table":
        return classify_table(q)
    if method == "engine":
        return classify_engine(q)
    raise ValueError(f"unknown method {method!r}")


def stabilization_equiv(d: int, d_prime: int, n: int, m: Rational | int) -> bool:
    """Shared verdict of (d, n, m) and (d', n + d' - d, m).

    Requires matching squarefree parts of d+1 and d'+1, d' = d mod 4, and
    d' >= d; under those hypotheses the two answers provably agree, so any
    mismatch is a bug and is reported via MethodsDisagree.
    """
    if d < 1 or d_prime < d or n < d:
        raise PreconditionViolated(f"need 1 <= d <= d' and n >= d, got {d}, {d_prime}, {n}")
    if squarefree_part(d + 1) != squarefree_part(d_prime + 1):
        raise PreconditionViolated(
            f"squarefree parts differ: sf({d + 1}) != sf({d_prime + 1})"
        )
    if (d_prime - d) % 4:
        raise PreconditionViolated(f"{d_prime} != {d} mod 4")
    first = classify_table(Query(d, n, Fraction(m)))
    second = classify_table(Query(d_prime, n + d_prime - d, Fraction(m)))
    if first.member != second.member:
        raise MethodsDisagree(
            f"stabilization mismatch for d={d}, d'={d_prime}, n={n}, m={m}"
        )
    return first.member
