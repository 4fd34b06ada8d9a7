"""Explicit certificates: verification, built-in constructions, bounded search.

A witness is a vertex list over Q^n whose difference Gram matrix equals
(m/2) times the regular-simplex Gram matrix; that equality is the only
notion of validity used anywhere.  The search is a bounded, deterministic
enumeration: a miss is "not found within bounds", never a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .arith import Rational, squarefree_part
from .classify import MethodsDisagree, PreconditionViolated, Query, classify_table
from .forms import BadDimension, gram_regular_simplex


class DimensionMismatch(ValueError):
    """Vertices of a witness must share one ambient dimension."""


class BudgetExceeded(RuntimeError):
    """The search ran out of effort budget before exhausting its bounds."""


@dataclass(frozen=True)
class Witness:
    """d+1 points in Q^n with all pairwise squared distances equal."""

    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    edge_sq: Fraction

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edge_sq", Fraction(self.edge_sq))
        for v in verts:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch(
                    f"vertex length {len(v)} != ambient dimension {self.ambient_dim}"
                )

    @property
    def simplex_dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class SearchConfig:
    """Bounds of one search: coordinate box, scale sweep, node budget."""

    coord_bound: int = 3
    scale_max: int = 2
    effort_budget: int = 2_000_000

    def __post_init__(self):
        if self.coord_bound < 1 or self.scale_max < 1 or self.effort_budget < 1:
            raise ValueError("all search bounds must be >= 1")


def _dot(u: tuple[Fraction, ...], v: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for a, b in zip(u, v):
        total += a * b
    return total


def verify_regular_simplex(w: Witness) -> bool:
    """Exact check: difference Gram matrix equals (edge_sq/2) * (I + ones).

    That single equality packs both requirements: all pairwise squared
    distances equal edge_sq, and the difference vectors are independent.
    """
    d = w.simplex_dim
    if d < 1:
        return False
    half_m = w.edge_sq / 2
    base = w.vertices[0]
    diffs = [
        tuple(x - y for x, y in zip(v, base)) for v in w.vertices[1:]
    ]
    target = gram_regular_simplex(d).entries
    for i in range(d):
        for j in range(i, d):
            if _dot(diffs[i], diffs[j]) != half_m * target[i][j]:
                return False
    return True


def canonical_simplex(d: int) -> Witness:
    """The edge^2 = 2 simplex in Q^{d+1}: origin plus the vectors e_i - e_{d+1}."""
    if d < 1:
        raise BadDimension(f"d must be >= 1, got {d}")
    zero = tuple(Fraction(0) for _ in range(d + 1))
    verts = [zero]
    for i in range(d):
        v = [Fraction(0)] * (d + 1)
        v[i] = Fraction(1)
        v[d] = Fraction(-1)
        verts.append(tuple(v))
    w = Witness(d + 1, tuple(verts), Fraction(2))
    assert verify_regular_simplex(w)
    return w


def builtin_witness() -> Witness:
    """Hand-built regular 4-simplex in Q^5 with squared edge length 10.

    Origin plus four rows whose Gram matrix is exactly 5 * (I + ones): each
    row has squared norm 10 and the pairwise dot products are all 5.
    """
    rows = (
        (1, 3, 0, 0, 0),
        (2, 1, 1, 0, 2),
        (2, 1, -2, 0, 1),
        (Fraction(5, 4), Fraction(5, 4), Fraction(-1, 4), Fraction(5, 2), Fraction(3, 4)),
    )
    zero = (0, 0, 0, 0, 0)
    w = Witness(5, (zero, *rows), Fraction(10))
    assert verify_regular_simplex(w)
    return w


def scale_witness(w: Witness, q: Rational | int) -> Witness:
    """Scale all vertices by q != 0; the squared edge length picks up q^2."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("scale factor must be nonzero")
    verts = tuple(tuple(q * x for x in v) for v in w.vertices)
    return Witness(w.ambient_dim, verts, w.edge_sq * q * q)


def search_lattice_witness(
    d: int, n: int, m: Rational | int, cfg: SearchConfig | None = None
) -> Witness | None:
    """Bounded deterministic search for a lattice witness of (d, n, m).

    For each scale q = 1..scale_max with M = m*q^2 a positive integer, the
    kernel enumerates all integer vectors of squared norm M inside the
    coordinate box and looks for d of them that are pairwise at squared
    distance M; the origin completes the simplex and dividing by q restores
    edge length m.  First hit in the kernel's deterministic order is
    returned, already verified.  None means not found within bounds, which
    is never a disproof; running out of budget raises BudgetExceeded.
    """
    Query(d, n, Fraction(m))  # validates the triple
    m = Fraction(m)
    cfg = cfg or SearchConfig()
    remaining = cfg.effort_budget
    for q in range(1, cfg.scale_max + 1):
        scaled = m * q * q
        if scaled.denominator != 1:
            continue
        status, clique, used = _kernels.search_clique(
            n, int(scaled), cfg.coord_bound, d, remaining
        )
        remaining -= used
        if status == _kernels.BUDGET:
            raise BudgetExceeded(
                f"search for (d={d}, n={n}, m={m}) exhausted its node budget"
            )
        if status == _kernels.FOUND:
            zero = tuple(Fraction(0) for _ in range(n))
            verts = [zero]
            for vec in clique:
                verts.append(tuple(Fraction(x, q) for x in vec))
            w = Witness(n, tuple(verts), m)
            assert verify_regular_simplex(w)
            return w
    return None


def transfer_witness_stabilized(
    w: Witness, d_prime: int, cfg: SearchConfig | None = None
) -> Witness | None:
    """Re-search a witness in the stabilized instance (d', n + d' - d, m).

    Requires sf(d+1) = sf(d'+1), d' = d mod 4, d' >= d.  The classification
    of the target instance is asserted to be positive; the constructive step
    is a fresh bounded search, so None just means the bounds were too small.
    """
    d = w.simplex_dim
    if not verify_regular_simplex(w):
        raise ValueError("input is not a regular simplex witness")
    if d_prime < d:
        raise PreconditionViolated(f"need d' >= d, got {d_prime} < {d}")
    if squarefree_part(d + 1) != squarefree_part(d_prime + 1):
        raise PreconditionViolated(
            f"squarefree parts differ: sf({d + 1}) != sf({d_prime + 1})"
        )
    if (d_prime - d) % 4:
        raise PreconditionViolated(f"{d_prime} != {d} mod 4")
    if d_prime == d:
        return w
    n_prime = w.ambient_dim + d_prime - d
    verdict = classify_table(Query(d_prime, n_prime, w.edge_sq))
    if not verdict.member:  # pragma: no cover - stabilization guarantees membership
        raise MethodsDisagree(
            f"stabilized instance (d'={d_prime}, n'={n_prime}, m={w.edge_sq})"
            " classified negative despite a valid source witness"
        )
    try:
        return search_lattice_witness(d_prime, n_prime, w.edge_sq, cfg)
    except BudgetExceeded:
        return None
