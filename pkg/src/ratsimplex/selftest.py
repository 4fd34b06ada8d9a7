"""Built-in consistency suites behind the ``selftest`` CLI command.

Each suite returns (name, cases, failures) where failures is a list of
JSON-ready counterexample dicts; the CLI stops at the first failing suite.
All sampling is seeded, so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .arith import squarefree_part
from .classify import Query, classify_engine, classify_table
from .forms import (
    DiagonalForm,
    diagonalize_congruence,
    direct_sum,
    forms_equivalent,
    gram_regular_simplex,
    unit_form,
)
from .local import symbol_support
from .witness import SearchConfig, search_lattice_witness, verify_regular_simplex

Suite = tuple[str, int, list[dict]]


def _sweep_m(m_bound: int, seed: int, extra_fractions: int = 20) -> list[Fraction]:
    values = [
        Fraction(2 * t)
        for t in range(1, m_bound + 1)
        if squarefree_part(t) == t
    ]
    rng = random.Random(seed)
    while len(values) < m_bound + extra_fractions:
        num = rng.randint(1, 4 * m_bound)
        den = rng.randint(1, 4 * m_bound)
        values.append(Fraction(num, den))
    return values


def identity_suite(dmax: int = 30) -> Suite:
    """diag(simplex gram) + <d+1> must be equivalent to (d+1) * <1>."""
    failures = []
    for d in range(1, dmax + 1):
        lhs = direct_sum(
            diagonalize_congruence(gram_regular_simplex(d)),
            DiagonalForm((Fraction(d + 1),)),
        )
        if not forms_equivalent(lhs, unit_form(d + 1)):
            failures.append({"d": d})
    return "simplex-gram identity", dmax, failures


def reciprocity_suite(pairs: int = 200, seed: int = 0, limit: int = 10**6) -> Suite:
    """Product of Hilbert symbols over all relevant places must be +1."""
    rng = random.Random(seed)
    failures = []
    for _ in range(pairs):
        a = rng.randint(-limit, limit) or 1
        b = rng.randint(-limit, limit) or 1
        support = symbol_support(Fraction(a), Fraction(b))
        if len(support) % 2:
            failures.append({"a": a, "b": b, "support": [str(v) for v in support]})
    return "Hilbert reciprocity", pairs, failures


def agreement_suite(dmax: int, codim_max: int, m_bound: int, seed: int) -> Suite:
    """Table and engine must return the same member bit on the whole grid."""
    failures = []
    cases = 0
    sweep = _sweep_m(m_bound, seed)
    for d in range(1, dmax + 1):
        for c in range(0, codim_max + 1):
            for m in sweep:
                cases += 1
                q = Query(d, d + c, m)
                t = classify_table(q).member
                e = classify_engine(q).member
                if t != e:
                    failures.append(
                        {"d": d, "n": d + c, "m": str(m), "table": t, "engine": e}
                    )
    return "table/engine agreement", cases, failures


def witness_soundness_suite(
    dmax: int = 3, nmax: int = 4, m_max: int = 8, bound: int = 2
) -> Suite:
    """Anything the search finds must verify and be classified positive."""
    failures = []
    cases = 0
    cfg = SearchConfig(coord_bound=bound, scale_max=1)
    for d in range(1, dmax + 1):
        for n in range(d, nmax + 1):
            for m_int in range(1, m_max + 1):
                cases += 1
                w = search_lattice_witness(d, n, m_int, cfg)
                if w is None:
                    continue
                ok = verify_regular_simplex(w)
                member = classify_table(Query(d, n, Fraction(m_int))).member
                if not (ok and member):
                    failures.append(
                        {"d": d, "n": n, "m": m_int, "verified": ok, "member": member}
                    )
    return "witness soundness", cases, failures


def run_all(grid_dmax: int, grid_codim: int, m_bound: int, seed: int) -> list[Suite]:
    return [
        identity_suite(),
        reciprocity_suite(seed=seed),
        agreement_suite(grid_dmax, grid_codim, m_bound, seed),
        witness_soundness_suite(),
    ]
