"""Quadratic-form tests: diagonalization against congruence oracles,
invariants, and the equivalence identities the classifiers rely on."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ratsimplex.arith import REAL, Place, square_class, support_primes
from ratsimplex.forms import (
    BadDimension,
    DegenerateMatrix,
    DiagonalForm,
    SymmetricMatrix,
    ZeroScale,
    diagonalize_congruence,
    direct_sum,
    forms_equivalent,
    gram_regular_simplex,
    hasse_invariant,
    invariants,
    scale,
    unit_form,
)
from ratsimplex.local import hilbert_symbol

F = Fraction


def det_oracle(entries) -> Fraction:
    """Fraction Gaussian elimination, independent of the congruence code."""
    m = [list(row) for row in entries]
    n = len(m)
    det = F(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return F(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


def random_symmetric(rng: random.Random, n: int) -> SymmetricMatrix:
    entries = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            entries[i][j] = entries[j][i] = F(rng.randint(-4, 4), rng.randint(1, 3))
    return SymmetricMatrix(tuple(tuple(row) for row in entries))


def random_form(rng: random.Random, max_rank: int = 4) -> DiagonalForm:
    rank = rng.randint(0, max_rank)
    return DiagonalForm(
        tuple(F(rng.randint(-10, 10) or 1, rng.randint(1, 10)) for _ in range(rank))
    )


def test_gram_regular_simplex_shape_and_det():
    assert gram_regular_simplex(1).entries == ((F(2),),)
    a2 = gram_regular_simplex(2)
    assert a2.entries == ((F(2), F(1)), (F(1), F(2)))
    assert det_oracle(a2.entries) == 3
    assert det_oracle(gram_regular_simplex(4).entries) == 5
    for d in (1, 2, 3, 7, 12):
        assert det_oracle(gram_regular_simplex(d).entries) == d + 1
    with pytest.raises(BadDimension):
        gram_regular_simplex(0)


def test_symmetric_matrix_validation():
    with pytest.raises(ValueError):
        SymmetricMatrix(((F(1), F(2)), (F(3), F(1))))
    with pytest.raises(BadDimension):
        SymmetricMatrix(((F(1), F(2)),))


def test_diagonalize_examples():
    identity = SymmetricMatrix(
        tuple(tuple(F(1) if i == j else F(0) for j in range(3)) for i in range(3))
    )
    assert diagonalize_congruence(identity).coefficients == (F(1), F(1), F(1))
    assert diagonalize_congruence(gram_regular_simplex(2)).coefficients == (F(2), F(3, 2))
    assert diagonalize_congruence(gram_regular_simplex(1)).coefficients == (F(2),)


def test_diagonalize_rejects_singular():
    singular = SymmetricMatrix(((F(1), F(1)), (F(1), F(1))))
    with pytest.raises(DegenerateMatrix):
        diagonalize_congruence(singular)


def test_diagonalize_handles_zero_diagonal():
    hyperbolic = SymmetricMatrix(((F(0), F(1)), (F(1), F(0))))
    form = diagonalize_congruence(hyperbolic)
    inv = invariants(form)
    assert inv.rank == 2
    assert inv.det_class == square_class(F(-1))
    assert (inv.positive_count, inv.negative_count) == (1, 1)


def test_diagonalize_preserves_rank_and_det_class():
    rng = random.Random(20)
    done = 0
    while done < 60:
        g = random_symmetric(rng, rng.randint(1, 5))
        det = det_oracle(g.entries)
        if det == 0:
            with pytest.raises(DegenerateMatrix):
                diagonalize_congruence(g)
            continue
        form = diagonalize_congruence(g)
        assert form.rank == g.dimension
        assert square_class(form.det()) == square_class(det)
        done += 1


def test_diagonalize_invariants_independent_of_pivot_order():
    rng = random.Random(21)
    done = 0
    while done < 60:
        g = random_symmetric(rng, rng.randint(1, 5))
        if det_oracle(g.entries) == 0:
            continue
        first = diagonalize_congruence(g, pivot="first")
        last = diagonalize_congruence(g, pivot="last")
        assert invariants(first) == invariants(last)
        done += 1


def test_diagonalize_invariant_under_congruence():
    # P^T g P with random invertible P must yield equivalent diagonal forms
    rng = random.Random(22)
    done = 0
    while done < 40:
        n = rng.randint(1, 4)
        g = random_symmetric(rng, n)
        if det_oracle(g.entries) == 0:
            continue
        p = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if det_oracle(p) == 0:
            continue
        conj = [
            [
                sum(p[k][i] * g.entries[k][l] * p[l][j] for k in range(n) for l in range(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
        transformed = SymmetricMatrix(tuple(tuple(row) for row in conj))
        assert forms_equivalent(
            diagonalize_congruence(g), diagonalize_congruence(transformed)
        )
        done += 1


def test_hasse_invariant_examples():
    for v in (REAL, Place(2), Place(5)):
        assert hasse_invariant(unit_form(6), v) == 1
        assert hasse_invariant(DiagonalForm(()), v) == 1
        assert hasse_invariant(DiagonalForm((F(5),)), v) == 1
    assert hasse_invariant(DiagonalForm((F(-1), F(-1))), REAL) == -1
    diag4 = diagonalize_congruence(gram_regular_simplex(4))
    for v in (REAL, Place(2), Place(3), Place(5), Place(7)):
        assert hasse_invariant(diag4, v) == 1


def test_hasse_sum_identity():
    # eps(f+g) = eps(f) * eps(g) * (det f, det g) at every relevant place
    rng = random.Random(23)
    for _ in range(60):
        f, g = random_form(rng), random_form(rng)
        if f.rank == 0 or g.rank == 0:
            continue
        places = {REAL, Place(2)}
        for form in (f, g):
            for c in form.coefficients:
                places.update(Place(p) for p in support_primes(c))
        for v in places:
            lhs = hasse_invariant(direct_sum(f, g), v)
            rhs = hasse_invariant(f, v) * hasse_invariant(g, v) * hilbert_symbol(
                f.det(), g.det(), v
            )
            assert lhs == rhs


def test_invariants_examples():
    inv = invariants(unit_form(2))
    assert (inv.rank, inv.det_class, inv.positive_count, inv.negative_count) == (2, 1, 2, 0)
    assert inv.hasse_support == frozenset()
    inv22 = invariants(DiagonalForm((F(2), F(2))))
    assert (inv22.rank, inv22.det_class) == (2, 1)
    assert inv22.hasse_support == frozenset()
    inv5 = invariants(DiagonalForm((F(5),)))
    assert (inv5.rank, inv5.det_class, inv5.hasse_support) == (1, 5, frozenset())


def test_invariants_signature_matches_det_sign():
    rng = random.Random(24)
    for _ in range(80):
        f = random_form(rng)
        inv = invariants(f)
        assert inv.positive_count + inv.negative_count == inv.rank
        if f.rank:
            assert (inv.det_class > 0) == (inv.negative_count % 2 == 0)


def test_forms_equivalent_examples():
    lhs = direct_sum(
        diagonalize_congruence(gram_regular_simplex(2)), DiagonalForm((F(3),))
    )
    assert forms_equivalent(unit_form(3), lhs)
    assert forms_equivalent(DiagonalForm((F(1), F(1))), DiagonalForm((F(2), F(2))))
    assert not forms_equivalent(DiagonalForm((F(1), F(1))), DiagonalForm((F(1), F(2))))


def test_simplex_identity_all_small_dimensions():
    for d in range(1, 31):
        lhs = direct_sum(
            diagonalize_congruence(gram_regular_simplex(d)),
            DiagonalForm((F(d + 1),)),
        )
        assert forms_equivalent(lhs, unit_form(d + 1)), d


def test_scaled_simplex_identity():
    # a*A_d + <a*s> must match (d+1) copies of <a>
    rng = random.Random(25)
    for _ in range(20):
        d = rng.randint(1, 8)
        a = F(rng.randint(1, 20), rng.randint(1, 20))
        lhs = direct_sum(
            scale(diagonalize_congruence(gram_regular_simplex(d)), a),
            DiagonalForm((a * (d + 1),)),
        )
        rhs = DiagonalForm((a,) * (d + 1))
        assert forms_equivalent(lhs, rhs)


def test_witt_cancellation():
    rng = random.Random(26)
    checked = 0
    while checked < 60:
        f, g, h = random_form(rng, 3), random_form(rng, 3), random_form(rng, 2)
        same_sum = forms_equivalent(direct_sum(f, h), direct_sum(g, h))
        same = forms_equivalent(f, g)
        assert same_sum == same
        checked += 1


def test_stabilization_scaling():
    rng = random.Random(27)
    for k in (4, 8, 12):
        for _ in range(15):
            a = F(rng.randint(1, 30), rng.randint(1, 30))
            assert forms_equivalent(
                DiagonalForm((a,) * k), unit_form(k)
            )


def test_binary_hasse_formula():
    # <x, delta/x> has Hasse invariant (x, -delta) everywhere
    rng = random.Random(28)
    for _ in range(60):
        x = F(rng.randint(-20, 20) or 1, rng.randint(1, 20))
        delta = F(rng.randint(1, 30), rng.randint(1, 30))
        form = DiagonalForm((x, delta / x))
        places = [REAL, Place(2), Place(3), Place(5), Place(7), Place(11), Place(13)]
        for v in places:
            assert hasse_invariant(form, v) == hilbert_symbol(x, -delta, v)


def test_direct_sum_and_scale_basics():
    empty = DiagonalForm(())
    f = DiagonalForm((F(2), F(3)))
    assert direct_sum(empty, f) == f
    assert direct_sum(DiagonalForm((F(2),)), DiagonalForm((F(3),))).coefficients == (
        F(2),
        F(3),
    )
    assert scale(f, 1) == f
    assert scale(f, 5).coefficients == (F(10), F(15))
    with pytest.raises(ZeroScale):
        scale(f, 0)
    with pytest.raises(Exception):
        DiagonalForm((F(0),))


def test_rank_zero_form_is_first_class():
    empty = DiagonalForm(())
    inv = invariants(empty)
    assert (inv.rank, inv.det_class, inv.hasse_support) == (0, 1, frozenset())
    assert forms_equivalent(empty, empty)
    assert not forms_equivalent(empty, unit_form(1))
