from fractions import Fraction

import pytest

from arrangement import arrangement_from_rows, build_intersection_lattice
from connection import (
    ResidueSystem, check_flatness, commutator, natural_residues, residue_sum, scalar_on_normal,
)
from numeric import Q, Q_I, FieldElem, Matrix
from singularities import WeightedArrangement

# lines x = 0, y = 0, x + y = 0 are pairwise at 60 degrees for this metric
SIXTY_DEGREE_FORM = Matrix([[2, 1], [1, 2]], Q)


def _weighted(rows, orders, tag=Q):
    n = len(rows[0])
    L = build_intersection_lattice(arrangement_from_rows(rows, tag), n, tag)
    return WeightedArrangement.from_orders(L, {f"H{i + 1}": m for i, m in enumerate(orders)})


def test_natural_residue_of_a_diagonal_line():
    W = _weighted([[1, 1], [1, 0]], [2, 2])
    S = natural_residues(W)
    # line at 45 degrees, a = 1/2: (a/2) * [[1, 1], [1, 1]]
    assert S.residue("H1") == Matrix([[Fraction(1, 4), Fraction(1, 4)], [Fraction(1, 4), Fraction(1, 4)]], Q)


@pytest.mark.parametrize("tag", [Q, Q_I])
def test_natural_residues_are_rank_one_idempotent_multiples(rng, tag):
    for _ in range(40):
        rows = []
        while len(rows) < 3:
            row = [FieldElem(tag, rng.randint(-3, 3), rng.randint(-3, 3) if tag == Q_I else 0) for _ in range(3)]
            if any(not x.is_zero() for x in row) and all(Matrix([row, r], tag).rank() == 2 for r in rows):
                rows.append(row)
        W = _weighted(rows, [2, 3, 6], tag)
        S = natural_residues(W)
        for h in W.lattice.hyperplanes:
            R = S.residue(h.id)
            a = W.weights[h.id]
            assert R @ R == R.scale(a)
            assert R.trace() == a
            assert R.rank() <= 1
            assert all(x.is_zero() for x in R.apply(W.lattice.flat(h.id).basis[0]))


def test_orthogonal_lines_are_flat_but_not_scalar():
    W = _weighted([[1, 0], [0, 1]], [2, 3])
    S = natural_residues(W)
    result = check_flatness(S)
    assert result.flat
    assert result.checked == 1
    s = scalar_on_normal(S, "H1&H2", W)
    assert not s.scalar
    assert s.value is None


def test_orthogonal_arrangements_are_flat_for_any_weights(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        chosen = rng.sample(range(n), rng.randint(1, n))
        rows = []
        for j in chosen:
            row = [0] * n
            row[j] = rng.choice([-3, -2, -1, 1, 2, 3])
            rows.append(row)
        W = _weighted(rows, [rng.randint(2, 12) for _ in rows])
        result = check_flatness(natural_residues(W))
        assert result.flat
        assert not result.violations
        assert result.checked == len(chosen) * (len(chosen) - 1) // 2


def test_forty_five_degree_lines_are_not_flat():
    W = _weighted([[1, 0], [1, 1]], [2, 3])
    S = natural_residues(W)
    result = check_flatness(S)
    assert not result.flat
    assert {v.member for v in result.violations} == {"H1", "H2"}
    first = next(v for v in result.violations if v.member == "H1")
    assert first.commutator == Matrix([[0, Fraction(-1, 6)], [Fraction(1, 6), 0]], Q)


def test_sixty_degree_lines_are_flat_and_scalar():
    W = _weighted([[1, 0], [0, 1], [1, 1]], [3, 3, 3])
    S = natural_residues(W, SIXTY_DEGREE_FORM)
    assert check_flatness(S).flat
    total = residue_sum(S, "H1&H2&H3")
    # three residues of weight a sum to (3a/2) * I
    assert total == Matrix.identity(2, Q)
    s = scalar_on_normal(S, "H1&H2&H3", W)
    assert s.scalar
    assert s.value == FieldElem(Q, 1)
    assert s.exponent == 1
    assert s.matches_exponent


def test_scalar_on_the_normal_of_a_hyperplane():
    W = _weighted([[1, 0]], [2])
    S = natural_residues(W)
    s = scalar_on_normal(S, "H1", W)
    assert s.annihilates_flat
    assert s.scalar
    assert s.value == FieldElem(Q, Fraction(1, 2))
    assert s.matches_exponent


def test_flatness_is_basis_invariant():
    P = Matrix([[1, 2], [0, 1]], Q)
    for rows, orders in [([[1, 0], [1, 1]], [2, 3]), ([[1, 0], [0, 1]], [2, 5])]:
        S = natural_residues(_weighted(rows, orders))
        moved = S.change_basis(P)
        assert check_flatness(moved).flat == check_flatness(S).flat
        for i, R in S.residues.items():
            assert moved.residue(i) == P.inverse() @ R @ P


def test_residue_system_must_cover_the_arrangement():
    W = _weighted([[1, 0], [0, 1]], [2, 2])
    with pytest.raises(ValueError):
        ResidueSystem(W.lattice, {"H1": Matrix.zeros(2, 2, Q)})
    with pytest.raises(ValueError):
        ResidueSystem(W.lattice, {"H1": Matrix.zeros(2, 2, Q), "H2": Matrix.zeros(3, 3, Q)})


def test_degenerate_form_rejected():
    W = _weighted([[1, 1]], [2])
    with pytest.raises(ValueError):
        natural_residues(W, Matrix([[1, 0], [0, -1]], Q))
    with pytest.raises(ValueError):
        natural_residues(W, Matrix([[1, 1], [1, 1]], Q))


def test_commutator_of_commuting_matrices():
    A = Matrix([[1, 0], [0, 2]], Q)
    assert commutator(A, A.scale(3)).is_zero()
