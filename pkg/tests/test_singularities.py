from fractions import Fraction

import pytest

from arrangement import arrangement_from_rows, build_intersection_lattice
from numeric import Q
from singularities import (
    INFINITY, MMPClass, RamifiedDivisor, WeightedArrangement,
    classify, cone_angle, discrepancy_from_exponent, exceptional_discrepancy,
    lc_weight_scale, pair_report, stratum_exponent, weight_from_order,
)


def _weighted(rows, n, orders, cusps=()):
    L = build_intersection_lattice(arrangement_from_rows(rows, Q), n, Q)
    return WeightedArrangement.from_orders(L, {f"H{i + 1}": m for i, m in enumerate(orders)}, cusps)


def _coordinate(n, orders, cusps=()):
    rows = [[1 if i == j else 0 for i in range(n)] for j in range(len(orders))]
    return _weighted(rows, n, orders, cusps)


# -----------------------------
# Weights and exponents
# -----------------------------
def test_weight_from_order():
    assert weight_from_order(2) == Fraction(1, 2)
    assert weight_from_order(6) == Fraction(5, 6)
    assert weight_from_order(1) == 0
    assert weight_from_order(INFINITY) == 1


@pytest.mark.parametrize("m", [0, -3, True, 2.5, "7"])
def test_invalid_orders_rejected(m):
    with pytest.raises(ValueError):
        weight_from_order(m)


def test_missing_weight_rejected():
    L = build_intersection_lattice(arrangement_from_rows([[1, 0], [0, 1]], Q), 2, Q)
    with pytest.raises(ValueError):
        WeightedArrangement(L, (RamifiedDivisor.from_order("H1", 2),))


def test_cusp_must_have_infinite_order():
    L = build_intersection_lattice(arrangement_from_rows([[1, 0]], Q), 2, Q)
    with pytest.raises(ValueError):
        WeightedArrangement(L, (RamifiedDivisor.from_order("H1", 2),), (RamifiedDivisor.from_order("c", 3),))


def test_exponent_of_a_hyperplane_is_its_weight():
    W = _coordinate(2, [3, 2])
    assert stratum_exponent(W, "H1") == Fraction(2, 3)


def test_exponent_of_two_orthogonal_mirrors():
    W = _coordinate(2, [2, 2])
    assert stratum_exponent(W, "H1&H2") == Fraction(1, 2)


def test_exponent_of_three_concurrent_lines():
    W = _weighted([[1, 0], [0, 1], [1, 1]], 2, [3, 3, 3])
    assert stratum_exponent(W, "H1&H2&H3") == 1


def test_exponent_of_ambient_rejected():
    with pytest.raises(ValueError):
        stratum_exponent(_coordinate(2, [2, 2]), "X")


# -----------------------------
# Cone angles
# -----------------------------
def test_cone_angles():
    W = _coordinate(2, [2, 2], cusps=["c"])
    assert cone_angle(W, "H1").fraction == Fraction(1, 2)
    cusp = cone_angle(W, "c")
    assert cusp.fraction == 0 and cusp.cusp
    # a_L = (1/2 + 1 + 1)/2 = 5/4
    bad = cone_angle(_weighted([[1, 0], [0, 1], [1, 1]], 2, [2, INFINITY, INFINITY]), "H1&H2&H3")
    assert bad.fraction == Fraction(-1, 4)
    assert bad.violation


# -----------------------------
# Discrepancies
# -----------------------------
def test_discrepancy_from_exponent_examples():
    assert discrepancy_from_exponent(5, 0) == -1
    assert discrepancy_from_exponent(2, Fraction(1, 2)) == -2
    assert discrepancy_from_exponent(3, Fraction(-1, 3)) == 0
    with pytest.raises(ValueError):
        discrepancy_from_exponent(1, Fraction(1, 2))


def test_exceptional_discrepancy_examples():
    W = _coordinate(3, [2, 2, 3], cusps=["c"])
    assert exceptional_discrepancy(W, "c") == -1
    assert exceptional_discrepancy(W, "H1&H2") == -2
    W3 = _coordinate(3, [3, 3, 3])
    assert exceptional_discrepancy(W3, "H1&H2&H3") == -2
    with pytest.raises(ValueError):
        exceptional_discrepancy(W, "H1")


@pytest.mark.parametrize("d,expected", [
    (Fraction(1, 2), MMPClass.TERMINAL),
    (0, MMPClass.CANONICAL),
    (Fraction(-1, 2), MMPClass.KLT),
    (-1, MMPClass.LC_BOUNDARY),
    (Fraction(-3, 2), MMPClass.NON_LC),
])
def test_classify(d, expected):
    assert classify(d) == expected


def test_cusp_is_lc_boundary():
    W = _coordinate(2, [2], cusps=["c"])
    assert classify(exceptional_discrepancy(W, "c")) == MMPClass.LC_BOUNDARY


def test_discrepancy_is_monotone():
    for k in range(2, 8):
        for num in range(0, 12):
            a = Fraction(num, 12)
            lam = 1 - a
            assert discrepancy_from_exponent(k + 1, lam) < discrepancy_from_exponent(k, lam) or lam == 0
            assert discrepancy_from_exponent(k, 1 - (a + Fraction(1, 24))) > discrepancy_from_exponent(k, lam)


def test_lc_weight_scale():
    assert lc_weight_scale(_coordinate(2, [2, 2]), "H1&H2") == 2
    assert lc_weight_scale(_coordinate(2, [1, 1]), "H1&H2") is None


# -----------------------------
# Pair reports
# -----------------------------
def test_empty_arrangement_is_lc_everywhere():
    W = WeightedArrangement.from_orders(build_intersection_lattice([], 2, Q), {})
    report = pair_report(W)
    assert report.rows == []
    assert report.git_side["verdict"] == "lc"
    assert report.git_side["witness"] is None
    assert "lc everywhere" in report.git_side["note"]
    assert report.bailyborel_side["verdict"] == "lc"
    assert report.transformation is None


def test_non_lc_witness():
    report = pair_report(_coordinate(2, [2, 2]))
    assert report.git_side["verdict"] == "non_lc"
    assert report.git_side["witness"] == "H1&H2"
    assert report.git_side["discrepancy"] == -2
    assert report.transformation is not None
    (row,) = [r for r in report.rows if r.codim == 2]
    assert row.lam == Fraction(1, 2)
    assert row.lambda_in_stated_range is False
    assert row.lc_scale == 2


def test_cusp_rows_are_lc():
    report = pair_report(_coordinate(2, [2, 2], cusps=["c"]))
    (cusp,) = report.cusp_rows
    assert cusp.discrepancy == -1
    assert cusp.mmp_class == MMPClass.LC_BOUNDARY
    assert report.bailyborel_side == {"verdict": "lc", "cusps": 1}


def test_witness_restricted_to_contracted_sub_arrangement():
    L = build_intersection_lattice(arrangement_from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Q), 3, Q)
    W = WeightedArrangement.from_orders(L, {"H1": 2, "H2": 2, "H3": 2}, relevant=["H3"])
    report = pair_report(W)
    assert report.git_side["verdict"] == "lc"
    assert all(not r.exceptional for r in report.rows)


def _random_weighted(rng, random_arrangement, orders):
    L = random_arrangement(rng, max_dim=5, max_hyperplanes=8)
    return WeightedArrangement.from_orders(L, {h.id: rng.choice(orders) for h in L.hyperplanes})


def _check_non_lc_theorem(W):
    report = pair_report(W)
    has_witness = False
    for row in report.rows:
        if row.codim < 2:
            continue
        k = row.codim
        assert row.discrepancy == discrepancy_from_exponent(k, 1 - row.exponent)
        assert (row.angle.fraction > 0) == (row.exponent < 1) == (row.discrepancy < -1)
        if row.exponent < 1:
            assert row.mmp_class == MMPClass.NON_LC
            has_witness = True
    assert (report.git_side["verdict"] == "non_lc") == has_witness


@pytest.mark.slow
def test_non_lc_theorem_on_random_arrangements(rng, random_arrangement, quiet_logs):
    for _ in range(1000):
        _check_non_lc_theorem(_random_weighted(rng, random_arrangement, list(range(2, 13))))


@pytest.mark.slow
def test_non_lc_theorem_with_cusp_weights(rng, random_arrangement, quiet_logs):
    for _ in range(200):
        _check_non_lc_theorem(_random_weighted(rng, random_arrangement, [2, 3, 6, INFINITY, INFINITY]))
