import pytest

from arrangement import Flat, IntersectionLattice, arrangement_from_rows, build_intersection_lattice
from numeric import Q
from stratification import (
    blowup_schedule, check_flag, enumerate_flags, exceptional_divisor, hat_strata,
    make_flag, stratum_descriptor, sub_arrangement_schedule,
)


def _coordinate(n, k=None):
    k = n if k is None else k
    rows = [[1 if i == j else 0 for i in range(n)] for j in range(k)]
    return build_intersection_lattice(arrangement_from_rows(rows, Q), n, Q)


def _chain_poset():
    """Abstract poset X > H1 > H1&H2 > H1&H2&H3 with no other flats."""
    hyperplanes = arrangement_from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Q)
    flats = [
        Flat((), 0, (), "X"),
        Flat(("H1",), 1, (), "H1"),
        Flat(("H1", "H2"), 2, (), "H1&H2"),
        Flat(("H1", "H2", "H3"), 3, (), "H1&H2&H3"),
    ]
    return IntersectionLattice(hyperplanes, 3, Q, flats)


# -----------------------------
# Blow-up schedule
# -----------------------------
def test_schedule_of_a_single_hyperplane_is_empty():
    assert blowup_schedule(_coordinate(2, 1)) == []


def test_schedule_of_two_generic_lines():
    # projective plane as the cone in k^3
    L = _coordinate(3, 2)
    schedule = blowup_schedule(L, n=2)
    assert [[f.name for f in g] for g in schedule] == [["H1&H2"]]
    assert 2 - schedule[0][0].codim == 0


def test_schedule_runs_points_first():
    L = _coordinate(5, 4)
    schedule = blowup_schedule(L, n=4)
    dims = [4 - g[0].codim for g in schedule]
    assert dims == [0, 1, 2]
    assert all(4 - f.codim == d for g, d in zip(schedule, dims) for f in g)
    centers = [f.key for g in schedule for f in g]
    assert sorted(centers) == sorted(f.key for f in L.proper_flats() if f.codim >= 2)
    assert len(centers) == len(set(centers))


def test_sub_arrangement_schedule_keeps_only_its_flats():
    L = _coordinate(3)
    schedule = sub_arrangement_schedule(L, ["H1", "H2"])
    assert [[f.name for f in g] for g in schedule] == [["H1&H2"]]
    with pytest.raises(ValueError):
        sub_arrangement_schedule(L, ["H7"])


# -----------------------------
# Flags
# -----------------------------
def test_flags_of_two_lines():
    L = _coordinate(2)
    names = [f.names for f in enumerate_flags(L)]
    assert names == [("H1",), ("H2",), ("H1&H2",), ("H1&H2", "H1"), ("H1&H2", "H2")]


def test_no_flags_without_proper_flats():
    assert enumerate_flags(build_intersection_lattice([], 2, Q)) == []


def test_chain_poset_has_every_subchain():
    assert len(enumerate_flags(_chain_poset())) == 2 ** 3 - 1


def test_boolean_flag_count():
    assert len(enumerate_flags(_coordinate(3))) == 25


def test_max_len_truncates():
    L = _coordinate(3)
    flags = enumerate_flags(L, max_len=1)
    assert len(flags) == len(L.proper_flats())


def test_check_flag_rejects_bad_chains():
    L = _coordinate(2)
    with pytest.raises(ValueError):
        check_flag([])
    with pytest.raises(ValueError):
        make_flag(L, ["H1", "H1&H2"])
    with pytest.raises(ValueError):
        make_flag(L, ["H1", "H2"])
    with pytest.raises(ValueError):
        make_flag(L, ["X"])


# -----------------------------
# Strata
# -----------------------------
def test_descriptor_of_a_hyperplane():
    L = _coordinate(4)
    d = stratum_descriptor(make_flag(L, ["H1"]), 4)
    assert [f.dim for f in d.factors] == [3, 0]
    assert d.factors[0].label == "H1°"
    assert d.dim == 3


def test_descriptor_of_point_in_line():
    L = _coordinate(3, 2)
    d = stratum_descriptor(make_flag(L, ["H1&H2", "H1"]), 2)
    assert [f.dim for f in d.factors] == [0, 0, 0]


def test_descriptor_dimension_identity(rng, random_arrangement):
    for _ in range(60):
        L = random_arrangement(rng, max_dim=5, max_hyperplanes=6)
        n = L.ambient_dim
        for flag in enumerate_flags(L):
            assert stratum_descriptor(flag, n).dim == n - len(flag)


def test_exceptional_divisor():
    L = _coordinate(3)
    d = exceptional_divisor(L, "H1&H2")
    assert [f.dim for f in d.factors] == [1, 1]
    assert d.dim == 2


def test_hat_strata_of_two_generic_lines():
    hat = hat_strata(_coordinate(3, 2), n=2)
    assert [(s.flat, s.dim) for s in hat.strata] == [("X", 2), ("H1", 0), ("H2", 0), ("H1&H2", 1)]


def test_hat_strata_of_empty_arrangement():
    hat = hat_strata(build_intersection_lattice([], 2, Q))
    assert len(hat) == 1


def test_hat_closure_order_is_reversed():
    hat = hat_strata(_coordinate(3, 2), n=2)
    assert hat.in_closure("H1&H2", "H1")
    assert not hat.in_closure("H1", "H1&H2")
    assert not hat.in_closure("H1", "H2")
    assert hat.in_closure("X", "H1&H2")
    with pytest.raises(ValueError):
        hat.in_closure("H9", "H1")


# -----------------------------
# Projective arrangements given as their cone
# -----------------------------
def test_cone_vertex_is_not_a_stratum_in_projective_dimension():
    # three coordinate lines of P^2 as the coordinate arrangement in k^3
    L = _coordinate(3)
    schedule = blowup_schedule(L, n=2)
    assert len(schedule) == 1
    assert all(2 - f.codim == 0 for f in schedule[0])
    assert sorted(f.name for f in schedule[0]) == ["H1&H2", "H1&H3", "H2&H3"]

    flags = enumerate_flags(L, n=2)
    assert len(flags) == 12
    assert all(f.chain[0].codim <= 2 for f in flags)
    for flag in flags:
        assert all(factor.dim >= 0 for factor in stratum_descriptor(flag, 2).factors)

    hat = hat_strata(L, n=2)
    assert [s.flat for s in hat.strata].count("H1&H2&H3") == 0
    assert len(hat) == 7


def test_descriptor_rejects_flat_empty_in_dimension():
    L = _coordinate(3)
    with pytest.raises(ValueError):
        stratum_descriptor(make_flag(L, ["H1&H2&H3"]), 2)


def test_affine_dimension_keeps_the_origin():
    L = _coordinate(3)
    assert [3 - g[0].codim for g in blowup_schedule(L)] == [0, 1]
    assert len(enumerate_flags(L)) == 25
