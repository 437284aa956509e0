from fractions import Fraction

import pytest

from case_studies import CASE_STUDY_REGISTRY, COMPUTED, FIXTURE, run_case_study


def test_quartic_curves():
    report = run_case_study("quartic")
    assert report["verified"]
    assert report["lattice"]["rank"] == 7
    assert report["lattice"]["signature"]["profile"] == [1, 6]
    assert report["ball_dimension"] == {"value": 6, "provenance": COMPUTED}
    assert report["root_search"]["count"] == 28
    assert report["fixtures"]["cusp_orbits"] == 1
    assert report["fixtures"]["provenance"] == FIXTURE


def test_rational_elliptic_surfaces():
    report = run_case_study("res")
    assert report["verified"]
    assert report["lattice"]["signature"]["profile"] == [1, 9]
    assert report["root_search"]["count"] == 60
    complement = report["complement"]
    assert complement["found"]
    assert complement["norm"] == Fraction(6)
    assert complement["lattice"]["rank"] == 9
    assert complement["lattice"]["signature"]["profile"] == [1, 8]
    assert report["fixtures"]["restricted_classes"] == [6, 9, 15, 18]


def test_cubic_threefolds():
    report = run_case_study("cubic3")
    assert report["verified"]
    assert report["lattice"]["rank"] == 11
    assert report["ball_dimension"]["value"] == 10
    assert report["root_search"]["count"] == 54
    assert report["fixtures"]["cusp_orbits"] == 2


def test_every_check_is_recorded():
    report = run_case_study("res")
    names = [c["check"] for c in report["checks"]]
    assert names[:3] == ["rank", "profile", "ball_dimension"]
    assert "complement.profile" in names
    assert all(c["ok"] for c in report["checks"])


def test_registry_names():
    assert sorted(CASE_STUDY_REGISTRY) == ["cubic3", "quartic", "res"]


def test_unknown_case_study():
    with pytest.raises(ValueError):
        run_case_study("k3")
