import math

import pytest

import arithvol as av


def test_bundle_roundtrip_and_sum():
    b = av.Bundle(c_num=1, c_den=3)
    assert b.model == "P1Z"
    assert b.c == "1/3"
    assert av.Bundle.from_json(b.to_json()) == b
    s = b + av.Bundle(degree=2, c_num=1)
    assert s.degree == 3
    assert s.c == "4/3"


def test_hzero_counts_signed_monomials():
    b = av.Bundle()
    assert av.hzero_exact(b, 2) == pytest.approx(math.log(7))
    lo, hi = av.hzero_band(b, 2)
    assert lo == pytest.approx(math.log(7))
    assert hi == pytest.approx(math.log(7))
    assert av.section_rank(b, 5) == 6


def test_enumeration_cross_polytope():
    res = av.enumerate_effective(av.Bundle(c_num=7, c_den=10), 1)
    assert len(res["members"]) == 13


def test_okounkov_witnessed_run():
    run = av.okounkov_run(av.Bundle(c_num=1), [20], p=7)
    assert run["verified_point_count"] == 231
    assert run["polytope"]["volume"] == "1/2"


def test_intersection_and_volume():
    b1, b2 = av.Bundle(c_num=1), av.Bundle(c_num=4)
    assert av.volume_closed_form(b1) == pytest.approx(2.0)
    assert av.volume_closed_form(b1 + b2) == pytest.approx(20.0)
    assert av.comparison_constant(b1, b1) == pytest.approx(4.0)
    checks = av.corollary_checks(b1, b2)
    assert checks


def test_theorem_a_row():
    config = {
        "bundle": {"model": "P1Z", "degree": 1, "family": "Canonical", "c_num": 1, "c_den": 1, "twists": []},
        "primes": [7],
        "m_schedule": [20],
    }
    csv, report = av.run_theorem_a(config)
    assert csv.splitlines()[1].startswith("7,20,231,1/2,")
    assert report["rows"][0]["gap"] == pytest.approx(0.027045, rel=1e-4)


def test_reduction_worked_instance():
    r = av.verify_reduction(av.Bundle(c_num=7, c_den=10), 1, 2)
    assert (r["count"], r["count_up"], r["count_zn"], r["image_count"]) == (13, 41, 5, 4)


def test_errors_carry_their_kind():
    with pytest.raises(av.ArithvolError, match="^NegativeDegree"):
        av.Bundle(degree=-1)
    with pytest.raises(av.ArithvolError, match="^BudgetExhausted"):
        av.hzero_exact(av.Bundle(c_num=1), 3, budget=0)
    with pytest.raises(av.ArithvolError):
        av.Bundle(model="p2z", family="fs")


def test_intersection_number_closed_form():
    value, err = av.intersection_number([av.Bundle(c_num=1), av.Bundle(c_num=4)])
    assert value == pytest.approx(5.0)
    assert 0.0 <= err < 1e-12
