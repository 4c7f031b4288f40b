import math

import pytest

import wdl


def test_itinerary():
    assert [wdl.ell(n) for n in range(4)] == [1, 4, 8, 13]


def test_hyperbolic_distance_real_axis():
    # 2 artanh(1/2) = log 3
    assert wdl.hyp_dist_unit(0.0, 0.5) == pytest.approx(math.log(3.0), rel=1e-14)
    assert wdl.contraction_factor(0.5, 1.0) == 1.0


def test_blaschke_multipliers():
    assert wdl.blaschke_eval("square", 0.5j) == pytest.approx(-0.25)
    assert wdl.multiplier_at_one("att12") == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert wdl.multiplier_at_one("att56") == pytest.approx(1.0 / 11.0, rel=1e-12)


def test_parabolic_exponent():
    gaps = wdl.boundary_gap_series("par13", 20000)
    series = [(float(n), gaps[n]) for n in range(1000, 20001, 100)]
    exponent, _, _ = wdl.fit_power_law(series)
    assert -0.55 <= exponent <= -0.45


def test_schedule_json():
    s = wdl.schedule("square", 1)
    assert s["schema"] == "wdl/1"
    assert s["alpha_log2"][0] == 0.0
    assert s["degrees"] == [2, 2]


def test_orbit_records():
    rows = wdl.orbit("att12", 3, start=4.0, perturbation="zero")
    header, records = rows[0], rows[1:]
    assert header["model"] == "zero"
    assert records[0]["m"] == 0
    assert records[-1]["m"] == wdl.ell(3)


def test_example_3a():
    r = wdl.run_example("3a", depth=12)
    assert r["hyperbolic_class"] == "eventually_isometric"
    assert r["boundary_class"] == "bungee"
    assert r["pass"] is True


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        wdl.schedule("nope", 3)
    with pytest.raises(ValueError):
        wdl.run_example("1a", depth=5)


def test_cross_ratio_sweep():
    r = wdl.cross_ratio_sweep(9, 99)
    assert r["pass"] is True
    assert r["min_margin"] > 0.0
