"""Smoke tests for the python bindings."""

import math

import pytest

import hegy


def make_walk(cycles, scale=1.0):
    # deterministic xorshift so the fixture needs no numpy
    state = 0x9E3779B97F4A7C15
    values = []
    for t in range(4 * cycles):
        state ^= (state << 13) & 0xFFFFFFFFFFFFFFFF
        state ^= state >> 7
        state ^= (state << 17) & 0xFFFFFFFFFFFFFFFF
        shock = ((state % 100000) / 100000.0 - 0.5) * scale
        values.append((values[t - 4] if t >= 4 else 0.0) + shock)
    return hegy.QuarterlySeries(values, 1)


def test_series_roundtrip():
    y = hegy.QuarterlySeries([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0], 2)
    assert len(y) == 8
    assert y.start_season == 2
    assert y.season_of(1) == 2
    d = hegy.seasonal_difference(y)
    assert list(d.values) == [4.0, 4.0, 4.0, 4.0]


def test_transform_channels():
    y = hegy.QuarterlySeries([1.0] * 12, 1)
    r = hegy.hegy_transform(y)
    assert r["first_index"] == 4
    assert all(abs(v - 4.0) < 1e-12 for v in r["y1"].values)
    assert all(abs(v) < 1e-12 for v in r["y2"].values)


def test_polynomials_and_recursion():
    assert hegy.multiply_polynomials([1.0, -1.0], [1.0, 1.0]) == [1.0, 0.0, -1.0]
    assert hegy.ar_recursion([1.0, -1.0], [1.0, 1.0, 1.0], [0.0]) == [1.0, 2.0, 3.0]


def test_hegy_statistics():
    y = make_walk(40)
    stats = hegy.unaugmented_hegy(y)
    assert stats.k_used == 0
    assert len(stats.pi_hat) == 4
    assert set(stats.F.keys()) == {"12", "34", "134", "234", "1234"}
    assert all(f >= 0.0 for f in stats.F.values())

    full = hegy.augmented_hegy(y, k=0, prune=False)
    assert list(full.pi_hat) == list(stats.pi_hat)


def test_iid_bootstrap_runs_and_is_deterministic():
    y = make_walk(30)
    a = hegy.iid_bootstrap_test(y, "1", B=29, k_max=2, seed=5)
    b = hegy.iid_bootstrap_test(y, "1", B=29, k_max=2, seed=5)
    assert a["statistic"] == "t1"
    assert 0.0 <= a["p_value"] <= 1.0
    assert a["bootstrap_statistics"] == b["bootstrap_statistics"]
    assert a["reject"] in (True, False)


def test_block_bootstrap_runs():
    y = make_walk(30)
    r = hegy.block_bootstrap_test(y, "34", B=19, b=4, seed=5)
    assert r["statistic"] == "F34"
    assert r["tail"] == "right"
    assert len(r["bootstrap_statistics"]) == 19


def test_invalid_hypothesis_raises_value_error():
    y = make_walk(30)
    with pytest.raises(ValueError):
        hegy.iid_bootstrap_test(y, "13", B=9, seed=1)


def test_short_series_raises_runtime_error():
    y = hegy.QuarterlySeries([1.0, 2.0, 3.0, 4.0], 1)
    with pytest.raises(RuntimeError):
        hegy.unaugmented_hegy(y)


def test_generate_series_and_diagnostic():
    y = hegy.generate_series(root="plus1", nuisance=True, rho=0.0, noise="iid",
                             cycles=30, seed=11)
    assert len(y) == 120
    again = hegy.generate_series(root="plus1", nuisance=True, rho=0.0, noise="iid",
                                 cycles=30, seed=11)
    assert list(y.values) == list(again.values)
    gamma0 = hegy.tilde_gamma(hegy.seasonal_difference(y), 0)
    assert gamma0 == pytest.approx(1.0, abs=0.5)


def test_empirical_rejection_smoke():
    r = hegy.empirical_rejection(root="plus1", nuisance=False, rho=0.0, noise="iid",
                                 cycles=30, method="block-unaug", hypothesis="1",
                                 N=6, B=19, seed=3, threads=2)
    assert r["N"] == 6
    assert 0.0 <= r["rate"] <= 1.0
    assert math.isfinite(r["se"])
