from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import GOLDEN
from tcorelab import density, qseries
from tcorelab.density import DensityError, DensityReport, density_report
from tcorelab.qseries import TruncatedSeries


def test_zero_series_ratio_one():
    r = density_report(qseries.make_constant(0, 101, 5), 5, 0, [10, 100])
    assert r.counts == (11, 101) and r.ratios == (1, 1)


def test_all_ones_ratio_zero():
    r = density_report(TruncatedSeries([1] * 50), 2, 0, [49])
    assert r.ratios == (0,)


def test_exact_small_counts():
    s = qseries.bbar_series(3, 5)  # 1, 1, 1, -1, 0
    r = density_report(s, 2, 0, [2, 4])
    assert r.counts == (0, 1) and r.ratios == (0, Fraction(1, 5))


@given(st.lists(st.integers(-10**9, 10**9), min_size=5, max_size=300), st.integers(2, 12), st.data())
def test_counts_partition_the_indices(coeffs, m, data):
    s = TruncatedSeries(coeffs)
    x = data.draw(st.integers(0, len(coeffs) - 1))
    total = sum(density_report(s, m, r, [x]).counts[0] for r in range(m))
    assert total == x + 1


@given(st.lists(st.integers(-10**6, 10**6), min_size=5, max_size=300), st.sampled_from([(4, 2), (9, 3), (12, 4), (2**40, 8)]))
def test_reduction_invariance(coeffs, mods):
    big, small = mods
    exact = TruncatedSeries(coeffs)
    x = len(coeffs) - 1
    for r in range(small):
        assert density_report(exact, small, r, [x]) == density_report(exact.reduce(big), small, r, [x])


def test_counts_match_direct_loop():
    s = qseries.bbar_series(5, 3001, 3)
    coeffs = s.tolist()
    r = density_report(s, 3, 1, [100, 3000])
    assert r.counts == tuple(sum(1 for c in coeffs[: x + 1] if c % 3 == 1) for x in (100, 3000))


def test_errors():
    s = qseries.make_constant(1, 100, 4)
    with pytest.raises(DensityError):
        density_report(s, 4, 0, [100])
    with pytest.raises(DensityError):
        density_report(s, 4, 4, [10])
    with pytest.raises(DensityError):
        density_report(s, 3, 0, [10])
    with pytest.raises(DensityError):
        density_report(s, 4, 0, [])
    with pytest.raises(DensityError):
        density_report(s, 4, 0, [-1])


def test_checkpoints_sorted():
    r = density_report(qseries.make_constant(0, 200, 2), 2, 0, [150, 20])
    assert r.checkpoints == (20, 150)


def test_csv_and_dict_round_trip(tmp_path):
    r = density.bbar_density(3, 2, 0, [100, 1000])
    assert r.to_csv().splitlines()[0] == "X,count,ratio"
    assert DensityReport.from_dict(r.to_dict()) == r
    density.save_golden(r, tmp_path / "g.json")
    assert density.load_golden(tmp_path / "g.json") == r


def test_small_prefix_of_golden():
    golden = density.load_golden(GOLDEN / "bbar3_mod2.json")
    r = density.bbar_density(3, 2, 0, [1000, 10000])
    assert r.counts == golden.counts[:2]


def test_scan_trivial_series():
    # bbar_1 = 1: every class except B = 0 survives
    res = density.congruence_scan(1, 2, 4, 50)
    assert set(res.progressions) == {(a, b) for a in range(1, 5) for b in range(1, a)}
    assert res.label == "candidates verified up to n = 50; not proved"


def test_scan_amax_one():
    assert density.congruence_scan(3, 2, 1, 100).progressions == ()
    zero = qseries.make_constant(0, 200, 2)
    assert density.congruence_scan(3, 2, 1, 100, series=zero).progressions == ((1, 0),)


def test_scan_agrees_with_loop():
    s = qseries.bbar_series(3, 12 * 200 + 12, 2)
    res = density.congruence_scan(3, 2, 12, 200, series=s)
    c = s.tolist()
    brute = [(a, b) for a in range(1, 13) for b in range(a)
             if all(c[a * n + b] % 2 == 0 for n in range(201))]
    assert list(res.progressions) == brute
    assert res.to_dict()["progressions"][0] == {"A": brute[0][0], "B": brute[0][1]}


def test_scan_errors():
    with pytest.raises(DensityError):
        density.congruence_scan(3, 2, 0, 10)
    with pytest.raises(DensityError):
        density.congruence_scan(3, 2, 5, 10, series=qseries.make_constant(0, 10, 2))


def test_residues_from_big_modulus():
    s = TruncatedSeries(np.arange(20), 2**40)
    assert density_report(s, 2, 1, [19]).counts == (10,)
