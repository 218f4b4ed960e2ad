import math

import pytest

import hyf


def golden():
    a = hyf.ObservationSeries([2, 3, 4, 5, 7, 8, 11.5], [10, 15, 25, 10, 5, 1, 5], hyf.Leg.A)
    b = hyf.ObservationSeries([1, 6, 9, 10, 11, 12], [5, 10, 15, 20, 25, 20], hyf.Leg.B)
    return a, b


def test_version():
    assert hyf.__version__ == "0.1.0"


def test_covariance_and_overlaps():
    a, b = golden()
    assert hyf.hy_covariance(a, b) == -30.0
    pairs = hyf.enumerate_overlaps(a, b)
    assert len(pairs) == 10
    assert pairs[0] == (1, 1) and pairs[-1] == (6, 5)


def test_telescoping():
    a, b = golden()
    rows = hyf.telescope_rows(a, b)
    corner = hyf.telescope_rows(a, b, hyf.Anchoring.CORNER_SPLIT)
    assert len(rows.grouped_terms) == 3
    assert len(corner.grouped_terms) == 4
    assert rows.grouped_sum() == corner.grouped_sum() == rows.raw_sum() == -30.0


def test_detectors_agree_on_golden():
    a, b = golden()
    reports = [
        hyf.detect_interval_rule(a, b, include_boundary=True),
        hyf.detect_label_rule(hyf.merge_labels(a, b), include_boundary=True),
        hyf.oracle_detect(a, b, include_boundary=True),
    ]
    for r in reports:
        assert r.nonextant_1 == [1, 2]
        assert r.nonextant_2 == [3, 4]
        assert r.m == 10
        assert r.loss() == pytest.approx(0.4)
    assert reports[0].method == "interval"
    assert hyf.detect_interval_rule(a, b).f == 2


def test_coefficients():
    a, b = golden()
    assert hyf.coefficient_of(a, b, hyf.Leg.A, 0) == -5.0
    assert hyf.coefficients(a, b, hyf.Leg.A)[1] == 0.0


def test_patterns_and_intervals():
    assert hyf.count_pattern("BAAAABAABBBAB", "AAA") == 2
    assert str(hyf.merge_labels(*golden())) == "BAAAABAABBBAB"
    a, b = golden()
    assert hyf.nonextant_interval(a, b, 6) == (9.0, 12.0)
    assert hyf.nonextant_interval(a, b, 1) is None


def test_errors_carry_codes():
    with pytest.raises(hyf.HyfError) as info:
        hyf.ObservationSeries([1, 1], [0, 0])
    assert info.value.code == "NonMonotoneTimes"
    assert isinstance(info.value, ValueError)
    with pytest.raises(hyf.HyfError) as info:
        hyf.count_pattern("AB", "")
    assert info.value.code == "EmptyPattern"
    with pytest.raises(hyf.HyfError):
        hyf.AdversaryConfig(rate_a=0)


def test_adversary_and_experiment():
    config = hyf.AdversaryConfig(rate_a=1, rate_b=0.5, horizon=200, seed=3)
    first, second = hyf.generate_inputs(config, trial=2, random_walk=True)
    assert len(hyf.enumerate_overlaps(first, second)) == len(first) + len(second) - 3
    summary = hyf.run_experiment(config, runs=50)
    assert summary.runs == 50
    assert summary.theoretical == pytest.approx(1 / 3)
    assert abs(summary.mean_loss - 1 / 3) < 0.05
    assert hyf.theoretical_loss(1, 0.1) == pytest.approx(91 / 121, rel=1e-12)


def test_table1_layout():
    cells = hyf.table1([(1, 1), (1, 0.25)], [50, 100], runs=10, seed=1)
    assert len(cells) == 4
    assert cells[3].config.horizon == 100
    assert cells[3].config.rate_b == 0.25
    assert all(math.isfinite(c.std_loss) for c in cells)


def test_tick_file_round_trip(tmp_path):
    a, _ = golden()
    path = str(tmp_path / "a.csv")
    hyf.write_tick_file(path, a)
    back = hyf.read_tick_file(path, hyf.Leg.A)
    assert back.times == a.times and back.values == a.values
    with pytest.raises(hyf.HyfError) as info:
        hyf.read_tick_file(str(tmp_path / "missing.csv"))
    assert info.value.code == "IoError"
