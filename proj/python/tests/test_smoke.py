# SPDX-License-Identifier: Apache-2.0

import math

import pytest

import coopvanet as cv


def test_version():
    assert cv.__version__ == "0.1.0"


def test_reference_shares():
    cfg = cv.default_config()
    assert cfg.K == 2 and cfg.M == 2
    assert cv.transmission_share([1, 2], 1, cfg) == 0.6
    assert cv.transmission_share([1, 2], 2, cfg) == 0.24


def test_partitions_and_labels():
    structures = cv.enumerate_partitions(4)
    assert len(structures) == 15 == cv.bell_number(4)
    assert structures[0] == [[1, 2, 3, 4]]
    assert cv.table_label(structures[-1]) == "C4"
    assert cv.partition_rank(structures[6], 4) == 7
    cfg = cv.reference_config(0.5)
    assert cv.normalize_structure([[1, 2], [3, 4]], cfg) == [[1, 2], [3], [4]]


def test_payoffs():
    cfg = cv.reference_config(0.5)
    assert cv.structure_payoffs([[1], [2], [3], [4]], cfg) == pytest.approx([2.4, 2.4, 0, 0])
    report = cv.player_payoffs([1, 2, 3, 4], cfg)
    assert report["vehicles"][0]["throughput"] == pytest.approx(0.825, abs=1e-12)
    assert report["rsus"][0]["eta"] == pytest.approx([0.375, 0.375], abs=1e-12)
    paid = sum(v["payment"] for v in report["vehicles"])
    earned = sum(r["revenue"] for r in report["rsus"])
    assert paid == pytest.approx(earned, abs=1e-12)


def test_relay_oracle_agrees():
    cfg = cv.reference_config(0.3)
    mean, eta = cv.oracle_relay_mean([1, 3, 4], 1, [2.0, 5.0], cfg)
    assert cv.relay_weighted_mean([1, 3, 4], 1, [2.0, 5.0], cfg) == pytest.approx(mean, abs=1e-12)
    assert eta[0] == pytest.approx(cv.relay_usage_prob([1, 3, 4], 1, 3, cfg), abs=1e-12)


def test_stability():
    verdict = cv.analyze_stability(cv.default_config())
    assert verdict["weights_positive"] and verdict["members_profit"]
    assert verdict["in_core"]
    assert verdict["blocking"] is None
    blocked = cv.core_membership([1.0, 0.0, 0.0, 0.0], cv.default_config())
    assert blocked["blocking"] == [1]


def test_profitability_and_pricing():
    cfg = cv.reference_config(0.5)
    members = cv.vehicle_coalition_profitability([1, 2], cfg)
    assert [m["profitable"] for m in members] == [True, True]
    assert members[0]["strict"] and not members[1]["strict"]
    assert cv.pricing_cancellation_check([1, 2, 3, 4], cfg)["holds"]


def test_encounter_estimate():
    est = cv.estimate_encounter_matrix([0.2], 1, n_slots=100_000, seed=3)
    p = est["probability"][0][0]
    se = est["std_error"][0][0]
    assert abs(p - cv.analytic_pair_encounter(0.2)) <= 3 * se
    assert cv.analytic_pair_encounter(1.0) == pytest.approx(math.pi - 8 / 3 + 0.5)


def test_slot_simulation():
    cfg = cv.reference_config(0.5)
    rep = cv.simulate_slots([[1, 2, 3, 4]], cfg, 50_000, seed=2)
    assert rep["balance_violations"] == 0
    again = cv.simulate_slots([[1, 2, 3, 4]], cfg, 50_000, seed=2)
    assert rep == again
    analytic = cv.player_payoffs([1, 2, 3, 4], cfg)["vehicles"][0]["throughput"]
    est = rep["vehicles"][0]["throughput"]
    assert abs(est["mean"] - analytic) <= 4 * est["std_error"]


def test_identity_suite():
    results = cv.run_identity_suite(cv.default_config())
    assert len(results) == 10
    assert all(status != "FAIL" for _, status, _, _ in results)


def test_errors():
    cfg = cv.reference_config(0.5)
    with pytest.raises(ValueError):
        cv.transmission_share([1, 3], 2, cfg)
    with pytest.raises(cv.ConfigError):
        cv.parse_config('{"game": {"K": 1}}')
    bad = cv.reference_config(0.5)
    bad.p = [1.2, 0.5]
    assert any("probability out of range" in e for e in cv.validate_config(bad))


def test_cli_in_process():
    code, out, err = cv.run_cli(["enumerate"])
    assert code == 0 and err == ""
    assert len(out.strip().splitlines()) == 16
    code, _, _ = cv.run_cli(["nope"])
    assert code == 2
