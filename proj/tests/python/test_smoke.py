"""Smoke tests for the python bindings."""

import math

import pytest

import cmopbench as cb


def test_version_and_problem_list():
    assert cb.__version__
    assert set(cb.list_problems()) == {"LIN-TRUNC", "DELAYED-FEAS", "HOLE"}


def test_evaluate_builtin():
    e = cb.evaluate("LIN-TRUNC", [1.0, 0.0, 0.0])
    assert e["objectives_raw"] == [1.0, 0.0]
    assert e["objectives"] == [1.0, 0.0]
    assert e["violation"] == 0.0
    assert e["feasible"]

    infeasible = cb.evaluate("HOLE", [0.5, 0.0, 0.0])
    assert not infeasible["feasible"]
    assert infeasible["violation"] == pytest.approx(0.04)


def test_meta_and_domain_errors():
    meta = cb.problem_meta("HOLE", dimension=6)
    assert meta["dimension"] == 6
    assert meta["hv_ref"] == pytest.approx(0.46)
    with pytest.raises(cb.BenchError):
        cb.evaluate("HOLE", [2.0, 0.0])
    with pytest.raises(cb.BenchError):
        cb.problem_meta("UNKNOWN")


def test_indicator_pieces():
    assert cb.overall_violation([-1.0, 0.5, 0.2]) == pytest.approx(0.7)
    assert cb.normalize_objectives([1.5, 3.0], [1.0, 2.0], [2.0, 4.0]) == [0.5, 0.5]
    assert cb.distance_to_roi([[1.5, 0.5]]) == pytest.approx(0.5)
    assert cb.hypervolume([[0.25, 0.75], [0.5, 0.5], [0.75, 0.25]]) == pytest.approx(0.375)
    assert cb.hypervolume([[0.5, 0.5, 0.5]]) == pytest.approx(0.125)
    assert cb.indicator_mop([[0.5, 0.5]]) == pytest.approx(-0.25)


def test_anytime_indicator():
    state = cb.AnytimeIndicator(2)
    state.ingest([2.0, 2.0], violation=0.5)
    assert state.value() == pytest.approx(1.5)
    state.ingest([0.5, 0.5])
    assert state.value() == pytest.approx(-0.25)
    assert state.has_feasible


def test_targets():
    targets = cb.targets_for("HOLE")
    assert len(targets) == 102
    assert sum(1 for t in targets if t["cls"] == "plus") == 51
    assert targets[0]["value"] == pytest.approx(-0.46 + 2.0)
    assert targets[-1]["value"] == pytest.approx(-0.46 + 1e-5)
    values = [t["value"] for t in targets]
    assert values == sorted(values, reverse=True)


def test_runtime_extraction_and_delta():
    runtimes = cb.extract_runtimes(
        [(1, 1.5), (10, 0.8), (50, -0.2)], "LIN-TRUNC", 5, 100
    )
    assert len(runtimes) == 102
    assert runtimes[0] == 1  # easiest target value is 1.5

    plus_mask = [False] * 2 + [True] * 2
    a = [[1, 1, 1, 1]]
    b = [[None, None, None, None]]
    extreme = cb.delta_pair(a, b, plus_mask, budget=1000)
    assert extreme["delta"] == 1.0
    same = cb.delta_pair(a, a, plus_mask, budget=1000)
    assert same["delta"] == 0.0


def test_seed_derivation_is_stable():
    s = cb.derive_seed(1, "HOLE_D5", "CDP-EA", 0)
    assert s == cb.derive_seed(1, "HOLE_D5", "CDP-EA", 0)
    assert s != cb.derive_seed(1, "HOLE_D5", "CDP-EA", 1)


def test_short_run_is_deterministic():
    first = cb.run("LIN-TRUNC", "MOEAD-IEPS", dimension=4, seed=5, population=8,
                   generations=10)
    second = cb.run("LIN-TRUNC", "MOEAD-IEPS", dimension=4, seed=5, population=8,
                    generations=10)
    assert first["budget"] == 80
    assert first["steps"] == second["steps"]
    assert first["final_value"] == second["final_value"]
    # The step trace is strictly improving.
    values = [value for _, value in first["steps"]]
    assert all(b < a for a, b in zip(values, values[1:]))
