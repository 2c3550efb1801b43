import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from areamo.core import ConfigurationError, UsageError
from areamo.harness import (
    ExperimentSpec,
    check_band,
    compare,
    default_budget,
    default_operator,
    default_population,
    export_plot_data,
    load_metrics,
    main,
    rank_sum_test,
    run_experiment,
    sem,
    single_run,
)
from areamo.problems import read_front


def exact_rank_sum_p(xs, ys):
    """Two-sided p from enumerating every split of the pooled ranks."""
    pooled = np.concatenate([xs, ys])
    ranks = np.argsort(np.argsort(pooled)) + 1.0
    n = len(xs)
    observed = ranks[:n].sum()
    centre = n * (len(pooled) + 1) / 2
    sums = [sum(c) for c in itertools.combinations(ranks, n)]
    return sum(abs(s - centre) >= abs(observed - centre) - 1e-12 for s in sums) / len(sums)


def test_defaults():
    assert default_population("DTLZ2", 3) == 105
    assert default_population("F1", 2) == 100
    assert default_population("UF1", 2) == 600 and default_population("UF8", 3) == 595
    assert default_budget("DTLZ2", 105) == 20_000
    assert default_budget("MOP3", 100) == 200_000
    assert default_budget("MOP7", 105) == 300_000 and default_budget("UF2", 600) == 300_000
    assert default_operator("MOP1") == "de" and default_operator("DTLZ2") == "sbx"
    spec = ExperimentSpec("area", "MOP1").resolved()
    assert (spec.M, spec.N, spec.max_fe, spec.operator) == (2, 100, 200_000, "de")
    with pytest.raises(ConfigurationError):
        ExperimentSpec("nsga2", "DTLZ2").resolved()


def test_rank_sum_examples():
    assert rank_sum_test([1, 2, 3], [1, 2, 3]) == (1.0, "≈")
    assert rank_sum_test([5, 5], [5, 5]) == (1.0, "≈")
    p, v = rank_sum_test(range(1, 11), range(101, 111))
    assert p < 0.001 and v == "+"
    p, v = rank_sum_test([1, 2, 3], [4, 5, 6])
    assert p == pytest.approx(exact_rank_sum_p([1, 2, 3], [4, 5, 6])) == pytest.approx(0.1)
    assert v == "≈"
    with pytest.raises(UsageError):
        rank_sum_test([1], [2, 3])


@given(st.lists(st.floats(0, 1), min_size=2, max_size=12), st.lists(st.floats(0, 1), min_size=2, max_size=12))
def test_rank_sum_antisymmetric(xs, ys):
    p1, v1 = rank_sum_test(xs, ys)
    p2, v2 = rank_sum_test(ys, xs)
    assert p1 == pytest.approx(p2)
    assert (v1 == "≈") == (p1 >= 0.05)
    assert {v1, v2} in ({"≈"}, {"+", "-"})


def test_rank_sum_exact_for_small_samples(rng):
    for _ in range(5):
        xs, ys = rng.random(4), rng.random(5)
        assert rank_sum_test(xs, ys)[0] == pytest.approx(exact_rank_sum_p(xs, ys))


def test_sem():
    assert sem([3, 3, 3]) == 0
    assert sem([0, 2]) == pytest.approx(1.0)
    with pytest.raises(UsageError):
        sem([1])


def test_sem_shrinks_with_sample_size():
    g = np.random.default_rng(0)
    s30 = np.mean([sem(g.normal(size=30)) for _ in range(200)])
    s100 = np.mean([sem(g.normal(size=100)) for _ in range(200)])
    assert s100 < s30


def _small(out, **kw):
    base = dict(algorithm="area", problem="DTLZ2", M=3, N=21, max_fe=420, runs=2, out=str(out))
    base.update(kw)
    return ExperimentSpec(**base)


def test_run_experiment_files_and_determinism(tmp_path):
    doc = run_experiment(_small(tmp_path / "a", runs=1))
    folder = tmp_path / "a" / "area_DTLZ2_3d"
    assert sorted(p.name for p in folder.iterdir()) == ["metrics.json", "run_0.pf"]
    assert len(doc["runs"]) == 1 and doc["runs"][0]["seed"] == 0
    before = {name: (folder / name).read_bytes() for name in ("metrics.json", "run_0.pf")}
    run_experiment(_small(tmp_path / "a", runs=1))
    for name, content in before.items():
        assert (folder / name).read_bytes() == content


def test_persisted_aggregate_and_seed_ledger(tmp_path):
    doc = run_experiment(_small(tmp_path, runs=3, seed=10))
    loaded = load_metrics(tmp_path / "area_DTLZ2_3d")
    igds = [r["igd"] for r in loaded["runs"]]
    assert np.mean(igds) == pytest.approx(doc["aggregate"]["igd"]["mean"], abs=1e-12)
    assert np.std(igds, ddof=1) == pytest.approx(doc["aggregate"]["igd"]["std"], abs=1e-12)
    assert [r["seed"] for r in loaded["runs"]] == [10, 11, 12]
    again = single_run(_small(tmp_path, runs=3, seed=10).resolved(), 1)
    np.testing.assert_allclose(again.archive, read_front(tmp_path / "area_DTLZ2_3d" / "run_1.pf"), rtol=1e-9)


def test_unsupported_schema_is_rejected(tmp_path):
    (tmp_path / "metrics.json").write_text(json.dumps({"schema_version": 99}))
    with pytest.raises(ConfigurationError):
        load_metrics(tmp_path)


def test_compare_and_band(tmp_path):
    a = run_experiment(_small(tmp_path, runs=3))
    b = run_experiment(_small(tmp_path, runs=3, algorithm="moead"))
    report = compare(a, b)
    assert set(report.metrics) == {"igd", "hv", "spacing"}
    assert len(report.lines("a", "b")) == 4
    ok, msg = check_band(a)
    assert ok is False and "DTLZ2" in msg


def test_export_two_objectives(tmp_path):
    run_experiment(ExperimentSpec("area", "F1", N=20, max_fe=400, runs=2, out=str(tmp_path / "r")))
    files = export_plot_data(tmp_path / "r" / "area_F1_2d", tmp_path / "plots")
    names = {p.name for p in files}
    assert {"front_0.dat", "front_1.dat", "trajectory.dat"} <= names
    assert read_front(tmp_path / "plots" / "front_0.dat").shape[1] == 2
    traj = np.loadtxt(tmp_path / "plots" / "trajectory.dat", ndmin=2)
    assert np.all(np.diff(traj[:, 0]) > 0)


def test_export_parallel_coordinates(tmp_path):
    run_experiment(ExperimentSpec("moead", "WFG4", M=8, N=16, T=4, max_fe=64, runs=1, out=str(tmp_path / "r")))
    export_plot_data(tmp_path / "r" / "moead_WFG4_8d", tmp_path / "plots")
    table = np.loadtxt(tmp_path / "plots" / "parallel_0.dat", ndmin=2)
    assert table.shape[1] == 8


def test_cli_exit_codes(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["run", "--problem", "NOPE", "--out", out]) == 2
    assert main(["run", "--problem", "DTLZ2", "--fe", "10", "--out", out]) == 2
    args = ["run", "--problem", "DTLZ5", "--pop", "21", "--fe", "420", "--runs", "2", "--out", out]
    assert main(args + ["--no-trajectory"]) == 0
    assert main(args + ["--check"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_cli_missing_front_file(tmp_path, monkeypatch, capsys):
    from areamo import problems

    monkeypatch.setenv("AREA_DATA_DIR", str(tmp_path))
    problems._cached_front.cache_clear()
    try:
        assert main(["run", "--problem", "MOP2", "--fe", "400", "--pop", "20", "--runs", "1", "--out", str(tmp_path)]) == 2
    finally:
        problems._cached_front.cache_clear()
    assert "MOP2_2d.pf" in capsys.readouterr().err


def test_cli_stats_and_export(tmp_path, capsys):
    out = str(tmp_path / "r")
    common = ["--problem", "F1", "--pop", "20", "--fe", "400", "--runs", "3", "--out", out]
    assert main(["run", "--alg", "area", *common]) == 0
    assert main(["run", "--alg", "moead", *common]) == 0
    capsys.readouterr()
    assert main(["stats", f"{out}/area_F1_2d", f"{out}/moead_F1_2d"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0].startswith("metric") and "igd" in text
    assert main(["export", f"{out}/area_F1_2d", "--out", str(tmp_path / "p")]) == 0
