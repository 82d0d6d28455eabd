import numpy as np
import pandas as pd
from pytest import approx, mark, raises
from scipy.stats import ttest_ind

from seqrx import settings
from seqrx.cli import RESULT_COLUMNS, SweepConfig, point_codebook, run, sweep
from seqrx.codec import codeword_gram
from seqrx.constants import engines, families, priors
from seqrx.errors import BudgetExceeded, InvalidParams
from seqrx.seqdecoder import average_error_exact


def small_config(output, **overrides) -> SweepConfig:
    options = dict(n=[1, 2], M=[2, 3], ns=[0.25], trials=200, seed=5, exact=True, output=str(output))
    options.update(overrides)
    return SweepConfig(**options)


def test_config_validation():
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], rate=[1.0], ns=[1.0])
    with raises(InvalidParams):
        SweepConfig(n=[2], ns=[1.0])
    with raises(InvalidParams):
        SweepConfig(n=[], M=[4], ns=[1.0])
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], ns=[1.0], trials=0)
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], ns=[1.0], codebooks=0)
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], ns=[1.0], family="squeezed")
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], ns=[1.0], expurgate=0.5, order=[4, 3, 2, 1])
    with raises(InvalidParams):
        SweepConfig(n=[2], M=[4], ns=[1.0], family=families.READING_III, prior=priors.BPSK_PHASE, eta=[0.5])


def test_points_follow_rate_axis():
    config = SweepConfig(n=[2, 4, 6], rate=[1.0], ns=[0.5])
    assert [M for _, M, _, _ in config.points()] == [4, 16, 64]


def test_points_are_in_grid_order():
    config = SweepConfig(n=[1, 2], M=[2], ns=[0.1, 0.2], eta=[1.0, 0.5])
    points = config.points()
    assert len(points) == 8
    assert points[:3] == [(1, 2, 0.1, 1.0), (1, 2, 0.1, 0.5), (1, 2, 0.2, 1.0)]


def test_sweep_writes_one_row_per_point(tmp_path):
    config = small_config(tmp_path / "grid.csv")
    path = sweep(config)
    frame = pd.read_csv(path)
    assert tuple(frame.columns) == RESULT_COLUMNS
    assert list(zip(frame["n"], frame["M"])) == [(1, 2), (1, 3), (2, 2), (2, 3)]
    assert np.all(frame["err_ci_lo"] <= frame["err_mean"])
    assert np.all(frame["wall_ms"] == 0)
    assert not path.with_name(path.name + settings.partial_suffix).exists()


@mark.parametrize("workers", [1, 2])
def test_failed_sweep_keeps_finished_rows(tmp_path, workers):
    # The second point needs 12 Fock modes, far over the amplitude budget.
    config = small_config(
        tmp_path / "grid.csv", n=[1, 12], M=[2], ns=[4.0], engine_id=engines.FOCK,
        trials=50, exact=False, workers=workers,
    )
    with raises(BudgetExceeded):
        sweep(config)
    assert not (tmp_path / "grid.csv").exists()
    frame = pd.read_csv(tmp_path / ("grid.csv" + settings.partial_suffix))
    assert tuple(frame.columns) == RESULT_COLUMNS
    assert list(zip(frame["n"], frame["M"])) == [(1, 2)]


def test_sweep_reruns_are_byte_identical(tmp_path):
    first = sweep(small_config(tmp_path / "first.csv"))
    second = sweep(small_config(tmp_path / "second.csv"))
    assert first.read_bytes() == second.read_bytes()


def test_sweep_does_not_depend_on_workers(tmp_path):
    serial = sweep(small_config(tmp_path / "serial.csv", workers=1))
    parallel = sweep(small_config(tmp_path / "parallel.csv", workers=2))
    assert serial.read_bytes() == parallel.read_bytes()


def test_rate_column_tracks_expurgation(tmp_path):
    path = sweep(small_config(tmp_path / "rate.csv", n=[4], M=None, rate=[0.5], expurgate=0.5))
    row = pd.read_csv(path).iloc[0]
    assert row["M"] == 2
    assert row["rate_bits"] == approx(0.25)


def test_exact_error_is_left_empty_unless_requested(tmp_path):
    frame = pd.read_csv(sweep(small_config(tmp_path / "mc.csv", exact=False)))
    assert frame["exact_err"].isna().all()


def test_exact_error_averages_replicas(tmp_path):
    config = small_config(tmp_path / "replicas.csv", n=[3], M=[4], codebooks=3)
    row = pd.read_csv(sweep(config)).iloc[0]
    exact = [
        average_error_exact(codeword_gram(point_codebook(config, 0, replica, 3, 4, 0.25, 1.0)))
        for replica in range(3)
    ]
    assert row["exact_err"] == approx(np.mean(exact), rel=1e-8)
    assert row["trials"] == 600


def test_single_point_sweep_matches_simulate(tmp_path):
    config = small_config(tmp_path / "sweep.csv", n=[2], M=[3], eta=[0.7])
    simulate = tmp_path / "simulate.csv"
    argv = ["simulate", "comm", "--n", "2", "--M", "3", "--ns", "0.25", "--eta", "0.7"]
    assert run([*argv, "--trials", "200", "--seed", "5", "--exact", "--output", str(simulate)]) == 0
    assert sweep(config).read_bytes() == simulate.read_bytes()


def test_config_file(tmp_path):
    config = small_config(tmp_path / "out.csv", order=[2, 1])
    filepath = tmp_path / "config.json"
    config.to_file(filepath)
    assert SweepConfig.from_file(filepath) == config

    filepath.write_text('{"n": [1], "M": [2], "ns": [1.0], "colour": "red"}')
    with raises(InvalidParams):
        SweepConfig.from_file(filepath)


def test_relative_output_lands_in_output_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "output_dir", tmp_path)
    path = sweep(small_config("nested/grid.csv", n=[1], M=[2]))
    assert path == tmp_path / "nested" / "grid.csv"
    assert path.exists()


def test_sweep_command(tmp_path, capsys):
    output = tmp_path / "cli.csv"
    argv = ["sweep", "--n", "1", "2", "--M", "2", "--ns", "0.25", "--trials", "50"]
    assert run([*argv, "--output", str(output)]) == 0
    assert capsys.readouterr().out.strip() == str(output)
    assert len(pd.read_csv(output)) == 2

    config = tmp_path / "config.json"
    small_config(tmp_path / "from_config.csv").to_file(config)
    assert run(["sweep", "--config", str(config)]) == 0
    assert (tmp_path / "from_config.csv").exists()

    assert run(["sweep", "--ns", "0.25", "--M", "2"]) == 2


@mark.slow
def test_error_decays_with_blocklength_below_capacity(tmp_path):
    # BPSK capacity at this energy is 0.811 bits; the sweep runs at rate 0.5.
    ns, codebooks = np.log(2.0) / 2.0, 20
    config = SweepConfig(
        n=[4, 8, 12], rate=[0.5], ns=[ns], trials=100, codebooks=codebooks, exact=True,
        output=str(tmp_path / "decay.csv"),
    )
    frame = pd.read_csv(sweep(config))
    assert list(frame["M"]) == [4, 16, 64]

    def exact_errors(index, n, M):
        return [
            average_error_exact(codeword_gram(point_codebook(config, index, replica, n, M, ns, 1.0)))
            for replica in range(codebooks)
        ]

    shortest, longest = exact_errors(0, 4, 4), exact_errors(2, 12, 64)
    assert frame["exact_err"].iloc[0] == approx(np.mean(shortest), rel=1e-8)
    assert np.all(np.diff(frame["exact_err"]) < 0)
    assert np.all(np.diff(frame["err_mean"]) < 0)
    assert ttest_ind(shortest, longest, alternative="greater").pvalue < 0.05
