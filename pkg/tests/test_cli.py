import numpy as np
import pandas as pd
from pytest import approx

from conftest import coherent_codebook
from seqrx.cli import RESULT_COLUMNS, capacity_value, run
from seqrx.codec import Codebook, generate_codebook
from seqrx.constants import families, priors
from seqrx.utils import derive_seed


def distinct_bpsk_seed() -> int:
    """A master seed whose n=1, M=2 BPSK codebook has two different codewords."""
    for seed in range(100):
        codebook = generate_codebook(
            priors.BPSK_AMP, families.COHERENT, 1, 2, 0.25, seed=derive_seed(seed, "codebook", 0, 0)
        )
        if codebook.symbols[0, 0] != codebook.symbols[1, 0]:
            return seed
    raise AssertionError("No seed gives an antipodal codebook.")


def test_capacity(capsys):
    assert run(["capacity", "--type", "holevo", "--eta", "1", "--ns", "1"]) == 0
    assert capsys.readouterr().out == "2.000000\n"
    assert run(["capacity", "--type", "g", "--ns", "0.5"]) == 0
    assert capsys.readouterr().out == "1.377444\n"


def test_capacity_values():
    assert capacity_value("private", 0.5, 3.0) == 0.0
    assert capacity_value("bpsk", 0.5, np.log(2.0)) == approx(0.811278, abs=1e-6)


def test_bad_arguments_exit_with_two(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["simulate", "comm"]) == 2
    assert run(["simulate", "comm", "--n", "1", "--M", "2", "--ns", "1", "--prior", "uniform"]) == 2
    assert run(["capacity", "--ns", "1", "--eta", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_g_capacity_takes_no_eta(capsys):
    assert run(["capacity", "--type", "g", "--ns", "0.5", "--eta", "0.5"]) == 2
    assert "--eta" in capsys.readouterr().err
    assert run(["capacity", "--type", "g", "--ns", "0.5", "--eta", "1"]) == 0


def test_unreadable_files_exit_with_two(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    incomplete = tmp_path / "incomplete.json"
    incomplete.write_text('{"family": "coherent"}')

    for path in (missing, str(garbled), str(incomplete)):
        assert run(["simulate", "comm", "--codebook", path]) == 2
        assert "cannot load codebook" in capsys.readouterr().err.lower()
    for path in (missing, str(garbled), str(incomplete)):
        assert run(["sweep", "--config", path]) == 2
        assert "sweep config" in capsys.readouterr().err


def test_version(capsys):
    assert run(["--version"]) == 0
    assert capsys.readouterr().out.startswith("seqrx ")


def test_simulate_reports_exact_antipodal_error(tmp_path):
    output = tmp_path / "bpsk.csv"
    seed = distinct_bpsk_seed()
    argv = ["simulate", "comm", "--n", "1", "--M", "2", "--ns", "0.25", "--exact"]
    assert run([*argv, "--seed", str(seed), "--trials", "2000", "--output", str(output)]) == 0

    frame = pd.read_csv(output)
    assert tuple(frame.columns) == RESULT_COLUMNS
    row = frame.iloc[0]
    assert row["exact_err"] == approx(0.300220, abs=1e-6)
    assert row["err_ci_lo"] <= row["err_mean"] <= row["err_ci_hi"]
    assert (row["engine"], row["family"], row["prior"]) == ("gram", "coherent", "bpsk_amp")


def test_default_seed_draws_a_repeated_bpsk_codeword(capsys):
    argv = ["simulate", "comm", "--prior", "bpsk", "--n", "1", "--M", "2", "--ns", "0.25"]
    assert run([*argv, "--engine", "gram", "--exact", "--trials", "100"]) == 0
    lines = capsys.readouterr().out.splitlines()
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert float(row["exact_err"]) == approx(0.5, abs=1e-6)


def test_simulate_decodes_a_given_codebook(tmp_path):
    codebook_path = tmp_path / "antipodal.json"
    coherent_codebook([[0.5], [-0.5]], ns=0.25).to_file(codebook_path)
    output = tmp_path / "out.csv"
    argv = ["simulate", "comm", "--codebook", str(codebook_path), "--exact", "--trials", "500"]
    assert run([*argv, "--output", str(output)]) == 0
    row = pd.read_csv(output).iloc[0]
    assert row["exact_err"] == approx(0.300220, abs=1e-6)
    assert (row["n"], row["M"], row["ns"]) == (1, 2, 0.25)


def test_simulate_reruns_are_byte_identical(tmp_path):
    argv = ["simulate", "comm", "--n", "3", "--M", "4", "--ns", "0.5", "--prior", "gaussian"]
    argv += ["--eta", "0.8", "--trials", "300", "--seed", "17", "--exact"]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert run([*argv, "--output", str(first)]) == 0
    assert run([*argv, "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert not (tmp_path / "first.csv.partial").exists()


def test_simulate_writes_codebook(tmp_path, capsys):
    codebook_path = tmp_path / "codebook.json"
    argv = ["simulate", "reading", "--n", "2", "--M", "3", "--ns", "0.4", "--trials", "50"]
    assert run([*argv, "--codebook-out", str(codebook_path)]) == 0
    codebook = Codebook.from_file(codebook_path)
    assert (codebook.family.tag, codebook.prior) == (families.READING_III, priors.BPSK_PHASE)
    assert capsys.readouterr().out.splitlines()[0] == ",".join(RESULT_COLUMNS)


def test_simulate_reading_with_fock_engine(capsys):
    argv = ["simulate", "reading", "--n", "1", "--M", "2", "--ns", "0.25", "--engine", "fock"]
    assert run([*argv, "--trials", "200", "--seed", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("fock,reading_III,bpsk_phase,1,2,")


def test_simulate_cpn_on_ppm(capsys):
    argv = ["simulate", "comm", "--prior", "ppm", "--engine", "cpn", "--n", "3", "--M", "3"]
    assert run([*argv, "--ns", "2", "--trials", "200"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("cpn,coherent,ppm,3,3,")


def test_simulate_errors(capsys):
    ppm = ["simulate", "comm", "--prior", "ppm", "--engine", "cpn", "--n", "2", "--M", "3", "--ns", "1"]
    assert run(ppm) == 2
    too_big = ["simulate", "comm", "--n", "4", "--M", "2", "--ns", "4", "--engine", "fock", "--trials", "5"]
    assert run(too_big) == 1
    assert "error" in capsys.readouterr().err


def test_verify_sen_suite(capsys):
    assert run(["verify", "--suite", "sen", "--samples", "200", "--dim", "6", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("sen: samples=200")
    assert out.rstrip().endswith("violations: 0")


def test_verify_typicality(capsys):
    assert run(["verify", "--suite", "typicality"]) == 0
    assert "size=190" in capsys.readouterr().out


def test_verify_all_suites(capsys):
    assert run(["verify", "--samples", "20", "--dim", "3", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(":")[0] for line in lines[:-1]] == ["sen", "gentle", "trace", "typicality"]
    assert lines[-1] == "violations: 0"
