import numpy as np
from pytest import approx, mark, raises
from scipy.stats import binom

from conftest import reading_codebook
from seqrx.bounds import (
    GENTLE,
    SEN,
    TRACE,
    TYPICALITY,
    TypicalityParams,
    check_effect,
    check_projector,
    compositions,
    epsilon_prime,
    gentle_operator_gap,
    random_density_matrix,
    random_effect,
    random_projector,
    run_suite,
    sen_bound_gap,
    sequential_chain_report,
    trace_lemma_gap,
    typicality_report,
)
from seqrx.codec import generate_codebook
from seqrx.constants import families, priors
from seqrx.errors import (
    BudgetExceeded,
    EnumerationTooLarge,
    InvalidOperator,
    InvalidParams,
    InvalidState,
    NotAProjector,
)
from seqrx.fockspace import FockCutoff

ZERO = np.diag([1.0, 0.0]).astype(complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)


def test_samplers_respect_their_constraints(rng):
    for dim in (2, 3, 5):
        rho = random_density_matrix(dim, rng)
        assert np.trace(rho).real == approx(1.0)
        assert np.linalg.eigvalsh(rho)[0] > -1e-12
        check_projector(random_projector(dim, rng))
        check_effect(random_effect(dim, rng))
    assert np.linalg.matrix_rank(random_density_matrix(4, rng, rank=1)) == 1


def test_trace_lemma():
    report = trace_lemma_gap(ZERO, PLUS, np.eye(2))
    assert report.lhs == approx(1.0)
    assert report.rhs == approx(1.0 + np.sqrt(2.0))
    assert report.satisfied
    assert trace_lemma_gap(PLUS, PLUS, ZERO).slack == approx(0.0, abs=1e-12)
    with raises(InvalidOperator):
        trace_lemma_gap(ZERO, PLUS, 2.0 * np.eye(2))


def test_gentle_operator_lemma():
    report = gentle_operator_gap([(1.0, ZERO)], np.diag([0.81, 1.0]))
    assert report.lhs == approx(0.19)
    assert report.rhs == approx(2.0 * np.sqrt(0.19))
    assert gentle_operator_gap([(0.5, ZERO), (0.5, PLUS)], np.eye(2)).lhs == approx(0.0, abs=1e-12)
    with raises(InvalidParams):
        gentle_operator_gap([(0.5, ZERO), (0.6, PLUS)], np.eye(2))
    with raises(InvalidOperator):
        gentle_operator_gap([(1.0, ZERO)], -np.eye(2))


def test_sen_bound():
    report = sen_bound_gap(ZERO, [PLUS])
    assert report.lhs == approx(0.5)
    assert report.rhs == approx(2.0 * np.sqrt(0.5))
    assert sen_bound_gap(0.5 * ZERO, [np.eye(2)]).lhs == approx(0.0)
    with raises(NotAProjector):
        sen_bound_gap(ZERO, [0.5 * np.eye(2)])
    with raises(InvalidState):
        sen_bound_gap(2.0 * ZERO, [PLUS])
    with raises(InvalidState):
        sen_bound_gap(-ZERO, [PLUS])


@mark.parametrize("name", [SEN, GENTLE, TRACE])
def test_suites_hold_on_random_instances(name):
    report = run_suite(name, samples=200, dim=6, seed=7)
    assert report.samples == 200
    assert report.violations == 0
    assert report.worst_slack >= -1e-9


def test_suites_are_reproducible_across_workers():
    serial = run_suite(SEN, samples=60, dim=4, seed=3)
    assert run_suite(SEN, samples=60, dim=4, seed=3) == serial
    assert run_suite(SEN, samples=60, dim=4, seed=3, workers=2) == serial


def test_suite_validation():
    with raises(InvalidParams):
        run_suite(TYPICALITY, samples=10, dim=4, seed=1)
    with raises(InvalidParams):
        run_suite(SEN, samples=0, dim=4, seed=1)
    with raises(InvalidParams):
        run_suite(SEN, samples=10, dim=1, seed=1)


@mark.parametrize(
    "codebook, m",
    [
        (reading_codebook([[0.0], [np.pi]], 0.25), 2),
        (generate_codebook(priors.BPSK_AMP, families.COHERENT, n=2, M=3, ns=0.5, seed=5), 3),
        (generate_codebook(priors.UNIFORM_PHASE, families.READING_III, n=1, M=3, ns=0.3, seed=5), 3),
    ],
)
def test_union_bound_covers_decoder_chain(codebook, m):
    report = sequential_chain_report(codebook, m)
    assert report.consistent
    assert report.sen.satisfied


def test_union_bound_on_antipodal_pair(antipodal):
    report = sequential_chain_report(antipodal, 2)
    assert report.chain_error == approx(1.0 - (1.0 - np.exp(-1.0)) ** 2)
    assert report.discrepancy < 1e-8


def test_union_bound_needs_small_operators(antipodal):
    with raises(BudgetExceeded):
        sequential_chain_report(antipodal, 1, cutoff=FockCutoff(5000))


def test_epsilon_prime():
    # Only the codebook term survives at epsilon = 0: 2 sqrt(2^(4 - 9)).
    assert epsilon_prime(0.0, 10, 1.0, 0.1, 16) == approx(2.0 * np.sqrt(2.0**-5))
    assert epsilon_prime(0.0, 10, 1.0, 0.1, 16) == approx(0.35355, abs=1e-5)
    assert epsilon_prime(0.01, 10, 1.0, 0.1, 16) > epsilon_prime(0.0, 10, 1.0, 0.1, 16)
    for epsilon in (-0.1, 1.0):
        with raises(InvalidParams):
            epsilon_prime(epsilon, 10, 1.0, 0.1, 16)
    with raises(InvalidParams):
        epsilon_prime(0.1, 10, 1.0, 0.0, 16)


def test_epsilon_prime_survives_huge_codebooks():
    assert np.isfinite(epsilon_prime(0.1, 2000, 1.0, 0.1, 2.0**1000))


def test_binary_typical_set():
    report = typicality_report(TypicalityParams(p=[0.89, 0.11], n=20, delta=0.1, epsilon=0.1))
    assert report.classes == 21
    # Only sequences with exactly two rare symbols are typical.
    assert report.size == 190
    assert report.mass == approx(binom.pmf(2, 20, 0.11), rel=1e-9)
    assert report.size_ok
    assert report.probability_ok
    assert not report.mass_ok


def test_typical_set_grows_towards_full_mass():
    small = typicality_report(TypicalityParams(p=[0.7, 0.3], n=40, delta=0.15, epsilon=0.1))
    large = typicality_report(TypicalityParams(p=[0.7, 0.3], n=400, delta=0.15, epsilon=0.1))
    assert large.mass > small.mass
    assert large.mass_ok


def test_typicality_skips_impossible_symbols():
    report = typicality_report(TypicalityParams(p=[0.5, 0.5, 0.0], n=10, delta=0.1, epsilon=0.1))
    assert report.classes == 11
    assert report.size == 2**10
    assert report.mass == approx(1.0)


def test_typicality_enumeration_limit():
    with raises(EnumerationTooLarge):
        typicality_report(TypicalityParams(p=[0.1] * 10, n=100, delta=0.1, epsilon=0.1))


def test_compositions():
    assert list(compositions(3, 2)) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert len(list(compositions(4, 3))) == 15


def test_typicality_params_validation():
    with raises(InvalidParams):
        TypicalityParams(p=[0.5, 0.6], n=10, delta=0.1, epsilon=0.1)
    with raises(InvalidParams):
        TypicalityParams(p=[0.5, 0.5], n=0, delta=0.1, epsilon=0.1)
    with raises(InvalidParams):
        TypicalityParams(p=[0.5, 0.5], n=10, delta=0.0, epsilon=0.1)
    with raises(InvalidParams):
        TypicalityParams(p=[0.5, 0.5], n=10, delta=0.1, epsilon=1.0)


@mark.slow
@mark.parametrize("name", [SEN, GENTLE])
def test_suites_hold_on_many_instances(name):
    assert run_suite(name, samples=10_000, dim=8, seed=11, workers=2).violations == 0
