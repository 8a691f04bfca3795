import random

import pytest
from hypothesis import given

from maxcore.classify import is_bijective_on_core, is_orbit_periodic, is_robust
from maxcore.core import core_action, core_basis
from maxcore.matrix import TropicalMatrix, mat_power
from maxcore.oracle import (
    VerifyConfig,
    ZeroOrbit,
    brute_force_robust,
    collision_search,
    column_periodicity,
    corpus_run,
    default_horizon,
    elementary_cycles,
    matrix_power_periodicity,
    minimize_counterexample,
    orbit_simulate,
    random_irreducible,
    span_chain,
    verify_suite,
)
from maxcore.spectral import critical_graph, max_cycle_mean

from .strategies import E, maxplus_matrices

CURATED = {
    "reducible": [[1, E], [0, 0]],
    "swap": [[E, 0], [0, E]],
    "diag": [[1, E], [E, 0]],
    "nonspectral": [[0, E], [0, 1]],
    "two_cycle": [[E, 2], [4, E]],
}


def test_default_horizon():
    assert default_horizon(3, 2) == 9 + 18 + 16


def test_elementary_cycles(M):
    A = M([[0, 1, E], [E, E, 1], [1, 0, E]])
    assert sorted(elementary_cycles(A)) == [(0,), (0, 1, 2), (1, 2)]


def test_orbit_examples(M, V):
    A = M(CURATED["reducible"])
    tr = orbit_simulate(A, V([0, -1]), 10)
    assert tr.periodicity.period == 1 and tr.periodicity.defect == 0 and tr.first_eigenvector_hit == 0

    tr = orbit_simulate(M(CURATED["swap"]), V([0, E]), 10)
    assert tr.periodicity.period == 2 and tr.periodicity.growth == 0
    assert tr.first_eigenvector_hit is None

    tr = orbit_simulate(A, V([E, 0]), 10)
    assert tr.first_eigenvector_hit == 0

    tr = orbit_simulate(A, V([0, 0]), 10)
    assert tr.vector(2) == A @ (A @ V([0, 0]))


def test_orbit_zero(M, V):
    with pytest.raises(ZeroOrbit):
        orbit_simulate(M([[E, 0], [E, E]]), V([0, E]), 5)
    with pytest.raises(ZeroOrbit):
        orbit_simulate(M([[0]]), V([E]), 5)


def test_orbit_horizon_exceeded(M, V):
    tr = orbit_simulate(M(CURATED["diag"]), V([0, 0]), 20)
    assert tr.periodicity is None and tr.horizon_exceeded


def test_matrix_power_periodicity_examples(M):
    info = matrix_power_periodicity(M(CURATED["two_cycle"]))
    assert (info.period, info.growth) == (2, 6)
    info = matrix_power_periodicity(M([[0, 1], [-1, 0]]))
    assert info.period == 1
    assert matrix_power_periodicity(M(CURATED["reducible"]), 50) is None


def test_column_periodicity_examples(M):
    A = M(CURATED["reducible"])
    info = column_periodicity(A, 1, 20)
    assert (info.period, info.growth) == (1, 0)
    info = column_periodicity(A, 0, 20)
    assert (info.period, info.growth) == (1, 1)
    B = M(CURATED["nonspectral"])
    # column 1 is (0, t-1): the entries grow at different rates
    assert column_periodicity(B, 0, 40) is None
    assert column_periodicity(B, 0, 40, far=True) is None
    info = column_periodicity(B, 1, 40)
    assert (info.period, info.growth) == (1, 1)


def test_span_chain_examples(M):
    chain = span_chain(M(CURATED["reducible"]))
    assert chain.status == "stabilized" and chain.stabilized_at == 1 and chain.nested
    chain = span_chain(M(CURATED["swap"]))
    assert chain.stabilized_at == 1
    chain = span_chain(M(CURATED["nonspectral"]))
    assert chain.status == "non-stabilizing" and chain.stabilizes is False
    chain = span_chain(M(CURATED["nonspectral"]), far=False)
    assert chain.status == "inconclusive" and chain.stabilizes is None


def test_span_chain_late_stabilization(M):
    # two competing loops with close means: the span settles late
    A = M([[0, -20], [0, -1]])
    chain = span_chain(A, horizon=5)
    assert chain.status == "stabilized" and chain.stabilized_at > 5
    exact = span_chain(A, horizon=200, far=False)
    assert exact.stabilized_at == chain.stabilized_at == 20


def test_brute_force_robust_examples(M):
    bf = brute_force_robust(M(CURATED["reducible"]))
    assert bf.robust and bf.orbit_periodic
    bf = brute_force_robust(M(CURATED["swap"]))
    assert bf.robust is False and bf.orbit_periodic
    bf = brute_force_robust(M(CURATED["diag"]))
    assert bf.robust is False and bf.orbit_periodic is False
    with pytest.raises(ValueError):
        brute_force_robust(M([[0, E], [0, E]]))


def test_brute_force_robust_needs_mixed_supports(M):
    # Two classes with different growth and disjoint reach: unit vectors and
    # finite vectors all have periodic orbits, e1 (+) e4 does not.
    A = M([[E, E, E, E, 0], [E, E, -4, E, E], [E, E, 6, E, E], [E, 0, "5/2", -4, E], [-3, E, 0, E, "-3/2"]])
    assert brute_force_robust(A, support_max_n=0).robust is True
    bf = brute_force_robust(A)
    assert bf.robust is False and bf.orbit_periodic is False
    assert bf.robust == is_robust(A).value and bf.orbit_periodic == is_orbit_periodic(A).value


def test_brute_force_inconclusive_without_far_probe(M):
    bf = brute_force_robust(M(CURATED["diag"]), samples=2, horizon=5, far=False)
    assert bf.inconclusive > 0


def test_collision_examples(M, V):
    hit = collision_search(M(CURATED["reducible"]))
    assert (hit.y, hit.y_prime, hit.t) == (V([1, 1]), V([1, 0]), 1)
    assert collision_search(M(CURATED["swap"])) is None
    assert collision_search(M(CURATED["diag"])) is None


def test_verify_suite_examples(M):
    assert verify_suite(TropicalMatrix.identity(3)).passed
    for rows in CURATED.values():
        rep = verify_suite(M(rows))
        assert rep.passed, rep.failures()
        assert rep.count("inconclusive") == 0


def test_verify_suite_detects_mutation(M):
    rep = verify_suite(M(CURATED["reducible"]), VerifyConfig(mutate=True))
    assert not rep.passed


def test_corpus_run_examples():
    rep = corpus_run(seed=3, count=0)
    assert rep.passed and rep.summary == {}
    a = corpus_run(seed=11, count=10, n=4)
    b = corpus_run(seed=11, count=10, n=4)
    assert a.to_json() == b.to_json() and a.passed


def test_minimize_counterexample(M):
    A = M([[1, 2, E], [0, 0, 3], [E, 1, 1]])
    small = minimize_counterexample(A, lambda B: any(B[i, i] == 1 for i in range(B.n) if B[i, i] is not E))
    assert small == M([[1]])


@given(maxplus_matrices(max_n=5))
def test_brute_force_agrees_with_characterization(A):
    if A.has_zero_column():
        return
    bf = brute_force_robust(A, samples=3)
    assert bf.inconclusive == 0
    assert bf.robust == is_robust(A).value
    assert bf.orbit_periodic == is_orbit_periodic(A).value


@given(maxplus_matrices(max_n=4))
def test_collision_search_agrees(A):
    core = core_basis(A)
    hit = collision_search(A, core, probes=30)
    assert (hit is None) == is_bijective_on_core(A).value
    if hit is not None:
        assert hit.y != hit.y_prime
        assert mat_power(A, hit.t) @ hit.y == mat_power(A, hit.t) @ hit.y_prime


@given(maxplus_matrices(max_n=5))
def test_extremal_orbits_follow_the_action(A):
    core = core_basis(A)
    lengths = {k: len(c) for c in core_action(core).cycles for k in c}
    for k, v in enumerate(core.extremals):
        p = orbit_simulate(A, v, len(core.extremals) + 2).periodicity
        assert p.defect == 0 and lengths[k] % p.period == 0


def test_cyclicity_theorem_on_random_irreducible():
    rng = random.Random(5)
    for _ in range(40):
        A = random_irreducible(rng, rng.randint(1, 5), 0.5, (-6, 6), 2)
        info = matrix_power_periodicity(A)
        assert info.period == critical_graph(A).cyclicity
        assert info.growth == info.period * max_cycle_mean(A)
