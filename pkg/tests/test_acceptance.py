"""Acceptance criteria, each run at exact (rational) tolerance.

Every test prints one ``[PASS]``/``[FAIL]`` line summarising its criterion
before asserting, so ``pytest tests/test_acceptance.py`` doubles as a report.
"""

import random
import time
from fractions import Fraction
from math import gcd

import pytest

from maxcore.classify import integer_generator_check, is_bijective_on_core, is_orbit_periodic, is_robust
from maxcore.core import core_basis, core_by_eigenvalue_periods, finite_stabilization, sigma_sum_cone
from maxcore.graph import build_digraph, component_cyclicity, scc_condense
from maxcore.matrix import TropicalMatrix, mat_mul, mat_power, span_contains, span_equal, span_membership
from maxcore.maxmin import maxmin_core, maxmin_fixed_point_check
from maxcore.oracle import (
    brute_critical_graph,
    brute_force_robust,
    brute_max_cycle_mean,
    collision_search,
    default_horizon,
    matrix_power_periodicity,
    random_irreducible,
    random_matrix,
    span_chain,
)
from maxcore.semiring import EPS, MAX_MIN, canon
from maxcore.spectral import (
    TheoremViolation,
    critical_graph,
    eigencone_basis,
    max_cycle_mean,
    power_spectrum_check,
    reconstruct_from_critical,
    spectrum,
)

E = EPS
CURATED = [
    [[1, E], [0, 0]],
    [[E, 0], [0, E]],
    [[1, E], [E, 0]],
    [[0, E], [0, 1]],
    [[E, 2], [4, E]],
]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})")

    return emit


@pytest.fixture(scope="module")
def corpus():
    """300 random max-plus matrices, n <= 5, mixed density, integer and rational entries."""
    rng = random.Random(20240601)
    out = []
    for _ in range(300):
        n = rng.randint(1, 5)
        density = rng.choice([0.25, 0.4, 0.6, 0.8, 1.0])
        out.append(random_matrix(rng, n, density, (-6, 6), rng.choice([1, 1, 2, 3])))
    return out


@pytest.fixture(scope="module")
def cores(corpus):
    return [core_basis(A) for A in corpus]


def test_criterion_01_cyclicity_theorem(report):
    rng = random.Random(101)
    start = time.perf_counter()
    bad, inconclusive, periods = [], 0, set()
    for _ in range(300):
        A = random_irreducible(rng, rng.randint(1, 6), rng.choice([0.25, 0.4, 0.6, 0.9]), (-9, 9), rng.choice([1, 2, 3]))
        info = matrix_power_periodicity(A, default_horizon(A.n, spectrum(A).sigma_lambda))
        if info is None:
            inconclusive += 1
            continue
        sigma = critical_graph(A).cyclicity
        periods.add(sigma)
        if info.period != sigma or info.growth != canon(sigma * max_cycle_mean(A)):
            bad.append(A.to_strings())
    elapsed = time.perf_counter() - start
    ok = not bad and inconclusive == 0 and elapsed < 60
    report(1, "cyclicity theorem", ok, f"300 matrices, {len(bad)} wrong, {inconclusive} inconclusive, "
           f"cyclicities seen {sorted(periods)}, {elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_02_core_formula(report, corpus, cores):
    bad = []
    for A, core in zip(corpus, cores):
        ext = core.extremals.vectors
        ok = len(ext) <= A.n and sorted(core.action) == list(range(len(ext)))
        ok = ok and span_equal(core_by_eigenvalue_periods(A, core.spectrum).vectors, ext)
        ok = ok and span_equal(sigma_sum_cone(A, core.sigma_lambda, core.spectrum).vectors, ext)
        P = A
        for _ in range(default_horizon(A.n, core.sigma_lambda)):
            if not ok:
                break
            cols = P.columns()
            ok = all(span_membership(v, cols) for v in ext)
            P = mat_mul(P, A)
        if not ok:
            bad.append(A.to_strings())
    report(2, "core = sum of eigencones of powers", not bad, f"{len(corpus)} matrices, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_03_eigencone_periodicity(report, corpus, cores):
    bad, checked = [], 0
    for A, core in zip(corpus, cores):
        spec = core.spectrum
        powers = {}
        P = A
        top = 3 * core.sigma_lambda
        for t in range(1, top + 1):
            powers[t] = (P, spectrum(P))
            P = mat_mul(P, A)

        def cone(t, rho):
            Pt, st = powers[t]
            return eigencone_basis(Pt, canon(t * rho), st).generators.vectors

        ok = True
        for rho in spec.eigenvalues:
            s = spec.sigma(rho)
            for t in range(1, 2 * s + 1):
                checked += 1
                ok = ok and span_equal(cone(t, rho), cone(t + s, rho)) and span_contains(cone(s, rho), cone(t, rho))
        sl = core.sigma_lambda
        if spec.eigenvalues:

            def vsum(t):
                return [v for rho in spec.eigenvalues for v in cone(t, rho)]

            for t in range(1, 2 * sl + 1):
                checked += 1
                ok = ok and span_equal(vsum(t), vsum(t + sl)) and span_contains(vsum(sl), vsum(t))
        if not ok:
            bad.append(A.to_strings())
    report(3, "eigencone periodicity", not bad, f"{checked} (matrix, rho, t) checks, {len(bad)} failing matrices")
    assert not bad, bad[:3]


def test_criterion_04_finite_stabilization(report, corpus):
    disagree, inconclusive, yes = [], [], 0
    for A in corpus:
        predicted = finite_stabilization(A).stabilizes
        if predicted:
            yes += 1
            chain = span_chain(A, far=False)
            if chain.status == "inconclusive":
                inconclusive.append(A.to_strings())
                continue
        else:
            chain = span_chain(A)
        if not chain.nested or chain.stabilizes != predicted:
            disagree.append(A.to_strings())
    ok = not disagree and not inconclusive
    report(4, "finite stabilization criterion", ok, f"{len(corpus)} matrices ({yes} stabilizing), "
           f"{len(disagree)} disagreements, {len(inconclusive)} inconclusive")
    assert ok, (disagree[:3], inconclusive[:3])


def test_criterion_05_robustness(report):
    rng = random.Random(505)
    mats = [TropicalMatrix(r) for r in CURATED]
    while len(mats) < 505:
        mats.append(random_matrix(rng, rng.randint(1, 5), rng.choice([0.3, 0.5, 0.8, 1.0]), (-6, 6),
                                  rng.choice([1, 1, 2]), no_zero_columns=True))
    bad, inconclusive = [], 0
    for A in mats:
        bf = brute_force_robust(A, samples=4, seed=rng.randrange(10**6))
        if bf.robust is None or bf.orbit_periodic is None:
            inconclusive += 1
            continue
        if bf.robust != is_robust(A).value or bf.orbit_periodic != is_orbit_periodic(A).value:
            bad.append(A.to_strings())
    ok = not bad and inconclusive == 0
    report(5, "robustness equivalences", ok, f"{len(mats)} matrices, {len(bad)} disagreements, {inconclusive} inconclusive")
    assert ok, bad[:3]


def test_criterion_06_bijectivity(report, corpus, cores):
    bad, collisions, probed = [], 0, 0
    for A, core in zip(corpus, cores):
        bij = is_bijective_on_core(A, core.spectrum).value
        try:
            hit = collision_search(A, core, probes=200, seed=len(bad))
        except TheoremViolation:
            bad.append(A.to_strings())
            continue
        if hit is None:
            probed += 1
        else:
            collisions += 1
            if mat_power(A, hit.t) @ hit.y != mat_power(A, hit.t) @ hit.y_prime or hit.y == hit.y_prime:
                bad.append(A.to_strings())
                continue
        if (hit is None) != bij:
            bad.append(A.to_strings())
            continue
        if any(is_bijective_on_core(mat_power(A, t)).value != bij for t in range(2, 7)):
            bad.append(A.to_strings())
    report(6, "bijectivity on the core", not bad,
           f"{collisions} collisions exhibited, {probed} matrices x 200 injectivity probes, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_07_integer_generators(report):
    rng = random.Random(707)
    bad = []
    for _ in range(200):
        A = random_matrix(rng, rng.randint(1, 5), rng.choice([0.3, 0.5, 0.8, 1.0]), (-5, 5), 1)
        core = core_basis(A)
        ok = integer_generator_check(A, core).value is True
        ok = ok and all(Fraction(core.sigma_lambda * r).denominator == 1 for r in core.spectrum.eigenvalues)
        ok = ok and all(x is EPS or Fraction(x).denominator == 1 for v in core.extremals for x in v)
        if not ok:
            bad.append(A.to_strings())
    report(7, "integer core generators", not bad, f"200 integer matrices, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_08_power_spectrum(report, corpus):
    rng = random.Random(808)
    irreducible = [random_irreducible(rng, rng.randint(2, 6), 0.35, (-5, 5), 1) for _ in range(60)]
    bad, splits = [], 0
    for A in corpus + irreducible:
        spec = spectrum(A)
        if not all(power_spectrum_check(A, t, spec).passed for t in range(1, 9)):
            bad.append(A.to_strings())
            continue
        if spec.fnf.r == 1 and not spec.fnf.reduced.trivial[0]:
            g = build_digraph(A)
            sigma = component_cyclicity(g, range(A.n))
            for t in range(1, 9):
                gt = build_digraph(mat_power(A, t))
                part, _ = scc_condense(gt)
                d = gcd(t, sigma)
                splits += 1
                if len(part.classes) != d or any(component_cyclicity(gt, c) != sigma // d for c in part.classes):
                    bad.append(A.to_strings())
                    break
    report(8, "power-spectrum identities", not bad,
           f"{len(corpus) + len(irreducible)} matrices x t<=8, {splits} block splittings, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_09_reconstruction(report, corpus, cores):
    bad, generators = [], 0
    for A, core in zip(corpus, cores):
        spec = core.spectrum
        for rho in spec.eigenvalues:
            for x in eigencone_basis(A, rho, spec).generators:
                generators += 1
                crit = {i: x[i] for i in spec[rho].critical.nodes}
                if reconstruct_from_critical(A, rho, crit, spec) != x:
                    bad.append((A.to_strings(), x.to_strings()))
    report(9, "eigenvector reconstruction", not bad, f"{generators} generators, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_10_maxmin(report):
    rng = random.Random(1010)
    values = [Fraction(k, 5) for k in range(6)]
    bad = []
    for _ in range(100):
        n = rng.randint(1, 5)
        A = TropicalMatrix([[rng.choice(values) for _ in range(n)] for _ in range(n)], MAX_MIN)
        core = maxmin_core(A)
        ok = maxmin_fixed_point_check(core, A)
        P = mat_power(A, core.threshold)
        if core.extremals.vectors:
            for _ in range(core.period + 1):
                cols = [c for c in P.columns() if not c.is_zero()]
                ok = ok and span_equal(cols, core.extremals.vectors)
                P = mat_mul(P, A)
        if not ok:
            bad.append(A.to_strings())
    report(10, "max-min core", not bad, f"100 matrices, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_11_cycle_enumeration(report):
    rng = random.Random(1111)
    start = time.perf_counter()
    bad = []
    for _ in range(300):
        A = random_matrix(rng, rng.randint(1, 6), rng.choice([0.3, 0.5, 0.8, 1.0]), (-5, 5), rng.choice([1, 2]))
        rho = max_cycle_mean(A)
        if rho != brute_max_cycle_mean(A):
            bad.append(A.to_strings())
            continue
        nodes, edges = brute_critical_graph(A)
        if rho is not EPS:
            cg = critical_graph(A)
            if cg.nodes != nodes or cg.edges != edges:
                bad.append(A.to_strings())
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    report(11, "cycle mean and critical graph vs enumeration", ok,
           f"300 matrices, {len(bad)} disagreements, {elapsed:.1f}s")
    assert ok, bad[:3]
