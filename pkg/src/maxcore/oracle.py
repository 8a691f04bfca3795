"""Brute-force ground truth for the analytic modules.

Everything here works from first principles (cycle enumeration, iterating
matrix powers and orbits with exact repeat detection) so that it can be used
to cross-check the graph/spectral characterizations.

Two facts make the simulations exact rather than heuristic:

* an orbit ``X_t = A^t x`` is ray-periodic from ``K`` on as soon as
  ``X_{K+p}`` is proportional to ``X_K`` for a single ``K`` (apply ``A^s``);
* the column-span chain stabilizes forever as soon as
  ``span(A^t) = span(A^{t+1})`` for a single ``t``, because
  ``span(A^{t+1}) = A span(A^t)``.

Beyond the scanned horizon we therefore probe a single far exponent ``K``
(computed by repeated squaring).  A positive probe is a proof; a negative
probe is reported as such and means no periodicity up to time ``K``.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable

from .classify import Verdict, classify, is_bijective_on_core, is_orbit_periodic, is_robust
from .core import (
    CoreDescription,
    core_basis,
    core_by_eigenvalue_periods,
    core_membership,
    core_support_profile,
    default_tmax,
    finite_stabilization,
    sigma_sum_cone,
)
from .graph import build_digraph, component_cyclicity, scc_condense
from .matrix import (
    GeneratingSet,
    TropicalMatrix,
    TropicalVector,
    column_span,
    combine,
    mat_mul,
    mat_power,
    mat_power_iterated,
    scale_vector,
    span_contains,
    span_equal,
    span_membership,
)
from .semiring import EPS, canon, format_scalar
from .spectral import (
    TheoremViolation,
    critical_graph,
    eigencone_basis,
    is_eigenvector,
    max_cycle_mean,
    power_spectrum_check,
    reconstruct_from_critical,
    spectrum,
)

FAR_EXPONENT = 2**20


class ZeroOrbit(ValueError):
    """The orbit reached the zero vector."""


def default_horizon(n: int, sigma: int) -> int:
    return n * n + 3 * n * sigma + 16


# -- elementary cycles ----------------------------------------------------


def elementary_cycles(A: TropicalMatrix) -> list:
    """All elementary cycles as node tuples starting at their smallest node."""
    succ = A.rows
    out = []
    for s in range(A.n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in succ[v]:
                if w == s:
                    out.append(tuple(path))
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return out


def cycle_weight(A: TropicalMatrix, cyc) -> object:
    return sum(A.rows[cyc[k]][cyc[(k + 1) % len(cyc)]] for k in range(len(cyc)))


def brute_max_cycle_mean(A: TropicalMatrix):
    best = EPS
    for c in elementary_cycles(A):
        m = canon(Fraction(cycle_weight(A, c), len(c)))
        if best is EPS or m > best:
            best = m
    return best


def brute_critical_graph(A: TropicalMatrix):
    """``(nodes, edges)`` lying on elementary cycles of maximal mean."""
    rho = brute_max_cycle_mean(A)
    nodes, edges = set(), set()
    if rho is EPS:
        return frozenset(), frozenset()
    for c in elementary_cycles(A):
        if Fraction(cycle_weight(A, c), len(c)) == rho:
            nodes.update(c)
            edges.update((c[k], c[(k + 1) % len(c)]) for k in range(len(c)))
    return frozenset(nodes), frozenset(edges)


def brute_cyclicity(A: TropicalMatrix, component) -> int:
    """gcd of the lengths of elementary cycles inside ``component``."""
    comp = set(component)
    d = 0
    for c in elementary_cycles(A.restrict(comp)):
        d = gcd(d, len(c))
    return d or 1


# -- periodicity of sequences ---------------------------------------------


@dataclass(frozen=True)
class PeriodicityInfo:
    """``X_{t+period} = growth (x) X_t`` for all ``t >= defect``."""

    period: int
    growth: object
    defect: int
    horizon_exceeded: bool = False

    @property
    def rate(self):
        if self.growth is EPS:
            return EPS
        return canon(Fraction(self.growth) / self.period)


@dataclass
class OrbitTrace:
    start: TropicalVector
    states: list
    scales: list
    periodicity: PeriodicityInfo | None
    first_eigenvector_hit: int | None

    @property
    def horizon_exceeded(self) -> bool:
        return self.periodicity is None

    def vector(self, t: int) -> TropicalVector:
        """The unscaled orbit element ``A^t x``."""
        return self.states[t].shift(self.scales[t])


def orbit_simulate(A: TropicalMatrix, x: TropicalVector, horizon: int) -> OrbitTrace:
    """Iterate ``x, Ax, A^2x, ...`` up to ``t = horizon``, scaling each state.

    The first repeated scaled state gives the exact defect and period of the
    ray sequence; its growth is the accumulated scale over one period.
    """
    if x.is_zero():
        raise ZeroOrbit("start vector is zero")
    state = scale_vector(x)
    scale = x.norm()
    states, scales = [state], [scale]
    seen = {state: 0}
    info = None
    for t in range(1, horizon + 1):
        y = A @ state
        if y.is_zero():
            raise ZeroOrbit(f"orbit vanishes at t={t}")
        m = y.norm()
        state = scale_vector(y)
        scale = canon(scale + m)
        states.append(state)
        scales.append(scale)
        if state in seen:
            t0 = seen[state]
            info = PeriodicityInfo(t - t0, canon(scale - scales[t0]), t0)
            break
        seen[state] = t
    hit = info.defect if info is not None and info.period == 1 else None
    return OrbitTrace(x, states, scales, info, hit)


@dataclass(frozen=True)
class OrbitFate:
    """Outcome of the far probe for an orbit.

    ``period`` is the ray period seen at time ``K`` (``None`` if no ``p <= L``
    makes ``X_{K+p}`` proportional to ``X_K``).
    """

    K: int
    period: int | None

    @property
    def periodic(self) -> bool:
        return self.period is not None


def far_orbit_fate(AK: TropicalMatrix, A: TropicalMatrix, x: TropicalVector, K: int) -> OrbitFate:
    L = lcm(*range(1, A.n + 1))
    XK = AK @ x
    if XK.is_zero():
        raise ZeroOrbit(f"orbit vanishes by t={K}")
    ref = scale_vector(XK)
    y = XK
    for p in range(1, L + 1):
        y = A @ y
        if y.is_zero():
            raise ZeroOrbit(f"orbit vanishes by t={K + p}")
        if scale_vector(y) == ref:
            return OrbitFate(K, p)
    return OrbitFate(K, None)


def _scaled_matrix(P: TropicalMatrix):
    vals = [v for _, _, v in P.edges()]
    if not vals:
        return P, EPS
    m = max(vals)
    return P.shift(-m), m


def matrix_power_periodicity(A: TropicalMatrix, horizon: int | None = None) -> PeriodicityInfo | None:
    """Detect ``A^{t+p} = c (x) A^t`` by exact repeat of scaled powers.

    Returns ``None`` when no repeat occurs up to ``A^horizon`` (e.g. when
    entries grow at different rates, which happens for reducible matrices).
    """
    if horizon is None:
        horizon = default_horizon(A.n, spectrum(A).sigma_lambda)
    P = A
    state, scale = _scaled_matrix(P)
    if scale is EPS:
        return PeriodicityInfo(1, EPS, 1)
    seen = {state: 1}
    scales = {1: scale}
    for t in range(2, horizon + 1):
        P = mat_mul(state, A)
        state, m = _scaled_matrix(P)
        if m is EPS:
            return PeriodicityInfo(1, EPS, t)
        scale = canon(scales[t - 1] + m)
        scales[t] = scale
        if state in seen:
            t0 = seen[state]
            return PeriodicityInfo(t - t0, canon(scale - scales[t0]), t0)
        seen[state] = t
    return None


def column_periodicity(A: TropicalMatrix, j: int, horizon: int | None = None, far: bool = False) -> PeriodicityInfo | None:
    """Ultimate periodicity of the column sequence ``A^t_{.j}``, ``t >= 1``.

    A column that becomes zero is periodic with growth ``EPS``.  With
    ``far=True`` an undetected sequence is probed at a far exponent; a positive
    probe yields a ``PeriodicityInfo`` flagged ``horizon_exceeded`` whose
    defect is only an upper bound.
    """
    if horizon is None:
        horizon = default_horizon(A.n, spectrum(A).sigma_lambda)
    col = A.column(j)
    if col.is_zero():
        return PeriodicityInfo(1, EPS, 1)
    try:
        tr = orbit_simulate(A, col, horizon - 1)
    except ZeroOrbit:
        P = col
        t = 1
        while not P.is_zero():
            P = A @ P
            t += 1
        return PeriodicityInfo(1, EPS, t)
    if tr.periodicity is not None:
        p = tr.periodicity
        return PeriodicityInfo(p.period, p.growth, p.defect + 1)
    if not far:
        return None
    K = max(FAR_EXPONENT, horizon)
    try:
        fate = far_orbit_fate(mat_power(A, K), A, col, K)
    except ZeroOrbit:
        return PeriodicityInfo(1, EPS, K + 1, True)
    if not fate.periodic:
        return None
    XK = mat_power(A, K) @ col
    growth = canon((mat_power(A, fate.period) @ XK).norm() - XK.norm())
    return PeriodicityInfo(fate.period, growth, K + 1, True)


def column_periodic_verdict(A: TropicalMatrix, horizon: int | None = None) -> Verdict:
    """Empirical column periodicity: every column sequence is ultimately periodic."""
    for j in range(A.n):
        if column_periodicity(A, j, horizon, far=True) is None:
            return Verdict(False, {"column": j}, "empirical")
    return Verdict(True, None, "empirical")


# -- span chain -----------------------------------------------------------


@dataclass
class SpanChain:
    spans: list
    nested: bool
    stabilized_at: int | None
    status: str
    probe_exponent: int | None = None

    @property
    def stabilizes(self) -> bool | None:
        if self.status == "inconclusive":
            return None
        return self.status == "stabilized"

    @property
    def stable_span(self) -> GeneratingSet | None:
        if self.stabilized_at is None:
            return None
        if self.stabilized_at <= len(self.spans):
            return self.spans[self.stabilized_at - 1]
        return None


def span_chain(A: TropicalMatrix, horizon: int | None = None, far: bool = True) -> SpanChain:
    """Column spans of ``A^t`` for ``t = 1..horizon`` and their stabilization.

    ``stabilized_at`` is the first ``t`` with ``span(A^t) = span(A^{t+1})``.
    """
    if horizon is None:
        horizon = default_horizon(A.n, spectrum(A).sigma_lambda)
    spans = []
    nested = True
    P = A
    cur = column_span(P)
    spans.append(cur)
    for t in range(1, horizon + 1):
        P = mat_mul(P, A)
        nxt = column_span(P)
        if not span_contains(cur, nxt):
            nested = False
        if span_contains(nxt, cur):
            return SpanChain(spans, nested, t, "stabilized")
        if t < horizon:
            spans.append(nxt)
        cur = nxt
    if not far:
        return SpanChain(spans, nested, None, "inconclusive")
    K = max(FAR_EXPONENT, 2 * horizon)

    def stable(t):
        Pt = mat_power(A, t)
        return span_equal(column_span(Pt), column_span(mat_mul(Pt, A)))

    if not stable(K):
        return SpanChain(spans, nested, None, "non-stabilizing", K)
    lo, hi = horizon, K
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if stable(mid):
            hi = mid
        else:
            lo = mid
    return SpanChain(spans, nested, hi, "stabilized", K)


# -- robustness by simulation ---------------------------------------------


@dataclass
class BruteForceRobustness:
    robust: bool | None
    orbit_periodic: bool | None
    vectors_tested: int
    witnesses: dict = field(default_factory=dict)
    inconclusive: int = 0


def random_finite_vector(rng: random.Random, n: int, lo: int = -20, hi: int = 20, max_den: int = 4) -> TropicalVector:
    return TropicalVector([canon(Fraction(rng.randint(lo, hi), rng.randint(1, max_den))) for _ in range(n)])


def orbit_fate(A: TropicalMatrix, x: TropicalVector, horizon: int, far: bool = True, AK=None, K=None):
    """``(ray_period or None, conclusive)`` for the orbit of ``x``."""
    tr = orbit_simulate(A, x, horizon)
    if tr.periodicity is not None:
        return tr.periodicity.period, True
    if not far:
        return None, False
    K = K or max(FAR_EXPONENT, horizon)
    AK = AK if AK is not None else mat_power(A, K)
    return far_orbit_fate(AK, A, x, K).period, True


def brute_force_robust(
    A: TropicalMatrix,
    samples: int = 8,
    horizon: int | None = None,
    seed: int = 0,
    far: bool = True,
    sigma: int | None = None,
    support_max_n: int = 6,
) -> BruteForceRobustness:
    """Robustness and orbit periodicity decided by simulating orbits.

    Orbits of all unit vectors and of ``samples`` random finite vectors are
    followed.  For ``n <= support_max_n`` every support pattern is also tried,
    with random finite weights: the asymptotic fate of an orbit is governed by
    which classes the support touches, and vectors touching two classes of
    different growth with disjoint reach are invisible to unit and finite
    vectors alike.  Robust iff every orbit hits an eigenvector of ``A`` (ray
    period 1); orbit periodic iff every orbit hits an eigenvector of
    ``A^sigma`` (ray period dividing ``sigma``, the spectral cyclicity).
    """
    if A.has_zero_column():
        raise ValueError("robustness by simulation needs a matrix without zero columns")
    if sigma is None:
        sigma = spectrum(A).sigma_lambda
    if horizon is None:
        horizon = default_horizon(A.n, sigma)
    rng = random.Random(seed)
    vectors = [TropicalVector.unit(A.n, i) for i in range(A.n)]
    vectors += [random_finite_vector(rng, A.n) for _ in range(samples)]
    if A.n <= support_max_n:
        for mask in range(1, 1 << A.n):
            if mask & (mask - 1):
                w = random_finite_vector(rng, A.n)
                vectors.append(TropicalVector([w[i] if mask >> i & 1 else EPS for i in range(A.n)]))
    K = max(FAR_EXPONENT, horizon)
    AK = mat_power(A, K) if far else None
    robust, periodic = True, True
    res = BruteForceRobustness(True, True, len(vectors))
    for x in vectors:
        period, conclusive = orbit_fate(A, x, horizon, far, AK, K)
        if not conclusive:
            res.inconclusive += 1
            continue
        if period != 1 and robust:
            robust = False
            res.witnesses["robust"] = {"vector": x.to_strings(), "ray_period": period}
        if (period is None or sigma % period) and periodic:
            periodic = False
            res.witnesses["orbit_periodic"] = {"vector": x.to_strings(), "ray_period": period}
    res.robust = robust if (res.inconclusive == 0 or not robust) else None
    res.orbit_periodic = periodic if (res.inconclusive == 0 or not periodic) else None
    return res


# -- bijectivity on the core ----------------------------------------------


@dataclass(frozen=True)
class Collision:
    y: TropicalVector
    y_prime: TropicalVector
    t: int


def _eigvec_in_class(A, rho, nodes, spec):
    basis = eigencone_basis(A, rho, spec)
    for comp, v in zip(basis.components, basis.generators):
        if comp <= nodes:
            return v
    raise TheoremViolation("spectral class carries no critical component", sorted(nodes))


def collision_search(A: TropicalMatrix, core: CoreDescription | None = None, probes: int = 200, seed: int = 0) -> Collision | None:
    """Exhibit ``y != y'`` in the core with ``A^t y = A^t y'``, or probe injectivity.

    If two spectral classes with roots ``rho_1 < rho_2`` access each other, take
    eigenvectors ``x_1, x_2`` of those classes and ``y' = rho_2 (x) x_2``,
    ``y = alpha (x) x_1 (+) y'`` with ``alpha`` just large enough that
    ``y != y'``; the slower component dies out after ``t`` steps.  Otherwise
    random pairs of core combinations are checked for injectivity, and a
    collision raises :class:`TheoremViolation`.
    """
    core = core or core_basis(A)
    spec = core.spectrum
    fnf = spec.fnf
    bij = is_bijective_on_core(A, spec)
    if not bij.value:
        spectral = spec.spectral_classes()
        pair = next(
            (mu, nu)
            for mu in spectral
            for nu in spectral
            if mu != nu and fnf.reduced.accesses(mu, nu) and fnf.class_rho[mu] != fnf.class_rho[nu]
        )
        mu, nu = pair
        r1, r2 = fnf.class_rho[mu], fnf.class_rho[nu]
        x1 = _eigvec_in_class(A, r1, fnf.classes[mu], spec)
        x2 = _eigvec_in_class(A, r2, fnf.classes[nu], spec)
        if not x1.support <= x2.support:
            raise TheoremViolation("eigenvector supports are not nested", (x1.to_strings(), x2.to_strings()))
        gap = max(x2[i] - x1[i] for i in x1.support)
        beta = r2
        alpha = canon(beta + int(Fraction(gap).__floor__()) + 1)
        y_prime = x2.shift(beta)
        y = x1.shift(alpha) | y_prime
        if y == y_prime:
            raise TheoremViolation("collision construction produced equal vectors", None)
        bound = max(
            Fraction(alpha + x1[i] - beta - x2[i], r2 - r1) for i in x1.support
        )
        u, v = y, y_prime
        for t in range(1, int(bound) + 3):
            u, v = A @ u, A @ v
            if u == v:
                if not (core_membership(y, core) and core_membership(y_prime, core)):
                    raise TheoremViolation("collision vectors are not in the core", (y.to_strings(), y_prime.to_strings()))
                return Collision(y, y_prime, t)
        raise TheoremViolation("constructed pair never collides", (y.to_strings(), y_prime.to_strings()))
    ext = core.extremals.vectors
    if not ext:
        return None
    rng = random.Random(seed)

    def coeffs():
        return TropicalVector(
            [EPS if rng.random() < 0.25 else canon(Fraction(rng.randint(-12, 12), rng.randint(1, 3))) for _ in ext]
        )

    for _ in range(probes):
        c1 = coeffs()
        if rng.random() < 0.5:
            c2 = coeffs()
        else:
            k = rng.randrange(len(ext))
            vals = list(c1)
            vals[k] = EPS if vals[k] is not EPS and rng.random() < 0.3 else canon(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))
            c2 = TropicalVector(vals)
        y, y2 = combine(ext, c1), combine(ext, c2)
        if y != y2 and A @ y == A @ y2:
            raise TheoremViolation("bijective core map is not injective", (y.to_strings(), y2.to_strings()))
    return None


# -- random matrices ------------------------------------------------------


def random_matrix(
    rng: random.Random,
    n: int,
    density: float = 0.6,
    entry_range: tuple = (-5, 5),
    max_denominator: int = 1,
    no_zero_columns: bool = False,
) -> TropicalMatrix:
    """Random max-plus matrix; each entry finite with probability ``density``."""
    lo, hi = entry_range

    def val():
        return canon(Fraction(rng.randint(lo, hi), rng.randint(1, max_denominator)))

    rows = [[val() if rng.random() < density else EPS for _ in range(n)] for _ in range(n)]
    if no_zero_columns:
        for j in range(n):
            if all(rows[i][j] is EPS for i in range(n)):
                rows[rng.randrange(n)][j] = val()
    return TropicalMatrix(rows)


def random_irreducible(rng: random.Random, n: int, density: float = 0.4, entry_range: tuple = (-5, 5), max_denominator: int = 1) -> TropicalMatrix:
    while True:
        A = random_matrix(rng, n, density, entry_range, max_denominator)
        _, red = scc_condense(build_digraph(A))
        if red.r == 1 and not red.trivial[0]:
            return A


# -- verification driver --------------------------------------------------


@dataclass
class VerifyConfig:
    horizon: int | None = None
    samples: int = 4
    probes: int = 20
    power_t: int = 8
    bijective_power_t: int = 6
    far: bool = True
    seed: int = 0
    brute_force_max_n: int = 7
    mutate: bool = False


@dataclass
class Check:
    name: str
    status: str
    detail: object = None

    def to_json(self):
        d = {"name": self.name, "status": self.status}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class VerifyReport:
    matrix: TropicalMatrix
    checks: list

    def count(self, status: str) -> int:
        return sum(1 for c in self.checks if c.status == status)

    @property
    def passed(self) -> bool:
        return self.count("fail") == 0

    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_strings(),
            "passed": self.passed,
            "counts": {s: self.count(s) for s in ("pass", "fail", "inconclusive")},
            "checks": [c.to_json() for c in self.checks],
        }


def _mutated(core: CoreDescription) -> CoreDescription:
    ext = core.extremals
    return dataclasses.replace(core, extremals=GeneratingSet(ext.vectors[:-1], ext.n, ext.semiring))


def verify_suite(A: TropicalMatrix, config: VerifyConfig | None = None) -> VerifyReport:
    """Run every analytic-versus-oracle cross-check on one max-plus matrix."""
    cfg = config or VerifyConfig()
    checks = []

    def run(name, fn):
        try:
            out = fn()
        except TheoremViolation as exc:
            checks.append(Check(name, "fail", {"error": str(exc), "witness": _jsonable(exc.witness)}))
            return
        if isinstance(out, Check):
            checks.append(out)
        elif out is None or out is True:
            checks.append(Check(name, "pass"))
        elif out is False:
            checks.append(Check(name, "fail"))
        else:
            status, detail = out
            checks.append(Check(name, status, detail))

    try:
        spec = spectrum(A)
        core = core_basis(A, spec)
    except TheoremViolation as exc:
        return VerifyReport(A, [Check("core_basis", "fail", {"error": str(exc), "witness": _jsonable(exc.witness)})])
    if cfg.mutate:
        core = _mutated(core)
    sigma = spec.sigma_lambda
    horizon = cfg.horizon or default_horizon(A.n, sigma)
    tmax = default_tmax(A.n, sigma)
    fnf = spec.fnf

    if A.n <= cfg.brute_force_max_n:
        run("max_cycle_mean", lambda: max_cycle_mean(A) == brute_max_cycle_mean(A))
        run("critical_graph", lambda: _check_critical(A))
        run("class_cyclicity", lambda: all(
            fnf.class_cyclicity[mu] == brute_cyclicity(A, fnf.classes[mu]) for mu in fnf.nontrivial()
        ))
    run("power_associativity", lambda: all(mat_power(A, t) == mat_power_iterated(A, t) for t in (2, 3, 5, 8)))
    run("power_spectrum", lambda: _check_power_spectrum(A, spec, cfg.power_t))
    run("eigencone_generators", lambda: _check_eigencones(A, spec))
    run("reconstruction", lambda: _check_reconstruction(A, spec))
    run("core_two_forms", lambda: span_equal(core.extremals.vectors, core_by_eigenvalue_periods(A, spec).vectors)
        and span_equal(core.extremals.vectors, core.generators()))
    run("core_in_column_spans", lambda: _check_core_in_spans(A, core, horizon))
    run("core_size", lambda: len(core.extremals) <= A.n)
    run("eigencone_periodicity", lambda: _check_eigencone_periodicity(A, spec))
    run("finite_stabilization", lambda: _check_stabilization(A, core, horizon, cfg.far))
    run("column_law", lambda: _check_column_law(A, core, tmax, cfg.far))
    run("support_profile", lambda: all(core_support_profile(v, core).consistent for v in core.extremals))
    run("extremal_orbits", lambda: _check_extremal_orbits(A, core, horizon))
    run("spectral_column_periodicity", lambda: _check_spectral_columns(A, spec, horizon, cfg.far))
    if not A.has_zero_column():
        run("robustness", lambda: _check_robustness(A, core, cfg, horizon))
    run("bijectivity", lambda: _check_bijectivity(A, core, cfg))
    run("classification", lambda: _check_classification(A, core))
    if A.is_integer():
        run("integer_generators", lambda: _check_integer(A, core))
    if fnf.r == 1:
        run("cyclicity_theorem", lambda: _check_cyclicity_theorem(A, spec, horizon))
        run("power_splitting", lambda: _check_power_splitting(A, cfg.power_t))
    return VerifyReport(A, checks)


def _jsonable(x):
    if isinstance(x, TropicalVector):
        return x.to_strings()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is EPS or isinstance(x, Fraction):
        return format_scalar(x)
    return x


def _check_critical(A):
    rho = max_cycle_mean(A)
    nodes, edges = brute_critical_graph(A)
    if rho is EPS:
        return not nodes
    cg = critical_graph(A)
    if cg.nodes != nodes or cg.edges != edges:
        return "fail", {"analytic": sorted(cg.edges), "brute": sorted(edges)}
    for comp, s in zip(cg.components, cg.cyclicities):
        sub = TropicalMatrix._from_rows(
            [{j: 0 for (a, j) in edges if a == i and j in comp} if i in comp else {} for i in range(A.n)]
        )
        if brute_cyclicity(sub, comp) != s:
            return "fail", {"component": sorted(comp), "cyclicity": s}
    return True


def _check_power_spectrum(A, spec, tmax):
    for t in range(1, tmax + 1):
        rep = power_spectrum_check(A, t, spec)
        if not rep.passed:
            return "fail", {"t": t, "eigenvalues": [format_scalar(r) for r in rep.eigenvalues_power],
                            "expected": [format_scalar(r) for r in rep.eigenvalues_expected],
                            "critical_identity": rep.critical_matrix_identity,
                            "derived_counts_ok": rep.derived_counts_ok}
    return True


def _check_eigencones(A, spec):
    fnf = spec.fnf
    for rho in spec.eigenvalues:
        basis = eigencone_basis(A, rho, spec)
        for comp, v in zip(basis.components, basis.generators):
            if not is_eigenvector(A, v, rho):
                return "fail", {"rho": format_scalar(rho), "vector": v.to_strings()}
            mu = fnf.partition.class_of[min(comp)]
            if v.support != fnf.nodes_accessing([mu]):
                return "fail", {"support": sorted(v.support), "expected": sorted(fnf.nodes_accessing([mu]))}
        gens = list(basis.generators)
        for k, v in enumerate(gens):
            if len(gens) > 1 and span_membership(v, gens[:k] + gens[k + 1 :]):
                return "fail", {"not_extremal": v.to_strings()}
    return True


def _check_reconstruction(A, spec):
    for rho in spec.eigenvalues:
        for v in eigencone_basis(A, rho, spec).generators:
            if reconstruct_from_critical(A, rho, v, spec) != v:
                return "fail", {"rho": format_scalar(rho), "vector": v.to_strings()}
    return True


def _check_core_in_spans(A, core, horizon):
    ext = core.extremals.vectors
    P = A
    for t in range(1, horizon + 1):
        cols = P.columns()
        for v in ext:
            if not span_membership(v, cols):
                return "fail", {"t": t, "extremal": v.to_strings()}
        P = mat_mul(P, A)
    return True


def _check_eigencone_periodicity(A, spec):
    for rho in spec.eigenvalues:
        s = spec.sigma(rho)
        seq = {}
        P = A
        for t in range(1, 3 * s + 1):
            specP = spectrum(P)
            seq[t] = eigencone_basis(P, canon(t * rho), specP).generators.vectors
            P = mat_mul(P, A)
        for t in range(1, 2 * s + 1):
            if not span_equal(seq[t], seq[t + s]):
                return "fail", {"rho": format_scalar(rho), "t": t, "sigma_rho": s}
            if not span_contains(seq[s], seq[t]):
                return "fail", {"rho": format_scalar(rho), "t": t, "inclusion": False}
    sl = spec.sigma_lambda
    if spec.eigenvalues:
        cones = {t: sigma_sum_cone(A, t, spec).vectors for t in range(1, 3 * sl + 1)}
        for t in range(1, 2 * sl + 1):
            if not span_equal(cones[t], cones[t + sl]) or not span_contains(cones[sl], cones[t]):
                return "fail", {"sum_cone_t": t, "sigma_lambda": sl}
    return True


def _check_stabilization(A, core, horizon, far):
    predicted = core.stabilization.stabilizes
    chain = span_chain(A, horizon, far)
    detail = {"predicted": predicted, "status": chain.status, "t": chain.stabilized_at}
    if not chain.nested:
        return "fail", dict(detail, nested=False)
    if chain.status == "inconclusive":
        return "inconclusive", detail
    if chain.stabilizes != predicted:
        return "fail", detail
    if predicted:
        stable = chain.stable_span or column_span(mat_power(A, chain.stabilized_at))
        if not span_equal(stable.vectors, core.extremals.vectors):
            return "fail", dict(detail, stable_span_is_core=False)
    return "pass", detail


def _check_column_law(A, core, tmax, far):
    fnf = core.spectrum.fnf
    sl = core.sigma_lambda
    spectral_nodes = {i for mu in core.spectrum.spectral_classes() for i in fnf.classes[mu]}
    bad_nodes = {i for mu in fnf.nontrivial() if not fnf.is_spectral(mu) for i in fnf.classes[mu]}
    P = A
    for t in range(1, tmax + 1):
        for i in bad_nodes:
            if core_membership(P.column(i), core):
                return "fail", {"non_spectral_column": i, "t": t}
        if t < tmax:
            P = mat_mul(P, A)
    for start in ((tmax,) + ((max(FAR_EXPONENT, tmax),) if far else ())):
        Q = mat_power(A, start)
        ok = True
        for _ in range(sl):
            if not all(core_membership(Q.column(i), core) for i in spectral_nodes):
                ok = False
                break
            Q = mat_mul(Q, A)
        if ok:
            return "pass", {"spectral_columns_in_core_from": start}
    # no effective bound on "large enough t" is available, so a miss is not a violation
    return "inconclusive", {"spectral_columns_in_core": False}


def _check_extremal_orbits(A, core, horizon):
    from .core import core_action

    act = core_action(core)
    where = {k: len(c) for c in act.cycles for k in c}
    for k, v in enumerate(core.extremals):
        tr = orbit_simulate(A, v, max(horizon, len(core.extremals) + 1))
        p = tr.periodicity
        if p is None or p.defect != 0 or where[k] % p.period:
            return "fail", {"extremal": v.to_strings(), "cycle_length": where[k]}
    return True


def _check_spectral_columns(A, spec, horizon, far):
    fnf = spec.fnf
    idx = [i for mu in spec.spectral_classes() for i in fnf.classes[mu]]
    if finite_stabilization(A, fnf).stabilizes:
        idx = range(A.n)
    for j in idx:
        if column_periodicity(A, j, horizon, far) is None:
            return ("fail" if far else "inconclusive"), {"column": j}
    return True


def _check_robustness(A, core, cfg, horizon):
    bf = brute_force_robust(A, cfg.samples, horizon, cfg.seed, cfg.far, core.sigma_lambda)
    r = is_robust(A, core.spectrum).value
    o = is_orbit_periodic(A, core).value
    detail = {"analytic_robust": r, "oracle_robust": bf.robust, "analytic_orbit_periodic": o,
              "oracle_orbit_periodic": bf.orbit_periodic}
    if bf.robust is None or bf.orbit_periodic is None:
        return "inconclusive", detail
    if bf.robust != r or bf.orbit_periodic != o:
        return "fail", dict(detail, witnesses=bf.witnesses)
    return "pass", detail


def _check_bijectivity(A, core, cfg):
    bij = is_bijective_on_core(A, core.spectrum).value
    hit = collision_search(A, core, cfg.probes, cfg.seed)
    if (hit is None) != bij:
        return "fail", {"bijective": bij, "collision": hit is not None}
    for t in range(2, cfg.bijective_power_t + 1):
        if is_bijective_on_core(mat_power(A, t)).value != bij:
            return "fail", {"power": t}
    detail = {"bijective": bij}
    if hit is not None:
        detail.update(y=hit.y.to_strings(), y_prime=hit.y_prime.to_strings(), t=hit.t)
    return "pass", detail


def _check_classification(A, core):
    rep = classify(A, core=core)
    fails = rep.implication_failures()
    return ("fail", {"implications": fails}) if fails else True


def _check_integer(A, core):
    from .classify import integer_generator_check

    return integer_generator_check(A, core).value is True


def _check_cyclicity_theorem(A, spec, horizon):
    if spec.is_empty:
        return True
    rho = spec.eigenvalues[-1]
    sigma = critical_graph(A).cyclicity
    info = matrix_power_periodicity(A, horizon)
    if info is None:
        return "inconclusive", {"horizon": horizon}
    ok = info.period == sigma and info.growth == canon(sigma * rho)
    return ("pass" if ok else "fail"), {"period": info.period, "sigma": sigma, "defect": info.defect}


def _check_power_splitting(A, tmax):
    g = build_digraph(A)
    if len(g.edges) == 0:
        return True
    sigma = component_cyclicity(g, range(A.n))
    for t in range(1, tmax + 1):
        part, red = scc_condense(build_digraph(mat_power(A, t)))
        d = gcd(t, sigma)
        gt = build_digraph(mat_power(A, t))
        if len(part.classes) != d or any(component_cyclicity(gt, c) != sigma // d for c in part.classes):
            return "fail", {"t": t, "blocks": len(part.classes), "expected_blocks": d}
    return True


# -- corpus ---------------------------------------------------------------


@dataclass
class CorpusReport:
    seed: int
    count: int
    n: int
    density: float
    entry_range: tuple
    summary: dict
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "n": self.n,
            "density": self.density,
            "entry_range": list(self.entry_range),
            "summary": self.summary,
            "failures": self.failures,
        }


def minimize_counterexample(A: TropicalMatrix, still_fails: Callable[[TropicalMatrix], bool]) -> TropicalMatrix:
    """Greedy shrinking: drop nodes, then entries, while the failure persists."""
    changed = True
    while changed:
        changed = False
        for k in range(A.n):
            if A.n == 1:
                break
            keep = [i for i in range(A.n) if i != k]
            B = TropicalMatrix._from_rows(
                [{keep.index(j): v for j, v in A.rows[i].items() if j != k} for i in keep]
            )
            if still_fails(B):
                A, changed = B, True
                break
        if changed:
            continue
        for i, j, _ in list(A.edges()):
            rows = [dict(r) for r in A.rows]
            del rows[i][j]
            B = TropicalMatrix._from_rows(rows)
            if still_fails(B):
                A, changed = B, True
                break
    return A


def corpus_run(
    seed: int,
    count: int,
    n: int = 4,
    density: float = 0.6,
    entry_range: tuple = (-5, 5),
    max_denominator: int = 1,
    config: VerifyConfig | None = None,
    minimize: bool = True,
) -> CorpusReport:
    """Run :func:`verify_suite` on ``count`` random matrices of size ``n``.

    Deterministic for a given seed; failing matrices are shrunk to small
    counterexamples.
    """
    cfg = config or VerifyConfig(seed=seed)
    rng = random.Random(seed)
    summary = {}
    failures = []
    for k in range(count):
        A = random_matrix(rng, n, density, entry_range, max_denominator)
        rep = verify_suite(A, cfg)
        for c in rep.checks:
            summary.setdefault(c.name, {"pass": 0, "fail": 0, "inconclusive": 0})[c.status] += 1
        if not rep.passed:
            names = {c.name for c in rep.failures()}

            def still_fails(B, names=names):
                try:
                    r = verify_suite(B, cfg)
                except Exception:
                    return False
                return any(c.name in names and c.status == "fail" for c in r.checks)

            small = minimize_counterexample(A, still_fails) if minimize else A
            failures.append(
                {
                    "index": k,
                    "matrix": A.to_strings(),
                    "minimized": small.to_strings(),
                    "failed_checks": sorted(names),
                }
            )
    return CorpusReport(seed, count, n, density, tuple(entry_range), summary, failures)
