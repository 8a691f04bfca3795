"""Reducible max-plus spectral theory.

Frobenius normal form, maximum cycle means, critical graphs, the spectrum of
nonzero eigenvalues with its spectral classes, the normalized subproblem for
an eigenvalue and its eigencone generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

from .graph import (
    Digraph,
    ReducedGraph,
    SccPartition,
    build_digraph,
    component_cyclicity,
    digraph_from_edges,
    scc_condense,
    strongly_connected_components,
)
from .matrix import GeneratingSet, TropicalMatrix, TropicalVector, kleene_star, mat_power, proportional, scale_vector
from .semiring import EPS, MAX_PLUS, Mode, SemiringError, canon


class AcyclicGraph(ValueError):
    """The digraph of the matrix has no cycle, so there is no critical graph."""


class NotAnEigenvalue(ValueError):
    pass


class TheoremViolation(AssertionError):
    """An identity guaranteed by the theory failed; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def require_maxplus(A: TropicalMatrix):
    if A.semiring.mode is not Mode.MAX_PLUS:
        raise SemiringError(f"spectral analysis needs a max-plus matrix, got {A.semiring.name}")


def _karp(succ, comp) -> Fraction | int:
    """Maximum cycle mean of a strongly connected, nontrivial node set."""
    m = len(comp)
    s = min(comp)
    D = [{s: 0}]
    for _ in range(m):
        prev = D[-1]
        cur = {}
        for u, du in prev.items():
            for v, w in succ[u].items():
                if v in comp:
                    val = du + w
                    if v not in cur or val > cur[v]:
                        cur[v] = val
        D.append(cur)
    best = None
    for v, dm in D[m].items():
        worst = None
        for k in range(m):
            dk = D[k].get(v)
            if dk is None:
                continue
            q = Fraction(dm - dk, m - k)
            if worst is None or q < worst:
                worst = q
        if worst is not None and (best is None or worst > best):
            best = worst
    return canon(best)


def max_cycle_mean(A: TropicalMatrix):
    """Maximum cycle mean ``rho(A)``; ``EPS`` when the digraph is acyclic."""
    require_maxplus(A)
    best = EPS
    for comp in strongly_connected_components(A.n, A.rows):
        if len(comp) == 1:
            (i,) = comp
            if i not in A.rows[i]:
                continue
        rho = _karp(A.rows, comp)
        if best is EPS or rho > best:
            best = rho
    return best


@dataclass(frozen=True)
class FrobeniusForm:
    matrix: TropicalMatrix
    partition: SccPartition
    reduced: ReducedGraph
    class_rho: tuple
    class_cyclicity: tuple

    @property
    def permutation(self) -> list:
        return self.partition.order

    @property
    def classes(self) -> tuple:
        return self.partition.classes

    @property
    def r(self) -> int:
        return len(self.classes)

    def permuted_matrix(self) -> TropicalMatrix:
        return self.matrix.permuted(self.permutation)

    def nontrivial(self) -> list:
        return [mu for mu in range(self.r) if not self.reduced.trivial[mu]]

    def is_spectral(self, nu: int) -> bool:
        """Class is nontrivial and no class accessing it has a larger Perron root."""
        if self.reduced.trivial[nu]:
            return False
        rho = self.class_rho[nu]
        return all(
            self.reduced.trivial[mu] or self.class_rho[mu] <= rho for mu in self.reduced.accessed_by[nu]
        )

    def nodes_accessing(self, classes) -> frozenset:
        cls = set()
        for nu in classes:
            cls |= self.reduced.accessed_by[nu]
        return frozenset(i for mu in cls for i in self.classes[mu])


def frobenius_normal_form(A: TropicalMatrix) -> FrobeniusForm:
    require_maxplus(A)
    g = build_digraph(A)
    partition, reduced = scc_condense(g)
    rhos = []
    cycs = []
    for mu, c in enumerate(partition.classes):
        if reduced.trivial[mu]:
            rhos.append(EPS)
            cycs.append(1)
        else:
            rhos.append(_karp(A.rows, c))
            cycs.append(component_cyclicity(g, c))
    return FrobeniusForm(A, partition, reduced, tuple(rhos), tuple(cycs))


@dataclass(frozen=True)
class CriticalGraph:
    rho: object
    nodes: frozenset
    edges: frozenset
    components: tuple
    cyclicities: tuple

    @property
    def cyclicity(self) -> int:
        return lcm(*self.cyclicities) if self.cyclicities else 1

    def digraph(self, n: int) -> Digraph:
        return digraph_from_edges(n, self.edges)


def _critical_from_star(A: TropicalMatrix, rho, S: TropicalMatrix) -> CriticalGraph:
    edges = set()
    for i, r in enumerate(A.rows):
        for j, a in r.items():
            back = S.rows[j].get(i)
            if back is not None and a - rho + back == 0:
                edges.add((i, j))
    nodes = frozenset(i for e in edges for i in e)
    succ = [dict() for _ in range(A.n)]
    for i, j in edges:
        succ[i][j] = 0
    comps = [c for c in strongly_connected_components(A.n, succ) if c <= nodes]
    comps.sort(key=min)
    g = Digraph(A.n, tuple(succ))
    cycs = tuple(component_cyclicity(g, c) for c in comps)
    return CriticalGraph(rho, nodes, frozenset(edges), tuple(comps), cycs)


def critical_graph(A: TropicalMatrix, rho=None) -> CriticalGraph:
    """Nodes and edges on cycles attaining the maximum cycle mean.

    Edge ``(i, j)`` is critical iff ``a_ij - rho + (A - rho)*_ji = 0``.
    """
    require_maxplus(A)
    if rho is None:
        rho = max_cycle_mean(A)
    if rho is EPS:
        raise AcyclicGraph("matrix has no cycles")
    S = kleene_star(A.shift(-rho))
    return _critical_from_star(A, rho, S)


def critical_matrix(A: TropicalMatrix) -> TropicalMatrix:
    """0/bottom matrix marking the critical edges of ``A``."""
    require_maxplus(A)
    rows = [dict() for _ in range(A.n)]
    if max_cycle_mean(A) is not EPS:
        for i, j in critical_graph(A).edges:
            rows[i][j] = 0
    return TropicalMatrix._from_rows(rows, MAX_PLUS)


@dataclass(frozen=True)
class EigenvalueData:
    rho: object
    spectral_classes: tuple
    nodes: frozenset
    critical: CriticalGraph

    @property
    def sigma(self) -> int:
        return self.critical.cyclicity


@dataclass(frozen=True)
class Spectrum:
    fnf: FrobeniusForm
    eigenvalues: tuple
    per_eigenvalue: Mapping = field(repr=False)

    @property
    def sigma_lambda(self) -> int:
        return lcm(*(d.sigma for d in self.per_eigenvalue.values())) if self.eigenvalues else 1

    def sigma(self, rho) -> int:
        return self[rho].sigma

    def __getitem__(self, rho) -> EigenvalueData:
        try:
            return self.per_eigenvalue[rho]
        except KeyError:
            raise NotAnEigenvalue(f"{rho} is not an eigenvalue") from None

    @property
    def is_empty(self) -> bool:
        return not self.eigenvalues

    def spectral_classes(self) -> list:
        return sorted(mu for d in self.per_eigenvalue.values() for mu in d.spectral_classes)


def spectrum(A: TropicalMatrix, fnf: FrobeniusForm | None = None) -> Spectrum:
    """Nonzero (finite) eigenvalues with spectral classes, ``M_rho`` and critical graphs.

    An all-trivial matrix yields an empty spectrum; callers check ``is_empty``.
    """
    require_maxplus(A)
    fnf = fnf or frobenius_normal_form(A)
    by_rho = {}
    for nu in range(fnf.r):
        if fnf.is_spectral(nu):
            by_rho.setdefault(fnf.class_rho[nu], []).append(nu)
    per = {}
    for rho in sorted(by_rho):
        classes = tuple(by_rho[rho])
        nodes = fnf.nodes_accessing(classes)
        sub = A.restrict(nodes).shift(-rho)
        per[rho] = EigenvalueData(rho, classes, nodes, critical_graph(sub, 0))
    return Spectrum(fnf, tuple(sorted(by_rho)), per)


def spectral_subproblem(A: TropicalMatrix, rho, spec: Spectrum | None = None) -> TropicalMatrix:
    """``A_rho``: the submatrix on ``M_rho`` normalized by ``rho``, bottom elsewhere."""
    spec = spec or spectrum(A)
    return A.restrict(spec[rho].nodes).shift(-rho)


@dataclass(frozen=True)
class EigenconeBasis:
    rho: object
    generators: GeneratingSet
    components: tuple
    representatives: tuple
    critical_nodes: frozenset

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def support_union(self) -> frozenset:
        return frozenset().union(*(v.support for v in self.generators)) if len(self) else frozenset()

    def support_intersection(self) -> frozenset:
        sets = [v.support for v in self.generators]
        return frozenset.intersection(*sets) if sets else frozenset()


def eigencone_basis(A: TropicalMatrix, rho, spec: Spectrum | None = None) -> EigenconeBasis:
    """Fundamental eigenvectors generating ``V(A, rho)``.

    One column of ``(A_rho)*`` per critical component of ``A_rho``, taken at the
    component's smallest node and scaled.
    """
    spec = spec or spectrum(A)
    data = spec[rho]
    S = kleene_star(spectral_subproblem(A, rho, spec))
    gens = []
    reps = []
    for comp in data.critical.components:
        rep = min(comp)
        col = S.column(rep)
        for i in comp:
            if not proportional(col, S.column(i)):
                raise TheoremViolation("star columns of one critical component are not proportional", (rep, i))
        gens.append(scale_vector(col))
        reps.append(rep)
    return EigenconeBasis(
        rho,
        GeneratingSet(tuple(gens), A.n, A.semiring),
        data.critical.components,
        tuple(reps),
        data.critical.nodes,
    )


def is_eigenvector(A: TropicalMatrix, x: TropicalVector, rho) -> bool:
    return not x.is_zero() and A @ x == x.shift(rho)


def reconstruct_from_critical(A: TropicalMatrix, rho, x_crit, spec: Spectrum | None = None) -> TropicalVector:
    """Rebuild an eigenvector of ``rho`` from its entries on the critical nodes.

    ``x_crit`` maps critical nodes of ``A_rho`` to values (a full vector is also
    accepted; only its critical entries are read).  The noncritical part is
    ``(B_NN)* (x) B_NC (x) x_C`` with ``B = A_rho``.
    """
    spec = spec or spectrum(A)
    B = spectral_subproblem(A, rho, spec)
    crit = spec[rho].critical.nodes
    if isinstance(x_crit, TropicalVector):
        xc = {i: x_crit[i] for i in crit if i in x_crit.support}
    else:
        xc = {i: v for i, v in x_crit.items() if v is not EPS}
        if not set(xc) <= crit:
            raise ValueError("x_crit has entries outside the critical nodes")
    noncrit = [i for i in range(A.n) if i not in crit]
    y = {}
    for i in noncrit:
        best = None
        for j, a in B.rows[i].items():
            if j in xc:
                v = a + xc[j]
                if best is None or v > best:
                    best = v
        if best is not None:
            y[i] = best
    R = kleene_star(B.restrict(noncrit))
    out = dict(xc)
    for i in noncrit:
        best = None
        for k, r in R.rows[i].items():
            if k in y:
                v = r + y[k]
                if best is None or v > best:
                    best = v
        if best is not None:
            out[i] = best
    return TropicalVector._from_dict(A.n, out, A.semiring)


@dataclass
class PowerSpectrumReport:
    t: int
    eigenvalues_power: tuple
    eigenvalues_expected: tuple
    critical_matrix_identity: bool
    derived_counts: dict
    derived_counts_ok: bool
    spectral_ancestry_ok: bool

    @property
    def eigenvalues_ok(self) -> bool:
        return self.eigenvalues_power == self.eigenvalues_expected

    @property
    def passed(self) -> bool:
        return self.eigenvalues_ok and self.critical_matrix_identity and self.derived_counts_ok and self.spectral_ancestry_ok


def power_spectrum_check(A: TropicalMatrix, t: int, spec: Spectrum | None = None) -> PowerSpectrumReport:
    """Compare the spectral data of ``A^t`` with what ``A`` predicts.

    Checks that the eigenvalues of ``A^t`` are ``t * rho``, that the critical
    matrix commutes with powering, and that every spectral class of ``A`` with
    cyclicity ``sigma`` splits into ``gcd(t, sigma)`` spectral classes of ``A^t``.
    """
    spec = spec or spectrum(A)
    fnf = spec.fnf
    P = mat_power(A, t)
    spec_t = spectrum(P)
    expected = tuple(sorted(canon(t * r) for r in spec.eigenvalues))
    crit_ok = mat_power(critical_matrix(A), t) == critical_matrix(P)
    fnf_t = spec_t.fnf
    spectral_t = [set(fnf_t.classes[mu]) for mu in spec_t.spectral_classes()]
    counts = {}
    ok = True
    for mu in spec.spectral_classes():
        nodes = fnf.classes[mu]
        got = sum(1 for c in spectral_t if c <= nodes)
        want = gcd(t, fnf.class_cyclicity[mu])
        counts[mu] = (got, want)
        ok = ok and got == want
    spectral_nodes = [set(fnf.classes[mu]) for mu in spec.spectral_classes()]
    ancestry = all(any(c <= s for s in spectral_nodes) for c in spectral_t)
    return PowerSpectrumReport(t, spec_t.eigenvalues, expected, crit_ok, counts, ok, ancestry)
