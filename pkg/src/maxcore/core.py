"""The max-algebraic core of a matrix and the action of the matrix on it.

The core (intersection of the column spans of all powers) is built
constructively as the Minkowski sum of the eigencones of ``A^sigma`` where
``sigma`` is the lcm of the critical cyclicities over the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Mapping

from .matrix import (
    GeneratingSet,
    TropicalMatrix,
    TropicalVector,
    extremal_reduction,
    mat_power,
    scale_vector,
    span_membership,
)
from .semiring import canon
from .spectral import (
    FrobeniusForm,
    Spectrum,
    TheoremViolation,
    eigencone_basis,
    frobenius_normal_form,
    spectrum,
)


def default_tmax(n: int, sigma: int) -> int:
    """Bound used for "large enough t" checks."""
    return n * n + 3 * n * sigma


@dataclass(frozen=True)
class Stabilization:
    stabilizes: bool
    offending_classes: tuple = ()
    witness_t: int | None = None


@dataclass(frozen=True)
class CoreDescription:
    matrix: TropicalMatrix
    spectrum: Spectrum = field(repr=False)
    sigma_lambda: int
    power: TropicalMatrix = field(repr=False)
    power_spectrum: Spectrum = field(repr=False)
    per_eigenvalue: Mapping
    extremals: GeneratingSet
    action: tuple
    growth: tuple
    stabilization: Stabilization

    @property
    def n(self) -> int:
        return self.matrix.n

    def __contains__(self, v: TropicalVector) -> bool:
        return core_membership(v, self)

    def generators(self) -> list:
        """Union of all eigencone generators of ``A^sigma`` (before reduction)."""
        return [v for b in self.per_eigenvalue.values() for v in b.generators]


def finite_stabilization(A: TropicalMatrix, fnf: FrobeniusForm | None = None) -> Stabilization:
    """Column spans of powers reach the core in finitely many steps iff every
    nontrivial class is spectral."""
    fnf = fnf or frobenius_normal_form(A)
    bad = tuple(mu for mu in fnf.nontrivial() if not fnf.is_spectral(mu))
    return Stabilization(not bad, bad)


def _action(A: TropicalMatrix, extremals: GeneratingSet):
    index = {v: k for k, v in enumerate(extremals.vectors)}
    targets = []
    growth = []
    for k, v in enumerate(extremals.vectors):
        w = A @ v
        if w.is_zero():
            raise TheoremViolation("matrix maps a core extremal to zero", {"extremal": k})
        sw = scale_vector(w)
        if sw not in index:
            raise TheoremViolation(
                "image of a core extremal is not proportional to an extremal",
                {"extremal": v.to_strings(), "image": w.to_strings()},
            )
        targets.append(index[sw])
        growth.append(w.norm())
    if sorted(targets) != list(range(len(targets))):
        raise TheoremViolation("action on core extremals is not a permutation", {"targets": targets})
    return tuple(targets), tuple(growth)


def core_basis(A: TropicalMatrix, spec: Spectrum | None = None) -> CoreDescription:
    """Scaled extremals of ``core(A)`` and the permutation induced by ``A`` on them."""
    spec = spec or spectrum(A)
    sigma = spec.sigma_lambda
    B = mat_power(A, sigma)
    spec_b = spectrum(B)
    expected = tuple(sorted(canon(sigma * r) for r in spec.eigenvalues))
    if spec_b.eigenvalues != expected:
        raise TheoremViolation(
            "spectrum of A^sigma differs from sigma * spectrum(A)",
            {"got": spec_b.eigenvalues, "expected": expected},
        )
    per = {rho: eigencone_basis(B, canon(sigma * rho), spec_b) for rho in spec.eigenvalues}
    gens = [v for b in per.values() for v in b.generators]
    extremals = extremal_reduction(GeneratingSet.of(gens, A.n, A.semiring))
    if len(extremals) > A.n:
        raise TheoremViolation("core has more than n extremals", {"count": len(extremals)})
    targets, growth = _action(A, extremals)
    return CoreDescription(
        A, spec, sigma, B, spec_b, per, extremals, targets, growth, finite_stabilization(A, spec.fnf)
    )


def core_membership(v: TropicalVector, core: CoreDescription) -> bool:
    return span_membership(v, core.extremals.vectors)


@dataclass(frozen=True)
class CoreAction:
    cycles: tuple
    cycle_growth: tuple

    @property
    def is_identity(self) -> bool:
        return all(len(c) == 1 for c in self.cycles)

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles)) if self.cycles else 1


def core_action(core: CoreDescription) -> CoreAction:
    """Cycle decomposition of the action; each cycle carries its total growth
    (``A^len v = growth (x) v`` for every extremal ``v`` on the cycle)."""
    seen = set()
    cycles = []
    growths = []
    for start in range(len(core.action)):
        if start in seen:
            continue
        cyc = []
        g = 0
        k = start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            g += core.growth[k]
            k = core.action[k]
        cycles.append(tuple(cyc))
        growths.append(canon(g))
    return CoreAction(tuple(cycles), tuple(growths))


@dataclass(frozen=True)
class SupportProfile:
    per_class: tuple
    final_classes: tuple
    final_classes_spectral: bool

    @property
    def has_partial(self) -> bool:
        return "partial" in self.per_class

    @property
    def consistent(self) -> bool:
        """Necessary condition for membership in the core."""
        return not self.has_partial and self.final_classes_spectral


def support_profile(z: TropicalVector, fnf: FrobeniusForm) -> SupportProfile:
    """Classify each class as fully inside, outside, or cut by ``supp z``.

    ``fnf`` should be the Frobenius form of ``A^sigma``; for vectors of the
    core no class is cut and the final classes of the support subgraph are
    spectral.
    """
    if z.is_zero():
        raise ValueError("support profile of the zero vector")
    supp = z.support
    kinds = []
    for c in fnf.classes:
        inter = len(c & supp)
        kinds.append("full" if inter == len(c) else "empty" if inter == 0 else "partial")
    full = {mu for mu, k in enumerate(kinds) if k == "full"}
    finals = tuple(
        sorted(mu for mu in full if not any(a == mu and b in full and b != mu for a, b in fnf.reduced.edges))
    )
    return SupportProfile(tuple(kinds), finals, all(fnf.is_spectral(mu) for mu in finals))


def core_support_profile(z: TropicalVector, core: CoreDescription) -> SupportProfile:
    return support_profile(z, core.power_spectrum.fnf)


def eigencone_sequence(A: TropicalMatrix, rho, tmax: int) -> list:
    """Generators of ``V(A^t, t*rho)`` for ``t = 1..tmax``."""
    out = []
    P = A
    for t in range(1, tmax + 1):
        out.append(eigencone_basis(P, canon(t * rho)))
        if t < tmax:
            P = P @ A
    return out


def sigma_sum_cone(A: TropicalMatrix, t: int, spec: Spectrum | None = None) -> GeneratingSet:
    """Generators of the Minkowski sum of ``V(A^t, t*rho)`` over the spectrum."""
    spec = spec or spectrum(A)
    P = mat_power(A, t)
    spec_p = spectrum(P)
    gens = []
    for rho in spec.eigenvalues:
        gens.extend(eigencone_basis(P, canon(t * rho), spec_p).generators)
    return GeneratingSet.of(gens, A.n, A.semiring)


def core_by_eigenvalue_periods(A: TropicalMatrix, spec: Spectrum | None = None) -> GeneratingSet:
    """Alternative form of the core: sum over ``rho`` of ``V(A^sigma_rho, sigma_rho*rho)``."""
    spec = spec or spectrum(A)
    gens = []
    for rho in spec.eigenvalues:
        s = spec.sigma(rho)
        gens.extend(eigencone_basis(mat_power(A, s), canon(s * rho)).generators)
    return GeneratingSet.of(gens, A.n, A.semiring)
