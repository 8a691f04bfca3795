"""Graph/spectral characterizations of the periodicity classes of a matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import CoreDescription, core_action, core_basis, finite_stabilization
from .matrix import TropicalMatrix
from .semiring import canon, format_scalar
from .spectral import Spectrum, eigencone_basis, spectrum


@dataclass(frozen=True)
class Verdict:
    """``value`` is ``None`` when the notion does not apply to the matrix."""

    value: bool | None
    witness: dict | None = None
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        out = {"value": self.value if self.value is not None else "not-applicable"}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


NOT_APPLICABLE_ZERO_COLUMN = Verdict(None, None, "matrix has a zero (all-bottom) column")


def _classes(fnf, mus):
    return [sorted(fnf.classes[m]) for m in mus]


def is_irreducible(A: TropicalMatrix, spec: Spectrum | None = None) -> Verdict:
    spec = spec or spectrum(A)
    fnf = spec.fnf
    return Verdict(fnf.r == 1, None if fnf.r == 1 else {"classes": _classes(fnf, range(fnf.r))})


def is_ultimately_periodic(A: TropicalMatrix, spec: Spectrum | None = None) -> Verdict:
    """Perron roots of all nontrivial classes coincide."""
    spec = spec or spectrum(A)
    fnf = spec.fnf
    roots = {fnf.class_rho[mu] for mu in fnf.nontrivial()}
    if len(roots) <= 1:
        return Verdict(True)
    top = max(roots)
    low = [mu for mu in fnf.nontrivial() if fnf.class_rho[mu] != top]
    return Verdict(
        False,
        {"class": sorted(fnf.classes[low[0]]), "rho": format_scalar(fnf.class_rho[low[0]]), "rho_max": format_scalar(top)},
    )


def _mutually_inaccessible_pair(fnf):
    nt = fnf.nontrivial()
    acc = fnf.reduced.access
    for a in nt:
        for b in nt:
            if a < b and b not in acc[a] and a not in acc[b] and fnf.class_rho[a] != fnf.class_rho[b]:
                return a, b
    return None


def is_robust(A: TropicalMatrix, spec: Spectrum | None = None) -> Verdict:
    """All nontrivial classes spectral, every critical graph primitive, and
    mutually inaccessible nontrivial classes share their Perron root."""
    if A.has_zero_column():
        return NOT_APPLICABLE_ZERO_COLUMN
    spec = spec or spectrum(A)
    fnf = spec.fnf
    stab = finite_stabilization(A, fnf)
    if not stab.stabilizes:
        return Verdict(False, {"condition": "non-spectral nontrivial class", "class": sorted(fnf.classes[stab.offending_classes[0]])})
    for rho in spec.eigenvalues:
        if spec.sigma(rho) != 1:
            return Verdict(False, {"condition": "imprimitive critical graph", "rho": format_scalar(rho), "sigma": spec.sigma(rho)})
    pair = _mutually_inaccessible_pair(fnf)
    if pair:
        return Verdict(False, {"condition": "incomparable classes with different roots", "classes": _classes(fnf, pair)})
    return Verdict(True)


def _support_nesting(bases: dict, scale: int = 1):
    """First pair ``rho1 < rho2`` whose eigencones violate support nesting."""
    rhos = sorted(bases)
    for i, r1 in enumerate(rhos):
        low = bases[r1].support_union()
        for r2 in rhos[i + 1 :]:
            high = bases[r2].support_intersection()
            if not low <= high:
                return {
                    "rho_low": format_scalar(canon(r1 * scale)) if scale != 1 else format_scalar(r1),
                    "rho_high": format_scalar(canon(r2 * scale)) if scale != 1 else format_scalar(r2),
                    "support_low": sorted(low),
                    "support_high": sorted(high),
                }
    return None


def is_core_robust(A: TropicalMatrix, core: CoreDescription | None = None) -> Verdict:
    """Action on the core extremals is the identity and eigencones of smaller
    eigenvalues have supports inside those of larger ones."""
    core = core or core_basis(A)
    act = core_action(core)
    if not act.is_identity:
        return Verdict(False, {"condition": "non-identity action", "cycles": [list(c) for c in act.cycles]})
    spec = core.spectrum
    bases = {rho: eigencone_basis(A, rho, spec) for rho in spec.eigenvalues}
    bad = _support_nesting(bases)
    if bad:
        return Verdict(False, {"condition": "support nesting", **bad})
    return Verdict(True)


def is_core_periodic(A: TropicalMatrix, core: CoreDescription | None = None) -> Verdict:
    """Support nesting for the eigencones of ``A^sigma``."""
    core = core or core_basis(A)
    bases = dict(core.per_eigenvalue)
    bad = _support_nesting(bases)
    if bad:
        bad = dict(bad, sigma=core.sigma_lambda)
        return Verdict(False, {"condition": "support nesting in A^sigma", **bad})
    return Verdict(True)


def is_orbit_periodic(A: TropicalMatrix, core: CoreDescription | None = None) -> Verdict:
    if A.has_zero_column():
        return NOT_APPLICABLE_ZERO_COLUMN
    core = core or core_basis(A)
    cp = is_core_periodic(A, core)
    if not cp.value:
        return Verdict(False, cp.witness)
    stab = core.stabilization
    if not stab.stabilizes:
        fnf = core.spectrum.fnf
        return Verdict(False, {"condition": "non-spectral nontrivial class", "class": sorted(fnf.classes[stab.offending_classes[0]])})
    return Verdict(True)


def _hamiltonian_cycle(edges: set, nodes: frozenset) -> bool:
    out = {}
    for i, j in edges:
        if i in nodes and j in nodes:
            if i in out:
                return False
            out[i] = j
    if set(out) != set(nodes) or set(out.values()) != set(nodes):
        return False
    start = min(nodes)
    k, steps = out[start], 1
    while k != start:
        k, steps = out[k], steps + 1
    return steps == len(nodes)


def is_weakly_stable(A: TropicalMatrix, spec: Spectrum | None = None) -> Verdict:
    """Each spectral class is initial and its critical graph is a Hamiltonian cycle."""
    spec = spec or spectrum(A)
    fnf = spec.fnf
    for rho in spec.eigenvalues:
        data = spec[rho]
        for nu in data.spectral_classes:
            nodes = fnf.classes[nu]
            if not fnf.reduced.is_initial(nu):
                accessing = sorted(mu for mu in fnf.reduced.accessed_by[nu] if mu != nu)
                return Verdict(False, {"condition": "spectral class not initial", "class": sorted(nodes), "accessed_by": _classes(fnf, accessing)})
            if not _hamiltonian_cycle(set(data.critical.edges), nodes):
                return Verdict(False, {"condition": "critical graph not a Hamiltonian cycle", "class": sorted(nodes)})
    return Verdict(True)


def is_bijective_on_core(A: TropicalMatrix, spec: Spectrum | None = None) -> Verdict:
    """No spectral class accesses a spectral class with a different Perron root."""
    spec = spec or spectrum(A)
    fnf = spec.fnf
    spectral = spec.spectral_classes()
    for mu in spectral:
        for nu in spectral:
            if mu != nu and fnf.reduced.accesses(mu, nu) and fnf.class_rho[mu] != fnf.class_rho[nu]:
                return Verdict(
                    False,
                    {
                        "condition": "spectral classes with different roots access each other",
                        "from_class": sorted(fnf.classes[mu]),
                        "to_class": sorted(fnf.classes[nu]),
                        "rho_from": format_scalar(fnf.class_rho[mu]),
                        "rho_to": format_scalar(fnf.class_rho[nu]),
                    },
                )
    return Verdict(True)


def integer_generator_check(A: TropicalMatrix, core: CoreDescription | None = None) -> Verdict:
    """For integer matrices: core extremals and the powered eigenvalues are integer."""
    if not A.is_integer():
        return Verdict(None, None, "matrix has non-integer entries")
    core = core or core_basis(A)
    spec = core.spectrum
    for rho in spec.eigenvalues:
        for s in (spec.sigma(rho), core.sigma_lambda):
            if Fraction(s * rho).denominator != 1:
                return Verdict(False, {"rho": format_scalar(rho), "power": s})
    for v in core.extremals:
        if not v.is_integer():
            return Verdict(False, {"extremal": v.to_strings()})
    return Verdict(True)


VERDICT_NAMES = (
    "irreducible",
    "ultimately_periodic",
    "robust",
    "orbit_periodic",
    "column_periodic",
    "core_robust",
    "core_periodic",
    "weakly_stable",
    "core_weakly_stable",
    "bijective_on_core",
    "finite_stabilization",
    "integer_generators",
)


@dataclass
class ClassificationReport:
    verdicts: dict = field(default_factory=dict)

    def __getattr__(self, name):
        v = self.__dict__.get("verdicts", {})
        if name in v:
            return v[name]
        raise AttributeError(name)

    def value(self, name):
        return self.verdicts[name].value

    def implication_failures(self) -> list:
        """Implications between classes that do not hold in this report."""
        rules = [
            ("irreducible", "ultimately_periodic"),
            ("ultimately_periodic", "orbit_periodic"),
            ("orbit_periodic", "column_periodic"),
            ("robust", "orbit_periodic"),
            ("robust", "finite_stabilization"),
            ("orbit_periodic", "finite_stabilization"),
            ("robust", "core_robust"),
            ("orbit_periodic", "core_periodic"),
            ("core_robust", "core_periodic"),
        ]
        failures = []
        for a, b in rules:
            va, vb = self.verdicts[a].value, self.verdicts[b].value
            if va is True and vb is False:
                failures.append(f"{a} => {b}")
        eqs = [("core_weakly_stable", "bijective_on_core")]
        for a, b in eqs:
            if self.verdicts[a].value != self.verdicts[b].value:
                failures.append(f"{a} <=> {b}")
        if self.verdicts["robust"].applicable:
            rhs = self.value("core_robust") and self.value("finite_stabilization")
            if self.value("robust") != rhs:
                failures.append("robust <=> core_robust and finite_stabilization")
        if self.verdicts["orbit_periodic"].applicable:
            rhs = self.value("core_periodic") and self.value("finite_stabilization")
            if self.value("orbit_periodic") != rhs:
                failures.append("orbit_periodic <=> core_periodic and finite_stabilization")
        return failures

    def to_json(self) -> dict:
        return {k: self.verdicts[k].to_json() for k in VERDICT_NAMES if k in self.verdicts}


def classify(A: TropicalMatrix, *, oracle: bool = False, horizon: int | None = None, core: CoreDescription | None = None) -> ClassificationReport:
    """All verdicts for ``A``.

    Column periodicity has no closed characterization; with ``oracle=True`` it
    is decided empirically by simulating every column sequence, otherwise it
    is reported as not applicable.
    """
    core = core or core_basis(A)
    spec = core.spectrum
    v = {}
    v["irreducible"] = is_irreducible(A, spec)
    v["ultimately_periodic"] = is_ultimately_periodic(A, spec)
    v["robust"] = is_robust(A, spec)
    v["orbit_periodic"] = is_orbit_periodic(A, core)
    if oracle:
        from .oracle import column_periodic_verdict

        v["column_periodic"] = column_periodic_verdict(A, horizon)
    else:
        v["column_periodic"] = Verdict(None, None, "empirical; run with the oracle enabled")
    v["core_robust"] = is_core_robust(A, core)
    v["core_periodic"] = is_core_periodic(A, core)
    v["weakly_stable"] = is_weakly_stable(A, spec)
    bij = is_bijective_on_core(A, spec)
    v["core_weakly_stable"] = Verdict(bij.value, bij.witness, "equivalent to bijectivity on the core")
    v["bijective_on_core"] = bij
    stab = core.stabilization
    v["finite_stabilization"] = Verdict(
        stab.stabilizes,
        None if stab.stabilizes else {"non_spectral_classes": _classes(spec.fnf, stab.offending_classes)},
    )
    v["integer_generators"] = integer_generator_check(A, core)
    return ClassificationReport(v)
