"""JSON-ready report builders shared by the command-line front end.

Reports label nodes, classes and extremals from 1.  Scalars are strings
(``"p/q"``, ``"-inf"``).
"""

from __future__ import annotations

import json
from importlib import resources

from .classify import classify
from .core import core_action, core_basis
from .fileformat import MatrixDocument, exact_exp
from .matrix import TropicalMatrix, TropicalVector
from .oracle import CorpusReport, OrbitTrace, VerifyReport, collision_search, span_chain
from .semiring import EPS, format_scalar
from .spectral import spectrum

SCHEMA_VERSION = "report-v1"

_NODE_KEYS = {
    "class", "from_class", "to_class", "support_low", "support_high", "support", "expected",
    "component", "column", "cycles", "non_spectral_column", "classes", "accessed_by", "non_spectral_classes",
}


def load_schema() -> dict:
    return json.loads(resources.files("maxcore").joinpath("schema", f"{SCHEMA_VERSION}.json").read_text())


class ScalarFormat:
    """Formats scalars natively, or as ``2**v`` for the max-times display.

    ``representable`` turns false when some value has no exact max-times image.
    """

    def __init__(self, display: str = "maxplus"):
        self.display = display
        self.representable = True

    def __call__(self, x) -> str:
        if self.display != "maxtimes":
            return format_scalar(x)
        if x is EPS:
            return "0"
        y = exact_exp(x)
        if y is None:
            self.representable = False
            return format_scalar(x)
        return format_scalar(y)

    def vec(self, v: TropicalVector) -> list:
        return [self(x) for x in v]


def _one_based(obj, key=None):
    if isinstance(obj, dict):
        return {k: _one_based(v, k) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_one_based(v, key) for v in obj]
    if key in _NODE_KEYS and isinstance(obj, int) and not isinstance(obj, bool):
        return obj + 1
    return obj


def _matrix_json(A: TropicalMatrix, label=None) -> dict:
    return MatrixDocument.from_matrix(A, label).to_json()


def _with_display(build, display: str) -> dict:
    if display == "maxtimes":
        fmt = ScalarFormat("maxtimes")
        rep = build(fmt)
        if fmt.representable:
            rep["display_semiring"] = "maxtimes"
            return rep
    rep = build(ScalarFormat())
    rep["display_semiring"] = "maxplus"
    return rep


def spectra_report(A: TropicalMatrix, display: str = "maxplus", label=None) -> dict:
    spec = spectrum(A)
    fnf = spec.fnf

    def build(f):
        classes = []
        for mu, c in enumerate(fnf.classes):
            rho = fnf.class_rho[mu]
            classes.append(
                {
                    "index": mu + 1,
                    "nodes": [i + 1 for i in sorted(c)],
                    "trivial": fnf.reduced.trivial[mu],
                    "rho": f(rho),
                    "cyclicity": fnf.class_cyclicity[mu],
                    "spectral": fnf.is_spectral(mu),
                }
            )
        eig = []
        for rho in spec.eigenvalues:
            d = spec[rho]
            eig.append(
                {
                    "rho": f(rho),
                    "sigma": d.sigma,
                    "spectral_classes": [mu + 1 for mu in d.spectral_classes],
                    "critical_components": [
                        {"nodes": [i + 1 for i in sorted(comp)], "cyclicity": s}
                        for comp, s in zip(d.critical.components, d.critical.cyclicities)
                    ],
                }
            )
        return {
            "schema": SCHEMA_VERSION,
            "command": "spectra",
            "matrix": _matrix_json(A, label),
            "frobenius": {
                "permutation": [i + 1 for i in fnf.permutation],
                "classes": classes,
                "access_edges": sorted([mu + 1, nu + 1] for mu, nu in fnf.reduced.edges),
            },
            "spectrum": [f(r) for r in spec.eigenvalues],
            "eigenvalues": eig,
            "sigma_lambda": spec.sigma_lambda,
        }

    return _with_display(build, display)


def core_report(A: TropicalMatrix, horizon: int, display: str = "maxplus", label=None) -> dict:
    core = core_basis(A)
    act = core_action(core)
    chain = span_chain(A, horizon)

    def build(f):
        return {
            "schema": SCHEMA_VERSION,
            "command": "core",
            "matrix": _matrix_json(A, label),
            "sigma_lambda": core.sigma_lambda,
            "extremals": [f.vec(v) for v in core.extremals],
            "action": {
                "image": [k + 1 for k in core.action],
                "growth": [f(g) for g in core.growth],
                "cycles": [
                    {"extremals": [k + 1 for k in c], "growth": f(g)}
                    for c, g in zip(act.cycles, act.cycle_growth)
                ],
            },
            "stabilization": {
                "stabilizes": core.stabilization.stabilizes,
                "non_spectral_classes": [
                    [i + 1 for i in sorted(core.spectrum.fnf.classes[mu])] for mu in core.stabilization.offending_classes
                ],
                "span_chain": chain.status,
                "t": chain.stabilized_at,
            },
            "horizon": horizon,
        }

    return _with_display(build, display)


def classify_report(A: TropicalMatrix, horizon: int, label=None) -> dict:
    core = core_basis(A)
    rep = classify(A, oracle=True, horizon=horizon, core=core)
    verdicts = _one_based(rep.to_json())
    if rep.value("bijective_on_core") is False:
        hit = collision_search(A, core)
        verdicts["bijective_on_core"]["collision"] = {
            "y": hit.y.to_strings(),
            "y_prime": hit.y_prime.to_strings(),
            "t": hit.t,
        }
    return {
        "schema": SCHEMA_VERSION,
        "command": "classify",
        "matrix": _matrix_json(A, label),
        "verdicts": verdicts,
        "implication_failures": rep.implication_failures(),
        "horizon": horizon,
        "display_semiring": "maxplus",
    }


def orbit_report(A: TropicalMatrix, trace: OrbitTrace, horizon: int, label=None) -> dict:
    p = trace.periodicity
    return {
        "schema": SCHEMA_VERSION,
        "command": "orbit",
        "matrix": _matrix_json(A, label),
        "start": trace.start.to_strings(),
        "states": [s.to_strings() for s in trace.states],
        "scales": [format_scalar(c) for c in trace.scales],
        "periodicity": None
        if p is None
        else {"period": p.period, "growth": format_scalar(p.growth), "defect": p.defect},
        "first_eigenvector_hit": trace.first_eigenvector_hit,
        "horizon_exceeded": trace.horizon_exceeded,
        "horizon": horizon,
        "display_semiring": "maxplus",
    }


def verify_report(results: list, corpus: CorpusReport | None = None, horizon=None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "horizon": horizon,
        "results": [],
        "display_semiring": "maxplus",
    }
    for name, rep in results:
        d = _one_based(rep.to_json()) if isinstance(rep, VerifyReport) else rep
        d["source"] = name
        out["results"].append(d)
    if corpus is not None:
        out["corpus"] = corpus.to_json()
    fails = sum(1 for r in out["results"] if not r["passed"]) + (len(corpus.failures) if corpus else 0)
    out["passed"] = fails == 0
    return out


def dumps(report: dict) -> str:
    """Canonical serialization: identical reports give identical bytes."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
