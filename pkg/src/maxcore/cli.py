"""Command-line front end: ``maxcore spectra|core|classify|orbit|verify``.

Matrices are read from text or JSON documents (see :mod:`maxcore.fileformat`).
The default horizon for simulations is ``n^2 + 3 n sigma + 16``; the
``MAXCORE_HORIZON`` environment variable or ``--horizon`` override it.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 an internal consistency check (theorem violation) fired.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import reports
from .fileformat import ParseError, load, to_maxplus
from .matrix import TropicalVector
from .maxmin import maxmin_core
from .oracle import VerifyConfig, ZeroOrbit, corpus_run, default_horizon, orbit_simulate, verify_suite
from .semiring import MAX_MIN, MAX_PLUS, SemiringError, parse_scalar
from .spectral import TheoremViolation, spectrum

HORIZON_ENV = "MAXCORE_HORIZON"

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _horizon(args, A) -> int:
    if getattr(args, "horizon", None):
        return args.horizon
    env = os.environ.get(HORIZON_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{HORIZON_ENV} must be an integer, got {env!r}") from None
    return default_horizon(A.n, spectrum(A).sigma_lambda)


def _load_maxplus(path):
    doc = load(path)
    A = doc.matrix
    if A.semiring is not MAX_PLUS and A.semiring is not MAX_MIN:
        try:
            A = to_maxplus(A)
        except ValueError as exc:
            raise InputError(f"{path}: max-times input is analysed through its exact logarithm: {exc}") from None
    return doc, A


def _require_maxplus(A, path):
    if A.semiring is not MAX_PLUS:
        raise InputError(f"{path}: this command needs a max-plus (or max-times) matrix")


def _emit(report: dict, as_json: bool, out, doc=None) -> None:
    if doc is not None:
        # echo the input as given (e.g. max-times entries before translation)
        report["matrix"] = doc.to_json()
    if as_json:
        out.write(reports.dumps(report))
    else:
        out.write(render_text(report))


def cmd_spectra(args, out):
    doc, A = _load_maxplus(args.file)
    _require_maxplus(A, args.file)
    _emit(reports.spectra_report(A, args.semiring, doc.label), args.json, out, doc)
    return EXIT_OK


def cmd_core(args, out):
    doc, A = _load_maxplus(args.file)
    if A.semiring is MAX_MIN:
        mc = maxmin_core(A)
        rep = {
            "schema": reports.SCHEMA_VERSION,
            "command": "core",
            "matrix": doc.to_json(),
            "threshold": mc.threshold,
            "period": mc.period,
            "extremals": [v.to_strings() for v in mc.extremals],
            "display_semiring": "maxmin",
        }
        _emit(rep, args.json, out)
        return EXIT_OK
    _emit(reports.core_report(A, _horizon(args, A), args.semiring, doc.label), args.json, out, doc)
    return EXIT_OK


def cmd_classify(args, out):
    doc, A = _load_maxplus(args.file)
    _require_maxplus(A, args.file)
    _emit(reports.classify_report(A, _horizon(args, A), doc.label), args.json, out, doc)
    return EXIT_OK


def cmd_orbit(args, out):
    doc, A = _load_maxplus(args.file)
    _require_maxplus(A, args.file)
    toks = args.vector.replace(",", " ").split()
    if len(toks) != A.n:
        raise InputError(f"vector has {len(toks)} entries, matrix dimension is {A.n}")
    try:
        x = TropicalVector([parse_scalar(t, A.semiring) for t in toks], A.semiring)
    except ValueError as exc:
        raise InputError(f"vector: {exc}") from None
    h = _horizon(args, A)
    try:
        tr = orbit_simulate(A, x, h)
    except ZeroOrbit as exc:
        raise InputError(f"orbit: {exc}") from None
    _emit(reports.orbit_report(A, tr, h, doc.label), args.json, out, doc)
    return EXIT_OK


def _collect_files(paths):
    files = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix in (".txt", ".json", ".mat")))
        else:
            files.append(p)
    return files


def cmd_verify(args, out):
    cfg = VerifyConfig(horizon=args.horizon or _env_horizon(), seed=args.seed, mutate=args.mutate)
    results = []
    for f in _collect_files(args.paths):
        _, A = _load_maxplus(f)
        _require_maxplus(A, f)
        results.append((str(f), verify_suite(A, cfg)))
    corpus = None
    if args.random:
        corpus = corpus_run(
            args.seed,
            args.count,
            args.n,
            args.density,
            tuple(args.entry_range),
            args.max_denominator,
            cfg,
        )
    if not results and corpus is None:
        raise InputError("verify needs matrix files/directories or --random")
    rep = reports.verify_report(results, corpus, cfg.horizon)
    _emit(rep, args.json, out)
    failed = not rep["passed"]
    if args.strict:
        failed = failed or any(r["counts"]["inconclusive"] for r in rep["results"]) or bool(
            corpus and any(v["inconclusive"] for v in corpus.summary.values())
        )
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _env_horizon():
    env = os.environ.get(HORIZON_ENV)
    return int(env) if env else None


# -- text rendering -------------------------------------------------------


def _vec(v) -> str:
    return "(" + ", ".join(v) + ")"


def render_text(rep: dict) -> str:
    cmd = rep["command"]
    lines = [f"[{cmd}] semiring shown: {rep.get('display_semiring', 'maxplus')}"]
    if "matrix" in rep:
        m = rep["matrix"]
        lines.append(f"matrix ({m['semiring']}, n={m['n']})" + (f" {m['label']}" if m.get("label") else ""))
        for r in m["entries"]:
            lines.append("  " + " ".join(f"{x:>6}" for x in r))
    if cmd == "spectra":
        fr = rep["frobenius"]
        lines.append("Frobenius order: " + " ".join(map(str, fr["permutation"])))
        for c in fr["classes"]:
            kind = "trivial" if c["trivial"] else f"rho={c['rho']} cyclicity={c['cyclicity']}"
            lines.append(f"  class {c['index']}: nodes {c['nodes']} {kind}" + (" spectral" if c["spectral"] else ""))
        lines.append("access: " + ", ".join(f"{a}->{b}" for a, b in fr["access_edges"]))
        lines.append("spectrum: {" + ", ".join(rep["spectrum"]) + "}")
        for e in rep["eigenvalues"]:
            comps = "; ".join(f"{c['nodes']} (cyclicity {c['cyclicity']})" for c in e["critical_components"])
            lines.append(f"  rho={e['rho']}: sigma={e['sigma']} spectral classes {e['spectral_classes']} critical {comps}")
        lines.append(f"sigma_lambda = {rep['sigma_lambda']}")
    elif cmd == "core":
        if "threshold" in rep:
            lines.append(f"powers periodic from T={rep['threshold']} with period {rep['period']}")
        else:
            lines.append(f"sigma_lambda = {rep['sigma_lambda']}")
        lines.append(f"{len(rep['extremals'])} extremal(s):")
        for k, v in enumerate(rep["extremals"], 1):
            lines.append(f"  z{k} = {_vec(v)}")
        if "action" in rep:
            for c in rep["action"]["cycles"]:
                lines.append("  action cycle " + " -> ".join(f"z{k}" for k in c["extremals"]) + f" growth {c['growth']}")
            st = rep["stabilization"]
            lines.append(
                f"finite stabilization: {st['stabilizes']} (span chain {st['span_chain']}"
                + (f", t={st['t']}" if st["t"] is not None else "")
                + ")"
            )
    elif cmd == "classify":
        for k, v in rep["verdicts"].items():
            lines.append(f"  {k}: {v['value']}" + (f"  {v['witness']}" if "witness" in v else ""))
            if "collision" in v:
                c = v["collision"]
                lines.append(f"    collision y={_vec(c['y'])} y'={_vec(c['y_prime'])} t={c['t']}")
        if rep["implication_failures"]:
            lines.append("IMPLICATION FAILURES: " + ", ".join(rep["implication_failures"]))
    elif cmd == "orbit":
        for t, (s, c) in enumerate(zip(rep["states"], rep["scales"])):
            lines.append(f"  t={t}: {c} + {_vec(s)}")
        p = rep["periodicity"]
        if p:
            lines.append(f"periodic from t={p['defect']} with period {p['period']}, growth {p['growth']}")
        else:
            lines.append(f"no repeat up to horizon {rep['horizon']}")
        hit = rep["first_eigenvector_hit"]
        lines.append("first eigenvector hit: " + ("none" if hit is None else f"t={hit}"))
    elif cmd == "verify":
        for r in rep["results"]:
            c = r["counts"]
            lines.append(f"{r['source']}: pass={c['pass']} fail={c['fail']} inconclusive={c['inconclusive']}")
            for ch in r["checks"]:
                if ch["status"] != "pass":
                    lines.append(f"  {ch['status'].upper()} {ch['name']} {ch.get('detail', '')}")
        if "corpus" in rep:
            cp = rep["corpus"]
            lines.append(f"corpus seed={cp['seed']} count={cp['count']} n={cp['n']} density={cp['density']}")
            for name, cnt in sorted(cp["summary"].items()):
                lines.append(f"  {name}: pass={cnt['pass']} fail={cnt['fail']} inconclusive={cnt['inconclusive']}")
            for f in cp["failures"]:
                lines.append(f"  FAILED #{f['index']} {f['failed_checks']} minimized {f['minimized']}")
        lines.append("PASSED" if rep["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxcore", description="Core, spectra and periodicity of max-plus matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, horizon=True, display=False):
        sp.add_argument("--json", action="store_true", help="emit a JSON report (schema report-v1)")
        if horizon:
            sp.add_argument("--horizon", type=int, help=f"simulation horizon (default from ${HORIZON_ENV} or n^2+3n*sigma+16)")
        if display:
            sp.add_argument("--semiring", choices=("maxplus", "maxtimes"), default="maxplus", help="display semiring")

    sp = sub.add_parser("spectra", help="Frobenius form, spectrum and critical graphs")
    sp.add_argument("file")
    common(sp, horizon=False, display=True)
    sp.set_defaults(func=cmd_spectra)

    sp = sub.add_parser("core", help="extremals of the core and the action of the matrix on them")
    sp.add_argument("file")
    common(sp, display=True)
    sp.set_defaults(func=cmd_core)

    sp = sub.add_parser("classify", help="periodicity, robustness and stability verdicts")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("orbit", help="simulate the orbit of a vector")
    sp.add_argument("file")
    sp.add_argument("vector", help='start vector, e.g. "0 -inf 1/2"')
    common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("verify", help="cross-check analytic results against brute force")
    sp.add_argument("paths", nargs="*", help="matrix files or directories")
    sp.add_argument("--random", action="store_true", help="run on a random corpus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--density", type=float, default=0.6)
    sp.add_argument("--entry-range", type=int, nargs=2, default=(-5, 5), metavar=("LO", "HI"))
    sp.add_argument("--max-denominator", type=int, default=1)
    sp.add_argument("--mutate", action="store_true", help="inject a fault into the core (self-test)")
    sp.add_argument("--strict", action="store_true", help="treat inconclusive checks as failures")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, InputError, SemiringError, FileNotFoundError) as exc:
        print(f"maxcore: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        print(f"maxcore: internal consistency check failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
