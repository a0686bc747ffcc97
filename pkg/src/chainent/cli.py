"""Command-line interface: ``chainent <subcommand> ...``.

Exit codes: 0 success, 1 a checked claim failed, 2 usage or input-schema
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import __version__
from . import analysis as an
from . import io as rio
from .errors import ChainEntError, NeedMoreEigenvaluesError
from .xxz import (
    XXZParams,
    bethe_state,
    crossing_table,
    ed_sector_state,
    global_ground_state,
    reduce_block,
    solve_bethe,
)
from .xy_core import (
    XYParams,
    block_entropy,
    build_correlation_matrix,
    compute_g_analytic,
    compute_g_numeric,
    correlation_kernel,
    effective_rank,
    mode_spectrum,
    rho_top_spectrum,
    xy_entropy_curve,
)
from .xy_oracle import dense_block_entropies, finite_chain_correlation
from .xy_spectrum import CRITICAL_ISING, CRITICAL_XX, classify

log = logging.getLogger("chainent")

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CHI_EPSILONS = (1e-2, 1e-4, 1e-6)
ORACLE_TOL = 1e-8
OVERLAP_TOL = 1e-6


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


@contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield lambda fn, items: pool.map(fn, list(items), chunksize=8)


def _emit(args, subcommand, params, tolerances, header, compute, table):
    """Compute (or fetch from cache) a table and write it with its manifest."""
    identity = rio.manifest_identity(subcommand, params, tolerances)
    h = rio.identity_hash(identity)
    cdir = None if args.no_cache else rio.cache_dir(args.cache_dir)
    t0 = time.perf_counter()
    content = rio.cache_lookup(cdir, h)
    cached = content is not None
    if cached:
        log.info("cache hit %s", h[:12])
    else:
        rows = compute()
        content = rio.render_csv(table, header, rows, h)
        rio.cache_store(cdir, h, content)
    rio.write_outputs(args.out, content, identity, time.perf_counter() - t0, cached)
    log.info("wrote %s", args.out)
    return content


def _chi_columns(modes):
    """Effective ranks for each epsilon, deepening the truncation as needed."""
    K = min(256, 1 << modes.L)
    while True:
        spec = rho_top_spectrum(modes, K)
        try:
            return [effective_rank(spec, e) for e in CHI_EPSILONS]
        except NeedMoreEigenvaluesError:
            if K >= (1 << modes.L) or K >= 1 << 22:
                raise
            K = min(4 * K, 1 << modes.L, 1 << 22)


def _parse_range(text: str) -> List[int]:
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; use start:stop[:step]") from exc
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0:
        raise UsageError(f"bad range {text!r}; use start:stop[:step]")
    return list(range(parts[0], parts[1] + 1, parts[2]))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_xy_entropy(args) -> int:
    params = XYParams(args.gamma, args.lam)
    if args.L_max < 1:
        raise UsageError("--L-max must be positive")

    def compute():
        with _mapper(args.jobs) as mapper:
            curve = xy_entropy_curve(params, args.L_max, method=args.kernel, tol=args.tol, mapper=mapper)
        rows = []
        for L, S, modes in curve:
            rows.append([L, S, float(modes.nu.min()), float(modes.nu.max()), *_chi_columns(modes)])
        return rows

    header = ["L", "S_L", "nu_min", "nu_max"] + [f"chi_{e:.0e}" for e in CHI_EPSILONS]
    _emit(args, "xy-entropy",
          {"model": "xy", "gamma": params.gamma, "lam": params.lam, "L_max": args.L_max, "kernel": args.kernel},
          {"quadrature_abs": args.tol}, header, compute, "xy-entropy")
    return EXIT_OK


def cmd_xxz_entropy(args) -> int:
    params = XXZParams(args.delta, args.lam, args.N)

    def compute():
        with _mapper(args.jobs) as mapper:
            gs = global_ground_state(params, mapper)
        if gs.at_crossing:
            log.warning("field %.17g is a level crossing between sectors %s; using r=%d",
                        params.lam, gs.tied_sectors, gs.r)
        r = gs.r
        ed_state = gs.state
        rows = []
        bethe = None
        if args.method in ("bethe", "both"):
            sol = solve_bethe(params, r)
            bethe = bethe_state(sol)
        for L in range(1, params.N):
            S_ed = reduce_block(ed_state, L).entropy
            if args.method == "ed":
                rows.append([L, S_ed, r, ed_state.energy])
            elif args.method == "bethe":
                rows.append([L, reduce_block(bethe, L).entropy, r, bethe.energy])
            else:
                S_b = reduce_block(bethe, L).entropy
                rows.append([L, S_ed, r, ed_state.energy, S_b, S_b - S_ed, bethe.energy - ed_state.energy])
        return rows

    header = ["L", "S_L", "r_star", "energy"]
    if args.method == "both":
        header += ["S_L_bethe", "delta_S", "delta_E"]
    _emit(args, "xxz-entropy",
          {"model": "xxz", "delta": params.delta, "lam": params.lam, "N": params.N, "J": params.J,
           "method": args.method},
          {"degeneracy": 1e-10, "bethe": 1e-10}, header, compute, "xxz-entropy")
    return EXIT_OK


def cmd_xxz_crossings(args) -> int:
    params = XXZParams(args.delta, 0.0, args.N)
    if args.resolution <= 0:
        raise UsageError("--resolution must be positive")

    def compute():
        with _mapper(args.jobs) as mapper:
            table = crossing_table(params, args.resolution, mapper)
        return [[i + 1, lam, ra, rb] for i, (lam, ra, rb) in enumerate(table)]

    _emit(args, "xxz-crossings",
          {"model": "xxz", "delta": params.delta, "N": params.N, "J": params.J},
          {"resolution": args.resolution}, ["index", "lambda_c", "r_below", "r_above"], compute,
          "xxz-crossings")
    return EXIT_OK


# -- analyze -----------------------------------------------------------------


def _load_curve(path):
    info, header, rows = rio.read_table(path, ("xy-entropy", "xxz-entropy"))
    try:
        pts = [(int(r["L"]), float(r["S_L"])) for r in rows]
    except (KeyError, ValueError) as exc:
        raise rio.ProvenanceError(f"{path}: malformed entropy table") from exc
    params = info["manifest"]["params"]
    return an.EntropyCurve.from_points(pts, json.dumps(params, sort_keys=True)), params, info


def _xy_params(p) -> XYParams:
    if p.get("model") != "xy":
        raise rio.ProvenanceError("this analysis needs an xy-entropy table")
    return XYParams(p["gamma"], p["lam"])


def _claim(name, measured, expected, provenance, status, **extra):
    d = {"claim": name, "measured": measured, "expected": expected, "provenance": provenance, "status": status}
    d.update(extra)
    return d


def _status(ok):
    return "pass" if ok else "fail"


def _analyze_fit(args, inputs):
    claims = []
    for path in inputs:
        curve, p, _ = _load_curve(path)
        fit = an.fit_log_scaling(curve, args.L_min, args.L_max)
        c = an.central_charge(fit)
        expected, prov, status = None, "none", "informational"
        if p.get("model") == "xy":
            label = classify(_xy_params(p)).label
            if label == CRITICAL_XX:
                expected, prov = 1.0 / 3.0, "reference"
            elif label == CRITICAL_ISING and p["gamma"] == 1.0:
                expected, prov = 1.0 / 6.0, "reference"
        if expected is not None:
            status = _status(abs(fit.k - expected) <= args.fit_tol)
        claims.append(_claim("log-scaling slope k", fit.k, expected, prov, status, file=str(path),
                             intercept=fit.a, stderr_k=fit.stderr_k, residual_rms=fit.residual_rms,
                             central_charge=c, tolerance=args.fit_tol))
    return claims


def _analyze_saturation(args, inputs):
    claims = []
    for path in inputs:
        curve, p, _ = _load_curve(path)
        res = an.saturation(curve, args.sat_tol)
        expected, prov = None, "none"
        if p.get("model") == "xy":
            critical = classify(_xy_params(p)).critical
            expected, prov = (not critical), ("reference" if critical else "derived")
        status = "informational" if expected is None else _status(res.saturated == expected)
        claims.append(_claim("saturation", res.saturated, expected, prov, status, file=str(path),
                             S_star=res.S_star, L_sat=res.L_sat,
                             increments=[[L, d] for L, d in res.increments]))
    return claims


def _analyze_majorization(args, inputs):
    claims = []
    for path in inputs:
        _, p, _ = _load_curve(path)
        params = _xy_params(p)
        Ls = _parse_range(args.L_range)
        if max(Ls) + 2 > p["L_max"]:
            raise UsageError(f"--L-range needs blocks up to {max(Ls) + 2}, table has L_max={p['L_max']}")
        scan = an.block_majorization_scan(params, Ls, K=args.K)
        verdicts = [v.verdict for v in scan]
        status = "pass" if all(v == an.YES for v in verdicts) else (
            "fail" if an.NO in verdicts else "undecidable")
        claims.append(_claim("rho_{L+2} majorized by rho_L", verdicts, [an.YES] * len(verdicts),
                             "reference" if classify(params).critical else "derived", status, file=str(path),
                             L=Ls, K_requested=args.K, K_used=[v.K_used for v in scan],
                             verdict_at_requested_K=[v.verdict_at_K for v in scan],
                             one_step_informational=[v.one_step for v in scan]))
    return claims


def _analyze_rg(args, inputs):
    if len(inputs) != 2:
        raise UsageError("--rg-check takes two tables: critical then massive")
    modes = []
    for path in inputs:
        _, p, _ = _load_curve(path)
        params = _xy_params(p)
        if args.L > p["L_max"]:
            raise UsageError(f"--L {args.L} exceeds L_max of {path}")
        k = correlation_kernel(params, args.L, method=p.get("kernel", "auto"))
        modes.append(mode_spectrum(build_correlation_matrix(k, args.L)))
    verdict, first, K_used = an.rg_majorization_check(modes[0], modes[1], args.K)
    status = {an.YES: "pass", an.NO: "fail"}.get(verdict, "undecidable")
    return [_claim("rho(critical) majorized by rho(massive)", verdict, an.YES, "derived", status,
                   files=[str(x) for x in inputs], L=args.L, K_requested=args.K, K_used=K_used,
                   verdict_at_requested_K=first)]


def _analyze_properties(args, inputs):
    claims = []
    targets = []
    for path in inputs:
        curve, p, _ = _load_curve(path)
        targets.append((str(path), curve, p))
    if args.ghz:
        targets.append((f"ghz:{args.ghz}", an.ghz_curve(args.ghz), {"model": "ghz", "N": args.ghz}))
    for name, curve, p in targets:
        modes = None
        N = None
        if p.get("model") == "xy":
            params = _xy_params(p)
            Lm = int(curve.L.max())
            full = build_correlation_matrix(correlation_kernel(params, Lm, method=p.get("kernel", "auto")), Lm)
            modes = [mode_spectrum(full.restrict(int(L))) for L in curve.L]
        else:
            N = int(p["N"])
        rep = an.entropy_property_suite(curve, N=N, modes=modes)
        if p.get("model") == "ghz":
            worst = float(np.max(np.abs(curve.S - 1.0)))
            rep.checks["ghz_reference"] = (worst <= 1e-12, worst)
        for check, (ok, margin) in rep.checks.items():
            claims.append(_claim(check, margin, "<= 0 (within 1e-9)", "reference", _status(ok), file=name))
    return claims


def cmd_analyze(args) -> int:
    modes = {"fit": _analyze_fit, "saturation": _analyze_saturation, "majorization": _analyze_majorization,
             "rg_check": _analyze_rg, "properties": _analyze_properties}
    chosen = [m for m in modes if getattr(args, m)]
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --fit, --saturation, --majorization, --rg-check, --properties")
    if not args.inputs and not (chosen[0] == "properties" and args.ghz):
        raise UsageError("no input tables given")
    provenance = []
    for path in args.inputs:
        info, _, _ = rio.read_table(path)
        provenance.append({"file": str(path), "manifest": info["meta"]["manifest"]})
    claims = modes[chosen[0]](args, args.inputs)
    failed = any(c["status"] == "fail" for c in claims)
    undecided = any(c["status"] == "undecidable" for c in claims)
    report = {"schema": f"chainent.report/{rio.SCHEMA_VERSION}", "analysis": chosen[0].replace("_", "-"),
              "version": __version__, "inputs": provenance, "claims": claims,
              "status": "fail" if failed else ("undecidable" if undecided else "pass")}
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_CLAIM if failed else EXIT_OK


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(type(o))


# -- oracle-check --------------------------------------------------------------

XY_GRID = [(g, lam) for g in (0.25, 0.5, 1.0) for lam in (0.5, 1.0, 1.5)]
XXZ_DELTAS = (0.5, 1.0, 2.0)


def xy_oracle_case(case: Dict) -> Dict[str, float]:
    """Deviations for one open-chain grid point: dense vs correlation route, reflection."""
    params = XYParams(case["gamma"], case["lam"])
    N = case["N"]
    dev_dense, dev_refl = 0.0, 0.0
    gam = finite_chain_correlation(params, N)
    dense = dense_block_entropies(params, N, range(1, N))
    S = {}
    for L in range(1, N):
        S[L] = block_entropy(mode_spectrum(gam.restrict(L)))
        if case.get("inject_fault") and L == 1:
            S[L] += 1e-6
        dev_dense = max(dev_dense, abs(S[L] - dense[L - 1]))
    for L in range(1, N):
        dev_refl = max(dev_refl, abs(S[L] - S[N - L]))
    return {"dense_vs_correlation": dev_dense, "reflection": dev_refl}


def xy_kernel_case(case: Dict) -> Dict[str, float]:
    """Closed-form vs quadrature kernel after global-sign alignment."""
    params = XYParams(case["gamma"], case["lam"])
    ls = range(-20, 21)
    a = np.array([compute_g_analytic(params, l, case["case"]) for l in ls])
    n = np.array([compute_g_numeric(params, l) for l in ls])
    s = np.sign(a[np.argmax(np.abs(a))] * n[np.argmax(np.abs(a))]) or 1.0
    return {"analytic_vs_numeric": float(np.max(np.abs(a - s * n)))}


def xxz_oracle_case(case: Dict) -> Dict[str, float]:
    """Bethe vs ED energy and overlap in one sector, plus reflection of entropies."""
    params = XXZParams(case["delta"], 0.0, case["N"])
    r = case["r"]
    sol = solve_bethe(params, r)
    ed = ed_sector_state(params, r)
    e_dev = abs(sol.total_energy - ed.state.energy)
    if case.get("inject_fault"):
        e_dev += 1e-6
    st = bethe_state(sol)
    overlap = abs(np.vdot(st.amplitudes, ed.state.amplitudes))
    N = params.N
    S = [reduce_block(ed.state, L).entropy for L in range(1, N)]
    refl = max(abs(S[L - 1] - S[N - L - 1]) for L in range(1, N))
    return {"bethe_vs_ed_energy": e_dev, "overlap_defect": 1.0 - overlap, "reflection": refl}


ORACLE_LIMITS = {"dense_vs_correlation": ORACLE_TOL, "reflection": 1e-9, "analytic_vs_numeric": ORACLE_TOL,
                 "bethe_vs_ed_energy": ORACLE_TOL, "overlap_defect": OVERLAP_TOL}
ORACLE_KINDS = {"xy": xy_oracle_case, "xy-kernel": xy_kernel_case, "xxz": xxz_oracle_case}


def _run_case(item):
    kind, case = item
    return ORACLE_KINDS[kind](case)


def _oracle_cases(args):
    cases = []
    if args.xy is not None:
        if args.xy < 2 or args.xy > 14 or args.xy % 2:
            raise UsageError("--xy needs an even N in [2, 14]")
        for g, lam in XY_GRID:
            cases.append(("xy", {"gamma": g, "lam": lam, "N": args.xy}))
        for g, lam, c in [(1.0, 1.0, "ising-critical"), (0.0, 0.5, "xx-field"), (1.0, 0.5, "ising-field"),
                          (0.6, 1.0, "xy-critical"), (0.4, 0.0, "xy-zero-field")]:
            cases.append(("xy-kernel", {"gamma": g, "lam": lam, "case": c}))
    if args.xxz is not None:
        if args.xxz < 2 or args.xxz > 12 or args.xxz % 2:
            raise UsageError("--xxz needs an even N in [2, 12]")
        for d in XXZ_DELTAS:
            for r in range(1, min(4, args.xxz // 2) + 1):
                cases.append(("xxz", {"delta": d, "N": args.xxz, "r": r}))
    if args.inject_fault and cases:
        kind, case = cases[0]
        cases[0] = (kind, dict(case, inject_fault=True))
    return cases


def cmd_oracle_check(args) -> int:
    if args.replay:
        rep = json.loads(Path(args.replay).read_text())
        cases = [(rep["kind"], rep["case"])]
    else:
        cases = _oracle_cases(args)
    if not cases:
        raise UsageError("select at least one of --xy N, --xxz N (or --replay FILE)")
    with _mapper(args.jobs) as mapper:
        results = list(mapper(_run_case, cases))
    worst: Dict[str, float] = {}
    failures = []
    for (kind, case), res in zip(cases, results):
        bad = {k: v for k, v in res.items() if not v <= ORACLE_LIMITS[k]}
        for k, v in res.items():
            worst[k] = max(worst.get(k, 0.0), v)
        if bad:
            failures.append({"kind": kind, "case": case, "deviations": res, "violated": sorted(bad)})
    summary = {"cases": len(cases), "max_deviation": worst, "limits": ORACLE_LIMITS,
               "failures": len(failures), "status": "fail" if failures else "pass"}
    if failures:
        rdir = Path(args.replay_dir)
        rdir.mkdir(parents=True, exist_ok=True)
        files = []
        for f in failures:
            name = rdir / f"oracle-replay-{rio.sha256_bytes(json.dumps(f, sort_keys=True).encode())[:12]}.json"
            name.write_text(json.dumps(f, indent=2, sort_keys=True) + "\n")
            files.append(str(name))
        summary["replay_files"] = files
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return EXIT_CLAIM if failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file mirroring the long flags")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default ${rio.CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true", help="ignore and do not fill the cache")
    common.add_argument("--log-level", default="WARNING")

    p = argparse.ArgumentParser(prog="chainent", description="Block entanglement in XY and XXZ chains.")
    p.add_argument("--version", action="version", version=f"chainent {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("xy-entropy", parents=[common], help="infinite XY chain entropy curve")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--lam", "--lambda", dest="lam", type=float, required=True)
    s.add_argument("--L-max", dest="L_max", type=int, required=True)
    s.add_argument("--kernel", choices=("auto", "numeric", "analytic"), default="auto")
    s.add_argument("--tol", type=float, default=1e-10, help="quadrature absolute tolerance")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_xy_entropy)

    s = sub.add_parser("xxz-entropy", parents=[common], help="XXZ ring ground-state entropies")
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--lam", "--lambda", dest="lam", type=float, default=0.0)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--method", choices=("bethe", "ed", "both"), default="ed")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_xxz_entropy)

    s = sub.add_parser("xxz-crossings", parents=[common], help="ground-state level crossings in the field")
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--resolution", type=float, default=1e-6)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_xxz_crossings)

    s = sub.add_parser("analyze", parents=[common], help="check claims on produced tables")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--fit", action="store_true")
    g.add_argument("--saturation", action="store_true")
    g.add_argument("--majorization", action="store_true")
    g.add_argument("--rg-check", dest="rg_check", action="store_true")
    g.add_argument("--properties", action="store_true")
    s.add_argument("inputs", nargs="*", type=Path)
    s.add_argument("--L-min", dest="L_min", type=int, default=20)
    s.add_argument("--L-fit-max", dest="L_max", type=int, default=None)
    s.add_argument("--fit-tol", type=float, default=1e-3)
    s.add_argument("--sat-tol", type=float, default=1e-4)
    s.add_argument("--L-range", default="4:20:2")
    s.add_argument("--L", type=int, default=50)
    s.add_argument("--K", type=int, default=64)
    s.add_argument("--ghz", type=int, default=None, help="add the GHZ reference curve for N qubits")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("oracle-check", parents=[common], help="cross-method consistency suite")
    s.add_argument("--xy", type=int, default=None, metavar="N")
    s.add_argument("--xxz", type=int, default=None, metavar="N")
    s.add_argument("--inject-fault", action="store_true", help="perturb the first case (negative control)")
    s.add_argument("--replay", default=None, help="re-run a serialized failing case")
    s.add_argument("--replay-dir", default=".")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_oracle_check)
    return p


def _config_argv(parser, argv):
    """Expand ``--config FILE`` into flags placed before the explicit ones."""
    if "--config" not in argv and not any(a.startswith("--config=") for a in argv):
        return argv
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    cfg = rio.load_config(known.config)
    command = next((a for a in argv if not a.startswith("-")), None)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sp = subparsers.choices.get(command)
    if sp is None:
        raise UsageError("--config needs a subcommand")
    flags = {}
    for action in sp._actions:
        for opt in action.option_strings:
            flags[opt.lstrip("-")] = action
    extra = []
    for key, value in cfg.items():
        action = flags.get(key) or flags.get(key.replace("-", "_"))
        if action is None or key == "config":
            raise UsageError(f"unknown config key {key!r}")
        opt = action.option_strings[-1] if len(action.option_strings) == 1 else action.option_strings[0]
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                extra.append(opt)
        else:
            extra += [opt, value]
    i = argv.index(command) + 1
    return argv[:i] + extra + argv[i:]


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _config_argv(parser, argv)
    except (UsageError, OSError, ValueError) as exc:
        print(f"chainent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("chainent: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, rio.ProvenanceError) as exc:
        print(f"chainent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"chainent: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ChainEntError, ValueError) as exc:
        print(f"chainent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError as exc:
        print(f"chainent: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
