"""Command-line front end.

Exit codes: 0 success, 1 an inequality was violated beyond tolerance,
2 input or usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
from pathlib import Path

import numpy as np

from . import explorer
from .errors import DegenerateError, UncertaintyLabError
from .hilbert import DEFAULT_TOL
from .instances import SCHEMA_VERSION, Instance, InstanceError, load_instance, save_instance
from .moments import normalized_correlations
from .relations import gur_n, gur_normalized, gur_raw, heisenberg_pair, normalized_margin, schroedinger_pair

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
SCAN_TOL = 1e-12
SCAN_COLUMNS = ("rho12", "rho23", "rho31", "cos_sigma", "margin", "class")
SPIN_COLUMNS = ("rho12", "rho23", "rho31", "cos_sigma", "margin")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return "%.17g" % x


def _cfmt(z: complex) -> str:
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"


def _emit(text: str, output) -> None:
    if output:
        try:
            Path(output).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _metadata(seed, tol) -> dict:
    return {"schema_version": SCHEMA_VERSION, "seed": seed, "tol": tol, "generator": explorer.GENERATOR_ID}


def _csv_text(header, rows, meta: dict) -> str:
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(64)


# --------------------------------------------------------------------------- verify


def verify_instance(inst: Instance, tol: float) -> dict:
    """All relations for one instance as plain data."""
    m = inst.moments(tol)
    n = m.n
    out: dict = {"n": n, "source": m.source, "means": m.means.tolist(), "sigma2": m.sigma2.tolist()}
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            pairs.append(
                {
                    "pair": [i + 1, j + 1],
                    "correlator": [m.corr[i, j].real, m.corr[i, j].imag],
                    "heisenberg": heisenberg_pair(m, i, j, tol).as_dict(),
                    "schroedinger": schroedinger_pair(m, i, j, tol).as_dict(),
                }
            )
    out["pairs"] = pairs

    nc = normalized_correlations(m)
    out["normalized"] = {
        "rho": nc.rho.tolist(),
        "phi": nc.phi.tolist(),
        "degenerate": nc.degenerate.tolist(),
        "sigma_sum": nc.sigma_sum,
        "sigma_sum_wrapped": nc.sigma_sum_wrapped,
        "cos_sigma": nc.cos_sigma,
    }
    if n >= 3:
        out["gur_raw"] = gur_raw(m, tol).as_dict()
        try:
            rep = gur_normalized(nc, tol)
            out["gur_normalized"] = {k: v for k, v in rep.as_dict().items()}
        except DegenerateError as exc:
            out["gur_normalized"] = {"degenerate": True, "note": str(exc)}
    if n >= 2:
        rep, verdict = gur_n(m, tol)
        out["gur_n"] = {
            **rep.as_dict(),
            "is_psd": verdict.is_psd,
            "min_eigenvalue": verdict.min_eigenvalue,
            "worst_minor": verdict.worst_minor,
        }

    reports = [p["heisenberg"] for p in pairs] + [p["schroedinger"] for p in pairs]
    for key in ("gur_raw", "gur_normalized", "gur_n"):
        if key in out and "satisfied" in out[key]:
            reports.append(out[key])
    violated = [r["relation"] for r in reports if not r["satisfied"]]
    if "gur_n" in out and not out["gur_n"]["is_psd"]:
        violated.append("gur_n_psd")
    out["violations"] = violated
    out["all_satisfied"] = not violated
    return out


def _report_line(label: str, r: dict) -> str:
    flag = "ok" if r["satisfied"] else "VIOLATED"
    sat = " saturated" if r["saturated"] else ""
    return f"  {label:<24} lhs={fmt(r['lhs'])} rhs={fmt(r['rhs'])} margin={fmt(r['margin'])} [{flag}{sat}]"


def render_verify(res: dict) -> str:
    lines = [f"source: {res['source']}, observables: {res['n']}"]
    for k, (mean, s2) in enumerate(zip(res["means"], res["sigma2"]), 1):
        lines.append(f"  A{k}: mean={fmt(mean)} sigma2={fmt(s2)}")
    lines.append("pairwise relations:")
    for p in res["pairs"]:
        i, j = p["pair"]
        lines.append(f" <{i},{j}> = {_cfmt(complex(*p['correlator']))}")
        lines.append(_report_line("heisenberg", p["heisenberg"]))
        lines.append(_report_line("schroedinger", p["schroedinger"]))
    nc = res["normalized"]
    lines.append("normalized correlations (rho, phi):")
    n = res["n"]
    for i in range(n):
        for j in range(i + 1, n):
            tag = " degenerate" if nc["degenerate"][i][j] else ""
            lines.append(f"  ({i + 1},{j + 1}) rho={fmt(nc['rho'][i][j])} phi={fmt(nc['phi'][i][j])}{tag}")
    if nc["sigma_sum"] is not None:
        lines.append(
            f"  Sigma={fmt(nc['sigma_sum'])} wrapped={fmt(nc['sigma_sum_wrapped'])} cos={fmt(nc['cos_sigma'])}"
        )
    if "gur_raw" in res:
        lines.append("three-observable relations:")
        lines.append(_report_line("gur_raw", res["gur_raw"]))
        g = res["gur_normalized"]
        if "margin" in g:
            lines.append(_report_line("gur_normalized", g))
        else:
            lines.append(f"  gur_normalized           skipped: {g['note']}")
    if "gur_n" in res:
        g = res["gur_n"]
        lines.append(
            f"moment matrix: det={fmt(g['margin'])} min_eigenvalue={fmt(g['min_eigenvalue'])} "
            f"psd={'yes' if g['is_psd'] else 'NO'}"
        )
    lines.append("result: " + ("all relations satisfied" if res["all_satisfied"] else "VIOLATIONS: " + ", ".join(res["violations"])))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    inst = load_instance(args.instance, tol)
    res = verify_instance(inst, tol)
    if args.format == "json":
        _emit(json.dumps({**_metadata(None, tol), **res}, indent=1, default=_json_default) + "\n", args.output)
    else:
        _emit(render_verify(res), args.output)
    return EXIT_OK if res["all_satisfied"] else EXIT_VIOLATION


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    return str(o)


# --------------------------------------------------------------------------- scan


def cmd_scan(args) -> int:
    tol = args.tol if args.tol is not None else SCAN_TOL
    g = explorer.GridSpec(rho_steps=args.rho_steps, sigma_steps=args.sigma_steps)
    cols = explorer.scan_arrays(g, tol)
    if args.format == "json":
        counts = {c: int((cols["class"] == c).sum()) for c in ("allowed", "boundary", "forbidden")}
        text = json.dumps({**_metadata(None, tol), "rho_steps": g.rho_steps, "sigma_steps": g.sigma_steps, "cells": g.size, "counts": counts}, indent=1) + "\n"
    else:
        rows = (
            (fmt(a), fmt(b), fmt(c), fmt(d), fmt(m), k)
            for a, b, c, d, m, k in zip(*(cols[name] for name in SCAN_COLUMNS))
        )
        meta = {**_metadata("none", tol), "rho_steps": g.rho_steps, "sigma_steps": g.sigma_steps}
        text = _csv_text(SCAN_COLUMNS, rows, meta)
    _emit(text, args.output)
    return EXIT_OK


# --------------------------------------------------------------------------- probe


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--dims must be a comma-separated list of integers, got {text!r}") from None
    if not dims or min(dims) < 2:
        raise UsageError("--dims entries must be integers >= 2")
    return dims


def cmd_probe(args) -> int:
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    target = tuple(args.target)
    if not all(0.0 <= t <= 1.0 for t in target):
        raise UsageError(f"--target values must lie in [0, 1], got {target}")
    if args.budget < 1:
        raise UsageError("--budget must be at least 1")
    seed = _seed(args)
    res = explorer.probe_achievability(
        target, dims=_parse_dims(args.dims), budget=args.budget, seed=seed, probe_tol=args.probe_tol, tol=tol
    )
    best = None
    if res.best_instance is not None:
        best = res.best_instance.to_dict()
    report = {
        **_metadata(seed, tol),
        "target": list(res.target),
        "dims": list(res.dims),
        "trials": res.trials,
        "best_distance": res.best_distance,
        "reached": res.reached,
        "probe_tol": res.probe_tol,
        "realized": {
            "rho": list(res.best_rho) if res.best_rho else None,
            "cos_sigma": res.best_cos_sigma,
            "gur_normalized_margin": res.best_margin,
            "gur_weakened_margin": float(normalized_margin(*res.best_rho, 1.0)) if res.best_rho else None,
        },
        "realized_violations": res.realized_violations,
        "realized_in_forbidden_region": res.realized_in_forbidden,
        "best_instance": best,
    }
    _emit(json.dumps(report, indent=1) + "\n", args.output)
    return EXIT_VIOLATION if res.realized_violations or res.realized_in_forbidden else EXIT_OK


# --------------------------------------------------------------------------- demo-spin


def cmd_demo_spin(args) -> int:
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    seed = args.seed if args.seed is not None else 0
    meta = _metadata(seed, tol)
    lines = []
    if args.preset in explorer.SPIN_PRESETS:
        row = explorer.preset_row(explorer.spin_preset(args.preset, args.axes))
        rows = [[*row["rho"], row["cos_sigma"], row["margin"]]]
        lines.append(f"preset {args.preset}: sigma2={', '.join(fmt(s) for s in row['sigma2'])}")
        lines.append("  rho12 rho23 rho31 cos_sigma margin")
        lines.append("  " + " ".join(fmt(x) for x in rows[0]))
        violations = int(row["margin"] < -tol and not row["degenerate"])
        summary = {"preset": args.preset, **row}
    else:
        axes = tuple(args.axes) if args.axes else ("z", "z", "z")
        rep = explorer.spin_demo(seed=seed, trials=args.trials, axes=axes, tol=tol)
        mask = rep.valid
        rows = np.column_stack([rep.rho, rep.cos_sigma, rep.margins])[mask].tolist()
        summary = rep.summary()
        violations = rep.n_violations + rep.n_forbidden
        lines.append(f"three-spin demo: axes={','.join(map(str, axes))} trials={rep.trials} seed={seed}")
        for name in ("rho12", "rho23", "rho31"):
            if name in summary:
                s = summary[name]
                lines.append(f"  {name}: min={fmt(s['min'])} mean={fmt(s['mean'])} max={fmt(s['max'])}")
        lines.append(f"  samples violating the normalized relation: {rep.n_violations}")
        lines.append(f"  samples inside the forbidden box: {rep.n_forbidden}")
        for name, row in rep.presets.items():
            lines.append(
                f"  preset {name}: rho=({', '.join(fmt(x) for x in row['rho'])}) "
                f"cos_sigma={fmt(row['cos_sigma'])} margin={fmt(row['margin'])}"
            )
    if args.format == "json":
        _emit(json.dumps({**meta, **summary}, indent=1, default=_json_default) + "\n", None)
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        text = _csv_text(SPIN_COLUMNS, ([fmt(x) for x in r] for r in rows), meta)
        _emit(text, args.output)
    return EXIT_VIOLATION if violations else EXIT_OK


# --------------------------------------------------------------------------- sample


def cmd_sample(args) -> int:
    if args.dim < 1 or args.n_observables < 1:
        raise UsageError("--dim and --n-observables must be positive")
    seed = _seed(args)
    spec = explorer.RandomSpec(args.dim, args.n_observables, seed, args.ensemble)
    inst = explorer.sample_instance(spec)
    meta = {"seed": seed, "ensemble": args.ensemble, "generator": explorer.GENERATOR_ID}
    if args.output:
        try:
            save_instance(inst, args.output, **meta)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(json.dumps({**inst.to_dict(), **meta}, indent=1) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------- parser


def _axis(text: str):
    if text.lower() in explorer.PAULI:
        return text.lower()
    try:
        vec = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"axis must be x, y, z or 'nx,ny,nz', got {text!r}") from None
    if len(vec) != 3:
        raise argparse.ArgumentTypeError("axis vector needs three components")
    return tuple(vec)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-9; scan 1e-12)")
    common.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="uncertainty-lab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="evaluate all relations for an instance file")
    v.add_argument("instance")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", parents=[common], help="grid scan of the normalized relation, CSV output")
    s.add_argument("--rho-steps", type=int, default=21)
    s.add_argument("--sigma-steps", type=int, default=13)
    s.set_defaults(func=cmd_scan)

    pr = sub.add_parser("probe", parents=[common], help="random search for a target rho triple")
    pr.add_argument("--target", type=float, nargs=3, required=True, metavar=("R12", "R23", "R31"))
    pr.add_argument("--budget", type=int, default=100_000)
    pr.add_argument("--dims", default="2,3,4,6,8")
    pr.add_argument("--probe-tol", type=float, default=1e-3, help="distance counted as reaching the target")
    pr.set_defaults(func=cmd_probe)

    d = sub.add_parser("demo-spin", parents=[common], help="three-spin polarization correlations")
    d.add_argument("--preset", choices=("random",) + explorer.SPIN_PRESETS, default="random")
    d.add_argument("--axes", type=_axis, nargs=3, default=None, metavar=("S1", "S2", "S3"))
    d.add_argument("--trials", type=int, default=10_000)
    d.set_defaults(func=cmd_demo_spin)

    sm = sub.add_parser("sample", parents=[common], help="write a random instance file")
    sm.add_argument("--dim", type=int, required=True)
    sm.add_argument("--n-observables", type=int, default=3)
    sm.add_argument("--ensemble", choices=("haar_state", "random_density"), default="haar_state")
    sm.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, InstanceError, UncertaintyLabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
