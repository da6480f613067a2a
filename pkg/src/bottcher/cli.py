"""Command-line front end.

Subcommands: classify | verify | lift | bottcher | basin.  Input is one
positional map file (JSON or TOML by extension); output is a JSON report to
stdout or --out, with CSV grids to --csv where applicable.

Exit codes: 0 pass, 1 verification failure, 2 guard/precondition violation,
3 input error.  Reports are deterministic for a fixed input and seed up to
the timestamp field, which --no-timestamp removes.  The environment
variable BOTTCHER_SEED overrides the default seed; --seed overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .basin import (VRegion, basin_descriptor, exponent_iterate,
                    preimage_region, rasterize_csv, validate_extension_region)
from .coordinates import (bottcher_evaluate, d1_contraction_check,
                          deck_symmetries, monomial_map)
from .errors import BottcherError, GuardError, InputError, NoConvergence
from .exact import INF, NEG_INF, ExtRat, ext_json
from .lift import CoveringSpec, cover_w, cover_z, lifted_origin_type
from .mapfile import MapSpec, load_map
from .newton import (Case, Classification, alpha0, classify,
                     d1_boundary_conflict, newton_polygon,
                     second_stage_interval, weight_intervals)
from .region import find_accepted_radius, sample, verify_dominance, wedge_for

EXIT_PASS = 0
EXIT_VERIFICATION = 1
EXIT_GUARD = 2
EXIT_INPUT = 3


def _cjson(z: complex) -> List[float]:
    return [z.real, z.imag]


def _classification_json(c: Classification) -> dict:
    out = {"case": c.case.value, "k": c.k}
    if c.is_boundary:
        out["alternatives"] = [_classification_json(a) for a in c.alternatives]
        return out
    out.update({
        "vertex": [c.gamma, c.d],
        "coeff": _cjson(c.coeff),
        "l1": ext_json(c.l1),
        "l2": ext_json(c.l2),
    })
    return out


def _region_json(region) -> dict:
    def bound(b):
        if b is None:
            return None
        return {"coeff": b.coeff, "exponent": ext_json(b.exponent)}

    return {"lower": bound(region.lower), "upper": bound(region.upper),
            "z_bound": region.z_bound,
            "exclude_z_axis": region.exclude_z_axis,
            "exclude_w_axis": region.exclude_w_axis}


def _intervals_json(c: Classification, np_, delta: int) -> dict:
    wi = weight_intervals(c, np_, delta)
    out = {"i1": wi.i1.to_json(), "alpha0": ext_json(wi.alpha0)}
    if wi.i2 is not None:
        out["i2_at_l1"] = wi.i2.to_json()
    return out


def _echo_input(path: str, spec: MapSpec) -> dict:
    f = spec.f
    return {
        "path": path,
        "p": [[k, c.real, c.imag] for k, c in f.p.coeffs.items()],
        "q": [[i, j, c.real, c.imag] for (i, j), c in f.q.coeffs.items()],
        "delta": f.p.delta,
    }


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _base_report(command: str, path: str, spec: MapSpec, seed: int,
                 args) -> dict:
    report = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "input": _echo_input(path, spec),
    }
    if not args.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return report


def _pick(c: Classification, choice: Optional[int]) -> Classification:
    if not c.is_boundary:
        return c
    if choice is None:
        raise GuardError(
            "delta equals an intercept T_k: two dominant terms; rerun with "
            "--pick-alternative 0 (smaller vertex index) or 1")
    return c.alternatives[choice]


def _check_degree(c: Classification, np_, delta: int) -> None:
    if c.d == 0:
        raise GuardError("the selected dominant term has w-degree 0; the "
                         "monomial map degenerates")
    if c.d == 1 and d1_boundary_conflict(np_, delta):
        raise GuardError("d = 1 with delta = T_k: no conjugacy to the "
                         "dominant monomial exists")


def _parse_weight(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {text!r}: {exc}") from exc


def _parse_ext(text: str) -> ExtRat:
    if text.strip() in ("inf", "+inf", "oo"):
        return INF
    if text.strip() == "-inf":
        return NEG_INF
    return _parse_weight(text)


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"bad point {text!r}: expected 'z,w'")
    try:
        return complex(parts[0]), complex(parts[1])
    except ValueError as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc


def cmd_classify(args, spec: MapSpec, seed: int) -> int:
    f = spec.f
    np_ = newton_polygon(f.q)
    c = classify(np_, f.p.delta, coeffs=f.q.coeffs)
    report = _base_report("classify", args.mapfile, spec, seed, args)
    report["newton"] = {
        "vertices": [list(v) for v in np_.vertices],
        "intercepts": [ext_json(t) for t in np_.intercepts],
    }
    report["classification"] = _classification_json(c)
    if c.is_boundary:
        report["intervals"] = [
            _intervals_json(a, np_, f.p.delta) for a in c.alternatives]
    else:
        report["intervals"] = _intervals_json(c, np_, f.p.delta)
    _emit(report, args)
    return EXIT_PASS


def cmd_verify(args, spec: MapSpec, seed: int) -> int:
    f = spec.f
    np_ = newton_polygon(f.q)
    c = _pick(classify(np_, f.p.delta, coeffs=f.q.coeffs),
              args.pick_alternative)
    _check_degree(c, np_, f.p.delta)
    r_grid = args.r if args.r else list(spec.defaults["r_grid"])
    count = args.samples or spec.defaults["samples"]
    reports = verify_dominance(f, c, r_grid, count, seed)
    rows = []
    accepted = None
    for rep in reports:
        ok = (max(rep.sup_eta, rep.sup_zeta) < args.eps) and rep.invariant
        if ok and accepted is None:
            accepted = rep
        rows.append({"r": rep.r, "sup_eta": rep.sup_eta,
                     "sup_zeta": rep.sup_zeta,
                     "sup_relative_f_error": rep.sup_relative_f_error,
                     "samples": rep.samples,
                     "violations": len(rep.violations), "pass": ok})
    report = _base_report("verify", args.mapfile, spec, seed, args)
    report["classification"] = _classification_json(c)
    report["dominance"] = rows
    verdict = {"accepted_r": accepted.r if accepted else None}
    if c.d == 1 and accepted is not None:
        con = d1_contraction_check(f, c, accepted.r, args.contraction_steps,
                                   count, seed)
        report["contraction"] = {"r": con.r, "n": con.n, "orbits": con.orbits,
                                 "failures": len(con.failures)}
        verdict["contraction_pass"] = con.passed
    report["verdicts"] = verdict
    passed = accepted is not None and verdict.get("contraction_pass", True)
    report["verdicts"]["pass"] = passed
    _emit(report, args)
    return EXIT_PASS if passed else EXIT_VERIFICATION


def cmd_bottcher(args, spec: MapSpec, seed: int) -> int:
    f = spec.f
    np_ = newton_polygon(f.q)
    c = classify(np_, f.p.delta, coeffs=f.q.coeffs)
    if c.is_boundary and args.pick_alternative is not None:
        targets = [c.alternatives[args.pick_alternative]]
    elif c.is_boundary:
        # Two dominant terms: run every alternative satisfying the degree
        # condition on its own wedge; refuse if none does.
        targets = [a for a in c.alternatives
                   if a.d >= 2 or (a.d == 1
                                   and not d1_boundary_conflict(np_, f.p.delta))]
        if not targets:
            raise GuardError(
                "delta = T_k and no dominant term satisfies the degree "
                "condition (d >= 2, or d = 1 with delta != T_k): no "
                "conjugacy exists on either wedge")
    else:
        targets = [c]
    tol = args.tol or spec.defaults["tol"]
    n_max = args.nmax or spec.defaults["n_max"]
    report = _base_report("bottcher", args.mapfile, spec, seed, args)
    report["targets"] = []
    all_converged = True
    for target in targets:
        _check_degree(target, np_, f.p.delta)
        if args.r:
            radius = args.r
        else:
            radius = find_accepted_radius(f, target, eps_target=0.25,
                                          count=512, seed=seed).r
        pts = sample(wedge_for(target, radius), args.points, seed)
        pts.extend(pt for pt in (args.at or []))
        records = []
        max_residual = 0.0
        for z, w in pts:
            try:
                res = bottcher_evaluate(f, target, z, w, tol=tol, n_max=n_max)
                records.append({
                    "point": [_cjson(z), _cjson(w)],
                    "phi": [_cjson(res.phi[0]), _cjson(res.phi[1])],
                    "iterations": res.iterations,
                    "residual": res.residual,
                    "converged": res.converged,
                })
                max_residual = max(max_residual, res.residual)
            except (NoConvergence, BottcherError) as exc:
                records.append({"point": [_cjson(z), _cjson(w)],
                                "error": str(exc), "converged": False})
                all_converged = False
        block = {
            "classification": _classification_json(target),
            "r": radius,
            "points": records,
            "summary": {"max_residual": max_residual,
                        "count": len(records)},
        }
        if target.d >= 2:
            m = monomial_map(f, target)
            block["deck_symmetries"] = [
                {"c1": _cjson(s.c1), "c2": _cjson(s.c2),
                 "angle1": ext_json(s.angle1), "angle2": ext_json(s.angle2)}
                for s in deck_symmetries(m)]
        report["targets"].append(block)
    report["verdicts"] = {"all_converged": all_converged}
    _emit(report, args)
    return EXIT_PASS if all_converged else EXIT_VERIFICATION


def _lift_block(lm) -> dict:
    poly = newton_polygon(lm.series)
    origin = lifted_origin_type(lm)
    return {
        "kind": lm.kind,
        "coverings": [{"axis": s.axis, "r": s.r, "s": s.s,
                       "weight": ext_json(Fraction(s.s, s.r))}
                      for s in lm.coverings],
        "covering_degree": lm.meta.get("covering_degree"),
        "first": {"coeff": _cjson(lm.first_coeff),
                  "exponents": list(lm.first_exponents)},
        "second": {"coeff": _cjson(lm.second_coeff),
                   "exponents": list(lm.second_exponents)},
        "series_support": [list(k) for k in lm.series.coeffs],
        "single_vertex": poly.s == 1,
        "lifted_vertices": [list(v) for v in poly.vertices],
        "origin": {
            "fixes_origin": origin.fixes_origin,
            "superattracting": origin.superattracting,
            "inequalities": origin.inequalities,
        },
    }


def cmd_lift(args, spec: MapSpec, seed: int) -> int:
    f = spec.f
    np_ = newton_polygon(f.q)
    c = _pick(classify(np_, f.p.delta, coeffs=f.q.coeffs),
              args.pick_alternative)
    stage = args.stage
    if stage is None:
        stage = {Case.CASE1: "pi1", Case.CASE2: "pi1", Case.CASE3: "pi2",
                 Case.CASE4: "both"}[c.case]
    report = _base_report("lift", args.mapfile, spec, seed, args)
    report["classification"] = _classification_json(c)
    report["stage"] = stage
    wi = weight_intervals(c, np_, f.p.delta)
    blocks = []
    if stage in ("pi1", "both"):
        if args.weight:
            weight = _parse_weight(args.weight)
        elif c.case is Case.CASE3:
            weight = Fraction(0)
        elif stage == "both" and wi.i1.contains(wi.alpha0):
            # alpha0 zeroes the lifted dominant exponent, so the second
            # stage is well-defined at every admissible weight.
            weight = wi.alpha0
        else:
            weight = c.l1
        lm1 = cover_z(f, c, CoveringSpec.from_weight("z", weight))
        blocks.append(_lift_block(lm1))
    if stage == "pi2":
        if args.weight:
            weight = _parse_weight(args.weight)
        elif c.gamma > 0:
            weight = wi.alpha0
        else:
            weight = c.l2
        lm2 = cover_w(f, c, CoveringSpec.from_weight("w", weight))
        blocks.append(_lift_block(lm2))
    if stage == "both":
        if args.weight2:
            w2 = _parse_weight(args.weight2)
        else:
            w2 = second_stage_interval(c, lm1.coverings[0].weight).hi
        lm2 = cover_w(lm1, c, CoveringSpec.from_weight("w", w2))
        blocks.append(_lift_block(lm2))
    report["lifts"] = blocks
    # For Case 4 only the terminal lift collapses to a single vertex; the
    # first stage is the intermediate multi-vertex situation.
    report["verdicts"] = {
        "final_single_vertex": blocks[-1]["single_vertex"],
        "final_superattracting": blocks[-1]["origin"]["superattracting"],
    }
    _emit(report, args)
    return EXIT_PASS


def cmd_basin(args, spec: MapSpec, seed: int) -> int:
    f = spec.f
    np_ = newton_polygon(f.q)
    c = _pick(classify(np_, f.p.delta, coeffs=f.q.coeffs),
              args.pick_alternative)
    if c.d < 1:
        raise GuardError("basin algebra needs a dominant w-degree d >= 1")
    r = args.r
    n = args.n
    report = _base_report("basin", args.mapfile, spec, seed, args)
    report["classification"] = _classification_json(c)
    delta, gamma, d = c.delta, c.gamma, c.d
    report["exponent_map"] = {
        "alpha0": ext_json(alpha0(c)),
        "iterates_of_l1": [ext_json(exponent_iterate(c.l1, j, delta, gamma, d))
                           for j in range(n + 1)],
    }
    pre = preimage_region(c, r, n)
    report["preimage"] = {"n": n, "r": r, "region": _region_json(pre)}
    desc = basin_descriptor(c, np_, r=r)
    report["basin"] = {"label": desc.label, "case": desc.case.value,
                       "region": _region_json(desc.region),
                       "alpha0": ext_json(desc.alpha0)}
    verdict = {"pass": True}
    vreg = None
    if args.v:
        parts = args.v.split(",")
        if len(parts) != 4:
            raise InputError("--v expects 'a1,a2,r1,r2'")
        vreg = VRegion(a1=_parse_ext(parts[0]), a2=_parse_ext(parts[1]),
                       r1=float(parts[2]), r2=float(parts[3]))
        try:
            validate_extension_region(c, np_, vreg, r,
                                      count=spec.defaults["samples"],
                                      seed=seed)
        except ValueError as exc:
            raise GuardError(f"extension region parameters: {exc}") from exc
        report["extension_region"] = {
            "a1": ext_json(vreg.a1), "a2": ext_json(vreg.a2),
            "r1": vreg.r1, "r2": vreg.r2, "valid": True,
        }
    if args.csv:
        width, height = (int(t) for t in args.grid.split("x"))
        rasterize_csv(args.csv, c, np_, r, n, width, height, v=vreg,
                      threads=args.threads)
        report["csv"] = {"path": args.csv, "grid": [width, height]}
    report["verdicts"] = verdict
    _emit(report, args)
    return EXIT_PASS


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("mapfile", help="map description file (.json or .toml)")
    sub.add_argument("--out", help="write the JSON report here instead of stdout")
    sub.add_argument("--seed", type=int, default=None,
                     help="sampling seed (overrides BOTTCHER_SEED)")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit the timestamp field (byte-stable reports)")
    sub.add_argument("--pick-alternative", type=int, choices=(0, 1),
                     default=None,
                     help="at a boundary (delta = T_k), select a dominant term")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for grid evaluation")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bottcher",
        description="Newton-polygon classification and numerical conjugacy "
                    "to the dominant monomial map for holomorphic skew "
                    "products with a superattracting fixed point.")
    ap.add_argument("--version", action="version", version=__version__)
    subs = ap.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="Newton polygon, case, weights, "
                                           "weight intervals")
    _add_common(sub)

    sub = subs.add_parser("verify", help="sampled dominance and invariance "
                                         "of the wedge")
    _add_common(sub)
    sub.add_argument("--r", type=float, action="append",
                     help="wedge radius (repeatable; default from the file)")
    sub.add_argument("--samples", type=int, default=None)
    sub.add_argument("--eps", type=float, default=0.5,
                     help="acceptance threshold for the sampled sups")
    sub.add_argument("--contraction-steps", type=int, default=4,
                     help="halving steps checked on the d = 1 path")

    sub = subs.add_parser("bottcher", help="evaluate the conjugacy and its "
                                           "diagnostics")
    _add_common(sub)
    sub.add_argument("--points", type=int, default=16,
                     help="number of sampled wedge points")
    sub.add_argument("--tol", type=float, default=None)
    sub.add_argument("--nmax", type=int, default=None)
    sub.add_argument("--r", type=float, default=None,
                     help="wedge radius (default: accepted-radius search)")
    sub.add_argument("--at", action="append", type=_parse_point,
                     help="additional evaluation point 'z,w' (repeatable)")

    sub = subs.add_parser("lift", help="branched-covering lifts")
    _add_common(sub)
    sub.add_argument("--stage", choices=("pi1", "pi2", "both"), default=None,
                     help="which covering stage(s); default from the case")
    sub.add_argument("--weight", default=None, help="covering weight s/r")
    sub.add_argument("--weight2", default=None,
                     help="second-stage weight for --stage both")

    sub = subs.add_parser("basin", help="preimage regions and the basin "
                                        "catalog of the monomial map")
    _add_common(sub)
    sub.add_argument("--n", type=int, default=4, help="preimage depth")
    sub.add_argument("--r", type=float, default=0.25, help="wedge radius")
    sub.add_argument("--grid", default="64x64", help="raster grid WxH")
    sub.add_argument("--csv", default=None, help="write a raster CSV here")
    sub.add_argument("--v", default=None,
                     help="extension region 'a1,a2,r1,r2' to validate")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("BOTTCHER_SEED", "0"))
    handler = {"classify": cmd_classify, "verify": cmd_verify,
               "bottcher": cmd_bottcher, "lift": cmd_lift,
               "basin": cmd_basin}[args.command]
    try:
        spec = load_map(args.mapfile)
        return handler(args, spec, seed)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except BottcherError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
