"""Command line front end: ``prym-forge {validate|analyze|verify|search|bounds}``."""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import __version__, bounds, seedfile
from .corresp import verify_SSt, verify_StS
from .cover import MonodromyRep, failures, validate
from .homology import HomologyError
from .ngonal import lift_action, sigma_quotient, split
from .perm import Permutation
from .prym import tower_homology, verify_isogeny_package
from .search import SearchParameterError, search_seeds

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_EXHAUSTED = 4


def jsonable(obj):
    """Plain JSON tree from dataclasses, numpy arrays, permutations and counters."""
    if isinstance(obj, Permutation):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (dict, Counter)):
        return {str(k): jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def render_text(tree, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(tree, dict):
        for k, v in tree.items():
            flat = json.dumps(v)
            if isinstance(v, (dict, list)) and len(flat) > 100:
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {flat}")
    elif isinstance(tree, list):
        for item in tree:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{json.dumps(tree)}")
    return lines


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write("\n".join(render_text(report)) + "\n")


def envelope(command: str, digest: str | None = None) -> dict:
    report = {"tool": "prym-forge", "version": __version__, "command": command}
    if digest is not None:
        report["input_sha256"] = digest
    return report


class CliError(Exception):
    def __init__(self, code: int, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


def read_seed(path: str) -> tuple[MonodromyRep, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        rep = seedfile.loads(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise CliError(EXIT_PARSE, "seed file is not UTF-8") from None
    except seedfile.SeedParseError as exc:
        raise CliError(EXIT_PARSE, str(exc), line=exc.line, column=exc.column) from None
    return rep, hashlib.sha256(data).hexdigest()


def validation_tree(rep: MonodromyRep):
    checks = validate(rep)
    return checks, [jsonable(c) for c in checks]


def cmd_validate(args) -> tuple[int, dict]:
    rep, digest = read_seed(args.file)
    report = envelope("validate", digest)
    checks, tree = validation_tree(rep)
    report["admissible"] = not failures(checks)
    report["checks"] = tree
    return (EXIT_OK if report["admissible"] else EXIT_FAIL), report


def analysis_tree(rep: MonodromyRep) -> dict:
    la = lift_action(rep)
    sr = split(la)
    sq = sigma_quotient(la)
    out = {"split": jsonable(sr)}
    quotient = {
        "fixed_point_free": sq.fixed_point_free,
        "swaps_components": sq.swaps_components,
        "genera": [c.genus for c in sq.analysis.components],
        "expected_genus": sq.expected_genus,
    }
    if sr.split and rep.degree_n % 2 == 1:
        quotient["note"] = "sigma exchanges the two components; C is isomorphic to either of them"
    if sq.expected_genus is not None:
        quotient["genus_formula_holds"] = all(c.genus == sq.expected_genus for c in sq.analysis.components)
    out["sigma_quotient"] = quotient
    if sr.split:
        gf = bounds.genus_formulas(rep.degree_n, sr.pair_genus, rep.base_genus)
        out["genus_formulas"] = jsonable(gf)
        out["cross_check"] = {
            "lift_components": all(g == gf.genus_lift_component for g in sr.genera),
            "component_degrees": all(d == 2 ** (rep.degree_n - 1) for d in sr.degrees),
            "ramification_per_component": all(
                all(k == 2 ** (rep.degree_n - 3) for k in row) for row in sr.ramification_points),
        }
    return out


def cmd_analyze(args) -> tuple[int, dict]:
    rep, digest = read_seed(args.file)
    report = envelope("analyze", digest)
    checks, tree = validation_tree(rep)
    if failures(checks):
        report["admissible"] = False
        report["checks"] = tree
        return EXIT_FAIL, report
    report["admissible"] = True
    report.update(analysis_tree(rep))
    ok = report["split"]["genus_formula_holds"] is not False
    if "cross_check" in report:
        ok = ok and all(report["cross_check"].values())
    ok = ok and report["sigma_quotient"].get("genus_formula_holds", True)
    return (EXIT_OK if ok else EXIT_FAIL), report


def homology_tree(th) -> dict:
    out = {}
    for name, h in (("X~", th.x_tilde), ("C~_1", th.c_tilde)):
        out[name] = {
            "euler_characteristic": h.complex.euler_characteristic,
            "genus": h.complex.genus,
            "rank_H1": h.rank,
        }
    if th.sigma is not None:
        J = th.c_tilde.intersection
        out["sigma_symplectic"] = bool(np.array_equal(th.sigma.T @ J @ th.sigma, J))
    J = th.x_tilde.intersection
    out["iota_symplectic"] = bool(np.array_equal(th.iota.T @ J @ th.iota, J))
    return out


def cmd_verify(args) -> tuple[int, dict]:
    rep, digest = read_seed(args.file)
    report = envelope(f"verify {args.which}", digest)
    checks, tree = validation_tree(rep)
    if failures(checks):
        report["admissible"] = False
        report["checks"] = tree
        return EXIT_FAIL, report
    report["admissible"] = True
    n = rep.degree_n
    if args.which == "prym" and n != 4:
        raise CliError(EXIT_UNSUPPORTED, f"isogeny verdicts are stated for n = 4, seed has n = {n}")
    if not lift_action(rep).is_split:
        raise CliError(EXIT_UNSUPPORTED, "C~ is not split; correspondences S and S^t need two components")
    verdicts = {}
    if args.which in ("correspondences", "all"):
        for r in (verify_StS(rep, args.fibers), verify_SSt(rep, args.fibers)):
            verdicts[r.name] = jsonable(r)
    if args.which in ("prym", "all"):
        try:
            th = tower_homology(rep)
        except HomologyError as exc:
            raise CliError(EXIT_FAIL, f"homology construction failed: {exc}") from None
        pkg = verify_isogeny_package(rep, th)
        report["homology"] = homology_tree(th)
        report["prym"] = {
            "checks": pkg.checks,
            "details": jsonable(pkg.details),
            "skipped": pkg.skipped,
        }
        if args.matrices and pkg.psi is not None:
            report["prym"]["psi"] = pkg.psi.tolist()
        verdicts.update({f"prym.{k}": {"holds": v} for k, v in pkg.checks.items()})
    report["verdicts"] = verdicts
    ok = all(v["holds"] for v in verdicts.values())
    report["all_pass"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), report


def cmd_search(args) -> tuple[int, dict]:
    report = envelope("search")
    try:
        result = search_seeds(args.n, args.g_y, args.b, count=args.count, seed=args.seed,
                              split=not args.nonsplit)
    except SearchParameterError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    report["parameters"] = {"n": args.n, "g_Y": args.g_y, "b": args.b, "count": args.count,
                            "seed": args.seed, "split": not args.nonsplit}
    report["attempts"] = result.attempts
    report["budget"] = result.budget
    report["found"] = len(result.seeds)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for rep in result.seeds:
            path = out / f"{rep.name}.json"
            seedfile.dump(rep, path)
            files.append(path.name)
        report["files"] = files
    else:
        report["seeds"] = [seedfile.to_document(rep) for rep in result.seeds]
    code = EXIT_EXHAUSTED if result.exhausted else EXIT_OK
    return code, report


def cmd_bounds(args) -> tuple[int, dict]:
    report = envelope("bounds")
    requested = {k: getattr(args, k) for k in
                 ("plan", "castelnuovo", "vandermonde", "gonality", "clifford", "genus_formulas")}
    if all(v is None for v in requested.values()):
        raise CliError(EXIT_PARSE, "bounds needs at least one of --plan, --castelnuovo, --vandermonde, "
                                   "--gonality, --clifford, --genus-formulas")
    code = EXIT_OK
    results = {}
    try:
        if args.plan is not None:
            plan = bounds.plan_counterexample(args.plan)
            cb = bounds.clifford_lower_bound(plan.g_y, plan.delta_min)
            results["plan"] = {**jsonable(plan), "clifford_bound": cb.bound, "meets_target": cb.bound >= plan.target}
        if args.castelnuovo is not None:
            results["castelnuovo"] = {"max_genus": bounds.castelnuovo_max_genus(*args.castelnuovo)}
        if args.vandermonde is not None:
            results["vandermonde"] = {"value": bounds.vandermonde_check(*args.vandermonde)}
        if args.gonality is not None:
            results["gonality"] = jsonable(bounds.gonality_of_simple_cover(*args.gonality))
            if not results["gonality"]["holds"]:
                code = EXIT_FAIL
        if args.clifford is not None:
            try:
                results["clifford"] = jsonable(bounds.clifford_lower_bound(*args.clifford))
            except bounds.HypothesisError as exc:
                results["clifford"] = {"error": str(exc), "deficit": exc.deficit}
                code = EXIT_FAIL
        if args.genus_formulas is not None:
            results["genus_formulas"] = jsonable(bounds.genus_formulas(*args.genus_formulas))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    report["results"] = results
    return code, report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prym-forge", description="n-gonal construction on monodromy data")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        return p

    with_file("validate", "check the admissibility hypotheses").set_defaults(func=cmd_validate)
    with_file("analyze", "components, genera and sigma quotient").set_defaults(func=cmd_analyze)
    p = with_file("verify", "correspondence identities and Prym lattice verdicts")
    p.add_argument("--which", choices=("correspondences", "prym", "all"), default="all")
    p.add_argument("--fibers", type=int, default=0, help="extra base fibers to check the identities on")
    p.add_argument("--matrices", action="store_true", help="include psi in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="seeded random search for admissible seeds")
    p.add_argument("n", type=int)
    p.add_argument("g_y", type=int, metavar="g_Y")
    p.add_argument("b", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nonsplit", action="store_true", help="search for towers with nonzero sign character")
    p.add_argument("--out", help="directory for seed files")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="Castelnuovo, gonality and Clifford index bounds")
    p.add_argument("--plan", type=int, metavar="N")
    p.add_argument("--castelnuovo", type=int, nargs=4, metavar=("N1", "N2", "GY1", "GY2"))
    p.add_argument("--vandermonde", type=int, nargs=2, metavar=("N", "GX"))
    p.add_argument("--gonality", type=int, nargs=3, metavar=("N", "GON_Y", "DELTA"))
    p.add_argument("--clifford", type=int, nargs=2, metavar=("GY", "DELTA"))
    p.add_argument("--genus-formulas", type=int, nargs=3, metavar=("N", "GX", "GY"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except CliError as exc:
        report = envelope(args.command)
        report["error"] = str(exc)
        report.update({k: v for k, v in exc.extra.items() if v is not None})
        emit(report, args.json, sys.stdout)
        return exc.code
    emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
