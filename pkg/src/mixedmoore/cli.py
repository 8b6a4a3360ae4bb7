"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments, 3 infeasible, 4 verification
failure, 5 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import errors
from .catalog import Catalog
from .exact import solve_exact
from .graph import format_graph, read_graph
from .heuristic import HeuristicConfig, solve_heuristic
from .lp import parse_solution, write_lp
from .model import FAMILY_NAMES, assignment_to_graph, build_model, model_stats
from .moore import moore_profile
from .reference import REFERENCE_ROWS, BEST_KNOWN_NORM1, consistency_note
from .verify import NEITHER, verify

EXACT_DEFAULT_MAX_N = 12


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_bound(args) -> int:
    prof = moore_profile(args.r, args.z, args.k)
    _emit({"r": prof.r, "z": prof.z, "k": prof.k, "M": prof.M,
           "layer_counts": list(prof.layer_counts),
           "s_per_vertex": prof.s_per_vertex, "s_total": prof.s_total})
    return 0


def cmd_model(args) -> int:
    model = build_model(args.r, args.z, radial_only=args.radial_only)
    out = Path(args.out or f"rm_{args.r}_{args.z}_2.lp")
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        write_lp(model, fh)
    var_count, fam = model_stats(model)
    _emit({"path": str(out), "n": model.n, "variables": var_count,
           "declared_variables": var_count + 1,
           "rows": {f"{f} ({FAMILY_NAMES[f]})": cnt for f, cnt in fam.items()},
           "row_total": sum(fam.values())})
    return 0


def _heuristic_config(args) -> HeuristicConfig:
    kw = {"seed": args.seed}
    for name in ("restarts", "max_iters", "tabu_len", "weight", "patience"):
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    return HeuristicConfig(allow_moore=args.allow_moore, **kw)


def _run(r, z, method, args):
    if method == "exact":
        return solve_exact(r, z, time_limit=args.time_limit, thread_budget=args.threads,
                           seed=args.seed, allow_moore=args.allow_moore)
    return solve_heuristic(r, z, _heuristic_config(args), time_limit=args.time_limit,
                           threads=args.threads)


def _default_method(r, z):
    return "exact" if moore_profile(r, z, 2).M <= EXACT_DEFAULT_MAX_N else "heuristic"


def cmd_solve(args) -> int:
    method = args.method or _default_method(args.r, args.z)
    rep = _run(args.r, args.z, method, args)
    out = rep.to_dict()
    code = 0
    if rep.best_graph is not None:
        ver = verify(rep.best_graph, args.r, args.z)
        out["classification"] = ver.classification
        text = format_graph(rep.best_graph, args.r, args.z)
        path = Path(args.out or f"rm_{args.r}_{args.z}_2_{method}.mrg")
        path.write_text(text, encoding="utf-8")
        out["graph_file"] = str(path)
        if ver.classification == NEITHER:
            code = errors.VerificationFailed.exit_code
        elif args.catalog:
            entry = Catalog(args.catalog).add(rep.best_graph, args.r, args.z, method,
                                              rep.proved_optimal, ver)
            out["catalog_entry"] = entry.graph_file
    else:
        out["classification"] = None
        code = errors.Infeasible.exit_code
    _emit(out)
    return code


def cmd_verify(args) -> int:
    g, r, z = read_graph(args.path)
    r = args.r if args.r is not None else r
    z = args.z if args.z is not None else z
    rep = verify(g, r, z)
    _emit(rep.to_dict())
    return 0 if rep.classification != NEITHER else errors.VerificationFailed.exit_code


def cmd_import_solution(args) -> int:
    model = build_model(args.r, args.z)
    text = Path(args.path).read_text(encoding="utf-8")
    assignment = parse_solution(text, model)
    g = assignment_to_graph(model, assignment)
    rep = verify(g, args.r, args.z)
    out = rep.to_dict()
    if args.catalog:
        entry = Catalog(args.catalog).add(g, args.r, args.z, "external", False, rep)
        out["catalog_entry"] = entry.graph_file
    if args.out:
        Path(args.out).write_text(format_graph(g, args.r, args.z), encoding="utf-8")
        out["graph_file"] = args.out
    _emit(out)
    return 0 if rep.classification != NEITHER else errors.VerificationFailed.exit_code


def table_rows(rows, args):
    """Run each selected reference row and compare with the published values."""
    results = []
    for row in rows:
        method = args.method or _default_method(row.r, row.z)
        rec = {"r": row.r, "z": row.z, "M": moore_profile(row.r, row.z, 2).M,
               "ref_M": row.M, "ref_status": row.status, "ref_norm1": row.norm1,
               "ref_optimal": row.optimal, "method": method,
               "best_known_norm1": BEST_KNOWN_NORM1.get((row.r, row.z))}
        notes = []
        note = consistency_note(row)
        if note:
            notes.append(note)
        try:
            rep = _run(row.r, row.z, method, args)
        except errors.MixedMooreError as exc:
            rep = None
            notes.append(f"{type(exc).__name__}: {exc}")
        if rep is not None and rep.best_graph is not None:
            ver = verify(rep.best_graph, row.r, row.z)
            rec.update(status=rep.best_status, norm1=ver.norm1, edges=len(rep.best_graph.edges),
                       arcs=len(rep.best_graph.arcs), proved_optimal=rep.proved_optimal,
                       classification=ver.classification, wall_time_s=round(rep.wall_time, 2))
        else:
            rec.update(status=None, norm1=None, edges=None, arcs=None, proved_optimal=False,
                       classification=None, wall_time_s=None)
        rec["M_match"] = rec["M"] == row.M
        if method == "exact":
            rec["status_match"] = rec["status"] == row.status
        else:
            rec["status_match"] = None
            notes.append("heuristic result: not comparable for optimality")
        if rec["status"] is not None and rec["status"] < row.status:
            notes.append("improves on the printed status")
        rec["notes"] = notes
        results.append(rec)
    return results


def cmd_table(args) -> int:
    rows = REFERENCE_ROWS
    if args.rows:
        wanted = {tuple(int(t) for t in spec.split(",")) for spec in args.rows}
        rows = [row for row in REFERENCE_ROWS if (row.r, row.z) in wanted]
    results = table_rows(rows, args)
    if args.json:
        _emit(results)
        return 0
    cols = ("r", "z", "M", "ref_M", "status", "ref_status", "norm1", "ref_norm1",
            "proved_optimal", "ref_optimal", "method", "status_match", "notes")
    print("\t".join(cols))
    for rec in results:
        print("\t".join("; ".join(rec[c]) if c == "notes" else str(rec[c]) for c in cols))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixedmoore",
                                 description="Search and verify mixed radial Moore graphs of radius 2.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="mixed Moore bound and layer counts")
    p.add_argument("r", type=int)
    p.add_argument("z", type=int)
    p.add_argument("k", type=int, nargs="?", default=2)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("model", help="write the IP model as an LP file")
    p.add_argument("r", type=int)
    p.add_argument("z", type=int)
    p.add_argument("--out")
    p.add_argument("--radial-only", action="store_true",
                   help="add one row excluding diameter-2 (Moore) solutions")
    p.set_defaults(func=cmd_model)

    def search_flags(p):
        p.add_argument("--method", choices=("exact", "heuristic"))
        p.add_argument("--time-limit", type=float, default=300.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--allow-moore", action="store_true",
                       help="accept diameter-2 graphs (true Moore graphs) as solutions")
        p.add_argument("--restarts", type=int)
        p.add_argument("--max-iters", type=int)
        p.add_argument("--tabu-len", type=int)
        p.add_argument("--weight", type=int)
        p.add_argument("--patience", type=int)

    p = sub.add_parser("solve", help="search for a minimum-status RM(r,z,2) graph")
    p.add_argument("r", type=int)
    p.add_argument("z", type=int)
    search_flags(p)
    p.add_argument("--out")
    p.add_argument("--catalog", help="catalog directory to record the result in")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="classify a graph file")
    p.add_argument("path")
    p.add_argument("r", type=int, nargs="?")
    p.add_argument("z", type=int, nargs="?")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="rerun the published reference rows within the given budget")
    search_flags(p)
    p.add_argument("--rows", nargs="*", metavar="R,Z")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("import-solution", help="import an external solver's solution file")
    p.add_argument("path")
    p.add_argument("r", type=int)
    p.add_argument("z", type=int)
    p.add_argument("--out")
    p.add_argument("--catalog")
    p.set_defaults(func=cmd_import_solution)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except errors.MixedMooreError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
