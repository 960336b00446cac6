"""Command-line front end.

Graph arguments are family shorthands (``K5``, ``E3``, ``P4``, ``C6``,
``2K3``, ``2C4``, ``union:K2,C4``) or paths to edge-list files.

Exit status: 0 ok, 2 parse error, 3 precondition failure, 4 verification
failure, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys

import numpy as np

from .errors import CoronaQecError, FormulaNotEstablished, GraphSpecError, NumericalError, VerificationError
from .graph import (
    Graph,
    complete,
    corona,
    cycle,
    disjoint_union,
    distance_matrix,
    empty,
    format_edge_list,
    path,
    read_edge_list,
)
from .omega_psi import OmegaPsi
from .qec import qec_oracle
from .theorems import Tolerances, batch_verify, example_corpus, verify_many, verify_pair

_FAMILIES = {"K": complete, "E": empty, "P": path, "C": cycle}
_SHORTHAND = re.compile(r"^(\d*)([KEPC])(\d+)$")


def parse_graph_spec(spec: str) -> Graph:
    """Resolve a family shorthand or an edge-list file path to a Graph."""
    spec = spec.strip()
    if os.path.isfile(spec):
        with open(spec) as fh:
            return read_edge_list(fh.read(), label=os.path.basename(spec))
    if spec.startswith("union:"):
        parts = [p for p in spec[len("union:"):].split(",") if p.strip()]
        if not parts:
            raise GraphSpecError(f"empty union in {spec!r}")
        return disjoint_union(*(parse_graph_spec(p) for p in parts), label=spec)
    m = _SHORTHAND.match(spec)
    if not m:
        raise GraphSpecError(f"unrecognized graph spec {spec!r} (not a shorthand or an existing file)")
    copies, family, size = m.group(1), m.group(2), int(m.group(3))
    base = _FAMILIES[family](size)
    if not copies:
        return base
    p = int(copies)
    if p < 1:
        raise GraphSpecError(f"copy count must be positive in {spec!r}")
    return disjoint_union(*[base] * p, label=spec)


# -- output helpers ---------------------------------------------------------------

def _round(x):
    """Floats to 12 significant digits; non-finite floats become null."""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(f"{x:.12g}") if math.isfinite(x) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _dump_json(obj, tols: Tolerances, out) -> None:
    payload = dict(obj) if isinstance(obj, dict) else {"result": obj}
    payload["tolerances"] = tols.to_dict()
    json.dump(_round(payload), out, indent=2)
    out.write("\n")


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _table(rows: list[list], header: list[str], out) -> None:
    cells = [[_fmt(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for r in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _tols(args) -> Tolerances:
    return Tolerances(group_tol=args.group_tol, main_tol=args.main_tol, eigen_excl_tol=args.eigen_excl_tol)


# -- commands -----------------------------------------------------------------------

def cmd_qec(args, out) -> int:
    g = parse_graph_spec(args.graph)
    res = qec_oracle(distance_matrix(g), g.label or args.graph)
    if args.format == "table":
        _table([[res.graph_id, res.n, res.value, res.method.value]], ["graph", "n", "qec", "method"], out)
    else:
        _dump_json(res.to_dict(), _tols(args), out)
    return 0


def cmd_dist(args, out) -> int:
    g = parse_graph_spec(args.graph)
    d = distance_matrix(g)
    if args.format == "table":
        _table([[i, *row] for i, row in enumerate(d.tolist())], ["", *map(str, range(g.n))], out)
    elif args.format == "csv":
        csv.writer(out, lineterminator="\n").writerows(d.tolist())
    else:
        _dump_json({"graph": g.label or args.graph, "n": g.n, "distance_matrix": d.tolist()}, _tols(args), out)
    return 0


def cmd_corona(args, out) -> int:
    g, h = parse_graph_spec(args.g), parse_graph_spec(args.h)
    c = corona(g, h)
    if args.format == "json":
        _dump_json({"graph": c.label, "n": c.n, "edges": [list(e) for e in c.edges]}, _tols(args), out)
    else:
        out.write(format_edge_list(c))
    return 0


def _sample_rows(op: OmegaPsi, a: float, b: float, m: int) -> list[list]:
    rows = []
    for lam in np.linspace(a, b, m):
        lam = float(lam)
        try:
            om = op.omega(lam)
        except NumericalError:
            om = math.nan
        try:
            ps = op.psi(lam)
        except NumericalError:
            ps = math.nan
        rows.append([lam, om, ps])
    return rows


def _write_sample_csv(rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["lambda", "omega", "psi"])
    for r in rows:
        w.writerow([f"{x:.12g}" for x in r])


def cmd_omega(args, out) -> int:
    h = parse_graph_spec(args.graph)
    tols = _tols(args)
    op = OmegaPsi.from_graph(h, tols.group_tol, tols.main_tol)
    if args.sample:
        a, b, m = args.sample
        _write_sample_csv(_sample_rows(op, float(a), float(b), int(m)), out)
        return 0
    d = op.to_dict()
    d["graph"] = h.label or args.graph
    d["spectrum"] = op.spectrum.to_dict()
    if args.format == "table":
        _table([[k, d[k]] for k in ("n", "main_eigenvalues", "weights", "poles", "zeros", "lambda_star")],
               ["field", "value"], out)
    else:
        _dump_json(d, tols, out)
    return 0


def cmd_psi_inv(args, out) -> int:
    h = parse_graph_spec(args.graph)
    tols = _tols(args)
    op = OmegaPsi.from_graph(h, tols.group_tol, tols.main_tol)
    value = op.psi_inv(args.target)
    if args.format == "table":
        _table([[h.label or args.graph, args.target, value]], ["graph", "target", "psi_inv"], out)
    else:
        _dump_json({"graph": h.label or args.graph, "target": args.target, "psi_inv": value}, tols, out)
    return 0


def _report_rows(reports):
    return [[r.g.label, r.h.label, r.g_qec, ",".join(r.applicable) or "-", r.predicted,
             None if r.oracle is None else r.oracle.value, r.deviation, r.status] for r in reports]


_REPORT_HEADER = ["G", "H", "QEC(G)", "theorems", "predicted", "oracle", "deviation", "status"]


def cmd_predict(args, out) -> int:
    g, h = parse_graph_spec(args.g), parse_graph_spec(args.h)
    g = g if g.label else g.with_label(args.g)
    h = h if h.label else h.with_label(args.h)
    tols = _tols(args)
    rep = verify_pair(g, h, tols, args.cap)
    if args.format == "table":
        _table(_report_rows([rep]), _REPORT_HEADER, out)
    else:
        _dump_json(rep.to_dict(), tols, out)
    if not rep.passed:
        raise VerificationError(f"verification failed for ({g.label}, {h.label}): {rep.checks}")
    if not rep.applicable:
        raise FormulaNotEstablished(f"formula not established for ({g.label}, {h.label}); oracle value reported")
    return 0


def cmd_verify(args, out) -> int:
    tols = _tols(args)
    if args.corpus:
        summary = verify_many(example_corpus(), tols, args.cap, args.workers)
    else:
        if args.seed is None:
            raise GraphSpecError("verify needs --seed (or --corpus)")
        summary = batch_verify(args.count, args.seed, args.gmax, args.hmax, tols, args.cap, args.workers)
    if args.format == "table":
        _table(_report_rows(summary.reports), _REPORT_HEADER, out)
        out.write("\n")
        _table([[t, c["pass"], c["fail"]] for t, c in summary.per_tag.items()], ["theorem", "pass", "fail"], out)
        out.write(f"\npairs {summary.total}  applicable {summary.applicable_pairs}  "
                  f"not established {summary.not_established}  indeterminate {len(summary.indeterminate)}  "
                  f"worst deviation {summary.worst_deviation:.3e}\n")
    else:
        payload = summary.to_dict()
        payload["reports"] = [r.to_dict() for r in summary.reports]
        payload["config"] = {"seed": args.seed, "count": args.count, "gmax": args.gmax, "hmax": args.hmax,
                             "corpus": args.corpus, "cap": args.cap}
        _dump_json(payload, tols, out)
    if not summary.ok:
        raise VerificationError(f"{len(summary.failures)} pair(s) failed verification")
    return 0


def cmd_sample(args, out) -> int:
    h = parse_graph_spec(args.graph)
    tols = _tols(args)
    op = OmegaPsi.from_graph(h, tols.group_tol, tols.main_tol)
    if args.m < 1:
        raise GraphSpecError("sample count must be positive")
    _write_sample_csv(_sample_rows(op, args.a, args.b, args.m), out)
    return 0


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "csv"], default=None,
                        help="output format (default json; corona defaults to an edge list)")
    common.add_argument("--table", dest="format", action="store_const", const="table",
                        help="shorthand for --format table")
    common.add_argument("--group-tol", type=float, default=Tolerances.group_tol)
    common.add_argument("--main-tol", type=float, default=Tolerances.main_tol)
    common.add_argument("--eigen-excl-tol", type=float, default=Tolerances.eigen_excl_tol)

    parser = argparse.ArgumentParser(prog="coronaqec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("qec", parents=[common], help="QEC of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_qec)

    p = sub.add_parser("dist", parents=[common], help="distance matrix")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("corona", parents=[common], help="edge list of G o H")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_corona)

    p = sub.add_parser("omega", parents=[common], help="omega/psi data of H")
    p.add_argument("graph")
    p.add_argument("--sample", nargs=3, metavar=("A", "B", "M"), help="emit M (lambda, omega, psi) rows as CSV")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("psi-inv", parents=[common], help="largest solution of psi_H(lambda) = t")
    p.add_argument("graph")
    p.add_argument("target", type=float)
    p.set_defaults(func=cmd_psi_inv)

    p = sub.add_parser("predict", parents=[common], help="theorem report for G o H with oracle check")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--cap", type=int, default=400, help="maximum corona size")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", parents=[common], help="seeded batch verification")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--gmax", type=int, default=6)
    p.add_argument("--hmax", type=int, default=4)
    p.add_argument("--cap", type=int, default=400)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--corpus", action="store_true", help="verify the fixed worked-example corpus instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[common], help="CSV of (lambda, omega, psi) over [a, b]")
    p.add_argument("graph")
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_sample)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CoronaQecError as exc:
        err.write(f"coronaqec: error: {exc}\n")
        return exc.exit_code
    except (np.linalg.LinAlgError, FloatingPointError, ZeroDivisionError) as exc:
        err.write(f"coronaqec: numerical error: {exc}\n")
        return NumericalError.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
