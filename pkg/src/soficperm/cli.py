"""Command-line front end: every operation as a seeded, reproducible run.

Output contract
---------------
* Data goes to stdout (or ``--out FILE``); anything diagnostic goes to
  stderr.  Records carry ``schema: 1``, the subcommand name, the seed, and
  the fully resolved configuration, so a result file is self-describing.
* ``--format json`` emits one indented JSON record; ``--format csv`` emits
  flat plot-ready rows (floats instead of exact rationals; the exact values
  live in the JSON form).  Each CSV row repeats schema/command/seed and ends
  with a ``config`` column holding the resolved configuration as compact
  JSON.
* Exit status: 0 on success, 1 when the computation itself reports failure
  (a verification that does not pass, an exact search with no solution, a
  relation check that fails), 2 on bad flags or malformed input files.
* ``--workers`` is accepted for interface stability; results never depend
  on it, and runs with different worker counts emit identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import approx as approxmod
from . import conjsearch as conjmod
from . import groups as groupsmod
from . import heuristic as heurmod
from . import higman as higmod
from . import perm as permmod
from . import serialize as ser

__all__ = ["ExperimentConfig", "run", "main", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

_CONFIG_KEYS = ("subcommand", "options", "seed", "out")


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved run: subcommand, its flag values, seed, output path."""

    subcommand: str
    options: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    out: Optional[str] = None

    def to_obj(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "options": dict(self.options),
            "seed": self.seed,
            "out": self.out,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "ExperimentConfig":
        unknown = set(obj) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in ("subcommand", "options"):
            if key not in obj:
                raise ValueError(f"config missing {key!r}")
        options = obj["options"]
        if not isinstance(options, dict):
            raise ValueError("options must be a mapping")
        return cls(
            subcommand=str(obj["subcommand"]),
            options=dict(options),
            seed=int(obj.get("seed", 0)),
            out=obj.get("out"),
        )


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

def _fnum(x) -> str:
    """Plot-ready cell: exact rationals and floats as repr'd floats."""
    if isinstance(x, Fraction):
        return repr(float(x))
    return repr(float(x))


def _read_json(path: str):
    """Load a JSON payload; a full output record unwraps to its result, so
    the --out file of one run feeds directly into the next."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if isinstance(obj, dict) and "schema" in obj and "result" in obj:
        obj = obj["result"]
    return obj


def _load_spec(path: str) -> approxmod.ApproxSpec:
    return ser.spec_from_obj(_read_json(path))


def _load_perm(path: str) -> permmod.Perm:
    obj = _read_json(path)
    if isinstance(obj, dict):
        for key in ("perm", "f"):
            if key in obj:
                obj = obj[key]
                break
    return ser.perm_from_obj(obj)


def _join(images) -> str:
    return " ".join(str(int(v)) for v in images)


class _Failure(Exception):
    """Computation-level failure: record is still emitted, exit code is 1."""


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output encoding (default json)")
    common.add_argument("--seed", type=int, default=0,
                        help="RNG seed, echoed in every record (default 0)")
    common.add_argument("--out", default=None, metavar="FILE",
                        help="write data here instead of stdout")
    common.add_argument("--workers", type=int, default=1,
                        help="worker count; never affects output bytes")

    parser = argparse.ArgumentParser(
        prog="soficperm",
        description="Permutation models of five groups: build, verify, "
                    "search, count.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "count-orders", parents=[common],
        help="exact count of permutations with f^k = id",
        epilog="csv columns: schema,command,seed,n,k,count,config")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser(
        "make-approx", parents=[common],
        help="build generator images for a group family",
        epilog="csv columns: schema,command,seed,family,n,npoints,p,q,m,"
               "psi_a,psi_b,config (permutations space-joined)")
    p.add_argument("--group", required=True, choices=groupsmod.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)

    p = sub.add_parser(
        "verify", parents=[common],
        help="check the two approximation conditions over a ball",
        epilog="csv columns: schema,command,seed,family,npoints,delta,"
               "worst_hom_defect,worst_id_closeness,passed,elements_checked,"
               "pairs_checked,config")
    p.add_argument("--spec", required=True, metavar="FILE")
    p.add_argument("--ball", type=int, required=True, metavar="L")
    p.add_argument("--delta", required=True,
                   help="threshold, exact ('1/10') or decimal ('0.1')")

    p = sub.add_parser(
        "search", parents=[common],
        help="find an order-k permutation almost intertwining alpha, beta",
        epilog="problem source: --spec FILE, or --alpha FILE --beta FILE, "
               "or --group TAG --n ... ; csv columns: schema,command,seed,"
               "algorithm,n,k,order_of_f,agreement_count,agreement_fraction,"
               "iterations,f,config")
    p.add_argument("--spec", metavar="FILE")
    p.add_argument("--alpha", metavar="FILE")
    p.add_argument("--beta", metavar="FILE")
    p.add_argument("--group", choices=groupsmod.FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algo", choices=("exact", "brute", "local"),
                   default="local")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)

    p = sub.add_parser(
        "defect", parents=[common],
        help="worst distance d(psi(b) f, f psi(phi b)) over given pairs",
        epilog="--pairs FILE: JSON list of [word, word] with words as "
               "[[gen,exp],...]; csv columns: schema,command,seed,defect,"
               "defect_num,defect_den,pairs,config")
    p.add_argument("--spec", required=True, metavar="FILE")
    p.add_argument("--perm", required=True, metavar="FILE")
    p.add_argument("--pairs", required=True, metavar="FILE")

    p = sub.add_parser(
        "amplify", parents=[common],
        help="block-diagonal power of a permutation up to a larger degree",
        epilog="csv columns: schema,command,seed,n,target_n,perm,config")
    p.add_argument("--perm", required=True, metavar="FILE")
    p.add_argument("--target-n", type=int, required=True)

    p = sub.add_parser(
        "align", parents=[common],
        help="search for tau minimizing max_s d(tau^-1 rho1(s) tau, rho2(s))",
        epilog="csv rows, one per ball element: schema,command,seed,element,"
               "distance,max_distance,iterations,config")
    p.add_argument("--spec1", required=True, metavar="FILE")
    p.add_argument("--spec2", required=True, metavar="FILE")
    p.add_argument("--ball", type=int, required=True, metavar="L")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--restarts", type=int, default=None)

    p = sub.add_parser(
        "higman-action", parents=[common],
        help="build the five-generator action on p^4 points and examine it",
        epilog="tables: --f-table/--lambda-table JSON int lists, or --random "
               "to draw both from --seed; csv rows, one per relation check "
               "plus summary/probe rows: schema,command,seed,p,check,ok,"
               "witness,config")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f-table", metavar="FILE", default=None)
    p.add_argument("--lambda-table", metavar="FILE", default=None)
    p.add_argument("--random", action="store_true",
                   help="draw both tables from the seed")
    p.add_argument("--check", action="store_true",
                   help="verify relations; exit 1 if any fails")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--probe-depth", type=int, default=0)

    p = sub.add_parser(
        "heuristic", parents=[common],
        help="independence estimate log(P*K) from the exact order count",
        epilog="csv columns: schema,command,seed,n,k,eps,eps_prime,count,"
               "log_P,log_K,log_PK,log_factorial,asymptotic_ratio,"
               "pk_model_coeff,log_PK_model,config")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", default="1/100")
    p.add_argument("--eps-prime", default="1/100")

    return parser


# ---------------------------------------------------------------------------
# subcommand bodies: each returns (options, result_obj, csv_rows)
# ---------------------------------------------------------------------------

def _cmd_count_orders(ns):
    options = {"n": ns.n, "k": ns.k}
    count = permmod.count_order_dividing(ns.n, ns.k)
    result = {"n": ns.n, "k": ns.k, "count": count}
    rows = [{"n": ns.n, "k": ns.k, "count": count}]
    return options, result, rows


def _spec_row(spec: approxmod.ApproxSpec) -> dict:
    return {
        "family": spec.family,
        "n": spec.n,
        "npoints": spec.npoints,
        "p": "" if spec.p is None else spec.p,
        "q": "" if spec.q is None else spec.q,
        "m": "" if spec.m is None else spec.m,
        "psi_a": _join(spec.psi_a.images),
        "psi_b": _join(spec.psi_b.images),
    }


def _cmd_make_approx(ns):
    options = {"group": ns.group, "n": ns.n, "p": ns.p, "q": ns.q, "m": ns.m}
    spec = approxmod.make_approx(ns.group, ns.n, p=ns.p, q=ns.q, m=ns.m)
    return options, ser.spec_to_obj(spec), [_spec_row(spec)]


def _cmd_verify(ns):
    options = {"spec": ns.spec, "ball": ns.ball, "delta": ns.delta}
    spec = _load_spec(ns.spec)
    delta = approxmod.to_fraction(ns.delta)
    S = groupsmod.ball(spec.family, ns.ball, m=spec.m)
    report = approxmod.verify(spec, S, delta)
    result = ser.verify_report_to_obj(report)
    rows = [{
        "family": report.family,
        "npoints": report.npoints,
        "delta": _fnum(report.delta),
        "worst_hom_defect": _fnum(report.worst_hom_defect),
        "worst_id_closeness": (
            "" if report.worst_id_closeness is None
            else _fnum(report.worst_id_closeness)),
        "passed": report.passed,
        "elements_checked": report.elements_checked,
        "pairs_checked": report.pairs_checked,
    }]
    if not report.passed:
        raise _Failure(options, result, rows, "verification failed")
    return options, result, rows


def _search_problem(ns) -> conjmod.ConjProblem:
    sources = [ns.spec is not None,
               ns.alpha is not None or ns.beta is not None,
               ns.group is not None]
    if sum(sources) != 1:
        raise ValueError(
            "give exactly one problem source: --spec, --alpha/--beta, "
            "or --group with its parameters")
    if ns.spec is not None:
        return conjmod.problem_from_spec(_load_spec(ns.spec), ns.k)
    if ns.group is not None:
        if ns.n is None:
            raise ValueError("--group needs --n")
        spec = approxmod.make_approx(ns.group, ns.n, p=ns.p, q=ns.q, m=ns.m)
        return conjmod.problem_from_spec(spec, ns.k)
    if ns.alpha is None or ns.beta is None:
        raise ValueError("--alpha and --beta must be given together")
    alpha = _load_perm(ns.alpha)
    beta = _load_perm(ns.beta)
    return conjmod.ConjProblem(alpha.n, ns.k, alpha, beta)


def _search_rows(rep: conjmod.SearchReport) -> list[dict]:
    return [{
        "algorithm": rep.algorithm,
        "n": rep.problem.n,
        "k": rep.problem.k,
        "order_of_f": rep.order_of_f,
        "agreement_count": rep.agreement_count,
        "agreement_fraction": _fnum(rep.agreement_fraction),
        "iterations": rep.iterations,
        "f": _join(rep.f.images),
    }]


def _cmd_search(ns):
    options = {
        "spec": ns.spec, "alpha": ns.alpha, "beta": ns.beta,
        "group": ns.group, "n": ns.n, "p": ns.p, "q": ns.q, "m": ns.m,
        "k": ns.k, "algo": ns.algo, "iters": ns.iters,
        "restarts": ns.restarts,
    }
    prob = _search_problem(ns)
    if ns.algo == "exact":
        report = conjmod.exact_search(prob)
        if report is None:
            raise _Failure(options, None, [],
                           "no exact order-k intertwiner exists here")
    elif ns.algo == "brute":
        report = conjmod.brute_force(prob)
    else:
        kwargs: dict[str, Any] = {"seed": ns.seed}
        if ns.iters is not None:
            kwargs["iters"] = ns.iters
        if ns.restarts is not None:
            kwargs["restarts"] = ns.restarts
        report = conjmod.local_search(prob, **kwargs)
    return options, ser.search_report_to_obj(report), _search_rows(report)


def _cmd_defect(ns):
    options = {"spec": ns.spec, "perm": ns.perm, "pairs": ns.pairs}
    spec = _load_spec(ns.spec)
    f = _load_perm(ns.perm)
    raw = _read_json(ns.pairs)
    pairs = [(ser.genword_from_obj(b), ser.genword_from_obj(phib))
             for b, phib in raw]
    worst = conjmod.higman_defect(spec, f, pairs)
    result = {
        "defect": ser.fraction_to_obj(worst),
        "pairs": [[ser.genword_to_obj(b), ser.genword_to_obj(phib)]
                  for b, phib in pairs],
    }
    rows = [{
        "defect": _fnum(worst),
        "defect_num": worst.numerator,
        "defect_den": worst.denominator,
        "pairs": len(pairs),
    }]
    return options, result, rows


def _cmd_amplify(ns):
    options = {"perm": ns.perm, "target_n": ns.target_n}
    f = _load_perm(ns.perm)
    g = permmod.amplify(f, ns.target_n)
    result = {"n": f.n, "target_n": ns.target_n, "perm": ser.perm_to_obj(g)}
    rows = [{"n": f.n, "target_n": ns.target_n, "perm": _join(g.images)}]
    return options, result, rows


def _cmd_align(ns):
    options = {"spec1": ns.spec1, "spec2": ns.spec2, "ball": ns.ball,
               "iters": ns.iters, "restarts": ns.restarts}
    spec1 = _load_spec(ns.spec1)
    spec2 = _load_spec(ns.spec2)
    S = groupsmod.ball(spec1.family, ns.ball, m=spec1.m)
    kwargs: dict[str, Any] = {"seed": ns.seed}
    if ns.iters is not None:
        kwargs["iters"] = ns.iters
    if ns.restarts is not None:
        kwargs["restarts"] = ns.restarts
    report = conjmod.align(spec1, spec2, S, **kwargs)
    result = ser.alignment_report_to_obj(report)
    rows = [
        {
            "element": str(g),
            "distance": _fnum(d),
            "max_distance": _fnum(report.max_distance),
            "iterations": report.iterations,
        }
        for g, d in report.per_element
    ]
    return options, result, rows


def _cmd_higman_action(ns):
    options = {
        "p": ns.p, "f_table": ns.f_table, "lambda_table": ns.lambda_table,
        "random": ns.random, "check": ns.check, "window": ns.window,
        "probe_depth": ns.probe_depth,
    }
    if ns.random:
        if ns.f_table or ns.lambda_table:
            raise ValueError("--random excludes explicit table files")
        f_table, lambda_table = higmod.random_tables(ns.p, ns.seed)
    else:
        if not (ns.f_table and ns.lambda_table):
            raise ValueError("give --f-table and --lambda-table, or --random")
        f_table = [int(v) for v in _read_json(ns.f_table)]
        lambda_table = [int(v) for v in _read_json(ns.lambda_table)]
    act = higmod.make_action(ns.p, f_table, lambda_table)
    result: dict[str, Any] = ser.action_table_to_obj(act)
    rows: list[dict] = []

    relations = None
    if ns.check:
        relations = higmod.verify_action(act, ns.window)
        result["relations"] = ser.relation_report_to_obj(relations)
        for check in relations.checks:
            rows.append({
                "p": ns.p, "check": check.name, "ok": check.ok,
                "witness": ("" if check.witness is None
                            else _join(check.witness)),
            })
        rows.append({"p": ns.p, "check": "passed", "ok": relations.passed,
                     "witness": ""})
    else:
        result["relations"] = None
        rows.append({"p": ns.p, "check": "built", "ok": True, "witness": ""})

    if ns.probe_depth > 0:
        collisions = higmod.injectivity_probe(act, ns.probe_depth)
        result["probe"] = {
            "depth": ns.probe_depth,
            "nontrivial_identities": [ser.elem_to_obj(g) for g in collisions],
        }
        rows.append({
            "p": ns.p, "check": f"probe_depth_{ns.probe_depth}",
            "ok": not collisions, "witness": str(len(collisions)),
        })
    else:
        result["probe"] = None

    if relations is not None and not relations.passed:
        raise _Failure(options, result, rows, "relation check failed")
    return options, result, rows


def _cmd_heuristic(ns):
    options = {"n": ns.n, "k": ns.k, "eps": ns.eps,
               "eps_prime": ns.eps_prime}
    report = heurmod.heuristic_report(ns.n, ns.k, ns.eps, ns.eps_prime)
    result = ser.heuristic_report_to_obj(report)
    rows = [{
        "n": report.n,
        "k": report.k,
        "eps": _fnum(report.eps),
        "eps_prime": _fnum(report.eps_prime),
        "count": report.count,
        "log_P": ser.mpf_to_obj(report.log_P),
        "log_K": ser.mpf_to_obj(report.log_K),
        "log_PK": ser.mpf_to_obj(report.log_PK),
        "log_factorial": ser.mpf_to_obj(report.log_factorial),
        "asymptotic_ratio": ser.mpf_to_obj(report.asymptotic_ratio),
        "pk_model_coeff": _fnum(report.pk_model_coeff),
        "log_PK_model": ser.mpf_to_obj(report.log_PK_model),
    }]
    return options, result, rows


_COMMANDS = {
    "count-orders": _cmd_count_orders,
    "make-approx": _cmd_make_approx,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "defect": _cmd_defect,
    "amplify": _cmd_amplify,
    "align": _cmd_align,
    "higman-action": _cmd_higman_action,
    "heuristic": _cmd_heuristic,
}


# ---------------------------------------------------------------------------
# record emission
# ---------------------------------------------------------------------------

def _emit(ns, config: ExperimentConfig, result, rows: list[dict]) -> None:
    if ns.format == "json":
        record = {
            "schema": SCHEMA_VERSION,
            "command": ns.command,
            "seed": ns.seed,
            "config": config.to_obj(),
            "result": result,
        }
        text = json.dumps(record, indent=2) + "\n"
    else:
        config_cell = json.dumps(config.to_obj(), sort_keys=True,
                                 separators=(",", ":"))
        buf = io.StringIO()
        lead = ["schema", "command", "seed"]
        tail = ["config"]
        fields = lead + (list(rows[0].keys()) if rows else []) + tail
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            full = {"schema": SCHEMA_VERSION, "command": ns.command,
                    "seed": ns.seed, "config": config_cell}
            full.update(row)
            writer.writerow(full)
        text = buf.getvalue()
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv) -> int:
    """Parse argv, run the subcommand, emit one record.  Returns the exit
    code instead of raising SystemExit so the function is callable in-process.
    """
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if ns.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2

    handler = _COMMANDS[ns.command]
    t0 = time.perf_counter()
    try:
        options, result, rows = handler(ns)
        exit_code = 0
    except _Failure as failure:
        options, result, rows, message = failure.args
        print(f"failure: {message}", file=sys.stderr)
        exit_code = 1
    except (ValueError, OSError, KeyError, TypeError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0

    # --workers is intentionally not echoed: results may never depend on it,
    # so runs differing only in worker count must emit identical bytes
    config = ExperimentConfig(
        subcommand=ns.command,
        options=dict(options, format=ns.format),
        seed=ns.seed,
        out=ns.out,
    )
    _emit(ns, config, result, rows)
    print(f"elapsed_s={elapsed:.3f}", file=sys.stderr)
    return exit_code


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
