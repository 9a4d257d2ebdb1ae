"""Command-line front end.

Graph input is either ``--family kind:params`` (``cycle:7``,
``complete_bipartite:2,3``, ``fan:8``, ...) or ``--graph FILE`` in the text
format::

    n m
    u v        # m lines, 0-based endpoints

Exit codes: 0 success (solvable / all claims pass), 1 insufficient or a failed
claim, 2 usage error, 3 budget exceeded (partial output, marked), 4 empty
reconstruction.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from .basis import BudgetExceeded, Deadline
from .distribution import DistributionError, RootedDistribution, weight
from .graph import Graph, GraphError, canonical_form, enumerate_graphs, format_graph, parse_family, parse_graph, to_dot
from .parameters import VALUE_KEYS, Analysis, ParameterReport, full_report, u_critical_number
from .solver import Solver, classify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_EMPTY = 0, 1, 2, 3, 4
CACHE_ENV = "PEBBLING_CACHE"
FORMATS = ("human", "json", "structured", "csv", "dot")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph: Graph | None = None
    root: int | None = None
    fmt: str = "human"
    workers: int = 1
    cache: Path | None = None
    budget: float | None = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.budget is not None and self.budget <= 0:
            raise UsageError("--budget must be positive")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")

    @property
    def structured(self) -> bool:
        return self.fmt in ("json", "structured")

    def deadline(self) -> Deadline:
        return Deadline(self.budget)


# --- cache ----------------------------------------------------------------------


def _graph_key(g: Graph) -> str:
    return hashlib.sha256(format_graph(g).encode()).hexdigest()[:20]


def cache_load(cfg: RunConfig, kind: str, g: Graph) -> dict | None:
    if cfg.cache is None:
        return None
    path = cfg.cache / f"{kind}-{_graph_key(g)}.json"
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError:
        return None
    # the stored input must match exactly, otherwise the entry is stale
    if data.get("graph") != format_graph(g) or data.get("canonical") != list(canonical_form(g)):
        return None
    return data["result"]


def cache_store(cfg: RunConfig, kind: str, g: Graph, result: Any) -> None:
    if cfg.cache is None:
        return
    cfg.cache.mkdir(parents=True, exist_ok=True)
    path = cfg.cache / f"{kind}-{_graph_key(g)}.json"
    payload = {"graph": format_graph(g), "canonical": list(canonical_form(g)), "result": result}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, sort_keys=True))
    tmp.replace(path)


# --- params ---------------------------------------------------------------------


def compute_params(g: Graph, cfg: RunConfig) -> tuple[dict[str, Any], bool]:
    """Report as a dict plus a completeness flag; partial on budget exhaustion."""
    cached = cache_load(cfg, "params", g)
    if cached is not None:
        return cached, True
    analysis = Analysis(g, cfg.deadline(), cfg.workers)
    try:
        report = full_report(g, analysis)
    except BudgetExceeded:
        return _partial(analysis), False
    result = report.to_dict()
    cache_store(cfg, "params", g, result)
    return result, True


def _partial(a: Analysis) -> dict[str, Any]:
    # whatever the analysis had finished, in computation order
    out: dict[str, Any] = {"n": a.n, "diameter": a.dt.diam, "two_pow_d": 1 << a.dt.diam, "partial": True}
    done = a.__dict__
    if "pebbling" in done:
        out["p"] = a.pebbling[0]
    if "optimal" in done:
        out["o"] = a.optimal[0]
    if "u_critical" in done:
        out["c_u"] = a.u_critical[0]
    if "g_critical" in done:
        out["c_g"] = a.g_critical[0]
    if "critical" in done:
        out["c_r"] = a.critical[0]
    if "graph_weight" in done:
        out["graph_weight"] = str(a.graph_weight[0])
    return out


def _emit_params(result: dict[str, Any], cfg: RunConfig, g: Graph) -> str:
    if cfg.structured:
        return json.dumps(result, sort_keys=True, indent=2) + "\n"
    if cfg.fmt == "csv":
        return _csv([_flat(result)])
    if cfg.fmt == "dot":
        return to_dot(g)
    lines = []
    if result.get("partial"):
        lines.append("PARTIAL RESULT (budget exceeded)")
    for key in VALUE_KEYS + ("diameter", "is_greedy", "is_thrifty", "graph_weight", "max_critical_weight"):
        if key in result:
            lines.append(f"{key:>20}: {result[key]}")
    for key, val in sorted(result.get("witnesses", {}).items()):
        lines.append(f"{'witness ' + key:>20}: {val}")
    return "\n".join(lines) + "\n"


def _flat(result: dict[str, Any]) -> dict[str, Any]:
    flat = {k: v for k, v in result.items() if k != "witnesses"}
    for k, v in result.get("witnesses", {}).items():
        flat[f"witness_{k}"] = v
    return flat


def _csv(rows: list[dict[str, Any]], fields: Sequence[str] | None = None) -> str:
    buf = io.StringIO()
    if fields is None:
        fields = sorted({k for r in rows for k in r})
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def cmd_params(cfg: RunConfig, out) -> int:
    assert cfg.graph is not None
    result, complete = compute_params(cfg.graph, cfg)
    out.write(_emit_params(result, cfg, cfg.graph))
    return EXIT_OK if complete else EXIT_BUDGET


# --- solve ----------------------------------------------------------------------


def cmd_solve(cfg: RunConfig, text: str, out) -> int:
    g = cfg.graph
    assert g is not None
    try:
        if "@" in text:
            rd = RootedDistribution.parse(text)
        elif cfg.root is not None:
            rd = RootedDistribution.parse(f"{text}@{cfg.root}")
        else:
            raise UsageError("give the root as 'counts@r' or with --root")
    except DistributionError as exc:
        raise UsageError(str(exc)) from exc
    if rd.n != g.n:
        raise UsageError(f"distribution has {rd.n} entries, graph has {g.n} vertices")
    solver = Solver(g)
    res = solver.solve(rd.dist, rd.root)
    label = classify(g, rd, solver)
    w = weight(rd, g.distances)
    result = {
        "distribution": str(rd),
        "solvable": res.solvable,
        "classification": str(label),
        "weight": str(w),
        "certificate": [f"({u}→{v})" for u, v in res.certificate.steps] if res.certificate else None,
    }
    if cfg.structured:
        out.write(json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    elif cfg.fmt == "csv":
        row = dict(result, certificate=" ".join(result["certificate"] or []))
        out.write(_csv([row], ["distribution", "solvable", "classification", "weight", "certificate"]))
    elif cfg.fmt == "dot":
        labels = [f"{v}: {c}" + (" (root)" if v == rd.root else "") for v, c in enumerate(rd.dist)]
        out.write(to_dot(g, labels))
    else:
        out.write(f"distribution: {rd}\n")
        out.write(f"solvable: {'yes' if res.solvable else 'no'}\n")
        out.write(f"classification: {label}\n")
        out.write(f"weight: {w}\n")
        if res.certificate is not None:
            out.write(f"certificate: {res.certificate or '(no steps)'}\n")
    return EXIT_OK if res.solvable else EXIT_FAIL


# --- reconstruct ------------------------------------------------------------------


def cmd_reconstruct(cfg: RunConfig, name: str, outdir: Path, out) -> int:
    from . import reconstruct as rc

    if name not in rc.NAMES:
        raise UsageError(f"unknown graph {name!r}; expected one of {', '.join(rc.NAMES)}")
    cands = None
    cache_file = cfg.cache / f"reconstruct-{name}.json" if cfg.cache else None
    if cache_file and cache_file.exists():
        data = json.loads(cache_file.read_text())
        if data.get("constraints_version") == rc.CONSTRAINTS_VERSION:
            cands = [
                rc.Candidate(Graph.from_edges(e["n"], map(tuple, e["edges"])), tuple(e["labels"]) if e["labels"] else None)
                for e in data["graphs"]
            ]
    if cands is None:
        try:
            cands = rc.reconstruct(name, cfg.deadline())
        except BudgetExceeded:
            out.write(f"{name}: budget exceeded before the search finished (partial: no graphs)\n")
            return EXIT_BUDGET
        if cache_file:
            cache_file.parent.mkdir(parents=True, exist_ok=True)
            payload = {
                "constraints_version": rc.CONSTRAINTS_VERSION,
                "graphs": [
                    {"n": c.graph.n, "edges": [list(e) for e in c.graph.edges], "labels": list(c.labels) if c.labels else None}
                    for c in cands
                ],
            }
            cache_file.write_text(json.dumps(payload, sort_keys=True, indent=2))
    if not cands:
        out.write(f"{name}: no graph satisfies the constraints\n")
        return EXIT_EMPTY
    outdir.mkdir(parents=True, exist_ok=True)
    reports = []
    for i, cand in enumerate(cands, 1):
        rep = rc.check(name, cand)
        reports.append(rep)
        stem = outdir / f"{name}_{i}"
        stem.with_suffix(".txt").write_text(format_graph(cand.graph))
        stem.with_suffix(".json").write_text(rep.dumps())
        stem.with_suffix(".dot").write_text(to_dot(cand.graph, cand.labels, name))
    if cfg.structured:
        out.write(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")
    else:
        out.write(f"{name}: {len(cands)} graph(s) up to isomorphism, written to {outdir}\n")
        for i, rep in enumerate(reports, 1):
            status = "all constraints hold" if rep.ok else "CONSTRAINT FAILURE"
            out.write(f"  {name}_{i}: edges {list(rep.graph.edges)} ({status})\n")
            for cons, exp, act, ok in rep.rows:
                out.write(f"    [{'ok' if ok else 'FAIL'}] {cons}: expected {exp}, got {act}\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# --- sweep ----------------------------------------------------------------------

_OPS: dict[str, Callable[[Any, Any], bool]] = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}


def parse_filter(text: str | None) -> Callable[[dict[str, Any]], bool]:
    """``key OP value`` terms joined by commas (all must hold).

    ``value`` is an integer, ``true``/``false`` or another key, e.g.
    ``is_thrifty==true,c_r!=two_pow_d``.
    """
    if not text:
        return lambda row: True
    terms = []
    for term in text.split(","):
        term = term.strip()
        for op in ("==", "!=", "<=", ">=", "<", ">"):
            if op in term:
                key, rhs = (s.strip() for s in term.split(op, 1))
                terms.append((key, op, rhs))
                break
        else:
            raise UsageError(f"cannot parse filter term {term!r}")

    def value(row: dict[str, Any], token: str) -> Any:
        if token in row:
            return row[token]
        if token.lower() in ("true", "false"):
            return token.lower() == "true"
        try:
            return int(token)
        except ValueError:
            raise UsageError(f"unknown key or value {token!r} in filter") from None

    def pred(row: dict[str, Any]) -> bool:
        for key, op, rhs in terms:
            if key not in row:
                raise UsageError(f"unknown key {key!r} in filter")
            if not _OPS[op](row[key], value(row, rhs)):
                return False
        return True

    return pred


def _sweep_one(args: tuple[Graph, RunConfig]) -> tuple[dict[str, Any], bool]:
    g, cfg = args
    return compute_params(g, cfg)


SWEEP_FIELDS = ("index", "edges") + VALUE_KEYS + ("diameter", "is_greedy", "is_thrifty", "graph_weight", "max_critical_weight")


def cmd_sweep(cfg: RunConfig, n: int, where: str | None, force: bool, out) -> int:
    if n > 7 and not force:
        raise UsageError("sweeps above n=7 are slow; pass --force to run anyway")
    pred = parse_filter(where)
    graphs = list(enumerate_graphs(n))
    rows: list[dict[str, Any]] = []
    complete = True
    # per-graph jobs carry their own budget share; the pool preserves order
    job_cfg = RunConfig("params", None, None, cfg.fmt, 1, cfg.cache, cfg.budget)
    deadline = cfg.deadline()
    jobs = [(g, job_cfg) for g in graphs]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_sweep_one, jobs, chunksize=4))
    else:
        results = []
        for job in jobs:
            results.append(_sweep_one(job))
            try:
                deadline.check()
            except BudgetExceeded:
                complete = False
                break
    for i, (g, (res, ok)) in enumerate(zip(graphs, results)):
        if not ok:
            complete = False
            break
        row = {"index": i, "edges": " ".join(f"{u}-{v}" for u, v in g.edges)}
        row.update({k: v for k, v in res.items() if k != "witnesses"})
        if pred(row):
            rows.append(row)
    if cfg.structured:
        payload = {"n": n, "filter": where or "", "partial": not complete, "rows": rows}
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif cfg.fmt == "csv" or cfg.fmt == "human":
        if not complete:
            out.write("# PARTIAL RESULT (budget exceeded)\n")
        out.write(_csv(rows, SWEEP_FIELDS))
    else:
        raise UsageError("sweep supports human, csv and json output")
    return EXIT_OK if complete else EXIT_BUDGET


# --- verify -----------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, profile: str, only: list[str] | None, out) -> int:
    from .claims import run_claims

    try:
        results = run_claims(profile, only, log=lambda line: (out.write(line + "\n"), out.flush()))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failed = [r for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} claims pass\n")
    return EXIT_OK if not failed else EXIT_FAIL


# --- entry point --------------------------------------------------------------------


def _graph_from(args: argparse.Namespace) -> Graph:
    if args.family and args.graph:
        raise UsageError("give either --family or --graph, not both")
    if args.family:
        return parse_family(args.family)
    if args.graph:
        try:
            return parse_graph(Path(args.graph).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc}") from exc
    raise UsageError("a graph is required: --family kind:params or --graph FILE")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="named graph, e.g. cycle:7, complete_bipartite:2,3, fan:8")
    common.add_argument("--graph", help="graph file: 'n m' then m lines 'u v'")
    common.add_argument("--root", type=int, help="root vertex for rooted commands")
    common.add_argument("--format", dest="fmt", default="human", choices=FORMATS)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cache", help=f"cache directory (default: ${CACHE_ENV} if set)")
    common.add_argument("--budget", type=float, help="wall-clock limit in seconds")

    parser = argparse.ArgumentParser(prog="pebbling", description="Exact graph pebbling computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common], help="decide and classify a rooted distribution")
    p.add_argument("distribution", help="comma-separated counts, optionally '@root'")
    sub.add_parser("params", parents=[common], help="all pebbling values of a graph")
    p = sub.add_parser("reconstruct", parents=[common], help="search for G1, G2, G3 or G4")
    p.add_argument("name")
    p.add_argument("--out", default="reconstructed", help="directory for graph files")
    p = sub.add_parser("sweep", parents=[common], help="reports for every connected graph on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--where", help="filter, e.g. 'c_r==3' or 'is_thrifty==true,c_r!=two_pow_d'")
    p.add_argument("--force", action="store_true", help="allow n > 7")
    p = sub.add_parser("verify", parents=[common], help="check every published claim")
    p.add_argument("--profile", choices=("quick", "full", "slow"), default="full")
    p.add_argument("--only", nargs="*", help="claim ids to run")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cache = args.cache or os.environ.get(CACHE_ENV)
    try:
        graph = _graph_from(args) if args.command in ("solve", "params") else None
        cfg = RunConfig(args.command, graph, args.root, args.fmt, args.workers, Path(cache) if cache else None, args.budget)
        if args.command == "solve":
            return cmd_solve(cfg, args.distribution, out)
        if args.command == "params":
            return cmd_params(cfg, out)
        if args.command == "reconstruct":
            return cmd_reconstruct(cfg, args.name, Path(args.out), out)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.n, args.where, args.force, out)
        if args.command == "verify":
            return cmd_verify(cfg, args.profile, args.only, out)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
