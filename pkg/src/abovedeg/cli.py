"""Command-line front end.

Every command prints one report (JSON by default, ``--format plain`` for
a short human summary). Decision commands exit 0 for yes and 1 for no;
any error exits 2 with the diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import colorpath, oracle, segments, solver
from .colorpath import TrialBudget, TrialLog
from .decompose import blocks_and_cuts, core_decomposition, d_core, is_connected, is_two_connected
from .errors import FormatError, InternalError, PreconditionError
from .graph import Graph, Witness, parse_graph, petersen_graph, serialize_graph, verify_witness
from .reroute import TerminalPairs, cover_paths

SEED_ENV = "ABOVEDEG_SEED"
EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    params: dict = field(default_factory=dict)
    seed: int = 0
    trials: int | None = None
    threshold: int = oracle.BRUTE_THRESHOLD
    fmt: str = "json"


class CliError(Exception):
    """Bad input that is not a precondition of a library call."""


def _load_graph(path: str | None) -> Graph:
    if path is None or path == "-":
        return parse_graph(sys.stdin.read())
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _read_ints(path: str) -> list[list[int]]:
    try:
        with open(path) as fh:
            lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return [[int(x) for x in ln] for ln in lines]
    except ValueError:
        raise FormatError(f"{path}: non-integer token") from None


def _need(params: dict, *names: str) -> list:
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise CliError("missing parameter(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return [params[n] for n in names]


def _budget(cfg: RunConfig) -> TrialBudget:
    return TrialBudget(cfg.trials, cfg.seed, bool(cfg.params.get("exhaustive")))


def _decision(found, doc: dict) -> tuple[int, dict]:
    return (EXIT_YES if found else EXIT_NO), doc


# -- command handlers --------------------------------------------------------


def _stats(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    conn = is_connected(g)
    return 0, {
        "n": g.n,
        "m": g.m,
        "degeneracy": core_decomposition(g).degeneracy,
        "connected": conn,
        "two_connected": is_two_connected(g),
        "blocks": len(blocks_and_cuts(g).blocks) if conn and g.n else None,
    }


def _core(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    cd = core_decomposition(g)
    d = cfg.params.get("d")
    d = cd.degeneracy if d is None else d
    core = d_core(g, d, cd)
    return 0, {
        "degeneracy": cd.degeneracy,
        "d": d,
        "core": sorted(core) if core is not None else None,
        "order": list(cd.order),
        "core_numbers": list(cd.core),
    }


def _solve(fn) -> Callable[[RunConfig], tuple[int, dict]]:
    def run(cfg: RunConfig) -> tuple[int, dict]:
        g = _load_graph(cfg.input)
        (k,) = _need(cfg.params, "k")
        exact = cfg.params.get("exact_up_to")
        exact = solver.EXACT_UP_TO if exact is None else exact
        rep = fn(g, k, _budget(cfg), exact_up_to=exact)
        doc = rep.to_dict()
        doc["seed"] = cfg.seed
        doc["trials"] = cfg.trials
        return _decision(rep.answer, doc)

    return run


def _color_report(w: Witness | None, log: TrialLog, cfg: RunConfig, **params) -> tuple[int, dict]:
    doc = {
        "answer": "yes" if w else "no",
        "witness": w.to_dict() if w else None,
        "trials_used": log.total,
        "seed": cfg.seed,
        "trials": cfg.trials,
        **params,
    }
    return _decision(w, doc)


def _longest_path(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    (q,) = _need(cfg.params, "q")
    log = TrialLog()
    return _color_report(colorpath.longest_path_at_least(g, q, _budget(cfg), log), log, cfg, q=q)


def _longest_cycle(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    (q,) = _need(cfg.params, "q")
    log = TrialLog()
    return _color_report(colorpath.longest_cycle_at_least(g, q, _budget(cfg), log), log, cfg, q=q)


def _st_path(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    s, t, q = _need(cfg.params, "s", "t", "q")
    log = TrialLog()
    w = colorpath.st_path_at_least(g, s, t, q, _budget(cfg), log)
    return _color_report(w, log, cfg, s=s, t=t, q=q)


def _segments(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    tfile, p, r = _need(cfg.params, "terminals", "p", "r")
    T = [v for row in _read_ints(tfile) for v in row]
    ext = bool(cfg.params.get("extended"))
    log = TrialLog()
    fn = segments.solve_extended_segments if ext else segments.solve_segments
    sys_ = fn(g, T, p, r, _budget(cfg), log)
    doc = {
        "answer": "yes" if sys_ else "no",
        "system": sys_.to_dict() if sys_ else None,
        "p": p,
        "r": r,
        "extended": ext,
        "terminals": len(set(T)),
        "trials_used": log.total,
        "seed": cfg.seed,
        "trials": cfg.trials,
    }
    return _decision(sys_, doc)


def _reroute(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    pfile, k = _need(cfg.params, "pairs", "k")
    rows = _read_ints(pfile)
    if any(len(row) != 2 for row in rows):
        raise FormatError(f"{pfile}: each line must hold 's t'")
    paths = cover_paths(g, TerminalPairs(tuple((a, b) for a, b in rows), k))
    return 0, {"k": k, "paths": [list(w.vertices) for w in paths]}


def _gen(cfg: RunConfig) -> tuple[int, dict]:
    params = cfg.params
    (kind,) = _need(params, "kind")
    if kind == "random-degen":
        n, d = _need(params, "n", "d")
        g = oracle.gen_random_with_degeneracy(n, d, cfg.seed)
    else:
        base = petersen_graph() if params.get("base") is None else _load_graph(params["base"])
        if kind == "hardness-path":
            g = oracle.gen_hardness_path(base)
        elif kind == "hardness-cycle":
            g = oracle.gen_hardness_cycle(base)
        elif kind in ("tight-path", "tight-cycle"):
            try:
                eps = Fraction(params.get("eps") or "0.5")
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad --eps value {params.get('eps')!r}") from None
            fn = oracle.gen_tight_path if kind == "tight-path" else oracle.gen_tight_cycle
            g = fn(base, eps)
        else:
            raise CliError(f"unknown generator {kind!r}")
    text = serialize_graph(g)
    connected = is_connected(g)
    if not connected:
        text = "# disconnected by construction: not a valid lpad input\n" + text
    out = params.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0, {"kind": kind, "n": g.n, "m": g.m, "connected": connected, "out": out}


def _brute(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    (what,) = _need(cfg.params, "what")
    if what == "path":
        w = oracle.brute_longest_path(g, cfg.threshold)
    else:
        w = oracle.brute_longest_cycle(g, cfg.threshold)
    return 0, {"kind": what, "length": len(w) if w else 0, "witness": w.to_dict() if w else None}


def _verify(cfg: RunConfig) -> tuple[int, dict]:
    g = _load_graph(cfg.input)
    (wfile,) = _need(cfg.params, "witness")
    try:
        with open(wfile) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {wfile}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{wfile}: {exc}") from None
    if isinstance(doc, dict) and isinstance(doc.get("witness"), dict):
        doc = doc["witness"]
    try:
        w = Witness.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{wfile}: not a witness ({exc})") from None
    ok = verify_witness(g, w)
    need = cfg.params.get("min_length")
    if need is not None:
        ok = ok and len(w) >= need
    return _decision(ok, {"valid": ok, "kind": w.kind, "length": len(w), "min_length": need})


HANDLERS: dict[str, Callable[[RunConfig], tuple[int, dict]]] = {
    "stats": _stats,
    "core": _core,
    "lpad": _solve(solver.lpad),
    "lcad": _solve(solver.lcad),
    "longest-path": _longest_path,
    "longest-cycle": _longest_cycle,
    "st-path": _st_path,
    "segments": _segments,
    "reroute": _reroute,
    "gen": _gen,
    "brute": _brute,
    "verify": _verify,
}


def dispatch(cfg: RunConfig) -> tuple[int, dict]:
    """Run one command; errors become exit code 2 and an ``error`` field."""
    handler = HANDLERS.get(cfg.command)
    if handler is None:
        return EXIT_ERROR, {"error": f"unknown command {cfg.command!r}"}
    try:
        return handler(cfg)
    except (PreconditionError, FormatError, CliError) as exc:
        return EXIT_ERROR, {"error": str(exc)}
    except InternalError as exc:
        return EXIT_ERROR, {"error": f"internal error: {exc}"}


# -- batch -------------------------------------------------------------------


def _batch_row(entry, seed: int, trials: int | None) -> dict:
    row = {"file": None, "command": None, "status": "error"}
    if not isinstance(entry, dict) or "file" not in entry or "command" not in entry:
        row["error"] = "manifest entry needs 'file' and 'command'"
        return row
    row.update(file=entry["file"], command=entry["command"])
    if not os.path.exists(entry["file"]):
        row["error"] = f"missing file {entry['file']}"
        return row
    params = {k.replace("-", "_"): v for k, v in dict(entry.get("params") or {}).items()}
    cfg = RunConfig(
        entry["command"],
        entry["file"],
        params,
        seed=params.pop("seed", seed),
        trials=params.pop("trials", trials),
    )
    start = time.perf_counter()
    code, doc = dispatch(cfg)
    row["seconds"] = round(time.perf_counter() - start, 6)
    if code == EXIT_ERROR:
        row["error"] = doc.get("error")
        return row
    row["status"] = {EXIT_YES: "yes", EXIT_NO: "no"}[code] if "answer" in doc or "valid" in doc else "ok"
    w = doc.get("witness")
    row["witness_length"] = len(w["vertices"]) if isinstance(w, dict) else None
    row["trials_used"] = doc.get("trials_used")
    return row


def run_batch(manifest: list, seed: int = 0, trials: int | None = None, jobs: int = 1) -> tuple[int, list[dict]]:
    """Rows in manifest order; exit 2 iff some row errored."""
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda e: _batch_row(e, seed, trials), manifest))
    code = EXIT_ERROR if any(r["status"] == "error" for r in rows) else 0
    return code, rows


def _batch(cfg: RunConfig) -> tuple[int, dict]:
    path = cfg.input
    try:
        with open(path) as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    if not isinstance(manifest, list):
        raise FormatError("manifest must be a JSON list")
    code, rows = run_batch(manifest, cfg.seed, cfg.trials, cfg.params.get("jobs") or 1)
    return code, {"rows": rows}


HANDLERS["batch"] = _batch


# -- argument parsing ----------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abovedeg",
        description="Long paths and cycles above the degeneracy of a graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, help: str, graph: bool = True, lead: dict | None = None) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if lead:
            p.add_argument(lead.pop("name"), **lead)
        if graph:
            p.add_argument("graph", nargs="?", default="-", help="edge-list file ('-' for stdin)")
        p.add_argument("--format", choices=["json", "plain"], default="json")
        return p

    def randomized(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV} or 0")
        p.add_argument("--trials", type=int, default=None, help="number of random colorings")
        p.add_argument("--exhaustive", action="store_true", help="exact search with an injective coloring")

    cmd("stats", "size, degeneracy and connectivity")
    p = cmd("core", "core numbers and a d-core")
    p.add_argument("--d", type=int)
    for name, what in (("lpad", "path"), ("lcad", "cycle")):
        p = cmd(name, f"{what} with at least degeneracy + k vertices")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--exact-up-to", type=int, default=None, help="solve exactly when n is at most this")
        randomized(p)
    for name in ("longest-path", "longest-cycle"):
        p = cmd(name, f"{name.split('-')[1]} with at least q vertices")
        p.add_argument("--q", type=int, required=True)
        randomized(p)
    p = cmd("st-path", "(s,t)-path with at least q vertices")
    for a in ("--s", "--t", "--q"):
        p.add_argument(a, type=int, required=True)
    randomized(p)
    p = cmd("segments", "system of segments for a terminal set")
    p.add_argument("--terminals", required=True, help="file with one vertex id per line")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--extended", action="store_true")
    randomized(p)
    p = cmd("reroute", "disjoint covering paths between terminal pairs")
    p.add_argument("--pairs", required=True, help="file with one 's t' pair per line")
    p.add_argument("--k", type=int, required=True)
    p = cmd("gen", "write a generated instance", graph=False)
    p.add_argument("--kind", required=True,
                   choices=["hardness-path", "hardness-cycle", "tight-path", "tight-cycle", "random-degen"])
    p.add_argument("--base", help="base graph file (default: Petersen graph)")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--eps", default=None, help="fraction in (0, 1), e.g. 0.5 or 1/3")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="output file (default: stdout)")
    p = cmd("brute", "exact longest path or cycle for small graphs", lead={"name": "what", "choices": ["path", "cycle"]})
    p.add_argument("--threshold", type=int, default=oracle.BRUTE_THRESHOLD)
    p = cmd("verify", "check a witness against a graph")
    p.add_argument("--witness", required=True, help="witness JSON or a solver report")
    p.add_argument("--min-length", type=int)
    p = cmd("batch", "run a JSON manifest of instances", graph=False)
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in ("command", "graph", "format", "seed", "trials", "threshold", "manifest")}
    if args.command == "brute":
        params["what"] = args.what
    seed = getattr(args, "seed", None)
    return RunConfig(
        command=args.command,
        input=args.manifest if args.command == "batch" else getattr(args, "graph", None),
        params=params,
        seed=_default_seed() if seed is None else seed,
        trials=getattr(args, "trials", None),
        threshold=getattr(args, "threshold", oracle.BRUTE_THRESHOLD),
        fmt=args.format,
    )


def _plain(doc: dict) -> str:
    if "rows" in doc:
        lines = [f"{'status':6} {'len':>5} {'trials':>8} {'seconds':>9}  command file"]
        for r in doc["rows"]:
            wl = "" if r.get("witness_length") is None else r["witness_length"]
            tr = "" if r.get("trials_used") is None else r["trials_used"]
            sec = "" if r.get("seconds") is None else f"{r['seconds']:.3f}"
            extra = f"  ({r['error']})" if r.get("error") else ""
            lines.append(f"{r['status']:6} {wl!s:>5} {tr!s:>8} {sec:>9}  {r['command']} {r['file']}{extra}")
        return "\n".join(lines)
    out = []
    for key, val in doc.items():
        if isinstance(val, dict) and "vertices" in val:
            val = " ".join(map(str, val["vertices"]))
        elif isinstance(val, (list, dict)):
            val = json.dumps(val)
        out.append(f"{key}: {val}")
    return "\n".join(out)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    code, doc = dispatch(cfg)
    if "error" in doc and code == EXIT_ERROR and "rows" not in doc:
        print(f"error: {doc['error']}", file=sys.stderr)
    if cfg.command == "gen" and not cfg.params.get("out") and code != EXIT_ERROR:
        return code  # the graph itself went to stdout
    if cfg.fmt == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(_plain(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
