"""Command-line front end.

Exit codes: 0 solved and verified, 1 solved but not verified (or a
``verify`` run that did not prove optimality), 2 bad input, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import certificate as cert_mod
from .directed import augment_directed
from .generators import random_backbone_digraph
from .graph import Digraph, InputError, InvariantError, UGraph, doubled, read_graph
from .kforest import SolveStats, TauSpec, format_labeling, parse_labeling, solve
from .mincut import strong_connectivity
from .undirected import augment_undirected

EXIT_OK, EXIT_UNVERIFIED, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

# brute-force cross-checks under --verify full stay below these sizes
FULL_ORACLE_EDGES = 12
FULL_SPLIT_VALIDATION_N = 30


@dataclass
class RunConfig:
    subcommand: str
    path: Optional[str] = None
    k: Optional[int] = None
    root: Optional[int] = None
    verify: str = "full"
    seed: int = 0
    fmt: str = "text"
    out: Optional[str] = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        known = {"command", "graph", "k", "root", "verify", "seed", "format", "out", "func"}
        cfg = cls(
            ns.command,
            getattr(ns, "graph", None),
            ns.k,
            getattr(ns, "root", None),
            ns.verify,
            ns.seed,
            ns.format,
            ns.out,
            {key: val for key, val in vars(ns).items() if key not in known},
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.k is not None and self.k < 1:
            raise InputError("--k must be at least 1")
        if self.verify not in ("none", "certificate", "full"):
            raise InputError(f"unknown verify level {self.verify!r}")


class Report:
    """Ordered fields rendered as ``key value`` lines or one JSON object."""

    def __init__(self) -> None:
        self.fields: dict = {}
        self.blocks: dict[str, str] = {}

    def add(self, key: str, value) -> None:
        self.fields[key] = value

    def block(self, key: str, text: str, value) -> None:
        self.blocks[key] = text
        self.fields[key] = value

    @staticmethod
    def _line(key: str, value) -> str:
        if isinstance(value, bool):
            return f"{key} {'yes' if value else 'no'}"
        if value is None:
            return f"{key} -"
        return f"{key} {value}"

    def scalar_lines(self) -> list[str]:
        return [self._line(key, value) for key, value in self.fields.items() if key not in self.blocks]

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.fields, indent=2) + "\n"
        out = []
        for key, value in self.fields.items():
            if key in self.blocks:
                out.append(key)
                if self.blocks[key].strip():
                    out.append(self.blocks[key].rstrip("\n"))
            else:
                out.append(self._line(key, value))
        return "\n".join(out) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {cfg.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _write_file(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load(path: str):
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_digraph(cfg: RunConfig) -> Digraph:
    G = _load(cfg.path)
    if not isinstance(G, Digraph):
        raise InputError(f"{cfg.subcommand} needs a directed graph")
    return G


def _tau(cfg: RunConfig, n: int) -> TauSpec:
    if cfg.root is None:
        return TauSpec.zero()
    if not 1 <= cfg.root <= n:
        raise InputError(f"--root {cfg.root} outside 1..{n}")
    return TauSpec.at(cfg.root - 1)


def _status(verified: Optional[bool]) -> tuple[str, int]:
    if verified is None:
        return "unverified", EXIT_UNVERIFIED
    if verified:
        return "verified", EXIT_OK
    return "unverified", EXIT_UNVERIFIED


def _edges_text(edges) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in edges)


def _augment_output(cfg: RunConfig, rep: Report, n: int, edges, directed: bool) -> str:
    """Text form is a graph file of the new edges followed by ``#`` comment lines."""
    if cfg.fmt == "json":
        return rep.render("json")
    kind = "directed" if directed else "undirected"
    return f"{n} {len(edges)} {kind}\n" + _edges_text(edges) + "".join(f"# {line}\n" for line in rep.scalar_lines())


# ---------------------------------------------------------------------------
# subcommands


def cmd_kforest(cfg: RunConfig) -> int:
    G = _load_digraph(cfg)
    k = cfg.k or 1
    tau = _tau(cfg, G.n)
    F = solve(G, k, tau, check=cfg.verify == "full")
    rep = Report()
    rep.add("k", k)
    rep.add("root", cfg.root)
    rep.add("size", F.size())
    rep.add("deficit", F.total_deficit())
    rep.block("labeling", format_labeling(F), list(F.label))
    verified = None
    if cfg.verify != "none":
        cert = cert_mod.optimal_subpartition(F)
        report = cert_mod.verify_minmax(G, k, F.label, tau, cert)
        if not report.optimal:
            raise InvariantError("certificate does not match the deficit: " + "; ".join(report.problems))
        verified = True
        if cfg.verify == "full" and G.m <= FULL_ORACLE_EDGES:
            from .oracle import brute_kforest_value

            if brute_kforest_value(G, k, tau) != F.size():
                raise InvariantError("solver size differs from the brute-force optimum")
        rep.block(
            "certificate",
            cert_mod.format_certificate(cert),
            {"sets": [sorted(v + 1 for v in A) for A in cert.sets], "values": cert.values, "total": cert.total},
        )
        if cfg.extra.get("certificate_out"):
            _write_file(cfg.extra["certificate_out"], cert_mod.format_certificate(cert))
    if cfg.extra.get("labeling_out"):
        _write_file(cfg.extra["labeling_out"], format_labeling(F))
    status, code = _status(verified)
    rep.add("status", status)
    _emit(cfg, rep.render(cfg.fmt))
    return code


def cmd_augment(cfg: RunConfig) -> int:
    G = _load_digraph(cfg)
    k = cfg.k or 1
    full = cfg.verify == "full"
    res = augment_directed(
        G,
        k,
        verify=full,
        validate_splits=full and G.n <= FULL_SPLIT_VALIDATION_N,
        enumerate_alpha=8 if cfg.verify != "none" else 0,
    )
    rep = Report()
    rep.add("k", k)
    rep.add("gamma", res.gamma)
    rep.add("alpha_in", res.alpha_in)
    rep.add("alpha_out", res.alpha_out)
    rep.block("edges", _edges_text(res.edges), [[u + 1, v + 1] for u, v in res.edges])
    verified = None
    if cfg.verify != "none":
        if res.gamma == 0:
            verified = True
        elif res.alpha_in is not None and res.alpha_out is not None:
            if max(res.alpha_in, res.alpha_out) != res.gamma:
                raise InvariantError("edge count differs from the subpartition lower bound")
            verified = True
        if full and not res.verified:
            verified = False
    rep.add("connected", res.verified)
    status, code = _status(verified)
    rep.add("status", status)
    _emit(cfg, _augment_output(cfg, rep, G.n, res.edges, True))
    return code


def cmd_augment_undirected(cfg: RunConfig) -> int:
    Gu = _load(cfg.path)
    if not isinstance(Gu, UGraph):
        raise InputError("augment-undirected needs an undirected graph")
    k = cfg.k or 1
    full = cfg.verify == "full"
    res = augment_undirected(
        Gu,
        k,
        verify=full,
        validate_splits=full and Gu.n <= FULL_SPLIT_VALIDATION_N,
        enumerate_limit=8 if cfg.verify != "none" else 0,
    )
    rep = Report()
    rep.add("k", k)
    rep.add("gamma", res.gamma)
    rep.add("lower_bound", None)
    rep.block("edges", _edges_text(res.edges), [[u + 1, v + 1] for u, v in res.edges])
    verified = None
    if cfg.verify != "none":
        bound = None
        if res.gamma == 0 or k == 1:
            # each new edge joins at most two components
            bound = res.gamma
        elif res.cai_sun is not None:
            bound = res.cai_sun
        elif res.deficiency is not None:
            bound = math.ceil(res.deficiency / 2)
        rep.add("lower_bound", bound)
        if bound is not None:
            if bound != res.gamma:
                raise InvariantError("edge count differs from the lower bound")
            verified = True
        if full and not res.verified:
            verified = False
    rep.add("connected", res.verified)
    status, code = _status(verified)
    rep.add("status", status)
    _emit(cfg, _augment_output(cfg, rep, Gu.n, res.edges, False))
    return code


def cmd_connectivity(cfg: RunConfig) -> int:
    G = _load(cfg.path)
    D = G if isinstance(G, Digraph) else doubled(G)
    rep = Report()
    rep.add("directed", isinstance(G, Digraph))
    if G.n <= 1:
        rep.add("connectivity", None)
    else:
        cap = cfg.k if cfg.k is not None else D.m + 1
        rep.add("connectivity", strong_connectivity(D, cap))
        rep.add("capped_at", cfg.k)
    _emit(cfg, rep.render(cfg.fmt))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    G = _load_digraph(cfg)
    k = cfg.k or 1
    tau = _tau(cfg, G.n)
    labels = parse_labeling(_read_text(cfg.extra["labeling"]), G.m)
    cert = cert_mod.parse_certificate(_read_text(cfg.extra["certificate"]))
    if cert.k != k:
        raise InputError(f"certificate is for k={cert.k}, not {k}")
    if any(v < 0 or v >= G.n for A in cert.sets for v in A):
        raise InputError("certificate names a vertex outside the graph")
    rep = Report()
    problems = cert_mod.check_feasible(G, k, labels, tau.vector(G.n, k))
    if problems:
        rep.add("feasible", False)
        rep.add("problems", "; ".join(problems))
        rep.add("status", "unverified")
        _emit(cfg, rep.render(cfg.fmt))
        return EXIT_UNVERIFIED
    report = cert_mod.verify_minmax(G, k, labels, tau, cert)
    rep.add("feasible", True)
    rep.add("deficit", report.deficit)
    rep.add("certificate_total", report.certificate_total)
    rep.add("optimal", report.optimal)
    if report.problems:
        rep.add("problems", "; ".join(report.problems))
    rep.add("status", "verified" if report.optimal else "unverified")
    _emit(cfg, rep.render(cfg.fmt))
    return EXIT_OK if report.optimal else EXIT_UNVERIFIED


BENCH_COLUMNS = ("n", "m", "k", "delta", "seed", "time", "rounds", "augmentations")


def bench_row(n: int, m: int, k: int, seed: int, timed: bool = True) -> dict:
    """One benchmark instance: solve the zero-reservation k-forest problem."""
    G = random_backbone_digraph(n, m, seed)
    if n >= 2:
        k_G = min(strong_connectivity(G, k), k - 1)
    else:
        k_G = k - 1
    stats = SolveStats()
    t0 = time.perf_counter()
    solve(G, k, stats=stats)
    elapsed = time.perf_counter() - t0
    top = stats.levels[-1] if stats.levels else None
    return {
        "n": n,
        "m": G.m,
        "k": k,
        "delta": k - k_G,
        "seed": seed,
        "time": f"{elapsed:.6f}" if timed else "-",
        "rounds": top.rounds if top else 0,
        "augmentations": stats.augmentations,
    }


def cmd_bench(cfg: RunConfig) -> int:
    k = cfg.k or 3
    n = cfg.extra["n"]
    m = cfg.extra["m"] if cfg.extra["m"] is not None else 5 * n
    if n < 0 or (n >= 2 and m < n):
        raise InputError("bench needs n >= 0 and m >= n")
    rows = [bench_row(n, m, k, cfg.seed + i, timed=not cfg.extra["no_time"]) for i in range(cfg.extra["count"])]
    if cfg.fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = [",".join(BENCH_COLUMNS)]
        lines.extend(",".join(str(r[c]) for c in BENCH_COLUMNS) for r in rows)
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=None, help="connectivity target / forest count")
    common.add_argument("--verify", choices=("none", "certificate", "full"), default="full")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="edgeaug", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kforest", parents=[common], help="maximum bounded-indegree k-forest with certificate")
    p.add_argument("graph")
    p.add_argument("--root", type=int, default=None, help="reserve the whole budget of this vertex (1-based)")
    p.add_argument("--labeling-out", default=None)
    p.add_argument("--certificate-out", default=None)
    p.set_defaults(func=cmd_kforest)

    p = sub.add_parser("augment", parents=[common], help="optimal directed connectivity augmentation")
    p.add_argument("graph")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("augment-undirected", parents=[common], help="optimal undirected connectivity augmentation")
    p.add_argument("graph")
    p.set_defaults(func=cmd_augment_undirected)

    p = sub.add_parser("connectivity", parents=[common], help="edge connectivity, capped at --k if given")
    p.add_argument("graph")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("verify", parents=[common], help="check a labeling against a certificate")
    p.add_argument("graph")
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--labeling", required=True)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="k-forest timings on random backbone digraphs (CSV)")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--m", type=int, default=None, help="edge count (default 5n)")
    p.add_argument("--count", type=int, default=1, help="instances, seeds seed..seed+count-1")
    p.add_argument("--no-time", action="store_true", help="print '-' for time so output is byte-stable")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = RunConfig.from_args(ns)
        return ns.func(cfg)
    except InvariantError as exc:
        print(f"edgeaug: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except InputError as exc:
        print(f"edgeaug: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
