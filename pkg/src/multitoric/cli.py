"""Command-line interface.

Exit codes: 0 when every verdict agrees, 1 on bad input, 2 when a theorem
equivalence fails on an instance (this should never happen).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .binomials import MonomialOrder, PureBinomial, buchberger
from .errors import MultitoricError
from .formats import parse_graph, parse_poset
from .graphs import Graph
from .normality import (DEFAULT_T_MAX, holes_up_to, incomparable_hole_vectors,
                        is_disjoint_union_of_chains, minimal_holes, multichain_view,
                        normalization_equals_veronese)
from .posets import Poset, comparability_graph, enumerate_multichains
from .sweep import sweep_graphs, sweep_posets
from .theorems import (loop_edge_family, rev_variable_order, quadratic_seed,
                       verify_theorem_main, verify_theorem_sc)
from .toric import (Configuration, configuration_from_family, markov_basis,
                    minimal_degrees)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    path: str | None = None
    d_list: list[int] = field(default_factory=lambda: [2, 3])
    t_max: int = DEFAULT_T_MAX
    n_max: int | None = None
    n_min: int | None = None
    order: str = "rev"
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if any(d < 2 for d in self.d_list):
            raise MultitoricError("d must be at least 2")
        if self.t_max < 1:
            raise MultitoricError("--t-max must be at least 1")
        if self.jobs < 1:
            raise MultitoricError("--jobs must be at least 1")


def format_monomial(e: Sequence[int], labels: Sequence[str]) -> str:
    parts = []
    for j, k in enumerate(e):
        if k == 1:
            parts.append(labels[j])
        elif k > 1:
            parts.append(f"{labels[j]}^{k}")
    return "".join(parts) or "1"


def format_binomial(b: PureBinomial, labels: Sequence[str]) -> str:
    return f"{format_monomial(b.plus, labels)} - {format_monomial(b.minus, labels)}"


def _one_based(seq):
    return None if seq is None else [v + 1 for v in seq]


def _read_input(path: str):
    text = Path(path).read_text()
    for line in text.splitlines():
        head = line.split("#", 1)[0].strip()
        if head:
            if head.startswith("graph"):
                return parse_graph(text)
            return parse_poset(text)
    return parse_poset(text)


def _emit(obj, fmt: str, text: str, out):
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# ------------------------------------------------------------------ commands

def cmd_analyze_poset(cfg: RunConfig, out) -> int:
    P = parse_poset(Path(cfg.path).read_text())
    rep = verify_theorem_main(P, cfg.d_list)
    obj = rep.to_json()
    obj["configurations"] = {str(d): A.to_json() for d, A in rep.configurations.items()}
    lines = [str(P),
             f"comparability graph chordal: {rep.cond_i}"]
    if rep.chordality.chordal:
        lines.append(f"  perfect elimination ordering: {_one_based(rep.chordality.peo)}")
        lines.append(f"  strong perfect elimination ordering: {_one_based(rep.speo)}")
    else:
        lines.append(f"  induced cycle: {_one_based(rep.chordality.hole)}")
    for d in rep.d_list:
        A = rep.configurations[d]
        q = rep.generation[d]
        lines.append(f"d = {d}: m = {A.m}")
        lines.append("  variables: " + " ".join(A.labels))
        lines.append("  configuration:")
        lines += ["    " + row for row in A.format_matrix().splitlines()]
        lines.append(f"  generated by quadrics: {q.verdict} (Markov degrees {q.markov_degrees})")
        if q.certificate is not None:
            lines.append(f"    non-quadratic generator: {format_binomial(q.certificate, A.labels)}")
        lines.append(f"  quadratic Groebner basis: {rep.gb_quadratic[d]}"
                     + ("" if rep.gb_max_degree[d] is None
                        else f" (reduced GB under <_rev has degree {rep.gb_max_degree[d]})"))
        w = rep.witnesses.get(f"even_cycle_d{d}")
        if w is not None:
            lines.append(f"    even-cycle witness: left {w['left']} right {w['right']}"
                         f" (hypothesis holds: {w['lemma1']})")
    lines.append(f"all verdicts agree: {rep.consistent}")
    _emit(obj, cfg.fmt, "\n".join(lines), out)
    return EXIT_OK if rep.consistent else EXIT_VIOLATION


def cmd_analyze_graph(cfg: RunConfig, out) -> int:
    G = parse_graph(Path(cfg.path).read_text())
    rep = verify_theorem_sc(G)
    fam = loop_edge_family(G, sort=False)
    labels = [f"y_{{{u + 1}{v + 1}}}" for u, v in fam.members]
    s = rep.strong
    lines = [f"graph n={G.n} edges {[[u + 1, v + 1] for u, v in G.edges]}",
             f"strongly chordal: {s.strongly_chordal}"]
    if s.speo is not None:
        lines.append(f"  strong perfect elimination ordering: {_one_based(s.speo)}")
    if s.hole is not None:
        lines.append(f"  induced cycle: {_one_based(s.hole)}")
    if s.sun is not None:
        lines.append(f"  sun: {_one_based(s.sun)}")
    q = rep.generation
    lines.append(f"generated by quadrics: {q.verdict} (Markov degrees {q.markov_degrees})")
    if q.certificate is not None:
        lines.append(f"  non-quadratic generator: {format_binomial(q.certificate, labels)}")
    lines.append(f"quadratic Groebner basis: {rep.gb_quadratic}")
    if rep.witness is not None:
        w = rep.witness
        lines.append(f"  {w['kind']} identity: left {w['left']} = right {w['right']}"
                     f" (hypothesis holds: {w['lemma1']})")
    lines.append(f"all verdicts agree: {rep.consistent}")
    _emit(rep.to_json(), cfg.fmt, "\n".join(lines), out)
    return EXIT_OK if rep.consistent else EXIT_VIOLATION


def cmd_sweep(cfg: RunConfig, out) -> int:
    def show(rep):
        if cfg.fmt == "json":
            out.write(json.dumps(rep.to_json()) + "\n")

    if cfg.command == "sweep-posets":
        summary = sweep_posets(cfg.n_max, cfg.d_list, cfg.jobs, show, cfg.n_min)
    else:
        summary = sweep_graphs(cfg.n_max, cfg.jobs, show, cfg.n_min)
    text = (f"{summary.kind}: {summary.instances} instances, {summary.agreements} agree, "
            f"{len(summary.violations)} violations, {summary.seconds:.2f} s")
    _emit({"summary": summary.to_json()}, cfg.fmt, text, out)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def _setup(obj, d: int, order_spec: str):
    """Configuration, monomial order and a description of the variable order."""
    if isinstance(obj, Graph):
        if order_spec == "rev":
            from .graphs import find_strong_peo
            from .errors import NotChordal
            cert = find_strong_peo(obj)
            if not cert.strongly_chordal:
                raise NotChordal("the reverse lexicographic order needs a strongly chordal graph")
            H = obj.relabel(cert.speo)
            fam = loop_edge_family(H)
            relabel = cert.speo
        else:
            H, fam, relabel = obj, loop_edge_family(obj, sort=False), None
        labels = [f"y_{{{u + 1}{v + 1}}}" for u, v in fam.members]
        A = Configuration(tuple(fam.columns()), labels=tuple(labels))
    else:
        if order_spec == "rev":
            po = rev_variable_order(obj, d)
            fam, relabel = po.family, po.speo
        else:
            fam, relabel = enumerate_multichains(obj, d), None
        A = configuration_from_family(fam)
    m = A.m
    if order_spec == "rev":
        order = MonomialOrder.ascending_revlex(m)
        desc = "reverse lexicographic with " + " < ".join(A.labels)
    elif order_spec == "grevlex":
        order = MonomialOrder.grevlex(m)
        desc = "graded reverse lexicographic with " + " > ".join(A.labels)
    else:
        order = MonomialOrder.lex(m)
        desc = "lexicographic with " + " > ".join(A.labels)
    return A, order, desc, relabel


def cmd_gb(cfg: RunConfig, out) -> int:
    obj = _read_input(cfg.path)
    d = cfg.d_list[0]
    A, order, desc, relabel = _setup(obj, d, cfg.order)
    mb = markov_basis(A, extra=quadratic_seed(A))
    gb = buchberger(mb.gens, order, strategy="random" if cfg.seed else "normal",
                    seed=cfg.seed or None)
    lines = []
    if relabel is not None:
        lines.append(f"relabeling (new element k is old element): {_one_based(relabel)}")
    lines.append(f"order: {desc}")
    noun = "element" if len(gb) == 1 else "elements"
    lines.append(f"reduced Groebner basis ({len(gb)} {noun}, max degree {gb.max_degree}),"
                 " initial term first:")
    lines += ["  " + format_binomial(g, A.labels) for g in gb]
    obj_json = {"relabeling": _one_based(relabel), "order": order.to_json(),
                "variables": list(A.labels), "configuration": A.to_json(),
                "basis": gb.to_json()}
    _emit(obj_json, cfg.fmt, "\n".join(lines), out)
    return EXIT_OK


def cmd_markov(cfg: RunConfig, out) -> int:
    obj = _read_input(cfg.path)
    A, _, _, _ = _setup(obj, cfg.d_list[0], "grevlex")
    mb = markov_basis(A, extra=quadratic_seed(A))
    degs = minimal_degrees(mb, A)
    lines = [f"Markov basis ({len(mb)} elements); minimal generator degrees {degs}:"]
    lines += ["  " + format_binomial(g, A.labels) for g in mb]
    _emit({"variables": list(A.labels), "configuration": A.to_json(),
           "markov": [g.to_json() for g in mb], "minimal_degrees": degs},
          cfg.fmt, "\n".join(lines), out)
    return EXIT_OK


def cmd_normality(cfg: RunConfig, out) -> int:
    P = parse_poset(Path(cfg.path).read_text())
    d = cfg.d_list[0]
    M = multichain_view(P, d)
    chains = is_disjoint_union_of_chains(P)
    holes = holes_up_to(M, cfg.t_max)
    low = minimal_holes(holes)
    connected = comparability_graph(P).is_connected()
    veronese = normalization_equals_veronese(M, P, min(cfg.t_max, 3)) if connected else None
    pattern = set(incomparable_hole_vectors(P, d))
    lines = [str(P), f"disjoint union of chains: {chains}",
             f"holes up to degree {cfg.t_max}: {len(holes)}"]
    if low:
        lines.append(f"  minimal degree {low[0].degree}: " + ", ".join(str(h.vector) for h in low))
        hits = sorted(pattern & {h.vector for h in holes})
        lines.append(f"  of the form (d-1)e_j + e_k: {', '.join(map(str, hits)) or 'none'}")
    if veronese is not None:
        lines.append(f"normalization equals the Veronese monoid up to degree "
                     f"{min(cfg.t_max, 3)}: {veronese}")
    obj = {"poset": {"n": P.n, "covers": [[i + 1, j + 1] for i, j in P.covers]},
           "d": d, "t_max": cfg.t_max, "disjoint_union_of_chains": chains,
           "holes": [h.to_json() for h in holes],
           "minimal_holes": [h.to_json() for h in low],
           "normalization_equals_veronese": veronese}
    _emit(obj, cfg.fmt, "\n".join(lines), out)
    # holes exist exactly when P is not a disjoint union of chains
    return EXIT_OK if (not holes) == chains else EXIT_VIOLATION


COMMANDS = {
    "analyze-poset": cmd_analyze_poset,
    "analyze-graph": cmd_analyze_graph,
    "sweep-posets": cmd_sweep,
    "sweep-graphs": cmd_sweep,
    "gb": cmd_gb,
    "markov": cmd_markov,
    "normality": cmd_normality,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multitoric",
                                     description="Toric ideals of poset multichains and graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", dest="fmt")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized choices (0 keeps the deterministic default)")
    common.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-poset", parents=[common], help="verify the main theorem on a poset")
    p.add_argument("path")
    p.add_argument("--d", type=int, nargs="+", default=[2, 3])

    p = sub.add_parser("analyze-graph", parents=[common], help="verify the strongly chordal theorem")
    p.add_argument("path")

    for name in ("sweep-posets", "sweep-graphs"):
        p = sub.add_parser(name, parents=[common], help="exhaustive verification")
        p.add_argument("--n-max", type=int, required=True)
        p.add_argument("--n-min", type=int, default=None,
                       help="smallest size to include (default: only n-max)")
        if name == "sweep-posets":
            p.add_argument("--d", type=int, nargs="+", default=[2, 3])

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--order", choices=["rev", "grevlex", "lex"], default="rev")

    p = sub.add_parser("markov", parents=[common], help="Markov basis and minimal degrees")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=2)

    p = sub.add_parser("normality", parents=[common], help="holes and the normalization check")
    p.add_argument("path")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--t-max", type=int, default=DEFAULT_T_MAX)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    d = getattr(args, "d", [2, 3])
    try:
        cfg = RunConfig(command=args.command, path=getattr(args, "path", None),
                        d_list=list(d) if isinstance(d, list) else [d],
                        t_max=getattr(args, "t_max", DEFAULT_T_MAX),
                        n_max=getattr(args, "n_max", None), n_min=getattr(args, "n_min", None),
                        order=getattr(args, "order", "rev"), fmt=args.fmt,
                        seed=args.seed, jobs=args.jobs)
        return COMMANDS[args.command](cfg, out)
    except (MultitoricError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
