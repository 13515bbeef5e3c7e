"""Command line front end.

Exit codes: 0 success, 1 an identity failed (a bug, or a tampered replay
file), 2 bad input or unmet precondition.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import action as act
from .errors import IdentityViolation, InputError, ParseError
from .graph import DartGraph, genus, is_connected
from .instances import FiniteGroup, VoltageAssignment, cyclic_group, derived_cover, generate_corpus, random_actions, sample_actions, write_corpus
from .quotient import VARIANTS, quotient
from .riemann_hurwitz import TERM_NAMES, RHReport, check_all
from .serialize import (
    dumps,
    graph_from_dict,
    instance_to_dict,
    load_instance,
    quotient_to_dict,
    read_json,
    report_from_dict,
    report_to_dict,
    subdivided_to_dict,
)
from .subdivision import barycentric_subdivide

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
CORPUS_ENV = "QG_CORPUS"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _load(args) -> tuple[DartGraph, act.ActionGroup | None]:
    X, G = load_instance(args.input)
    if getattr(args, "action", None):
        from .serialize import action_from_list

        G = action_from_list(X, read_json(args.action))
    return X, G


def _need_group(X, G):
    if G is None:
        raise InputError("this command needs generators (inline 'generators' key or --action FILE)")
    return G


def _emit(out: str, path: str | None):
    if path:
        Path(path).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def cmd_info(args) -> int:
    X, G = _load(args)
    conn = is_connected(X)
    info = {
        "V": len(X.vertices),
        "E": len(X.edges),
        "T": len(X.semi_edges),
        "loops": len(X.loops),
        "genus": genus(X) if conn else None,
        "connected": conn,
    }
    if G is not None:
        inv, fix = act.invertible_edges(G), act.fixed_edges(G)
        info.update(
            group_order=G.order,
            vertex_orbits=len(act.orbits(G, "vertices")),
            edge_orbits=len(act.orbits(G, "edges")),
            dart_orbits=len(act.orbits(G, "darts")),
            invertible=[e.key for e in inv],
            fixed=[e.key for e in fix],
            harmonic=act.is_harmonic(G),
        )
    if args.format == "json":
        _emit(dumps(info), None)
        return EXIT_OK
    g = "-" if info["genus"] is None else info["genus"]
    lines = [f"V={info['V']} E={info['E']} T={info['T']} genus={g} connected={_yn(conn)}", f"loops={info['loops']}"]
    if G is not None:
        lines.append(
            f"|G|={G.order} invertible={len(info['invertible'])} fixed={len(info['fixed'])} "
            f"harmonic={_yn(info['harmonic'])}"
        )
        lines.append(
            f"orbits: vertices={info['vertex_orbits']} edges={info['edge_orbits']} darts={info['dart_orbits']}"
        )
        for e in act.invertible_edges(G):
            lines.append(f"invertible edge {e}")
        for e in act.fixed_edges(G):
            lines.append(f"fixed edge {e}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_quotient(args) -> int:
    X, G = _load(args)
    Q = quotient(X, _need_group(X, G), args.variant)
    if args.format == "json":
        _emit(dumps(quotient_to_dict(Q)), args.output)
        return EXIT_OK
    q = Q.quotient
    lines = [
        f"variant={Q.variant} |G|={Q.group_order}",
        f"V={len(q.vertices)} E={len(q.edges)} T={len(q.semi_edges)} genus={Q.genus}",
    ]
    for v in q.vertices:
        lines.append(f"  vertex    {v:<24} order={Q.cell_group_orders[v]}")
    for e in q.edges:
        lines.append(f"  edge      {str(e):<24} order={Q.cell_group_orders[e]}")
    for t in q.semi_edges:
        lines.append(f"  semi-edge {str(t):<24} order={Q.cell_group_orders[t]}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


_COLS = ("group_order", "quotient_genus", "vertex_defect", "edge_defect", "setwise_edge_defect", "inversion_term", "vertical_count")
_HEAD = ("|G|", "g(X/G)", "vdef", "edef", "swdef", "inv", "vert")


def _report_table(reports: list[RHReport]) -> str:
    head = f"{'theorem':<12} {'lhs':>5} {'rhs':>5} {'holds':>5} " + " ".join(f"{h:>6}" for h in _HEAD)
    rows = [head]
    for r in reports:
        rows.append(
            f"{r.theorem:<12} {r.lhs:>5} {r.rhs:>5} {_yn(r.holds):>5} "
            + " ".join(f"{r.terms[k]:>6}" for k in _COLS)
        )
    return "\n".join(rows) + "\n"


def _replay_diff(stored: list[RHReport], fresh: list[RHReport]) -> list[str]:
    diffs = []
    by = {r.theorem: r for r in fresh}
    for s in stored:
        if not s.consistent():
            diffs.append(f"{s.theorem}: stored rhs/holds do not follow from stored terms")
        if not s.holds:
            diffs.append(f"{s.theorem}: stored report does not hold (lhs={s.lhs}, rhs={s.rhs})")
        f = by.get(s.theorem)
        if f is None:
            diffs.append(f"{s.theorem}: not applicable to this instance")
            continue
        for k in TERM_NAMES:
            if s.terms[k] != f.terms[k]:
                diffs.append(f"{s.theorem}: {k} stored={s.terms[k]} computed={f.terms[k]}")
        for k in ("lhs", "rhs"):
            if getattr(s, k) != getattr(f, k):
                diffs.append(f"{s.theorem}: {k} stored={getattr(s, k)} computed={getattr(f, k)}")
    return diffs


def _verify_one(path: Path, args) -> tuple[int, str, list[RHReport]]:
    X, G = load_instance(path)
    if getattr(args, "action", None):
        from .serialize import action_from_list

        G = action_from_list(X, read_json(args.action))
    G = _need_group(X, G)
    try:
        reports = check_all(X, G)
    except IdentityViolation as exc:
        rep = exc.report if isinstance(exc.report, list) else [exc.report]
        return EXIT_VIOLATION, f"{path}: IDENTITY VIOLATION: {exc}\n" + _report_table(rep), rep
    text = _report_table(reports)
    if args.replay:
        data = read_json(args.replay)
        if not isinstance(data, list):
            raise ParseError("replay file must be an array of reports")
        diffs = _replay_diff([report_from_dict(d) for d in data], reports)
        if diffs:
            return EXIT_VIOLATION, text + "replay mismatch:\n" + "".join(f"  {d}\n" for d in diffs), reports
    return EXIT_OK, text, reports


def cmd_verify(args) -> int:
    target = args.input or os.environ.get(CORPUS_ENV)
    if not target:
        raise InputError(f"no input given and ${CORPUS_ENV} is not set")
    target = Path(target)
    if target.is_dir():
        files = sorted(target.rglob("*.json"))
        worst, failures = EXIT_OK, 0
        for p in files:
            code, text, _ = _verify_one(p, args)
            if code:
                failures += 1
                sys.stdout.write(text)
            worst = max(worst, code)
        sys.stdout.write(f"verified {len(files)} instances, {failures} failures\n")
        return worst
    code, text, reports = _verify_one(target, args)
    if args.format == "json":
        sys.stdout.write(dumps([report_to_dict(r) for r in reports]))
        if code:
            sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code


def cmd_subdivide(args) -> int:
    X, _ = _load(args)
    S = barycentric_subdivide(X)
    if args.format == "json":
        _emit(dumps(subdivided_to_dict(S)), args.output)
    else:
        q = S.graph
        _emit(
            f"V={len(q.vertices)} E={len(q.edges)} black={len(S.black)} white={len(S.white)} genus={genus(q) if is_connected(q) else '-'}\n",
            args.output,
        )
    return EXIT_OK


def cmd_sample(args) -> int:
    X, _ = _load(args)
    groups = sample_actions(X, budget=args.budget)
    seen = {G.key() for G in groups}
    for H in random_actions(X, args.random, args.seed):
        if H.key() not in seen:
            seen.add(H.key())
            groups.append(H)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, G in enumerate(groups):
            (out / f"action_{i:03d}_order{G.order}.json").write_text(dumps(instance_to_dict(X, G)), encoding="utf-8")
    lines = [f"{'#':>4} {'|G|':>6} {'inv':>4} {'fixed':>5} harmonic"]
    for i, G in enumerate(groups):
        lines.append(
            f"{i:>4} {G.order:>6} {len(act.invertible_edges(G)):>4} {len(act.fixed_edges(G)):>5} {_yn(act.is_harmonic(G))}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def voltage_from_dict(d: dict) -> VoltageAssignment:
    if not isinstance(d, dict) or "base" not in d or "group" not in d or "voltage" not in d:
        raise ParseError("voltage file needs 'base', 'group' and 'voltage'")
    base = graph_from_dict(d["base"])
    g = d["group"]
    if isinstance(g, dict) and "cyclic" in g:
        group = cyclic_group(int(g["cyclic"]))
    elif isinstance(g, dict) and "table" in g:
        group = FiniteGroup.from_rows(g["table"])
    else:
        raise ParseError("group must be {'cyclic': n} or {'table': {a: {b: a*b}}}")
    volt = d["voltage"]
    if not isinstance(volt, dict):
        raise ParseError("voltage must map darts to group elements")
    volt = {k: str(v) for k, v in volt.items()}
    if set(volt) == set(base.darts):
        return VoltageAssignment(base, group, volt)
    return VoltageAssignment.on_edges(base, group, volt)


def cmd_cover(args) -> int:
    va = voltage_from_dict(read_json(args.input))
    X, G = derived_cover(va)
    if args.format == "json":
        _emit(dumps(instance_to_dict(X, G)), args.output)
    else:
        _emit(f"V={len(X.vertices)} E={len(X.edges)} genus={genus(X)} |G|={G.order}\n", args.output)
    return EXIT_OK


def cmd_corpus(args) -> int:
    inst = generate_corpus(max_n=args.max_n, budget=args.budget)
    paths = write_corpus(args.out, inst)
    sys.stdout.write(f"wrote {len(paths)} instances to {args.out}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qg", description="Quotients of graphs by group actions and Riemann-Hurwitz checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_required=True):
        sp.add_argument("input", nargs=None if input_required else "?", help="graph or instance JSON file")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("info", help="summarise a graph and optional action")
    common(sp)
    sp.add_argument("--action", help="JSON array of generators")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("quotient", help="build a factor graph")
    common(sp)
    sp.add_argument("--action")
    sp.add_argument("--variant", choices=VARIANTS, default="plain")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("verify", help="check every applicable identity")
    common(sp, input_required=False)
    sp.add_argument("--action")
    sp.add_argument("--replay", help="stored report list to compare against")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("subdivide", help="barycentric subdivision")
    common(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_subdivide)

    sp = sub.add_parser("sample", help="list subgroups of Aut(X)")
    common(sp)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--budget", type=int, default=64)
    sp.add_argument("--random", type=int, default=4, help="extra randomly generated subgroups")
    sp.add_argument("--out", help="directory for one instance file per action")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("cover", help="derived cover of a voltage assignment")
    common(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("corpus", help="write the generated corpus")
    sp.add_argument("--out", default=os.environ.get(CORPUS_ENV, "corpus"))
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--budget", type=int, default=64)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
