"""Command-line front end.

Subcommands: solve (exact value and principal variation of an instance or
word list), maps (list admissible districtings), balanced (play the
balls-and-bins game), fig1 (votes--seats table), nh (case-study report),
serve (HTTP play service).
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from pathlib import Path

from ughost import core
from ughost.districts import (
    bundled_instance_path,
    enumerate_maps,
    ingest_state,
    make_language,
    parse_instance,
    seats,
)

_SECTION_TOKENS = ("atoms", "edges", "constraints", "grid:")


def _looks_like_instance(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip().lower()
        if not line:
            continue
        return any(line.startswith(tok) for tok in _SECTION_TOKENS)
    return False


def load_word_list(path: Path):
    """One word per line; optional tab-separated utility pair."""
    words = []
    utilities = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        words.append(fields[0])
        if len(fields) == 3:
            utilities[fields[0]] = (float(fields[1]), float(fields[2]))
    return core.trie_language(words, utilities)


def cmd_solve(args) -> int:
    path = Path(args.instance)
    text = path.read_text(encoding="utf-8")
    if _looks_like_instance(text):
        graph, constraints = parse_instance(text)
        maps = enumerate_maps(graph, constraints)
        lang = make_language(maps, graph.atoms, constraints.k, first_party=args.first_player)
        mover_name = {1: args.first_player, 2: "B" if args.first_player == "A" else "A"}
        def fmt(mover, sym):
            return f"{mover_name[mover]} {sym[0]} {sym[1]}"
    else:
        lang = load_word_list(path)
        def fmt(mover, sym):
            return f"{mover} {sym} -"
    if args.no_memo:
        value, line = _pv_no_memo(lang)
    else:
        value, line = core.principal_variation((), lang)
    print(f"value {value.u1:g} {value.u2:g}")
    for mover, sym in line:
        print(fmt(mover, sym))
    return 0


def _pv_no_memo(lang):
    prefix = ()
    root = core.solve(prefix, lang, memo=False)
    line = []
    while not lang.is_terminal(prefix):
        mover = len(prefix) % 2 + 1
        sym = core.solve(prefix, lang, memo=False).principal_move
        line.append((mover, sym))
        prefix = prefix + (sym,)
    return root, line


def cmd_maps(args) -> int:
    graph, constraints = ingest_state(args.instance)
    maps = enumerate_maps(graph, constraints)
    names = {a.id: a.name for a in graph.atoms}
    for i, parts in enumerate(maps):
        count = seats(parts, graph.atoms)
        rendered = " | ".join(
            "{" + ",".join(sorted(names[a] for a in part)) + "}" for part in parts
        )
        print(f"map {i}: seats A={count.seats_a} B={count.seats_b} ties={count.ties} {rendered}")
    return 0


def cmd_balanced(args) -> int:
    from ughost import balanced

    config = balanced.BalancedConfig(args.j, args.m)
    rng = random.Random(args.seed)

    def pick(name: str):
        if name == "table1":
            return balanced.table1_strategy
        if name == "mirror":
            return balanced.mirror_strategy
        if name == "exact":
            return balanced.exact_policy(config)
        return balanced.random_strategy(rng)

    s1 = pick(args.p1)
    s2 = pick(args.p2)
    rows: list[balanced.AuditRow] = []
    final = balanced.play_balanced(
        config, s1, s2,
        audit=rows if args.audit else None,
        check_mirror=args.p2 == "mirror",
        check_table1_f=args.p1 == "table1",
    )
    p1, p2 = balanced.score(final)
    print(f"final score: P1 {p1} - P2 {p2}" + ("  (tie)" if p1 == p2 else ""))
    if args.audit:
        with open(args.audit, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(balanced.AUDIT_COLUMNS)
            for row in rows:
                writer.writerow([getattr(row, col) for col in balanced.AUDIT_COLUMNS])
        print(f"audit written to {args.audit}")
    return 0


def cmd_fig1(args) -> int:
    from ughost import experiments

    graph, constraints = ingest_state(args.shape)
    records = experiments.run_decomino(
        graph, constraints, trials=args.trials, seed=args.seed,
        mode="exact" if args.exact else "sampled",
    )
    experiments.write_records_csv(records, args.out)
    print(f"{len(records)} records written to {args.out}")
    return 0


def cmd_nh(args) -> int:
    from ughost import experiments

    graph, constraints = ingest_state(args.data)
    report = experiments.run_nh(graph, constraints)
    text = experiments.render_report(report, graph.atoms)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"report written to {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from ughost.service import create_app

    app = create_app(instances_dir=Path(args.instances_dir) if args.instances_dir else None,
                     data_dir=Path(args.data_dir))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghost", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact value and principal variation")
    p.add_argument("--instance", required=True, help="state instance or word-list file")
    p.add_argument("--first-player", choices=("A", "B"), default="A")
    p.add_argument("--no-memo", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("maps", help="list admissible maps with seat counts")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_maps)

    p = sub.add_parser("balanced", help="play the balanced balls-and-bins game")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p1", choices=("table1", "exact", "random"), default="table1")
    p.add_argument("--p2", choices=("mirror", "exact", "random"), default="mirror")
    p.add_argument("--audit", help="write per-move audit CSV here")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_balanced)

    p = sub.add_parser("fig1", help="votes--seats table for a ten-cell state")
    p.add_argument("--shape", default=str(bundled_instance_path("decomino")))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("nh", help="two-district case-study report")
    p.add_argument("--data", default=str(bundled_instance_path("nh_counties")))
    p.add_argument("--out")
    p.set_defaults(func=cmd_nh)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=".ghost-sessions")
    p.add_argument("--instances-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
