"""Command-line front end.

Subcommands: build, twins, aut, orbits, labeling, dist, verify.
Exit codes: 0 ok, 1 check failure, 2 usage error, 3 cap exceeded,
4 engine not applicable. NZC_CONFIG may point to a JSON file supplying
defaults for the flag values (same keys as the long flag names).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import distinguishing as dst
from . import graph as gr
from . import serialize
from . import symmetry as sym
from . import verify as vfy
from . import vectorspace as vs
from .errors import CapExceededError, UnsupportedFieldError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_ENGINE = 4

CONFIG_ENV = "NZC_CONFIG"
CONFIG_KEYS = ("vertex_cap", "oracle_cap", "exact_cap", "seed", "format", "samples")


def _load_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return {k: data[k] for k in CONFIG_KEYS if k in data}


def _add_common(p: argparse.ArgumentParser, *, ranged: bool = False) -> None:
    if ranged:
        p.add_argument("-n", required=True, help="dimension or range like 3..8")
        p.add_argument("-q", required=True, help="field size or range like 2..3")
    else:
        p.add_argument("-n", type=int, required=True, help="dimension")
        p.add_argument("-q", type=int, required=True, help="field size")
    p.add_argument("--vertex-cap", type=int, default=None)
    p.add_argument("--oracle-cap", type=int, default=None)
    p.add_argument("--exact-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nzc",
        description="Build non-zero component graphs, compute their automorphism "
                    "groups and distinguishing numbers, and verify the claim catalog.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("build", help="construct a graph and export it")
    _add_common(p)
    p.add_argument("--format", choices=("json", "dot", "table"), default=None)

    p = subs.add_parser("twins", help="print the twin partition")
    _add_common(p)

    p = subs.add_parser("aut", help="compute the automorphism group")
    _add_common(p)
    p.add_argument("--engine", choices=("structural", "oracle", "both"),
                   default="structural")

    p = subs.add_parser("orbits", help="orbit partition under the automorphism group")
    _add_common(p)
    p.add_argument("--engine", choices=("structural", "oracle"), default=None)

    p = subs.add_parser("labeling", help="emit the constructive distinguishing labeling")
    _add_common(p)
    p.add_argument("--format", choices=("json", "table"), default=None)

    p = subs.add_parser("dist", help="distinguishing number (exact or bounds)")
    _add_common(p)

    p = subs.add_parser("verify", help="run the certificate suite over parameter ranges")
    _add_common(p, ranged=True)
    p.add_argument("--samples", type=int, default=None,
                   help="random pairs for sampled checks")
    return parser


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _effective(args, config, key, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    return config.get(key, default)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph(args, config) -> gr.NzcGraph:
    cap = _effective(args, config, "vertex_cap", vs.DEFAULT_VERTEX_CAP)
    return gr.build(vs.SpaceParams(args.n, args.q, cap))


def _group_for(g, engine, oracle_cap):
    if engine == "structural":
        return sym.aut_group_structural(g)
    return sym.aut_group_oracle(g, vertex_cap=oracle_cap)


def cmd_build(args, config) -> int:
    g = _graph(args, config)
    fmt = _effective(args, config, "format", "json")
    if fmt == "json":
        _emit(json.dumps(serialize.graph_to_dict(g), indent=2) + "\n", args.out)
    elif fmt == "dot":
        _emit(serialize.graph_to_dot(g), args.out)
    else:
        _emit(serialize.graph_to_table(g), args.out)
    return EXIT_OK


def cmd_twins(args, config) -> int:
    g = _graph(args, config)
    lines = [f"{len(g.twin_sets())} twin sets"]
    for ts in g.twin_sets():
        label = vs.format_vector(g.vertices[ts[0]])
        skel = ",".join(str(i) for i in vs.skeleton_indices(g.skeletons[ts[0]]))
        lines.append(f"  skeleton {{{skel}}} size {len(ts)}: "
                     + " ".join(str(v) for v in ts) + f"  (e.g. {label})")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_aut(args, config) -> int:
    g = _graph(args, config)
    oracle_cap = _effective(args, config, "oracle_cap", sym.DEFAULT_ORACLE_VERTEX_CAP)
    lines = []
    rc = EXIT_OK
    if args.engine in ("structural", "both"):
        grp = sym.aut_group_structural(g)
        lines.append(f"structural engine: |Aut| = {grp.order}")
        lines.append("orbits: " + " ".join(str(list(o)) for o in grp.orbits()))
    if args.engine in ("oracle", "both"):
        oracle = sym.aut_group_oracle(g, vertex_cap=oracle_cap)
        lines.append(f"oracle engine: |Aut| = {oracle.order}")
        if args.engine == "oracle":
            lines.append("orbits: " + " ".join(str(list(o)) for o in oracle.orbits()))
    if args.engine == "both":
        agree = grp.set_equal(oracle)
        lines.append(f"engines set-equal: {agree}")
        if not agree:
            rc = EXIT_CHECK_FAILED
    _emit("\n".join(lines) + "\n", args.out)
    return rc


def cmd_orbits(args, config) -> int:
    g = _graph(args, config)
    engine = args.engine or ("structural" if args.q == 2 else "oracle")
    oracle_cap = _effective(args, config, "oracle_cap", sym.DEFAULT_ORACLE_VERTEX_CAP)
    grp = _group_for(g, engine, oracle_cap)
    lines = [f"{engine} group of order {grp.order}"]
    for orb in grp.orbits():
        labels = " ".join(vs.format_vector(g.vertices[v]) for v in orb)
        lines.append(f"  orbit size {len(orb)}: {labels}")
    moved = grp.moved_set()
    lines.append(f"moved vertices: {len(moved)}; same-orbit ordered pairs: "
                 f"{len(grp.same_orbit_pairs())}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_labeling(args, config) -> int:
    g = _graph(args, config)
    f = (dst.constructive_labeling_q2(g) if args.q == 2
         else dst.constructive_labeling_q3(g))
    fmt = _effective(args, config, "format", "json")
    if fmt == "json":
        _emit(json.dumps({"n": args.n, "q": args.q, "t": f.t,
                          "colors": list(f.colors)}) + "\n", args.out)
    else:
        lines = [f"t = {f.t}"]
        for v in range(g.num_vertices):
            lines.append(f"  {vs.format_vector(g.vertices[v]):<18} -> {f.colors[v]}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_dist(args, config) -> int:
    g = _graph(args, config)
    exact_cap = _effective(args, config, "exact_cap", dst.DEFAULT_EXACT_CAP)
    result = dst.dist_number(g, exact_cap=exact_cap)
    if result.method == "exact":
        line = f"exact {result.value}"
        if result.refuted:
            line += f" (search refuted {result.refuted} colours)"
    elif result.value is not None:
        line = (f"{result.value} (lower={result.lower_source} {result.lower}, "
                f"upper={result.upper_source} {result.upper})")
    else:
        line = (f"bounds [{result.lower}, {result.upper}] "
                f"(lower={result.lower_source}, upper={result.upper_source})")
    witness = result.witness
    line += f"\nwitness uses {len(witness.used_colors())} colours: {list(witness.colors)}"
    _emit(line + "\n", args.out)
    return EXIT_OK


def cmd_verify(args, config) -> int:
    n_values = _parse_range(args.n)
    q_values = _parse_range(args.q)
    reports = vfy.verify_ranges(
        n_values, q_values,
        vertex_cap=_effective(args, config, "vertex_cap", vs.DEFAULT_VERTEX_CAP),
        oracle_cap=_effective(args, config, "oracle_cap", sym.DEFAULT_ORACLE_VERTEX_CAP),
        exact_cap=_effective(args, config, "exact_cap", dst.DEFAULT_EXACT_CAP),
        samples=_effective(args, config, "samples", 1000),
        seed=_effective(args, config, "seed", 0),
    )
    lines = [r.format_line() for r in reports]
    counts = vfy.summarize(reports)
    lines.append(f"summary: {counts['pass']} pass, {counts['fail']} fail, "
                 f"{counts['anomaly']} anomaly")
    print("\n".join(lines))
    if args.out:
        payload = {"claims": [r.to_dict() for r in reports], "summary": counts}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    return EXIT_OK if counts["fail"] == 0 else EXIT_CHECK_FAILED


COMMANDS = {
    "build": cmd_build,
    "twins": cmd_twins,
    "aut": cmd_aut,
    "orbits": cmd_orbits,
    "labeling": cmd_labeling,
    "dist": cmd_dist,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config()
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {CONFIG_ENV} config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, config)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UnsupportedFieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
