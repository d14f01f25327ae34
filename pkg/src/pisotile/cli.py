"""Command-line front end: substitution file parsing, analysis orchestration,
DOT/JSON emission, and the corpus verification harness.

Exit codes: 0 success, 1 verdict mismatch, 2 gate or input failure,
3 cap exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .overlap import (
    CapExceededError,
    overlap_coincidence,
    stable_overlap_graph,
    stuck_scc_indices,
    expansive_sccs,
    to_dot,
)
from .strongcoin import (
    ClassCapError,
    EnumerationCapError,
    RodHypothesisError,
    compute_level_n,
    extract_witness,
    group_G,
    multiple_strong_coincidence,
    strong_coincidence,
)
from .substitution import (
    NotPisotError,
    Substitution,
    SubstitutionError,
    dekking_column_check,
    is_irreducible,
    is_primitive,
    matrix,
)
from .tiling import TileMap, TilingSystem, solve_control_points


class ParseError(ValueError):
    """Malformed substitution file."""


class VerdictMismatch(RuntimeError):
    """Computed verdicts disagree with each other or with expectations."""


def parse(source) -> tuple[Substitution, list[str], dict]:
    """Parse a substitution file (path, JSON text, or dict) into a
    Substitution plus the letter names and any metadata."""
    if isinstance(source, (str, Path)) and Path(str(source)).exists():
        text = Path(source).read_text()
        data = json.loads(text)
    elif isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as e:
            raise ParseError(f"not a file and not valid JSON: {e}") from e
    else:
        data = source
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    alphabet = data.get("alphabet")
    rules = data.get("rules")
    if not isinstance(alphabet, list) or not alphabet:
        raise ParseError("field 'alphabet' must be a nonempty list")
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("duplicate letters in alphabet")
    if not isinstance(rules, dict):
        raise ParseError("field 'rules' must be an object")
    index = {a: i + 1 for i, a in enumerate(alphabet)}
    words = []
    for a in alphabet:
        if a not in rules:
            raise ParseError(f"missing rule for letter {a!r}")
        word = rules[a]
        if not isinstance(word, list) or not word:
            raise ParseError(f"empty rule for letter {a!r}")
        for b in word:
            if b not in index:
                raise ParseError(f"rule for {a!r} uses undeclared letter {b!r}")
        words.append(tuple(index[b] for b in word))
    extra = set(rules) - set(alphabet)
    if extra:
        raise ParseError(f"rules for undeclared letters: {sorted(extra)}")
    return Substitution(len(alphabet), tuple(words)), list(alphabet), data.get("metadata", {})


# -- exact serialization ---------------------------------------------------------


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _vec(x) -> list[str]:
    return [_rat(c) for c in x.coeffs]


def _graph_json(system, g) -> dict:
    order = sorted(range(len(g.vertices)), key=lambda i: g.vertices[i].key())
    rank = {v: r for r, v in enumerate(order)}
    return {
        "inflation_level": g.inflation_level,
        "vertices": [
            {
                "color_u": g.vertices[i].color_u,
                "color_v": g.vertices[i].color_v,
                "shift": _vec(g.vertices[i].shift),
                "coincidence": g.vertices[i].is_coincidence,
            }
            for i in order
        ],
        "edges": [
            [rank[u], rank[v], w]
            for (u, v), w in sorted(g.edges.items(), key=lambda e: (rank[e[0][0]], rank[e[0][1]]))
        ],
    }


# -- pipeline --------------------------------------------------------------------


def _gates(s: Substitution) -> dict:
    gates = {"primitive": is_primitive(matrix(s)), "irreducible": is_irreducible(s)}
    if not gates["primitive"]:
        raise SubstitutionError("primitivity gate failed")
    return gates


def _system(s: Substitution) -> TilingSystem:
    try:
        return TilingSystem(s)
    except NotPisotError as e:
        raise NotPisotError(f"Pisot gate failed: {e}") from e


def analyze(s: Substitution, opts) -> dict:
    """Full pipeline: gates, overlap graph, OC verdict, level n, MSC(n),
    agreement assertion, and witness extraction on failure."""
    t0 = time.monotonic()
    gates = _gates(s)
    system = _system(s)
    gates["pisot"] = True
    g, radius = stable_overlap_graph(
        system, radius=opts.radius, level=opts.level, cap=opts.cap_classes
    )
    oc, cert = overlap_coincidence(g)
    t_overlap = time.monotonic() - t0
    n = compute_level_n(g)
    group = group_G(system, k_max=opts.kmax)
    msc = multiple_strong_coincidence(
        system, n, cap_maps=opts.cap_maps, cap_classes=opts.cap_classes,
        group=group, k_max=opts.kmax,
    )
    report = {
        "substitution": {str(i + 1): "".join(map(str, w)) for i, w in enumerate(s.rules)},
        "gates": gates,
        "min_poly": list(system.field.min_poly),
        "lengths": [_vec(l) for l in system.lengths],
        "overlap": {
            "verdict": oc,
            "radius": _vec(radius),
            "vertices": len(g.vertices),
            "certificate": (
                sorted(cert.values()) if oc else [g.vertices[i].label() for i in cert]
            ),
        },
        "msc": {
            "level": n,
            "verdict": msc.verdict,
            "families_considered": msc.considered,
            "vacuous": msc.vacuous,
            "reports": [r.to_json() for r in msc.reports],
        },
        "agreement": oc == msc.verdict,
        "timings": {"overlap_s": round(t_overlap, 3), "total_s": None},
    }
    if not oc:
        sccs = stuck_scc_indices(g)
        report["overlap"]["stuck_sccs"] = [
            [g.vertices[v].label() for v in comp] for comp in sccs
        ]
        report["overlap"]["expansive_sccs"] = [
            {"size": len(d["vertices"]), "matrix": d["matrix"],
             "perron_is_expansion": d["perron_is_expansion"]}
            for d in expansive_sccs(system, g)
        ]
        try:
            tm, cp, pair = extract_witness(system, g, sccs[0], group)
            report["witness"] = {
                "level": tm.n,
                "choice": list(tm.choice),
                "control_points": [_vec(c) for c in cp.c],
                "failing_pair": list(pair),
            }
        except RodHypothesisError as e:
            report["witness"] = {"error": str(e)}
    report["timings"]["total_s"] = round(time.monotonic() - t0, 3)
    if not report["agreement"]:
        raise VerdictMismatch(
            f"overlap coincidence = {oc} but multiple strong coincidence({n}) = {msc.verdict}"
        )
    return report


# -- commands ---------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--radius", type=Fraction, default=None,
                   help="seeding patch radius (rational; default 8*max length, doubled to stability)")
    p.add_argument("--cap-classes", type=int, default=10**4)
    p.add_argument("--cap-maps", type=int, default=10**5)
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--level", type=int, default=1,
                   help="inflation level for overlap-graph edges")


def cmd_analyze(args) -> int:
    s, _, _ = parse(args.file)
    report = analyze(s, args)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_overlaps(args) -> int:
    s, _, _ = parse(args.file)
    system = _system(s)
    _gates(s)
    g, radius = stable_overlap_graph(
        system, radius=args.radius, level=args.level, cap=args.cap_classes
    )
    oc, cert = overlap_coincidence(g)
    dot = to_dot(g, None if oc else cert)
    if args.dot:
        Path(args.dot).write_text(dot)
    else:
        sys.stdout.write(dot)
    summary = {
        "verdict": oc,
        "radius": _vec(radius),
        "graph": _graph_json(system, g),
    }
    if not oc:
        summary["stuck"] = [g.vertices[i].label() for i in cert]
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_strong(args) -> int:
    s, _, _ = parse(args.file)
    _gates(s)
    system = _system(s)
    n = args.map_level
    choice = tuple(int(x) for x in args.choice.split(",")) if args.choice else (0,) * s.m
    tm = TileMap(n, choice)
    cp = solve_control_points(system, tm)
    group = group_G(system, k_max=args.kmax)
    if not cp.admissible:
        print(json.dumps({
            "choice": list(choice), "level": n,
            "control_points": [_vec(c) for c in cp.c],
            "admissible": False, "in_group": None, "pairs": [],
        }, indent=2, sort_keys=True))
        return 0
    rep = strong_coincidence(system, cp, group, args.cap_classes)
    print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    return 0


def cmd_msc(args) -> int:
    s, _, _ = parse(args.file)
    _gates(s)
    system = _system(s)
    if args.map_level is not None:
        n = args.map_level
    else:
        g, _ = stable_overlap_graph(
            system, radius=args.radius, level=args.level, cap=args.cap_classes
        )
        n = compute_level_n(g)
    group = group_G(system, k_max=args.kmax)
    msc = multiple_strong_coincidence(
        system, n, cap_maps=args.cap_maps, cap_classes=args.cap_classes,
        group=group, k_max=args.kmax,
    )
    print(json.dumps({
        "level": n,
        "verdict": msc.verdict,
        "families_considered": msc.considered,
        "vacuous": msc.vacuous,
        "reports": [r.to_json() for r in msc.reports],
    }, indent=2, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    corpus = Path(args.corpus) if args.corpus else Path(__file__).parent / "corpus"
    files = sorted(corpus.glob("*.json"))
    if not files:
        print(f"warning: no corpus files in {corpus}")
        return 0
    failures = 0
    fixture_errors = 0
    for f in files:
        try:
            s, _, meta = parse(f)
            expected = meta.get("expected")
            if not isinstance(expected, dict) or "overlap_coincidence" not in expected:
                raise ParseError("missing or malformed 'metadata.expected'")
            if not isinstance(expected["overlap_coincidence"], bool):
                raise ParseError("'expected.overlap_coincidence' must be a boolean")
        except ParseError as e:
            print(f"{f.name}: FIXTURE ERROR ({e})")
            fixture_errors += 1
            continue
        try:
            report = analyze(s, args)
            oc = report["overlap"]["verdict"]
            mv = report["msc"]["verdict"]
            n = report["msc"]["level"]
            ok = oc == expected["overlap_coincidence"] and oc == mv
            status = "PASS" if ok else "FAIL"
            if not ok:
                failures += 1
            print(
                f"{f.name}: OC={oc} MSC(n={n})={mv} "
                f"expected OC={expected['overlap_coincidence']} -> {status}"
            )
        except VerdictMismatch as e:
            failures += 1
            print(f"{f.name}: FAIL ({e})")
    if failures:
        return 1
    if fixture_errors:
        return 2
    return 0


def cmd_oracle_dekking(args) -> int:
    s, _, _ = parse(args.file)
    result = dekking_column_check(s)
    print(json.dumps({"dekking_coincidence": result}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pisotile",
        description="Exact overlap-coincidence and strong-coincidence analysis "
        "of one-dimensional Pisot substitution tilings",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full pipeline with equivalence check")
    pa.add_argument("file")
    _add_common(pa)
    pa.set_defaults(func=cmd_analyze)

    po = sub.add_parser("overlaps", help="overlap graph, verdict, and DOT export")
    po.add_argument("file")
    po.add_argument("--dot", default=None, help="write DOT to this path")
    _add_common(po)
    po.set_defaults(func=cmd_overlaps)

    ps = sub.add_parser("strong", help="strong coincidence for one tile map")
    ps.add_argument("file")
    ps.add_argument("--map-level", type=int, default=1, help="tile-map inflation level n")
    ps.add_argument("--choice", default=None, help="comma-separated 0-based subtile choices")
    _add_common(ps)
    ps.set_defaults(func=cmd_strong)

    pm = sub.add_parser("msc", help="multiple strong coincidence of level n")
    pm.add_argument("file")
    pm.add_argument("--map-level", type=int, default=None,
                    help="level n (default: computed from the overlap graph)")
    _add_common(pm)
    pm.set_defaults(func=cmd_msc)

    pv = sub.add_parser("verify", help="run the corpus and check expectations")
    pv.add_argument("corpus", nargs="?", default=None,
                    help="directory of corpus files (default: shipped corpus)")
    _add_common(pv)
    pv.set_defaults(func=cmd_verify)

    pd = sub.add_parser("oracle-dekking", help="column coincidence oracle "
                        "(constant-length substitutions)")
    pd.add_argument("file")
    pd.set_defaults(func=cmd_oracle_dekking)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerdictMismatch as e:
        print(f"verdict mismatch: {e}", file=sys.stderr)
        return 1
    except (ParseError, SubstitutionError, NotPisotError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CapExceededError, EnumerationCapError, ClassCapError) as e:
        print(f"cap exhausted: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
