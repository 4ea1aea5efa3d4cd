"""``vglab`` command line: case verification, invariants and oracles."""

from __future__ import annotations

import argparse
import re
import sys
from typing import List, Optional

from .bundles import CATALOG, chern_of, expand_to_presentation, parse_spec
from .chow import format_chow
from .cohomology import cohomology_table, restrict_to_line
from .errors import ParseError, VGLabError
from .grassmann import plucker_map
from .obstructions import (
    chi_contradiction_omega,
    chi_three_halves_oracle,
    enumerate_unions,
    min_pa_reduced,
    omega_filter,
    abc_triples,
    run_obstructions,
)
from .points import parse_point
from .verify import dumps, run_all, run_case, stratify


class UsageError(Exception):
    pass


def _parse_case(text: str):
    m = re.fullmatch(r"([A-Za-z0-9.\-]+?)(?:@P(\d+))?", text)
    if not m or m.group(1) not in CATALOG:
        raise UsageError(f"unknown case {text!r}; see 'vglab list'")
    n = int(m.group(2) or 2)
    if n not in CATALOG[m.group(1)].ambients:
        raise UsageError(f"case {m.group(1)} is not defined on P^{n}")
    return m.group(1), n


def _parse_twists(text: str):
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise UsageError(f"--twists expects a..b with a <= b, got {text!r}")
    return range(int(m.group(1)), int(m.group(2)) + 1)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_list(args) -> int:
    for cid, info in CATALOG.items():
        amb = ",".join(f"P{n}" for n in info.ambients)
        tag = "theorem" if info.theorem else "control"
        line = f"{cid:<11} {amb:<9} {tag:<8} {info.title}"
        if info.note:
            line += f"  [{info.note}]"
        print(line)
    return 0


def cmd_verify(args) -> int:
    kw = dict(samples=args.samples)
    if args.case == "all":
        reports = run_all(args.seed, **kw)
    else:
        cid, n = _parse_case(args.case)
        reports = [run_case(cid, n, args.seed, **kw)]
    if args.format == "json":
        payload = [r.to_dict(args.timings) for r in reports]
        text = dumps(payload if args.case == "all" else payload[0])
    else:
        text = "\n\n".join(r.format(args.timings) for r in reports) + "\n"
        if args.case == "all":
            passed = sum(r.ok for r in reports)
            text += f"\n{passed}/{len(reports)} cases pass\n"
    _emit(text, args.out)
    return 0 if all(r.ok for r in reports) else 1


def cmd_chern(args) -> int:
    spec = parse_spec(args.spec)
    ch = chern_of(spec)
    total = spec.symbolic_chern()
    if args.format == "json":
        d = ch.to_dict()
        d["total"] = format_chow(total)
        sys.stdout.write(dumps(d))
    else:
        print(f"rank {ch.rank}")
        print(f"c(E) = {format_chow(total)}")
        print("chern " + " ".join(f"c{i + 1}={v}" for i, v in enumerate(ch.as_tuple())))
    return 0


def cmd_cohom(args) -> int:
    pres = expand_to_presentation(parse_spec(args.spec))
    table = cohomology_table(pres, _parse_twists(args.twists))
    if args.format == "json":
        sys.stdout.write(dumps(table.to_dict()))
    else:
        print(table.format())
    return 0


def cmd_restrict(args) -> int:
    pres = expand_to_presentation(parse_spec(args.spec))
    parts = args.line.split(";")
    if len(parts) != 2:
        raise UsageError("--line expects 'P;Q', e.g. '1:0:0;0:1:0'")
    P, Q = (parse_point(p) for p in parts)
    if len(P) != pres.nvars or len(Q) != pres.nvars:
        raise UsageError(f"points need {pres.nvars} coordinates")
    st = restrict_to_line(pres, P, Q)
    print(f"{st.a} {st.b}")
    return 0


def cmd_plucker(args) -> int:
    pres = expand_to_presentation(parse_spec(args.spec))
    _emit(plucker_map(pres, args.seed).serialize(), args.out)
    return 0


def cmd_obstructions(args) -> int:
    entries = run_obstructions()
    if args.format == "json":
        payload = {
            "checks": [e.to_dict() for e in entries],
            "chi_three_halves": [chi_three_halves_oracle(d).to_dict() for d in (2, 4, 6)],
            "unions_d6_chi3": [str(c) for c in enumerate_unions()],
            "unions_d6_chi3_omega": [str(c) for c in omega_filter(enumerate_unions())],
            "abc_triples": sorted(abc_triples()),
            "min_pa_reduced": {str(d): min_pa_reduced(d) for d in range(1, 7)},
            "chi_contradiction": chi_contradiction_omega().to_dict(),
        }
        sys.stdout.write(dumps(payload))
    else:
        for e in entries:
            line = f"[{'pass' if e.ok else 'fail'}] {e.name}: {e.to_dict()['computed']}"
            if e.detail:
                line += f" ({e.detail})"
            print(line)
    return 0 if all(e.ok for e in entries) else 1


def cmd_stratify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    rep = stratify(args.samples, args.seed)
    if args.format == "json":
        sys.stdout.write(dumps(rep.to_dict()))
    else:
        print(rep.format())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vglab", description="Rank-2 bundles on P^n and their maps to Grassmannians of lines.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=["text", "json"], default="text")

    sp = sub.add_parser("list", help="catalogued cases")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("verify", help="run the verification pipeline")
    sp.add_argument("case", help="case id such as 4a or 1b@P3, or 'all'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=200, help="base-point-freeness sample count")
    sp.add_argument("--out")
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("chern", help="Chern data of a bundle spec")
    sp.add_argument("spec")
    fmt(sp)
    sp.set_defaults(func=cmd_chern)

    sp = sub.add_parser("cohom", help="cohomology table")
    sp.add_argument("spec")
    sp.add_argument("--twists", default="-5..5")
    fmt(sp)
    sp.set_defaults(func=cmd_cohom)

    sp = sub.add_parser("restrict", help="splitting type on a line")
    sp.add_argument("spec")
    sp.add_argument("--line", required=True, help="two points 'P;Q', coordinates separated by ':'")
    sp.set_defaults(func=cmd_restrict)

    sp = sub.add_parser("plucker", help="Pluecker coordinates of the induced map")
    sp.add_argument("spec")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_plucker)

    sp = sub.add_parser("obstructions", help="curve and Chern-class oracles")
    fmt(sp)
    sp.set_defaults(func=cmd_obstructions)

    sp = sub.add_parser("stratify", help="sample the M(3,6) resolution types")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    fmt(sp)
    sp.set_defaults(func=cmd_stratify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--twists -2..2" would otherwise read -2..2 as an option
    for i in range(len(argv) - 1):
        if argv[i] == "--twists" and argv[i + 1].startswith("-"):
            argv[i : i + 2] = [f"--twists={argv[i + 1]}"]
            break
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"vglab: error: {exc}", file=sys.stderr)
        return 2
    except VGLabError as exc:
        print(f"vglab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
