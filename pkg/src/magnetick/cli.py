"""Command-line front end: ``magnetick {irreps, coefficients, periodicity, ahss}``.

Every command builds one JSON-compatible report; the table format is
rendered from that same report, so the two never disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .ahss import run_ahss
from .coefficients import THEORY, coefficient_period, periodicity, point_coefficients, stabilizer
from .corep import MagneticRepRing, format_entry, wigner_construct
from .errors import MagnetickError, MatricesUnavailable, NotSelfAssociate, ParseError
from .groups import is_magnetic
from .inputs import load_assertions, load_complex, load_group, load_overrides, load_twist, parse_degrees


# ---------------------------------------------------------------------------
# reports


def _ring(G, twist):
    return stabilizer(G, range(G.order), twist).ring


def _a0_matrix(irrep, group) -> tuple:
    if irrep.ordinary:
        return None, None
    try:
        built = wigner_construct(irrep.plus, group)
    except (MatricesUnavailable, NotSelfAssociate):
        return None, None
    mat = built.matrices[group.a0]
    return [[format_entry(complex(z)) for z in row] for row in mat], format_entry(built.phase)


def irreps_report(G, twist=None) -> dict:
    ring: MagneticRepRing = _ring(G, twist)
    group = ring.group
    n_r, n_c, n_h = ring.counts
    rows = []
    for r in ring.irreps:
        mat, phase = _a0_matrix(r, group)
        rows.append({
            "name": r.name,
            "type": r.type.value if not r.ordinary else "ORDINARY",
            "field": "C" if r.ordinary else r.field,
            "dimension": r.dimension,
            "constituents": list(r.constituent_names),
            "indicator": r.indicator,
            "a0_matrix": mat,
            "phase": phase,
        })
    return {
        "command": "irreps",
        "order": G.order,
        "magnetic": is_magnetic(group),
        "twisted": twist is not None,
        "carrier_order": group.order,
        "a0": group.labels[group.a0] if is_magnetic(group) else None,
        "counts": {"R": n_r, "C": n_c, "H": n_h},
        "irreps": rows,
    }


def coefficients_report(G, twist=None, degrees=None) -> dict:
    ring = _ring(G, twist)
    period = coefficient_period(G, twist)
    if degrees is None:
        degrees = list(range(0, -period, -1))
    rows = []
    for t in degrees:
        row = point_coefficients(ring, t)
        rows.append({
            "t": t,
            "group": str(row.group),
            "generators": [f"{name}:{THEORY[f]}" for name, f, _ in row.tags],
            "summands": row.group.summand_text(),
        })
    n_r, n_c, n_h = ring.counts
    return {
        "command": "coefficients",
        "twisted": twist is not None,
        "counts": {"R": n_r, "C": n_c, "H": n_h},
        "period": period,
        "rows": rows,
    }


def periodicity_report(G) -> dict:
    info = periodicity(G)
    ring = _ring(G, None)
    rows4 = all(
        point_coefficients(ring, t).group.invariants == point_coefficients(ring, t - 4).group.invariants
        for t in range(0, -8, -1)
    )
    return {
        "command": "periodicity",
        "period": info["period"],
        "splits": info["splits"],
        "section": info["section"],
        "rows_4_periodic": rows4,
    }


def _page_dict(P) -> dict:
    entries = []
    for n, t in P.grid():
        g = P.entries[(n, t)]
        entries.append({"n": n, "t": t, "group": str(g), "generators": list(g.labels)})
    diffs = []
    for key in P.grid():
        d = P.differential(*key)
        if d is None or (d.source.ngens == 0 or d.target.ngens == 0):
            continue
        diffs.append({
            "from": list(key),
            "to": list(P.target(*key)),
            "matrix": d.matrix,
            "columns": list(d.source.labels),
            "rows": list(d.target.labels),
        })
    return {"r": P.r, "entries": entries, "differentials": diffs}


def ahss_report(G, X, twist=None, overrides=(), assertions=(), degrees=None, assume_zero=False) -> dict:
    result = run_ahss(X, G, twist, overrides, assertions, degrees, assume_zero)
    final = result.final
    return {
        "command": "ahss",
        "twisted": twist is not None,
        "period": final.period,
        "dimension": final.top,
        "pages": [_page_dict(P) for P in result.pages],
        "assumed_zero": result.assumed_zero,
        "k_groups": [r.to_dict() for r in result.reports],
        "overrides": [ov.to_dict() for ov in final.overrides],
        "assertions": [a.to_dict() for a in assertions],
    }


# ---------------------------------------------------------------------------
# table rendering


def _matrix_lines(mat, rows, cols) -> list:
    if not mat:
        return []
    width = max([len(str(x)) for r in mat for x in r] + [1])
    lines = ["    columns: " + ", ".join(cols)]
    for lab, r in zip(rows, mat):
        lines.append("    " + " ".join(str(x).rjust(width) for x in r) + f"   {lab}")
    return lines


def render_table(report: dict) -> str:
    cmd = report["command"]
    out = []
    if cmd == "irreps":
        c = report["counts"]
        head = "twisted irreps" if report["twisted"] else "irreps"
        out.append(f"{head}: n_R={c['R']} n_C={c['C']} n_H={c['H']}")
        out.append(f"{'name':<6} {'type':<13} {'dim':>3}  constituents")
        for r in report["irreps"]:
            out.append(f"{r['name']:<6} {r['type']:<13} {r['dimension']:>3}  {', '.join(r['constituents'])}")
            if r["a0_matrix"] is not None:
                rows = "; ".join(" ".join(x for x in row) for row in r["a0_matrix"])
                out.append(f"       M(a0) = [{rows}] K   (phase {r['phase']})")
    elif cmd == "coefficients":
        c = report["counts"]
        out.append(f"n_R={c['R']} n_C={c['C']} n_H={c['H']}  period {report['period']}")
        for row in report["rows"]:
            gens = ", ".join(row["generators"]) or "-"
            out.append(f"t={row['t']:>3}  {row['group']:<20} {gens}")
    elif cmd == "periodicity":
        out.append(f"period {report['period']}")
        if report["splits"]:
            out.append("pullback extension splits; section " + " ".join(report["section"]))
        else:
            out.append("pullback extension does not split")
        out.append(f"coefficient rows 4-periodic: {'yes' if report['rows_4_periodic'] else 'no'}")
    elif cmd == "ahss":
        out.append(f"period {report['period']}, dimension {report['dimension']}")
        for page in report["pages"]:
            out.append(f"E_{page['r']}")
            for e in page["entries"]:
                gens = ", ".join(e["generators"])
                out.append(f"  E^{{{e['n']},{e['t']}}} = {e['group']}" + (f"   <{gens}>" if gens else ""))
            for d in page["differentials"]:
                if any(any(r) for r in d["matrix"]):
                    out.append(f"  d_{page['r']} {tuple(d['from'])} -> {tuple(d['to'])}")
                    out.extend(_matrix_lines(d["matrix"], d["rows"], d["columns"]))
        for a in report["assumed_zero"]:
            out.append(f"assumed zero: d_{a['page']} from {tuple(a['from'])}")
        out.append("K-groups")
        for k in report["k_groups"]:
            pieces = ", ".join(f"E^{{{p['p']},{p['t']}}}={p['group']}" for p in k["pieces"])
            total = k["total"] if k["total"] is not None else "unresolved extension"
            flag = "  [ambiguous]" if k["ambiguous"] else ""
            out.append(f"  K^{k['degree']} = {total}{flag}   ({pieces})")
        for ov in report["overrides"]:
            out.append(f"override: d_{ov['page']} from {tuple(ov['from'])} = {ov['matrix']}")
        for a in report["assertions"]:
            what = "split" if a.get("split") else f"class {a['class']}"
            out.append(f"assertion: K^{a['degree']} join {a['join']} {what}")
    return "\n".join(out) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return render_table(report)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magnetick", description="Magnetic equivariant K-theory calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, twist=True):
        p.add_argument("--group", required=True, help="group JSON file")
        if twist:
            p.add_argument("--twist", help="central extension JSON file")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--max-order", type=int, help="bound on group orders (default 64)")

    common(sub.add_parser("irreps", help="classify irreducible corepresentations"))
    p = sub.add_parser("coefficients", help="K-groups of a point by degree")
    common(p)
    p.add_argument("--degrees", help="e.g. 0..-7")
    common(sub.add_parser("periodicity", help="4- or 8-periodicity test"), twist=False)
    p = sub.add_parser("ahss", help="Atiyah-Hirzebruch spectral sequence of a G-CW complex")
    common(p)
    p.add_argument("--complex", required=True, help="G-CW complex JSON file")
    p.add_argument("--overrides", help="higher differential overrides JSON file")
    p.add_argument("--assertions", help="extension assertions JSON file")
    p.add_argument("--degrees", help="e.g. 0..-3")
    p.add_argument("--assume-remaining-zero", action="store_true",
                   help="treat differentials without an override as zero")
    return parser


def run(args: argparse.Namespace) -> dict:
    if args.max_order is not None:
        os.environ["MAGNETICK_MAX_ORDER"] = str(args.max_order)
    G = load_group(args.group)
    twist = load_twist(args.twist, G) if getattr(args, "twist", None) else None
    if args.command == "irreps":
        return irreps_report(G, twist)
    if args.command == "coefficients":
        return coefficients_report(G, twist, parse_degrees(args.degrees))
    if args.command == "periodicity":
        if not is_magnetic(G):
            raise ParseError("periodicity needs a magnetic group (give phi)", path=args.group, line=None)
        return periodicity_report(G)
    X = load_complex(args.complex, G)
    overrides, assume = load_overrides(args.overrides) if args.overrides else ([], False)
    assertions = load_assertions(args.assertions) if args.assertions else []
    degrees = parse_degrees(args.degrees)
    if degrees is not None and not degrees:
        raise ParseError("empty degree range", path="--degrees", line=None)
    return ahss_report(G, X, twist, overrides, assertions, degrees, assume or args.assume_remaining_zero)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except MagnetickError as exc:
        sys.stdout.write(json.dumps(exc.to_dict(), indent=2, default=str) + "\n")
        return 1
    sys.stdout.write(render(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
