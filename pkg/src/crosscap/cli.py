"""Command-line front end.

Commands: ``classify``, ``build``, ``verify``, ``cut``, ``table``,
``export-svg``.  Exit codes: 0 success/verified, 1 verification failed,
2 bad input or unsupported parameters.  All outputs are deterministic for
identical inputs and tool version.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .construct import (
    ConstructionError,
    ConstructionState,
    LevelTag,
    build_theorem_a,
    build_theorem_b,
    predicted_sizes,
    theorem_a_bound,
    theorem_a_default_k,
    theorem_b_bound,
    theorem_b_default_k,
)
from .curve import (
    CurveError,
    CurveFamily,
    curve_from_json,
    curve_to_json,
    family_from_json,
    family_to_json,
)
from .cut import cut_along, cut_result_to_json
from .schema import SchemaError, classify_surface, load_schema, schema_to_json
from .verify import report_to_json, verify_one_system, verify_tagged_family


def _die(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- family files -------------------------------------------------------------


def state_to_doc(st: ConstructionState, params: dict) -> dict:
    doc = family_to_json(st.family)
    doc["aux"] = [curve_to_json(c) for c in st.aux_curves]
    doc["params"] = params
    return doc


def load_family_doc(text: str) -> tuple[CurveFamily, list, dict]:
    doc = json.loads(text)
    fam = family_from_json(doc, tag_decoder=LevelTag.from_json)
    aux = [curve_from_json(cdoc) for cdoc in doc.get("aux", [])]
    params = doc.get("params", {})
    return fam, aux, params


# -- commands ------------------------------------------------------------------


def cmd_classify(args) -> int:
    try:
        schema = load_schema(_read(args.path))
        t = classify_surface(schema)
    except (OSError, SchemaError, json.JSONDecodeError, KeyError) as exc:
        return _die(str(exc))
    print(t)
    return 0


def cmd_build(args) -> int:
    try:
        if args.theorem == "a":
            st = build_theorem_a(args.g, args.b, args.k)
            k = args.k if args.k is not None else theorem_a_default_k(args.g)
            bound = theorem_a_bound(args.g, args.b)
        else:
            if args.b:
                return _die("theorem B families are built on closed surfaces (b=0)")
            st = build_theorem_b(args.g, args.k)
            k = args.k if args.k is not None else theorem_b_default_k(args.g)
            bound = theorem_b_bound(args.g)
    except ConstructionError as exc:
        return _die(str(exc))
    params = {"theorem": args.theorem, "g": args.g, "b": args.b, "k": k}
    doc = state_to_doc(st, params)
    text = json.dumps(doc, indent=2)
    predicted = predicted_sizes(args.g, args.b, k)
    size_key = "size_Gamma" if args.theorem == "a" else "size_Omega"
    manifest = {
        "command": "build",
        "version": __version__,
        "params": params,
        "surface": str(classify_surface(st.schema)),
        "predicted": predicted[size_key],
        "actual": len(st.family),
        "bound": str(bound),
        "schema_sha256": _sha256(json.dumps(schema_to_json(st.schema))),
        "family_sha256": _sha256(text),
    }
    if args.out:
        _write(args.out, text)
        _write(args.out + ".manifest.json", json.dumps(manifest, indent=2))
    print(
        f"theorem {args.theorem} g={args.g} b={args.b} k={k}: "
        f"{len(st.family)} curves on {manifest['surface']} "
        f"(predicted {manifest['predicted']}, bound {bound})"
    )
    return 0


def cmd_verify(args) -> int:
    try:
        fam, aux, params = load_family_doc(_read(args.path))
    except (OSError, json.JSONDecodeError, KeyError, CurveError, SchemaError) as exc:
        return _die(str(exc))
    try:
        if fam.tags and all(c.id in fam.tags for c in fam.curves):
            report = verify_tagged_family(fam, aux=aux, workers=args.workers)
        else:
            report = verify_one_system(fam, aux=aux, workers=args.workers)
    except (CurveError, SchemaError) as exc:
        return _die(str(exc))
    print(report_to_json(report))
    return 0 if report.is_1_system else 1


def cmd_cut(args) -> int:
    try:
        fam, _aux, _params = load_family_doc(_read(args.path))
        curve = fam.curve(args.curve_id)
        result = cut_along(fam.schema, [curve])
    except (OSError, json.JSONDecodeError, KeyError, CurveError, SchemaError) as exc:
        return _die(str(exc))
    for i, t in enumerate(result.component_types):
        news = result.new_circles_in(i)
        print(f"component {i}: {t}; new boundary circles: {news or 'none'}")
    if args.json:
        print(json.dumps(cut_result_to_json(result), indent=2))
    return 0


def cmd_table(args) -> int:
    rows = []
    for g in range(args.g_min, args.g_max + 1):
        try:
            if args.theorem == "a":
                k = theorem_a_default_k(g)
                st = build_theorem_a(g, args.b, k)
                bound = theorem_a_bound(g, args.b)
            else:
                k = theorem_b_default_k(g)
                st = build_theorem_b(g, k)
                bound = theorem_b_bound(g)
        except ConstructionError as exc:
            rows.append((g, "-", "-", "-", "-", f"unsupported: {exc}"))
            continue
        predicted = (
            predicted_sizes(g, args.b, k)["size_Gamma"]
            if args.theorem == "a"
            else predicted_sizes(g, args.b, k)["size_Omega"]
        )
        if args.counts_only:
            verified = "-"
        else:
            report = verify_tagged_family(
                st.family, aux=st.aux_curves, m=st.disc.m, workers=args.workers
            )
            verified = "yes" if report.is_1_system else "NO"
        ok = Fraction(len(st.family)) >= bound
        rows.append((g, k, predicted, len(st.family), f"{bound} {'ok' if ok else 'X'}", verified))
    header = ("g", "k", "predicted", "built", "bound", "verified")
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(6)]
    for row in [header] + rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)))
    return 0


# -- svg export ----------------------------------------------------------------


def _convex_points(n: int, cx: int, cy: int, r: int) -> list[tuple[int, int]]:
    """n integer points in convex position on a circle of radius ~r."""
    pts = []
    for i in range(n):
        t = Fraction(4 * (2 * i - (n - 1)), n + 1)
        den = 1 + t * t
        x = cx + round(r * (1 - t * t) / den)
        y = cy + round(r * 2 * t / den)
        pts.append((x, y))
    return pts


def _palette(i: int) -> str:
    colors = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
        "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    ]
    return colors[i % len(colors)]


def export_svg(fam: CurveFamily) -> str:
    """Deterministic panel-per-face drawing of a family.

    Faces are convex polygons; chords are straight segments; cross-cap
    edges are marked with a circled x, free edges drawn dashed.
    """
    schema = fam.schema
    caps = set(schema.crosscap_labels())
    free = set(schema.free_labels)
    panel, radius = 320, 130
    faces = list(schema.faces)
    cols = max(1, round(len(faces) ** 0.5))
    rows = (len(faces) + cols - 1) // cols
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols * panel}" '
        f'height="{rows * panel + 20}" font-family="monospace" font-size="11">'
    ]
    color = {c.id: _palette(i) for i, c in enumerate(fam.curves)}
    for fi, face in enumerate(faces):
        cx = (fi % cols) * panel + panel // 2
        cy = (fi // cols) * panel + panel // 2
        n = len(face.word)
        pts = _convex_points(n, cx, cy, radius)
        out.append(f'<text x="{cx - radius}" y="{cy - radius - 6}">{face.face_id}</text>')
        for i, (label, d) in enumerate(face.word):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % n]
            dash = ' stroke-dasharray="4 3"' if label in free else ""
            out.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="#333" stroke-width="1.2"{dash}/>'
            )
            mx, my = (x1 + x2) // 2, (y1 + y2) // 2
            if label in caps:
                out.append(
                    f'<circle cx="{mx}" cy="{my}" r="7" fill="none" stroke="#c00"/>'
                    f'<text x="{mx - 3}" y="{my + 4}" fill="#c00">x</text>'
                )
            out.append(f'<text x="{mx + 4}" y="{my - 4}" fill="#777">{label}{d}</text>')
        for c in fam.curves:
            for ch in c.chords:
                if ch.face_id != face.face_id:
                    continue
                coords = []
                for p in ch.endpoints:
                    i = p.occ[1]
                    x1, y1 = pts[i]
                    x2, y2 = pts[(i + 1) % n]
                    coords.append(
                        (
                            x1 + round(p.pos * (x2 - x1)),
                            y1 + round(p.pos * (y2 - y1)),
                        )
                    )
                (ax, ay), (bx, by) = coords
                out.append(
                    f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                    f'stroke="{color[c.id]}" stroke-width="1.5" opacity="0.8"/>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_export_svg(args) -> int:
    try:
        fam, _aux, _params = load_family_doc(_read(args.path))
        text = export_svg(fam)
    except (OSError, json.JSONDecodeError, KeyError, CurveError, SchemaError) as exc:
        return _die(str(exc))
    _write(args.out, text)
    print(f"wrote {args.out} ({len(text)} bytes)")
    return 0


# -- argument parsing -----------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crosscap",
        description="1-systems of curves on non-orientable surfaces: build, verify, cut.",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a schema file")
    c.add_argument("path")
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("build", help="build a theorem A/B family")
    b.add_argument("--theorem", choices=["a", "b"], required=True)
    b.add_argument("--g", type=int, required=True)
    b.add_argument("--b", type=int, default=0)
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a family file")
    v.add_argument("path")
    v.add_argument("--workers", type=int, default=os.cpu_count())
    v.set_defaults(func=cmd_verify)

    cu = sub.add_parser("cut", help="cut a family's schema along one curve")
    cu.add_argument("path")
    cu.add_argument("curve_id")
    cu.add_argument("--json", action="store_true")
    cu.set_defaults(func=cmd_cut)

    t = sub.add_parser("table", help="size/bound table over a genus range")
    t.add_argument("--theorem", choices=["a", "b"], required=True)
    t.add_argument("--g-min", type=int, required=True)
    t.add_argument("--g-max", type=int, required=True)
    t.add_argument("--b", type=int, default=0)
    t.add_argument("--counts-only", action="store_true")
    t.add_argument("--workers", type=int, default=os.cpu_count())
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("export-svg", help="render a family file to SVG")
    e.add_argument("path")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export_svg)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
