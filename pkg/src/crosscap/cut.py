"""Cutting schemas along disjoint simple curves and what the pieces prove.

Cutting is exact re-cellulation: within each face the (pairwise
non-crossing) chords subdivide the polygon; each chord becomes two unpaired
boundary copies; original edges are subdivided at the cut points and their
pairings are inherited piecewise through the parameter maps.  Everything
else in this module (essentiality, peripherality, annulus certificates,
orientability after cutting) is cut-and-classify on top of that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .curve import (
    Curve,
    CurveError,
    crossings,
    crosscap_passes,
    is_simple,
    require_valid,
    sidedness,
    ONE_SIDED,
    TWO_SIDED,
    _positions_by_occurrence,
)
from .schema import (
    FaceWord,
    Occ,
    SchemaError,
    SurfaceSchema,
    SurfaceType,
    boundary_cycles,
    classify_surface,
    connected_components,
    euler_characteristic,
    is_orientable,
)

COBOUND_ANNULUS = "cobound_annulus"
NO_ANNULUS = "no_annulus"


@dataclass(frozen=True)
class CutResult:
    """Cut schema plus the provenance of every boundary circle."""

    schema: SurfaceSchema
    components: tuple[SurfaceSchema, ...]
    component_types: tuple[SurfaceType, ...]
    # circle -> (component index, curve id or None, side index or None);
    # curve id None marks a re-segmented original boundary circle.
    circles: tuple[tuple[int, str | None, int | None], ...]

    def new_circles_in(self, comp: int) -> list[tuple[str, int]]:
        return [(cid, side) for c, cid, side in self.circles if c == comp and cid]

    def original_circles_in(self, comp: int) -> int:
        return sum(1 for c, cid, _ in self.circles if c == comp and cid is None)

    def circles_of_curve(self, curve_id: str) -> int:
        return sum(1 for _c, cid, _s in self.circles if cid == curve_id)


def _cut_points(
    s: SurfaceSchema, curves: Sequence[Curve]
) -> tuple[dict[Occ, list[tuple[Fraction, str, int]]], dict]:
    """Cut points per occurrence, sorted by position, plus endpoint index.

    Returns ``by_occ`` mapping occurrence -> [(pos, curve_id, chord_uid)],
    and the chord-uid table used to match the two endpoints of each chord.
    """
    by_occ: dict[Occ, list[tuple[Fraction, str, int]]] = {}
    chord_face: dict[int, str] = {}
    uid = 0
    for c in curves:
        for ch in c.chords:
            chord_face[uid] = ch.face_id
            for p in ch.endpoints:
                by_occ.setdefault(p.occ, []).append((p.pos, c.id, uid))
            uid += 1
    for occ in by_occ:
        by_occ[occ].sort(key=lambda e: e[0])
    return by_occ, chord_face


def _piece_labels(
    s: SurfaceSchema, by_occ: Mapping[Occ, list]
) -> dict[tuple[Occ, int], str]:
    """Name the sub-edges: original label + segment index along the first
    occurrence's traversal; the partner's partition mirrors through the
    parameter map."""
    names: dict[tuple[Occ, int], str] = {}
    for label in s.labels:
        occs = s.occurrences(label)
        o1 = min(occs)
        k = len(by_occ.get(o1, ()))
        fresh = lambda i: label if k == 0 else f"{label}.{i}"
        for i in range(k + 1):
            names[(o1, i)] = fresh(i)
        if len(occs) == 2:
            o2 = occs[0] if occs[1] == o1 else occs[1]
            k2 = len(by_occ.get(o2, ()))
            if k2 != k:
                raise CurveError(
                    f"cut points on {label!r} do not mirror: {k} vs {k2}"
                )
            mirrored = s.flag(label) == "reversed"
            for j in range(k + 1):
                names[(o2, j)] = fresh(k - j if mirrored else j)
    return names


def _check_mirrors(s: SurfaceSchema, by_occ: Mapping[Occ, list]):
    for label, (o1, o2) in s.pairing.items():
        p1 = [e[0] for e in by_occ.get(o1, ())]
        p2 = [e[0] for e in by_occ.get(o2, ())]
        mapped = sorted(s.map_position(o1, p) for p in p1)
        if mapped != sorted(p2):
            raise CurveError(f"cut points on {label!r} inconsistent across pairing")


def cut_along(s: SurfaceSchema, curves: Iterable[Curve]) -> CutResult:
    """Cut the schema along a set of pairwise disjoint simple curves."""
    curves = sorted(curves, key=lambda c: c.id)
    if not curves:
        raise CurveError("cut_along needs at least one curve")
    for c in curves:
        require_valid(s, c)
        if not is_simple(c):
            raise CurveError(f"curve {c.id!r} is not simple")
    _positions_by_occurrence(s, curves)
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            n = crossings(curves[i], curves[j])
            if n:
                raise CurveError(
                    f"curves {curves[i].id!r} and {curves[j].id!r} cross {n} times"
                )

    by_occ, chord_face = _cut_points(s, curves)
    _check_mirrors(s, by_occ)
    piece = _piece_labels(s, by_occ)
    copy_curve: dict[str, str] = {}

    new_faces: list[FaceWord] = []
    for face in s.faces:
        # Boundary item list: sub-edge pieces interleaved with cut points.
        items: list[tuple] = []
        for idx, (label, direction) in enumerate(face.word):
            occ = (face.face_id, idx)
            pts = by_occ.get(occ, [])
            items.append(("edge", piece[(occ, 0)], direction))
            for i, (_pos, curve_id, uid) in enumerate(pts):
                items.append(("cut", curve_id, uid))
                items.append(("edge", piece[(occ, i + 1)], direction))

        # Split into regions at non-crossing chords, innermost first.
        regions = [items]
        final: list[list[tuple]] = []
        while regions:
            region = regions.pop()
            cut_positions = [i for i, it in enumerate(region) if it[0] == "cut"]
            if not cut_positions:
                final.append(region)
                continue
            p = cut_positions[0]
            curve_id, uid = region[p][1], region[p][2]
            q = next(
                i for i in cut_positions[1:] if region[i][2] == uid
            )
            copy_a = f"cut:{uid}:a"
            copy_b = f"cut:{uid}:b"
            copy_curve[copy_a] = curve_id
            copy_curve[copy_b] = curve_id
            inner = region[p + 1 : q] + [("edge", copy_a, "+")]
            outer = region[q + 1 :] + region[:p] + [("edge", copy_b, "+")]
            regions.append(outer)
            regions.append(inner)
        final.sort(key=lambda r: min(it[1] for it in r if it[0] == "edge"))
        for n, region in enumerate(final):
            word = tuple((label, d) for kind, label, d in region)
            fid = face.face_id if len(final) == 1 else f"{face.face_id}.{n}"
            new_faces.append(FaceWord(fid, word))

    cut_schema = SurfaceSchema(new_faces)
    if euler_characteristic(cut_schema) != euler_characteristic(s):
        raise SchemaError("cutting changed the Euler characteristic")  # pragma: no cover

    components = connected_components(cut_schema)
    types = tuple(classify_surface(comp) for comp in components)
    comp_of_face = {
        f.face_id: i for i, comp in enumerate(components) for f in comp.faces
    }

    circles = []
    per_curve: dict[str, int] = {}
    for cycle in boundary_cycles(cut_schema):
        comp = comp_of_face[cycle[0][0]]
        owners = {
            copy_curve[lbl]
            for occ in cycle
            for lbl in [cut_schema.occ_edge(occ)[0]]
            if lbl in copy_curve
        }
        if not owners:
            circles.append((comp, None, None))
            continue
        if len(owners) > 1:  # pragma: no cover - disjointness makes this impossible
            raise SchemaError(f"boundary circle mixes curves {owners}")
        cid = owners.pop()
        side = per_curve.get(cid, 0)
        per_curve[cid] = side + 1
        circles.append((comp, cid, side))

    return CutResult(cut_schema, tuple(components), types, tuple(circles))


def cut_classification(s: SurfaceSchema, c: Curve) -> list[SurfaceType]:
    """Cut along one simple curve and classify every component."""
    return list(cut_along(s, [c]).component_types)


@dataclass(frozen=True)
class EssentialityResult:
    essential: bool
    method: str
    detail: str | None = None

    def __bool__(self):
        return self.essential


def is_essential(s: SurfaceSchema, c: Curve) -> EssentialityResult:
    """Essential = not null-homotopic, not the boundary of a Möbius band.

    One-sided curves are essential outright.  A curve through some cross-cap
    exactly once meets that cap's core once mod 2, which certifies
    essentiality (the Möbius-band boundary and the null curve both have even
    intersection with everything).  Otherwise cut and look for a disc or
    Möbius component bounded by one side-copy.
    """
    require_valid(s, c)
    if not is_simple(c):
        raise CurveError(f"essentiality of non-simple curve {c.id!r}")
    if sidedness(s, c) == ONE_SIDED:
        return EssentialityResult(True, "one_sided")
    passes = crosscap_passes(s, c)
    once = sorted(label for label, n in passes.items() if n == 1)
    if once:
        return EssentialityResult(True, "crosscap_once", once[0])
    result = cut_along(s, [c])
    for comp_idx, t in enumerate(result.component_types):
        new = result.new_circles_in(comp_idx)
        originals = result.original_circles_in(comp_idx)
        if len(new) == 1 and originals == 0:
            if t == SurfaceType(True, 0, 1):
                return EssentialityResult(False, "cut", "bounds a disc")
            if t == SurfaceType(False, 1, 1):
                return EssentialityResult(False, "cut", "bounds a Möbius band")
    return EssentialityResult(True, "cut")


def is_peripheral(s: SurfaceSchema, c: Curve) -> bool:
    """Homotopic to a boundary component?  One-sided curves never are."""
    require_valid(s, c)
    if not is_simple(c):
        raise CurveError(f"peripherality of non-simple curve {c.id!r}")
    if sidedness(s, c) == ONE_SIDED:
        return False
    result = cut_along(s, [c])
    for comp_idx, t in enumerate(result.component_types):
        if t != SurfaceType(True, 0, 2):
            continue
        new = result.new_circles_in(comp_idx)
        originals = result.original_circles_in(comp_idx)
        if len(new) == 1 and originals == 1:
            return True
    return False


@dataclass(frozen=True)
class AnnulusCertificate:
    status: str  # COBOUND_ANNULUS | NO_ANNULUS
    witness: SurfaceType | None


def annulus_certificate(s: SurfaceSchema, a: Curve, b: Curve) -> AnnulusCertificate:
    """Do two disjoint simple curves cobound an embedded annulus?

    Homotopic disjoint curves cobound an annulus, which shows up after
    cutting as an S_{0,2} component bounded by one side-copy of each; its
    absence therefore certifies non-homotopy.  The witness reports the type
    of the component the pair actually cobounds (e.g. N_{1,2} when a
    cross-cap separates two parallel shifts).  Note the converse direction
    is only valid for two-sided pairs: the two cores of the Klein bottle
    cobound an annulus without being homotopic.
    """
    if crossings(a, b) != 0:
        raise CurveError(f"{a.id!r} and {b.id!r} are not disjoint")
    result = cut_along(s, [a, b])
    witness = None
    for comp_idx, t in enumerate(result.component_types):
        new = result.new_circles_in(comp_idx)
        ids = sorted(cid for cid, _ in new)
        if ids != sorted((a.id, b.id)):
            continue
        if witness is None:
            witness = t
        if result.original_circles_in(comp_idx) == 0 and t == SurfaceType(True, 0, 2):
            return AnnulusCertificate(COBOUND_ANNULUS, t)
    return AnnulusCertificate(NO_ANNULUS, witness)


def orientable_after_cut(s: SurfaceSchema, c: Curve) -> bool:
    """Is every component orientable after cutting along the curve?"""
    return all(is_orientable(comp) for comp in cut_along(s, [c]).components)


def cut_result_to_json(r: CutResult) -> dict:
    from .schema import schema_to_json

    return {
        "schema": schema_to_json(r.schema),
        "components": [str(t) for t in r.component_types],
        "provenance": [
            {"component": comp, "curve": cid, "side": side}
            for comp, cid, side in r.circles
        ],
    }
