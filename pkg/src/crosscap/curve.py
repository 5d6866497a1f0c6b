"""Simple closed curves as cyclic chord sequences on a gluing schema.

A curve is stored as a cyclic sequence of chords, each crossing one face
between two boundary points.  Boundary points carry exact rational positions
along edge occurrences, so every question asked here (does a pair of chords
cross, how often do two curves meet, does a curve flip orientation) is
answered by exact integer arithmetic on the cyclic boundary order of each
face.  Two chords of a convex face cross if and only if their endpoints
alternate around the face boundary; that is the entire crossing kernel.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .schema import Occ, SurfaceSchema

ONE_SIDED = "one_sided"
TWO_SIDED = "two_sided"


class CurveError(ValueError):
    """Raised for structurally invalid curves."""


class GenericityError(CurveError):
    """Raised when positions collide on some edge occurrence."""


@dataclass(frozen=True, order=True, slots=True)
class CurvePoint:
    """A point on the boundary of a face: occurrence plus position.

    The position is measured along the occurrence's traversal direction and
    must stay strictly inside (0, 1): curves never pass through corners.
    """

    occ: Occ
    pos: Fraction

    def __post_init__(self):
        pos = self.pos
        if type(pos) is not Fraction:
            pos = Fraction(pos)
            object.__setattr__(self, "pos", pos)
        if not 0 < pos.numerator < pos.denominator:
            raise CurveError(f"position {pos} not in open (0,1) at {self.occ}")


@dataclass(frozen=True, slots=True)
class Chord:
    """An arc across one face joining two boundary points."""

    face_id: str
    endpoints: tuple[CurvePoint, CurvePoint]

    def __post_init__(self):
        if self.endpoints[0] == self.endpoints[1]:
            raise CurveError("chord endpoints coincide")


@dataclass(frozen=True)
class Curve:
    """A closed transverse curve: a cyclic sequence of chords."""

    id: str
    chords: tuple[Chord, ...]

    def __post_init__(self):
        if not self.chords:
            raise CurveError(f"curve {self.id!r} has no chords")

    def points(self) -> list[CurvePoint]:
        return [p for c in self.chords for p in c.endpoints]


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[str, ...]


def _check_point(s: SurfaceSchema, chord: Chord, p: CurvePoint, out: list[str]):
    face_id, idx = p.occ
    if face_id != chord.face_id:
        out.append(f"endpoint {p.occ} not on face {chord.face_id!r}")
        return
    face = s.face(face_id)
    if not 0 <= idx < len(face.word):
        out.append(f"occurrence index {idx} out of range on face {face_id!r}")


def validate_curve(s: SurfaceSchema, c: Curve) -> ValidityReport:
    """Endpoint membership, closure under the pairing maps, genericity."""
    violations: list[str] = []
    for chord in c.chords:
        for p in chord.endpoints:
            _check_point(s, chord, p, violations)
    if violations:
        return ValidityReport(False, tuple(violations))
    n = len(c.chords)
    for i in range(n):
        leave = c.chords[i].endpoints[1]
        enter = c.chords[(i + 1) % n].endpoints[0]
        partner = s.partner(leave.occ)
        if partner is None:
            violations.append(f"curve {c.id!r} ends on free edge at {leave.occ}")
            continue
        if partner != enter.occ:
            violations.append(
                f"chords {i}->{(i + 1) % n} of {c.id!r} not glued: "
                f"{leave.occ} pairs with {partner}, got {enter.occ}"
            )
            continue
        if s.map_position(leave.occ, leave.pos) != enter.pos:
            violations.append(
                f"position mismatch across {leave.occ}: "
                f"{leave.pos} maps to {s.map_position(leave.occ, leave.pos)}, "
                f"got {enter.pos}"
            )
    try:
        _positions_by_occurrence(s, [c])
    except GenericityError as exc:
        violations.append(str(exc))
    return ValidityReport(not violations, tuple(violations))


def require_valid(s: SurfaceSchema, c: Curve):
    report = validate_curve(s, c)
    if not report.valid:
        raise CurveError(f"invalid curve {c.id!r}: " + "; ".join(report.violations))


def _positions_by_occurrence(
    s: SurfaceSchema, curves: Iterable[Curve]
) -> dict[Occ, list[tuple[Fraction, str]]]:
    by_occ: dict[Occ, list[tuple[Fraction, str]]] = {}
    for c in curves:
        for p in c.points():
            by_occ.setdefault(p.occ, []).append((p.pos, c.id))
    # Sort on a float key first; exact Fraction comparison breaks float ties
    # (float rounding is monotone, so the order is exact).
    for occ, entries in by_occ.items():
        entries.sort(key=lambda e: (e[0].numerator / e[0].denominator, e[0]))
        for (p1, id1), (p2, id2) in zip(entries, entries[1:]):
            if p1.numerator == p2.numerator and p1.denominator == p2.denominator:
                raise GenericityError(
                    f"position {p1} on {occ} used by both {id1!r} and {id2!r}"
                )
    return by_occ


# -- crossing kernel -----------------------------------------------------


def _boundary_key(p: CurvePoint) -> tuple[int, Fraction]:
    return (p.occ[1], p.pos)


def _interleave(a: Chord, b: Chord) -> bool:
    """Do two chords of one face cross?  Endpoint alternation test."""
    a1, a2 = sorted(_boundary_key(p) for p in a.endpoints)
    b1, b2 = (_boundary_key(p) for p in b.endpoints)
    in1 = a1 < b1 < a2
    in2 = a1 < b2 < a2
    return in1 != in2


def _chords_by_face(c: Curve) -> dict[str, list[Chord]]:
    out: dict[str, list[Chord]] = {}
    for ch in c.chords:
        out.setdefault(ch.face_id, []).append(ch)
    return out


def is_simple(c: Curve) -> bool:
    """True iff no two chords of the curve interleave within any face."""
    for chords in _chords_by_face(c).values():
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                if _interleave(chords[i], chords[j]):
                    return False
    return True


def crossings(a: Curve, b: Curve) -> int:
    """Realized transverse crossing count of the two representatives.

    This upper-bounds the geometric intersection number; its parity is a
    homotopy invariant of the pair.
    """
    if a.id == b.id:
        raise CurveError("crossings needs two distinct curves")
    count = 0
    by_face_b = _chords_by_face(b)
    for face_id, chords_a in _chords_by_face(a).items():
        for ca in chords_a:
            for cb in by_face_b.get(face_id, ()):
                if _interleave(ca, cb):
                    count += 1
    return count


def mod2_intersection(a: Curve, b: Curve) -> int:
    return crossings(a, b) % 2


def sidedness(s: SurfaceSchema, c: Curve) -> str:
    """one_sided iff the curve crosses an odd number of reversing gluings.

    Each transition between consecutive chords traverses one edge pairing;
    same-flag (cross-cap style) pairings flip a transported normal frame.
    """
    if not is_simple(c):
        raise CurveError(f"sidedness of non-simple curve {c.id!r}")
    flips = 0
    for chord in c.chords:
        leave = chord.endpoints[1]
        label = s.occ_edge(leave.occ)[0]
        if s.is_free(label):
            raise CurveError(f"curve {c.id!r} stops on free edge {label!r}")
        if s.is_orientation_reversing(label):
            flips += 1
    return ONE_SIDED if flips % 2 else TWO_SIDED


def crosscap_passes(s: SurfaceSchema, c: Curve) -> dict[str, int]:
    """Pass count per cross-cap label (same-direction self-pairings).

    Every pass contributes one endpoint on each of the label's two
    occurrences, so the count is endpoint hits over two.
    """
    hits = {label: 0 for label in s.crosscap_labels()}
    for p in c.points():
        label = s.occ_edge(p.occ)[0]
        if label in hits:
            hits[label] += 1
    for label, h in hits.items():
        if h % 2:
            raise CurveError(f"odd endpoint count {h} on cross-cap {label!r}")
    return {label: h // 2 for label, h in hits.items()}


def crosscap_parity_profile(s: SurfaceSchema, c: Curve) -> tuple[int, ...]:
    """Mod-2 pass vector over the schema's cross-caps, in label order.

    Each pass meets the cap's core curve once, so this vector is a free
    homotopy invariant: curves with different profiles are non-homotopic.
    """
    passes = crosscap_passes(s, c)
    return tuple(passes[label] % 2 for label in s.crosscap_labels())


# -- curve family --------------------------------------------------------


class CurveFamily:
    """Curves sharing one schema, jointly generic, optionally tagged."""

    __slots__ = ("schema", "curves", "tags")

    def __init__(
        self,
        schema: SurfaceSchema,
        curves: Sequence[Curve],
        tags: Mapping[str, Any] | None = None,
        check: bool = True,
    ):
        curves = tuple(curves)
        ids = [c.id for c in curves]
        if len(set(ids)) != len(ids):
            raise CurveError("duplicate curve ids in family")
        if check:
            for c in curves:
                require_valid(schema, c)
            _positions_by_occurrence(schema, curves)
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "tags", dict(tags) if tags else {})

    def __setattr__(self, *a):  # pragma: no cover - guard rail
        raise AttributeError("CurveFamily is immutable")

    def __len__(self):
        return len(self.curves)

    def curve(self, curve_id: str) -> Curve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise CurveError(f"no curve {curve_id!r} in family")

    def tag(self, curve_id: str):
        return self.tags.get(curve_id)


# -- common hand-built curves --------------------------------------------


def _fresh_positions(pos: Fraction | None, default: Fraction) -> Fraction:
    return Fraction(pos) if pos is not None else default


def core_curve(
    s: SurfaceSchema, cap_label: str, pos: Fraction | None = None, curve_id: str | None = None
) -> Curve:
    """Core curve of a cross-cap whose two occurrences share a face.

    One chord between the two occurrences of the label at equal positions;
    the same-flag pairing closes it up immediately.
    """
    if cap_label not in s.crosscap_labels():
        raise CurveError(f"{cap_label!r} is not a cross-cap label")
    o1, o2 = s.pairing[cap_label]
    if o1[0] != o2[0]:
        raise CurveError(f"cross-cap {cap_label!r} spans two faces; no single-chord core")
    t = _fresh_positions(pos, Fraction(1, 2))
    chord = Chord(o1[0], (CurvePoint(o2, t), CurvePoint(o1, t)))
    return Curve(curve_id or f"core-{cap_label}", (chord,))


def cap_chain_curve(
    s: SurfaceSchema,
    cap_labels: Sequence[str],
    positions: Sequence[Fraction] | None = None,
    curve_id: str | None = None,
) -> Curve:
    """Curve passing once through each listed cross-cap, in order.

    On the standard ``x1 x1 x2 x2 ...`` words the chords hug the polygon
    corners, so any cap order yields a closed curve; simplicity depends on
    the order and is the caller's concern.
    """
    if not cap_labels:
        raise CurveError("need at least one cap")
    caps = list(cap_labels)
    if positions is None:
        positions = [Fraction(1, 2)] * len(caps)
    pts: list[tuple[CurvePoint, CurvePoint]] = []
    for label, t in zip(caps, positions):
        if label not in s.crosscap_labels():
            raise CurveError(f"{label!r} is not a cross-cap label")
        o1, o2 = s.pairing[label]
        t = Fraction(t)
        # Enter at o1, leave from o2: the same-flag map carries t to t.
        pts.append((CurvePoint(o1, t), CurvePoint(o2, t)))
    chords = []
    n = len(caps)
    for i in range(n):
        leave = pts[i][1]
        enter = pts[(i + 1) % n][0]
        # The chord lives in the face containing both boundary points.
        if leave.occ[0] != enter.occ[0]:
            raise CurveError("consecutive caps on different faces; routing needed")
        chords.append(Chord(leave.occ[0], (leave, enter)))
    return Curve(curve_id or "chain-" + "-".join(caps), tuple(chords))


# -- serialization -------------------------------------------------------


def _pos_str(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def _pos_from_str(text: str) -> Fraction:
    num, den = text.split("/")
    return Fraction(int(num), int(den))


def point_to_json(p: CurvePoint) -> dict:
    return {"face": p.occ[0], "index": p.occ[1], "pos": _pos_str(p.pos)}


def point_from_json(doc: dict) -> CurvePoint:
    return CurvePoint((str(doc["face"]), int(doc["index"])), _pos_from_str(doc["pos"]))


def curve_to_json(c: Curve) -> dict:
    return {
        "id": c.id,
        "chords": [
            {
                "face": ch.face_id,
                "from": point_to_json(ch.endpoints[0]),
                "to": point_to_json(ch.endpoints[1]),
            }
            for ch in c.chords
        ],
    }


def curve_from_json(doc: dict) -> Curve:
    chords = tuple(
        Chord(
            str(ch["face"]),
            (point_from_json(ch["from"]), point_from_json(ch["to"])),
        )
        for ch in doc["chords"]
    )
    return Curve(str(doc["id"]), chords)


def family_to_json(fam: CurveFamily) -> dict:
    from .schema import schema_to_json

    curves = []
    for c in fam.curves:
        doc = curve_to_json(c)
        tag = fam.tags.get(c.id)
        if tag is not None:
            doc["tag"] = dataclasses.asdict(tag) if dataclasses.is_dataclass(tag) else dict(tag)
        curves.append(doc)
    return {"schema": schema_to_json(fam.schema), "curves": curves}


def family_from_json(doc: dict, tag_decoder=None, check: bool = True) -> CurveFamily:
    from .schema import schema_from_json

    schema = schema_from_json(doc["schema"])
    curves = []
    tags = {}
    for cdoc in doc["curves"]:
        c = curve_from_json(cdoc)
        curves.append(c)
        if "tag" in cdoc:
            tags[c.id] = tag_decoder(cdoc["tag"]) if tag_decoder else cdoc["tag"]
    return CurveFamily(schema, curves, tags=tags, check=check)


def dump_family(fam: CurveFamily) -> str:
    return json.dumps(family_to_json(fam), indent=2)


def load_family(text: str, tag_decoder=None, check: bool = True) -> CurveFamily:
    return family_from_json(json.loads(text), tag_decoder=tag_decoder, check=check)
