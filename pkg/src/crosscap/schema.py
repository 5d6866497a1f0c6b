"""Compact surfaces as polygon gluing schemas.

A surface is described by a set of polygonal faces, each carrying a cyclic
word of directed edge occurrences, together with the pairing of edge labels
that occur twice.  Labels occurring once are free (boundary) edges.  All
classification invariants (Euler characteristic, orientability, boundary
count, genus) are computed by exact combinatorics; there is no geometry and
no floating point anywhere in this module.

Conventions
-----------
* An occurrence is addressed as ``(face_id, index)`` into the face word.
* Each occurrence parameterizes its edge by ``t in (0, 1)`` measured along
  the direction the face word traverses it.
* A pairing identifies the two occurrences of a label.  Its ``flag`` records
  the parameter map between the two traversals: ``"reversed"`` means
  ``t -> 1 - t`` (the occurrences run against each other along the glued
  edge, an orientation-preserving gluing) and ``"same"`` means ``t -> t``
  (both run the same way, an orientation-reversing gluing -- the cross-cap
  pattern ``x x``).  The flag is determined by the two direction bits and is
  validated against them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

FORWARD = "+"
BACKWARD = "-"

SAME = "same"
REVERSED = "reversed"

# An occurrence of an edge inside a face word.
Occ = tuple[str, int]


class SchemaError(ValueError):
    """Raised when an operation receives a structurally invalid schema."""


@dataclass(frozen=True)
class FaceWord:
    """One polygonal face: an id plus its cyclic boundary word."""

    face_id: str
    word: tuple[tuple[str, str], ...]  # (edge label, "+" | "-")

    def __post_init__(self):
        if len(self.word) < 1:
            raise SchemaError(f"face {self.face_id!r} has an empty word")
        for label, direction in self.word:
            if direction not in (FORWARD, BACKWARD):
                raise SchemaError(
                    f"face {self.face_id!r}: bad direction {direction!r} on {label!r}"
                )

    def __len__(self):
        return len(self.word)


@dataclass(frozen=True)
class SurfaceType:
    """Classification of a compact connected surface."""

    orientable: bool
    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise SchemaError(f"illegal surface type {self}")
        if not self.orientable and self.genus < 1:
            raise SchemaError("non-orientable surfaces need genus >= 1")

    @property
    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary
        return 2 - self.genus - self.boundary

    def __str__(self):
        kind = "orientable" if self.orientable else "non-orientable"
        sym = "k" if self.orientable else "g"
        return f"{kind} {sym}={self.genus} b={self.boundary}"


class SurfaceSchema:
    """A set of faces plus the induced pairing of doubly-occurring labels.

    The pairing is derived from the face words: a label occurring twice is
    interior, once is a boundary edge, anything else is invalid.  Instances
    are immutable; all operations are module-level pure functions.
    """

    __slots__ = ("faces", "_face_by_id", "_occurrences", "pairing", "_flags")

    def __init__(self, faces: Sequence[FaceWord], flags: Mapping[str, str] | None = None):
        faces = tuple(faces)
        seen = set()
        for f in faces:
            if f.face_id in seen:
                raise SchemaError(f"duplicate face id {f.face_id!r}")
            seen.add(f.face_id)
        occurrences: dict[str, list[Occ]] = {}
        for f in faces:
            for i, (label, _d) in enumerate(f.word):
                occurrences.setdefault(label, []).append((f.face_id, i))
        for label, occs in occurrences.items():
            if len(occs) > 2:
                raise SchemaError(f"label {label!r} occurs {len(occs)} times")
        pairing: dict[str, tuple[Occ, Occ]] = {}
        derived_flags: dict[str, str] = {}
        by_id = {f.face_id: f for f in faces}
        for label, occs in sorted(occurrences.items()):
            if len(occs) != 2:
                continue
            o1, o2 = sorted(occs)
            d1 = by_id[o1[0]].word[o1[1]][1]
            d2 = by_id[o2[0]].word[o2[1]][1]
            pairing[label] = (o1, o2)
            derived_flags[label] = SAME if d1 == d2 else REVERSED
        if flags is not None:
            for label, flag in flags.items():
                if label not in derived_flags:
                    raise SchemaError(f"flag given for non-interior label {label!r}")
                if flag != derived_flags[label]:
                    raise SchemaError(
                        f"label {label!r}: flag {flag!r} inconsistent with "
                        f"directions (expected {derived_flags[label]!r})"
                    )
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "_face_by_id", by_id)
        object.__setattr__(self, "_occurrences", occurrences)
        object.__setattr__(self, "pairing", pairing)
        object.__setattr__(self, "_flags", derived_flags)

    def __setattr__(self, *a):  # pragma: no cover - guard rail
        raise AttributeError("SurfaceSchema is immutable")

    # -- basic queries -------------------------------------------------

    def face(self, face_id: str) -> FaceWord:
        try:
            return self._face_by_id[face_id]
        except KeyError:
            raise SchemaError(f"no face {face_id!r}") from None

    @property
    def face_ids(self) -> tuple[str, ...]:
        return tuple(f.face_id for f in self.faces)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(self._occurrences))

    @property
    def interior_labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.pairing))

    @property
    def free_labels(self) -> tuple[str, ...]:
        return tuple(sorted(l for l, o in self._occurrences.items() if len(o) == 1))

    def occurrences(self, label: str) -> tuple[Occ, ...]:
        return tuple(self._occurrences[label])

    def occ_edge(self, occ: Occ) -> tuple[str, str]:
        """(label, direction) at an occurrence."""
        face = self.face(occ[0])
        if not 0 <= occ[1] < len(face.word):
            raise SchemaError(f"occurrence {occ} out of range")
        return face.word[occ[1]]

    def flag(self, label: str) -> str:
        return self._flags[label]

    def is_free(self, label: str) -> bool:
        return label not in self.pairing

    def partner(self, occ: Occ) -> Occ | None:
        """The other occurrence glued to ``occ``, or None on a free edge."""
        label = self.occ_edge(occ)[0]
        pair = self.pairing.get(label)
        if pair is None:
            return None
        return pair[1] if pair[0] == occ else pair[0]

    def map_position(self, occ: Occ, pos):
        """Carry a parameter on ``occ`` through the gluing to the partner."""
        from fractions import Fraction

        label = self.occ_edge(occ)[0]
        if self.is_free(label):
            raise SchemaError(f"edge {label!r} is free, nothing to map through")
        if self._flags[label] == SAME:
            return pos
        if type(pos) is Fraction:
            # 1 - n/d with gcd(d - n, d) = gcd(n, d) = 1 already reduced.
            return Fraction(pos.denominator - pos.numerator, pos.denominator)
        return 1 - pos

    def is_orientation_reversing(self, label: str) -> bool:
        """True for same-direction (cross-cap style) gluings."""
        return self._flags[label] == SAME

    def crosscap_labels(self) -> tuple[str, ...]:
        """Interior labels glued with the orientation-reversing pattern."""
        return tuple(l for l in self.interior_labels if self._flags[l] == SAME)

    def __eq__(self, other):
        return isinstance(other, SurfaceSchema) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __repr__(self):
        return f"SurfaceSchema({len(self.faces)} faces, {len(self.labels)} edges)"


def schema_from_words(*words: str, face_ids: Sequence[str] | None = None) -> SurfaceSchema:
    """Build a schema from whitespace-separated words like ``"a b a- b-"``.

    A trailing ``-`` marks a backward occurrence.  Convenience for tests and
    small examples.
    """
    faces = []
    for i, w in enumerate(words):
        fid = face_ids[i] if face_ids else f"F{i}"
        word = []
        for tok in w.split():
            if tok.endswith("-"):
                word.append((tok[:-1], BACKWARD))
            else:
                word.append((tok, FORWARD))
        faces.append(FaceWord(fid, tuple(word)))
    return SurfaceSchema(faces)


# -- validation --------------------------------------------------------


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[str, ...]


def validate_schema(s: SurfaceSchema, require_connected: bool = True) -> ValidityReport:
    """Check label multiplicities, flag consistency and connectedness.

    Multiplicity and flag violations are impossible to represent in a
    constructed ``SurfaceSchema`` (the constructor refuses them), so this
    reports on connectedness and emptiness, and exists as the single entry
    point callers can run on anything loaded from disk.
    """
    violations = []
    if not s.faces:
        violations.append("schema has no faces")
    if require_connected and s.faces and len(connected_components(s)) != 1:
        violations.append("schema is not connected")
    return ValidityReport(not violations, tuple(violations))


# -- corners and vertices ----------------------------------------------

# An edge-end: (occurrence, which end along the traversal): 0 = start, 1 = end.
_EdgeEnd = tuple[Occ, int]


def _corner_at(s: SurfaceSchema, end: _EdgeEnd) -> tuple[str, int]:
    """Corner of the polygon adjacent to an edge-end.

    Corner ``(face, i)`` sits between occurrence ``i-1``'s end and
    occurrence ``i``'s start.
    """
    (face_id, idx), which = end
    n = len(s.face(face_id))
    return (face_id, idx if which == 0 else (idx + 1) % n)


def _other_end_at_corner(s: SurfaceSchema, end: _EdgeEnd) -> _EdgeEnd:
    """The edge-end on the other side of the corner adjacent to ``end``."""
    (face_id, idx), which = end
    n = len(s.face(face_id))
    if which == 0:
        return (((face_id, (idx - 1) % n), 1))
    return (((face_id, (idx + 1) % n), 0))


def _glue_end(s: SurfaceSchema, end: _EdgeEnd) -> _EdgeEnd | None:
    """Carry an edge-end through the pairing; None on free edges."""
    occ, which = end
    partner = s.partner(occ)
    if partner is None:
        return None
    label = s.occ_edge(occ)[0]
    return (partner, which if s.flag(label) == SAME else 1 - which)


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def class_count(self) -> int:
        return len({self.find(x) for x in self.parent})


def _vertex_classes(s: SurfaceSchema) -> _UnionFind:
    corners = [(f.face_id, i) for f in s.faces for i in range(len(f))]
    uf = _UnionFind(corners)
    for label, (o1, _o2) in s.pairing.items():
        for which in (0, 1):
            end1 = (o1, which)
            end2 = _glue_end(s, end1)
            uf.union(_corner_at(s, end1), _corner_at(s, end2))
    return uf


def euler_characteristic(s: SurfaceSchema) -> int:
    """V - E + F with vertices found by corner walking around gluings."""
    v = _vertex_classes(s).class_count()
    e = len(s.labels)
    f = len(s.faces)
    return v - e + f


# -- boundary ----------------------------------------------------------


def boundary_cycles(s: SurfaceSchema) -> list[list[Occ]]:
    """Boundary circles, each as the cyclic list of free-edge occurrences.

    From the end of a free occurrence, walk the corner fan (crossing glued
    edges) until the next free edge-end; boundary segments chained this way
    close up into circles.
    """

    def fan_walk(end: _EdgeEnd) -> _EdgeEnd:
        cur = _other_end_at_corner(s, end)
        while True:
            glued = _glue_end(s, cur)
            if glued is None:
                return cur
            cur = _other_end_at_corner(s, glued)

    free_occs = [occ for l in s.free_labels for occ in s.occurrences(l)]
    unvisited: set[tuple[Occ, int]] = set()
    for occ in free_occs:
        unvisited.add((occ, 0))
        unvisited.add((occ, 1))
    cycles = []
    while unvisited:
        start = min(unvisited)
        cycle = []
        cur = start
        while True:
            occ, which = cur
            unvisited.discard((occ, 0))
            unvisited.discard((occ, 1))
            cycle.append(occ)
            far_end = (occ, 1 - which)
            nxt_end = fan_walk(far_end)
            cur = nxt_end
            if cur == start:
                break
        cycles.append(cycle)
    return cycles


# -- orientability ------------------------------------------------------


def is_orientable(s: SurfaceSchema) -> bool:
    """Propagate face orientations across gluings, looking for a conflict.

    A reversed-flag gluing is compatible with keeping both face orientations;
    a same-flag gluing forces opposite orientations.  The schema is
    orientable iff the induced parity constraints are satisfiable.
    """
    if not s.faces:
        return True
    sign: dict[str, int] = {}
    for root in s.face_ids:
        if root in sign:
            continue
        sign[root] = 0
        stack = [root]
        while stack:
            f = stack.pop()
            for label in s.labels:
                pair = s.pairing.get(label)
                if pair is None:
                    continue
                (f1, _), (f2, _) = pair
                if f1 != f and f2 != f:
                    continue
                other = f2 if f1 == f else f1
                want = sign[f] if s.flag(label) == REVERSED else 1 - sign[f]
                if f1 == f2:
                    # Self-gluing: same flag means an immediate Möbius band.
                    if s.flag(label) == SAME:
                        return False
                    continue
                if other not in sign:
                    sign[other] = want
                    stack.append(other)
                elif sign[other] != want:
                    return False
    return True


def connected_components(s: SurfaceSchema) -> list[SurfaceSchema]:
    """Split along gluing reachability; each part is a valid schema."""
    if not s.faces:
        return []
    uf = _UnionFind(s.face_ids)
    for (f1, _), (f2, _) in s.pairing.values():
        uf.union(f1, f2)
    groups: dict[str, list[FaceWord]] = {}
    for f in s.faces:
        groups.setdefault(uf.find(f.face_id), []).append(f)
    keyed = sorted(groups.values(), key=lambda fs: fs[0].face_id)
    return [SurfaceSchema(fs) for fs in keyed]


def classify_surface(s: SurfaceSchema) -> SurfaceType:
    """Combine chi, orientability and boundary count into a SurfaceType."""
    report = validate_schema(s)
    if not report.valid:
        raise SchemaError("; ".join(report.violations))
    chi = euler_characteristic(s)
    b = len(boundary_cycles(s))
    if is_orientable(s):
        k2 = 2 - b - chi
        if k2 < 0 or k2 % 2:
            raise SchemaError(f"inconsistent orientable schema: chi={chi} b={b}")
        return SurfaceType(True, k2 // 2, b)
    g = 2 - b - chi
    if g <= 0:
        raise SchemaError(f"inconsistent non-orientable schema: chi={chi} b={b}")
    return SurfaceType(False, g, b)


# -- standard schemas ---------------------------------------------------


def standard_schema(t: SurfaceType) -> SurfaceSchema:
    """Canonical one-face gluing word for a surface type.

    Handles contribute ``a b a- b-`` blocks, cross-caps ``x x`` blocks, the
    first boundary a bare free edge and each further boundary a tube block
    ``c e c-`` (a bare free edge only subdivides an existing boundary circle,
    so extra circles need the tube).  The closed sphere is ``a a-``.
    """
    word: list[tuple[str, str]] = []
    if t.orientable:
        for i in range(1, t.genus + 1):
            word += [
                (f"a{i}", FORWARD),
                (f"b{i}", FORWARD),
                (f"a{i}", BACKWARD),
                (f"b{i}", BACKWARD),
            ]
    else:
        for i in range(1, t.genus + 1):
            word += [(f"x{i}", FORWARD), (f"x{i}", FORWARD)]
    for l in range(1, t.boundary + 1):
        if l == 1:
            word += [("e1", FORWARD)]
        else:
            word += [(f"c{l}", FORWARD), (f"e{l}", FORWARD), (f"c{l}", BACKWARD)]
    if not word:
        word = [("a1", FORWARD), ("a1", BACKWARD)]
    return SurfaceSchema([FaceWord("P", tuple(word))])


# -- serialization -------------------------------------------------------


def schema_to_json(s: SurfaceSchema) -> dict:
    return {
        "faces": [
            {
                "id": f.face_id,
                "word": [{"edge": label, "dir": d} for label, d in f.word],
            }
            for f in s.faces
        ],
        "pairs": [{"edge": label, "flag": s.flag(label)} for label in s.interior_labels],
    }


def schema_from_json(doc: dict) -> SurfaceSchema:
    try:
        faces = [
            FaceWord(
                str(f["id"]),
                tuple((str(o["edge"]), str(o["dir"])) for o in f["word"]),
            )
            for f in doc["faces"]
        ]
        flags = {str(p["edge"]): str(p["flag"]) for p in doc.get("pairs", [])}
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed schema document: {exc}") from exc
    return SurfaceSchema(faces, flags=flags)


def dump_schema(s: SurfaceSchema) -> str:
    return json.dumps(schema_to_json(s), indent=2)


def load_schema(text: str) -> SurfaceSchema:
    return schema_from_json(json.loads(text))
