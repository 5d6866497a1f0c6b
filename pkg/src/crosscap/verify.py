"""Certification that a curve family is a 1-system.

The verifier never trusts the construction: it recomputes simplicity,
essentiality, peripherality and sidedness per curve, counts every pairwise
crossing, and attaches to every pair a certificate of non-homotopy.  The
certificate cascade, most specific first:

* ``odd_crossing`` -- odd realized crossings; crossing parity is a homotopy
  invariant, so the pair is distinct (and with one realized crossing the
  geometric intersection number is exactly one).
* ``sidedness_mismatch`` -- a one-sided curve is never homotopic to a
  two-sided one.
* ``parity_profile`` -- differing mod-2 cross-cap pass vectors; each pass
  meets that cap's core once mod 2, another invariant.
* ``witness_parity`` -- a third curve meeting the two with different
  crossing parities (the copy-and-shift argument: a translate meets one
  curve once and its own original not at all).
* ``no_annulus`` -- the pair, cut out of the surface, cobounds no annulus;
  disjoint homotopic curves always cobound one.  A cobounding annulus
  between two-sided curves is a verified duplicate (the family fails); for
  one-sided pairs it proves nothing (the Klein bottle's two cores cobound
  an annulus) and the pair is reported unknown.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .construct import (
    ConstructionState,
    LevelTag,
    ROLE_GAMMA,
    ROLE_GAMMA_CORE,
    ROLE_MERIDIAN,
    theorem_a_size,
    theorem_b_size,
)
from .curve import (
    Chord,
    Curve,
    CurveError,
    CurveFamily,
    CurvePoint,
    crosscap_parity_profile,
    is_simple,
    sidedness,
    validate_curve,
    ONE_SIDED,
    TWO_SIDED,
)
from .cut import (
    COBOUND_ANNULUS,
    annulus_certificate,
    cut_along,
    is_essential,
    is_peripheral,
)
from .schema import SurfaceSchema, classify_surface

ODD_CROSSING = "odd_crossing"
SIDEDNESS_MISMATCH = "sidedness_mismatch"
PARITY_PROFILE = "parity_profile"
WITNESS_PARITY = "witness_parity"
NO_ANNULUS = "no_annulus"
DUPLICATE = "cobound_annulus"
UNKNOWN = "unknown"


class BudgetExceeded(RuntimeError):
    """Raised when the curve enumerator hits its node budget."""


# -- the construction oracle -------------------------------------------------


def expected_crossings(u: LevelTag, v: LevelTag) -> int:
    """Crossing count the construction promises for a tagged pair.

    Parallel translates (equal slopes) are disjoint; curves copied into the
    same cross-cap lost their mutual crossing to the cap; meridians meet
    nothing; a cap's core meets each curve through its own cap exactly once
    and nothing else; every remaining pair crosses once.
    """
    if not isinstance(u, LevelTag) or not isinstance(v, LevelTag):
        raise CurveError("expected_crossings needs LevelTags from one build")
    if ROLE_MERIDIAN in (u.role, v.role):
        return 0
    if ROLE_GAMMA_CORE in (u.role, v.role):
        core, other = (u, v) if u.role == ROLE_GAMMA_CORE else (v, u)
        if other.role == ROLE_GAMMA and other.crosscap_index == core.crosscap_index:
            return 1
        return 0
    if u.slope == v.slope:
        return 0
    if (
        u.role == ROLE_GAMMA
        and v.role == ROLE_GAMMA
        and u.crosscap_index == v.crosscap_index
    ):
        return 0
    return 1


# -- fast pairwise crossing counts --------------------------------------------


class _CrossingIndex:
    """Integer-rank chord tables for fast pairwise crossing counts."""

    def __init__(self, curves: Sequence[Curve]):
        points: dict[str, set] = {}
        for c in curves:
            for ch in c.chords:
                for p in ch.endpoints:
                    points.setdefault(ch.face_id, set()).add((p.occ[1], p.pos))
        def order(key):
            idx, pos = key
            return (idx, pos.numerator / pos.denominator, pos)

        rank = {
            face: {key: i for i, key in enumerate(sorted(keys, key=order))}
            for face, keys in points.items()
        }
        self.by_curve: dict[str, dict[str, list[tuple[int, int]]]] = {}
        for c in curves:
            table: dict[str, list[tuple[int, int]]] = {}
            for ch in c.chords:
                r = rank[ch.face_id]
                a = r[(ch.endpoints[0].occ[1], ch.endpoints[0].pos)]
                b = r[(ch.endpoints[1].occ[1], ch.endpoints[1].pos)]
                table.setdefault(ch.face_id, []).append((a, b) if a < b else (b, a))
            self.by_curve[c.id] = table

    def crossings(self, id_a: str, id_b: str) -> int:
        ta, tb = self.by_curve[id_a], self.by_curve[id_b]
        if len(tb) < len(ta):
            ta, tb = tb, ta
        total = 0
        for face, chords_a in ta.items():
            chords_b = tb.get(face)
            if not chords_b:
                continue
            for a1, a2 in chords_a:
                for b1, b2 in chords_b:
                    total += (a1 < b1 < a2) != (a1 < b2 < a2)
        return total


# -- report types --------------------------------------------------------------


@dataclass(frozen=True)
class CurveResult:
    curve_id: str
    simple: bool
    essential: bool
    essential_method: str
    peripheral: bool
    sidedness: str

    @property
    def ok(self) -> bool:
        return self.simple and self.essential and not self.peripheral


@dataclass(frozen=True)
class PairResult:
    a: str
    b: str
    crossings: int
    certificate: str
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.crossings <= 1 and self.certificate not in (UNKNOWN, DUPLICATE)


@dataclass(frozen=True)
class VerificationReport:
    count: int
    curves: tuple[CurveResult, ...]
    pairs: tuple[PairResult, ...]
    max_crossings: int
    is_1_system: bool
    failures: tuple[str, ...]
    matrix_ok: bool | None = None
    sizes_ok: bool | None = None
    surface: str | None = None

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "is_1_system": self.is_1_system,
            "max_crossings": self.max_crossings,
            "surface": self.surface,
            "matrix_ok": self.matrix_ok,
            "sizes_ok": self.sizes_ok,
            "failures": list(self.failures),
            "curves": [
                {
                    "id": c.curve_id,
                    "simple": c.simple,
                    "essential": c.essential,
                    "essential_method": c.essential_method,
                    "peripheral": c.peripheral,
                    "sidedness": c.sidedness,
                }
                for c in self.curves
            ],
            "pairs": [
                {
                    "a": p.a,
                    "b": p.b,
                    "crossings": p.crossings,
                    "certificate": p.certificate,
                    "witness": p.witness,
                }
                for p in self.pairs
            ],
        }


def _certify_pair(
    schema: SurfaceSchema,
    a: Curve,
    b: Curve,
    n: int,
    side: dict[str, str],
    profile: dict[str, tuple[int, ...]],
    index: _CrossingIndex,
    pool: Sequence[Curve],
) -> PairResult:
    if n % 2 == 1:
        return PairResult(a.id, b.id, n, ODD_CROSSING)
    if n > 0:
        return PairResult(a.id, b.id, n, UNKNOWN)
    if side[a.id] != side[b.id]:
        return PairResult(a.id, b.id, n, SIDEDNESS_MISMATCH)
    if profile[a.id] != profile[b.id]:
        return PairResult(a.id, b.id, n, PARITY_PROFILE)
    for delta in pool:
        if delta.id in (a.id, b.id):
            continue
        pa = index.crossings(a.id, delta.id)
        pb = index.crossings(b.id, delta.id)
        if (pa + pb) % 2 == 1:
            return PairResult(a.id, b.id, n, WITNESS_PARITY, witness=delta.id)
    cert = annulus_certificate(schema, a, b)
    if cert.status == COBOUND_ANNULUS:
        if side[a.id] == TWO_SIDED:
            return PairResult(a.id, b.id, n, DUPLICATE, witness=str(cert.witness))
        return PairResult(a.id, b.id, n, UNKNOWN, witness=str(cert.witness))
    return PairResult(
        a.id, b.id, n, NO_ANNULUS, witness=None if cert.witness is None else str(cert.witness)
    )


def verify_one_system(
    fam: CurveFamily, aux: Sequence[Curve] = (), workers: int | None = None
) -> VerificationReport:
    """Full 1-system check: per-curve properties, pairwise certificates.

    ``aux`` supplies extra jointly-generic witness curves usable by the
    parity certificates without being part of the verified family.
    ``workers`` parallelizes the pairwise certificates; the report is
    assembled in pair order and identical for any worker count.
    """
    schema = fam.schema
    curves = fam.curves
    failures: list[str] = []

    curve_results = []
    side: dict[str, str] = {}
    profile: dict[str, tuple[int, ...]] = {}
    for c in curves:
        simple = validate_curve(schema, c).valid and is_simple(c)
        if not simple:
            failures.append(f"{c.id}: not simple")
            curve_results.append(CurveResult(c.id, False, False, "-", False, "-"))
            continue
        side[c.id] = sidedness(schema, c)
        profile[c.id] = crosscap_parity_profile(schema, c)
        ess = is_essential(schema, c)
        per = is_peripheral(schema, c)
        if not ess.essential:
            failures.append(f"{c.id}: not essential ({ess.detail})")
        if per:
            failures.append(f"{c.id}: peripheral")
        curve_results.append(
            CurveResult(c.id, True, ess.essential, ess.method, per, side[c.id])
        )

    pool = list(curves) + list(aux)
    index = _CrossingIndex(pool)
    pair_results: list[PairResult] = []
    max_crossings = 0
    if all(r.simple for r in curve_results):
        pairs = list(itertools.combinations(curves, 2))

        def job(pair):
            a, b = pair
            n = index.crossings(a.id, b.id)
            return _certify_pair(schema, a, b, n, side, profile, index, pool)

        if workers and workers > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=workers) as pool_exec:
                pair_results = list(pool_exec.map(job, pairs))
        else:
            pair_results = [job(p) for p in pairs]
        for pr in pair_results:
            max_crossings = max(max_crossings, pr.crossings)
            if pr.crossings > 1:
                failures.append(f"{pr.a} x {pr.b}: {pr.crossings} crossings")
            elif pr.certificate == DUPLICATE:
                failures.append(f"{pr.a} x {pr.b}: cobound an annulus (duplicate class)")
            elif pr.certificate == UNKNOWN:
                failures.append(f"{pr.a} x {pr.b}: no certificate")
    else:
        failures.append("pairwise checks skipped: non-simple curve present")

    ok = not failures
    return VerificationReport(
        count=len(curves),
        curves=tuple(curve_results),
        pairs=tuple(pair_results),
        max_crossings=max_crossings,
        is_1_system=ok,
        failures=tuple(failures),
    )


def verify_tagged_family(
    fam: CurveFamily,
    aux: Sequence[Curve] = (),
    m: int | None = None,
    workers: int | None = None,
) -> VerificationReport:
    """verify_one_system plus the construction-specific exact checks.

    The realized crossing matrix must equal the tag oracle pair by pair and
    the family size must equal the size formula.  ``m`` (the base size) is
    inferred from the slopes present when not given.
    """
    report = verify_one_system(fam, aux=aux, workers=workers)
    failures = list(report.failures)

    tags = fam.tags
    if any(c.id not in tags for c in fam.curves):
        raise CurveError("verify_tagged_family needs a LevelTag for every curve")
    index = _CrossingIndex(list(fam.curves))
    matrix_ok = True
    for a, b in itertools.combinations(fam.curves, 2):
        want = expected_crossings(tags[a.id], tags[b.id])
        got = index.crossings(a.id, b.id)
        if got != want:
            matrix_ok = False
            failures.append(f"matrix: {a.id} x {b.id} = {got}, oracle says {want}")

    # Size formula, disaggregated: (2m+1) curves per plain level, one
    # meridian per handle, (2m+2) per cross-cap; this equals the paper's
    # closed forms for every builder output.
    family_tags = [tags[c.id] for c in fam.curves]
    if m is None:
        slopes = [t.slope for t in family_tags if t.slope is not None]
        m = max(slopes) // 2 if slopes else 0
    levels = len(
        {t.level for t in family_tags if t.role not in (ROLE_GAMMA, ROLE_GAMMA_CORE, ROLE_MERIDIAN)}
    )
    meridians = sum(1 for t in family_tags if t.role == ROLE_MERIDIAN)
    caps = len({t.crosscap_index for t in family_tags if t.crosscap_index is not None})
    want = (2 * m + 1) * levels + meridians + caps * (2 * m + 2)
    sizes_ok = len(fam) == want
    if not sizes_ok:
        failures.append(f"size formula mismatch: built {len(fam)}, formula {want}")

    surface = str(classify_surface(fam.schema))
    return VerificationReport(
        count=report.count,
        curves=report.curves,
        pairs=report.pairs,
        max_crossings=report.max_crossings,
        is_1_system=report.is_1_system and matrix_ok and sizes_ok,
        failures=tuple(failures),
        matrix_ok=matrix_ok,
        sizes_ok=sizes_ok,
        surface=surface,
    )


def verify_construction(
    st: ConstructionState, workers: int | None = None
) -> VerificationReport:
    """Verify a built state: 1-system, oracle matrix, sizes, classification."""
    return verify_tagged_family(
        st.family, aux=st.aux_curves, m=st.disc.m, workers=workers
    )


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2)


# -- bounded enumeration of small curves ---------------------------------------

# A passage crosses one interior edge: (from_occurrence, to_occurrence).
_Passage = tuple[int, int]


def _passage_table(s: SurfaceSchema):
    occs = []
    for label in s.interior_labels:
        o1, o2 = s.pairing[label]
        occs.append((o1, o2))
        occs.append((o2, o1))
    occs.sort()
    return occs


def iter_small_curves(
    s: SurfaceSchema, max_chords: int, budget: int = 2_000_000
) -> Iterable[Curve]:
    """Yield simple closed curves with up to ``max_chords`` chords.

    Curves are produced in increasing chord count, deduplicated modulo
    cyclic rotation, reversal and order-preserving reparameterization of
    every edge.  ``budget`` bounds the number of search nodes; exceeding it
    raises :class:`BudgetExceeded`.
    """
    if len(s.faces) > 2 or len(s.labels) > 12:
        raise CurveError("enumeration supports at most 2 faces and 12 labels")
    if max_chords > 8:
        raise CurveError("enumeration supports at most 8 chords")
    passages = _passage_table(s)
    if not passages:
        return
    nodes = 0
    seen: set = set()

    def chordable(p: _Passage, q: _Passage) -> bool:
        # chord between passage p and q lives in the face p enters.
        return passages[p][1][0] == passages[q][0][0]

    n_pass = len(passages)
    for length in range(1, max_chords + 1):
        stack: list[tuple] = [(first,) for first in range(n_pass)]
        while stack:
            seq = stack.pop()
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
            if len(seq) == length:
                if chordable(seq[-1], seq[0]) and min(seq) == seq[0]:
                    yield from _curves_for_sequence(s, passages, seq, seen)
                continue
            for nxt in range(seq[0], n_pass):
                if chordable(seq[-1], nxt):
                    stack.append(seq + (nxt,))


def _curves_for_sequence(s, passages, seq, seen):
    # Group passage slots by edge label (via canonical occurrence).
    by_label: dict = {}
    for i, p in enumerate(seq):
        o_from, _ = passages[p]
        label = s.occ_edge(o_from)[0]
        by_label.setdefault(label, []).append(i)
    orders: list[list[tuple[int, ...]]] = []
    labels = sorted(by_label)
    for label in labels:
        slots = by_label[label]
        orders.append([perm for perm in itertools.permutations(range(len(slots)))])
    for combo in itertools.product(*orders):
        rank_of_slot: dict[int, Fraction] = {}
        for label, perm in zip(labels, combo):
            slots = by_label[label]
            c = len(slots)
            for slot, r in zip(slots, perm):
                rank_of_slot[slot] = Fraction(r + 1, c + 1)
        points = []
        ok = True
        for i, p in enumerate(seq):
            o_from, o_to = passages[p]
            label = s.occ_edge(o_from)[0]
            o1 = min(s.pairing[label])
            t_canon = rank_of_slot[i]
            # position measured on the canonical occurrence, mapped out.
            t_from = t_canon if o_from == o1 else s.map_position(o1, t_canon)
            t_to = s.map_position(o_from, t_from)
            points.append((CurvePoint(o_from, t_from), CurvePoint(o_to, t_to)))
        chords = []
        k = len(seq)
        for i in range(k):
            enter = points[i][1]
            exit_ = points[(i + 1) % k][0]
            if enter == exit_:
                ok = False
                break
            chords.append(Chord(enter.occ[0], (enter, exit_)))
        if not ok:
            continue
        curve = Curve("enum", tuple(chords))
        if not validate_curve(s, curve).valid or not is_simple(curve):
            continue
        key = _canonical_key(s, passages, seq, points)
        if key in seen:
            continue
        seen.add(key)
        yield Curve(f"enum-{len(seen)}", tuple(chords))


def _canonical_key(s, passages, seq, points):
    k = len(seq)
    ranks_by_occ: dict = {}
    for enter, exit_ in points:
        for p in (enter, exit_):
            ranks_by_occ.setdefault(p.occ, []).append(p.pos)
    order = {
        occ: {pos: i for i, pos in enumerate(sorted(ps))}
        for occ, ps in ranks_by_occ.items()
    }

    def render(indices, flip):
        out = []
        for i in indices:
            enter, exit_ = points[i]
            if flip:
                enter, exit_ = exit_, enter
            out.append(
                (
                    enter.occ,
                    order[enter.occ][enter.pos],
                    exit_.occ,
                    order[exit_.occ][exit_.pos],
                )
            )
        return tuple(out)

    candidates = []
    for r in range(k):
        rot = [(r + i) % k for i in range(k)]
        candidates.append(render(rot, False))
        rev = [(r - i) % k for i in range(k)]
        candidates.append(render(rev, True))
    return min(candidates)


def enumerate_small_curves(
    s: SurfaceSchema, max_chords: int, budget: int = 2_000_000
) -> list[Curve]:
    """All simple closed curves up to ``max_chords`` chords, deduplicated."""
    return list(iter_small_curves(s, max_chords, budget=budget))
