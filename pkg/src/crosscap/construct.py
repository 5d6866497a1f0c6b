"""Builders for the large 1-system families on N_{g,b}.

The construction keeps an exact geometric picture internally and emits pure
combinatorial data.  The distinguished disc is a tall rectangle; each copy
of the base family is a bundle of straight lines ``y = v x + c`` through a
stack point, one line per slope, with slopes encoded by distinct nonzero
integers.  Stack points sit at integer heights.  Between consecutive stack
levels a horizontal separator subdivides the disc into band faces, and the
separator carries the level's payload at its centre column: a punched hole
(copy-and-shift step) or a cross-cap (the non-orientable step), realized as
a small diamond whose boundary is either left free or glued to itself
antipodally.  Because the payload sits in the strip between consecutive
parallel translates of *every* slope simultaneously, the parallel copies
are pairwise non-homotopic, which is the whole point of the construction.

Outside the disc, the rectangle sits in a ``4m``-gon with opposite sides
identified (attached through a slit), and each line closes up through its
side of the polygon, every copy following its translate; the one "diagonal"
slope closes up by rounding the polygon corners.  All positions are exact
rationals; every choice is deterministic in the build parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .curve import Chord, Curve, CurveFamily, CurvePoint
from .schema import (
    FaceWord,
    SurfaceSchema,
    SurfaceType,
    classify_surface,
)

F = Fraction


class ConstructionError(ValueError):
    """Raised for unsupported parameters or an internally broken layout."""


# -- tags ----------------------------------------------------------------

ROLE_BASE = "base"
ROLE_SHIFT = "shift"
ROLE_GAMMA = "gamma"
ROLE_GAMMA_CORE = "gamma_core"
ROLE_TILDE = "tilde"
ROLE_MERIDIAN = "meridian"


@dataclass(frozen=True)
class LevelTag:
    """Construction bookkeeping for one curve of a built family."""

    role: str
    level: int
    slope: int | None = None
    crosscap_index: int | None = None
    handle_index: int | None = None

    def curve_id(self) -> str:
        if self.role == ROLE_BASE:
            return f"base-s{self.slope}"
        if self.role == ROLE_SHIFT:
            return f"shift-l{self.level}-s{self.slope}"
        if self.role == ROLE_GAMMA:
            return f"gamma-c{self.crosscap_index}-s{self.slope}"
        if self.role == ROLE_GAMMA_CORE:
            return f"core-c{self.crosscap_index}"
        if self.role == ROLE_TILDE:
            return f"tilde-c{self.crosscap_index}-s{self.slope}"
        if self.role == ROLE_MERIDIAN:
            return f"meridian-h{self.handle_index}"
        raise ConstructionError(f"unknown role {self.role!r}")

    @staticmethod
    def from_json(doc: dict) -> "LevelTag":
        return LevelTag(
            role=str(doc["role"]),
            level=int(doc["level"]),
            slope=None if doc.get("slope") is None else int(doc["slope"]),
            crosscap_index=(
                None if doc.get("crosscap_index") is None else int(doc["crosscap_index"])
            ),
            handle_index=(
                None if doc.get("handle_index") is None else int(doc["handle_index"])
            ),
        )


# -- the build plan --------------------------------------------------------

# Strata stack, bottom to top, alternating band / separator.
@dataclass(frozen=True)
class _Band:
    level: int
    kind: str  # base | shift | tilde | spacer


@dataclass(frozen=True)
class _Sep:
    kind: str  # hole | cap
    payload: int  # hole: sep ordinal; cap: cross-cap index (1-based)


@dataclass(frozen=True)
class _LineCurve:
    tag: LevelTag
    slope: int
    band: int | None  # band ordinal for base/shift/tilde lines
    cap_sep: int | None = None  # separator ordinal for gamma lines
    aux: bool = False


@dataclass(frozen=True)
class _CoreCurve:
    tag: LevelTag
    cap_sep: int


@dataclass(frozen=True)
class _MeridianCurve:
    tag: LevelTag
    handle: int


@dataclass(frozen=True)
class _Plan:
    m: int
    strata: tuple = ()
    curves: tuple = ()
    handles: tuple = ()  # pairs of separator ordinals whose holes are glued
    next_level: int = 0


@dataclass(frozen=True)
class DiscRegion:
    """Where the construction's crossings live: the band-face complex."""

    outer_face: str
    band_faces: tuple[str, ...]
    separator_kinds: tuple[str, ...]
    slope_values: tuple[int, ...]
    m: int


@dataclass(frozen=True)
class ConstructionState:
    """Immutable snapshot of a build: plan plus materialized schema/family."""

    plan: _Plan
    schema: SurfaceSchema
    family: CurveFamily
    aux_curves: tuple[Curve, ...]
    disc: DiscRegion

    @property
    def next_level(self) -> int:
        return self.plan.next_level

    def tags(self) -> dict[str, LevelTag]:
        return dict(self.family.tags)


# -- slope encoding --------------------------------------------------------


def _slope_values(m: int) -> list[int]:
    """Slope index -> integer slope value of its line in the disc.

    Index 0 is the diagonal; 1..2m are the opposite-side curves.  Values
    follow the angular order of the exits around the polygon so that the
    wall orders below match the side orders.
    """
    vals = [0] * (2 * m + 1)
    vals[0] = 2
    vals[1] = 1
    for j in range(2, m + 1):
        vals[j] = j + 1
    for j in range(m + 1, 2 * m + 1):
        vals[j] = j - (2 * m + 1)
    return vals


def _level_frac(level: int) -> F:
    return F(level + 1, level + 2)


def _side_pos(level: int) -> F:
    """Crossing position on a polygon side; ascending in the level."""
    return F(2, 3) - F(1, 3 * (level + 2))


def _corner_eps(level: int) -> F:
    """Corner-hugging offset for the diagonal; descending in the level."""
    return F(1, 3 * (level + 3))


# -- materialization -------------------------------------------------------


class _Layout:
    """Everything derived from a plan needed to emit schema and chords."""

    def __init__(self, plan: _Plan):
        self.plan = plan
        self.m = plan.m
        self.vals = _slope_values(plan.m)
        self.vmax = plan.m + 1
        self.rho = F(1, 8 * self.vmax)
        # Tiny distinct perturbations; all the coincidences they must avoid
        # are re-checked exactly at materialization time.
        rank = {v: i for i, v in enumerate(sorted(self.vals))}
        q = 16 * self.vmax * (2 * plan.m + 3)
        self.mu = {v: F(rank[v] + 1, q) for v in self.vals}
        self.bands = [s for s in plan.strata if isinstance(s, _Band)]
        self.seps = [s for s in plan.strata if isinstance(s, _Sep)]
        if len(self.bands) != len(self.seps) + 1:
            raise ConstructionError("strata must alternate band/separator")
        self.band_height = {i: F(i) for i in range(len(self.bands))}
        self.sep_height = {r: F(2 * r + 1, 2) for r in range(len(self.seps))}
        p = 512 * self.vmax**3
        self.sep_xi = {
            r: (F(1, p * (s.payload + 2)) if s.kind == "cap" else F(0))
            for r, s in enumerate(self.seps)
        }
        self.band_level = {i: b.level for i, b in enumerate(self.bands)}
        self.glued_holes = {r for pair in plan.handles for r in pair}
        self._build_faces()

    # .. face words .........................................................

    def _build_faces(self):
        m, J = self.m, len(self.seps)
        top_rw = "rw0hi" if J == 0 else f"rw{J}"
        self.top_rw = top_rw
        words: dict[str, list[tuple[str, str]]] = {}

        def sep_lower(r):  # as the top of band r, traversed right to left
            s = self.seps[r]
            mid = ("x%d" % s.payload, "+") if s.kind == "cap" else (f"h{r}d", "-")
            return [(f"z{r}R", "-"), mid, (f"z{r}L", "-")]

        def sep_upper(r):  # as the bottom of band r+1, left to right
            s = self.seps[r]
            mid = ("x%d" % s.payload, "+") if s.kind == "cap" else (f"h{r}u", "+")
            return [(f"z{r}L", "+"), mid, (f"z{r}R", "+")]

        for i in range(J + 1):
            w: list[tuple[str, str]] = []
            if i == 0:
                w += [("bot", "+"), ("rw0lo", "+"), ("rw0hi", "+")]
            else:
                w += sep_upper(i - 1) + [(f"rw{i}", "+")]
            if i == J:
                w += [("top", "-")]
            else:
                w += sep_lower(i)
            w += [(f"lw{i}", "-")]
            words[f"B{i}"] = w

        outer: list[tuple[str, str]] = []
        for j in range(1, 2 * m + 1):
            outer.append((f"a{j}", "+"))
        for j in range(1, 2 * m + 1):
            outer.append((f"a{j}", "-"))
        outer += [("slit", "+"), ("rw0lo", "-"), ("bot", "-")]
        outer += [(f"lw{i}", "+") for i in range(J + 1)]
        outer += [("top", "+")]
        outer += [(f"rw{i}", "-") for i in range(J, 0, -1)]
        outer += [("rw0hi", "-"), ("slit", "-")]
        words["O"] = outer

        for t, (r1, r2) in enumerate(self.plan.handles):
            words[f"H{t}"] = [
                (f"h{r1}u", "-"),
                (f"h{r1}d", "+"),
                (f"q{t}", "+"),
                (f"h{r2}u", "-"),
                (f"h{r2}d", "+"),
                (f"q{t}", "-"),
            ]

        self.words = words
        self.occ: dict[tuple[str, str, str], tuple[str, int]] = {}
        for fid, word in words.items():
            for idx, (label, d) in enumerate(word):
                key = (fid, label, d)
                if key in self.occ:
                    raise ConstructionError(f"ambiguous occurrence {key}")
                self.occ[key] = (fid, idx)

    def schema(self) -> SurfaceSchema:
        return SurfaceSchema(
            [FaceWord(fid, tuple(w)) for fid, w in sorted(self.words.items())]
        )

    # .. wall slots ..........................................................

    def _wall_groups(self, piece: str) -> list[int]:
        """Slope values using a wall piece, in ascending-height order."""
        J = len(self.seps)
        pos = sorted((v for v in self.vals if v > 0), reverse=True)
        neg = sorted((v for v in self.vals if v < 0), reverse=True)
        if piece == "lw0":
            return pos + neg if J == 0 else pos
        if piece == f"lw{J}":
            return neg
        if piece == "rw0lo":
            return sorted(v for v in self.vals if v < 0)
        if piece == self.top_rw:
            return sorted(v for v in self.vals if v > 0)
        raise ConstructionError(f"no entries expected on wall piece {piece!r}")

    def wall_canon(self, piece: str, val: int, level: int) -> F:
        groups = self._wall_groups(piece)
        rank = groups.index(val)
        return F(rank + _level_frac(level), len(groups))

    def entry_piece(self, val: int) -> str:
        J = len(self.seps)
        return "lw0" if val > 0 else f"lw{J}"

    def exit_piece(self, val: int) -> str:
        return self.top_rw if val > 0 else "rw0lo"

    # .. separator coordinates ................................................

    def z_canon(self, r: int, x: F) -> tuple[str, F]:
        """Which separator edge an x-crossing lands on, and its canonical
        parameter (measured left to right along the edge)."""
        xi, rho = self.sep_xi[r], self.rho
        if x < xi - rho:
            d = xi - rho - x  # distance from the payload, c = 1/(1+d)
            return f"z{r}L", F(d.denominator, d.denominator + d.numerator)
        if x > xi + rho:
            d = x - (xi + rho)  # distance from the payload, c = d/(1+d)
            return f"z{r}R", F(d.numerator, d.denominator + d.numerator)
        raise ConstructionError(
            f"crossing at x={x} falls inside the payload zone of separator {r}"
        )

    def cap_u(self, val: int) -> F:
        """Identification parameter where a slope's line meets a cap lens."""
        if val > 0:
            return F(2 + val, 2 * (1 + val))
        return F(val, 2 * (val - 1))


def _pos_on(layout: _Layout, key: tuple[str, str, str], canon: F) -> CurvePoint:
    """Canonical (intrinsic-direction) parameter -> occurrence position."""
    occ = layout.occ[key]
    if key[2] == "+":
        return CurvePoint(occ, canon)
    return CurvePoint(occ, F(canon.denominator - canon.numerator, canon.denominator))


def _line_transitions(layout: _Layout, desc: _LineCurve) -> list[tuple[CurvePoint, CurvePoint]]:
    """Glued point pairs along a line curve, in traversal order."""
    m = layout.m
    val = layout.vals[desc.slope]
    if desc.band is not None:
        c = layout.band_height[desc.band] + layout.mu[val]
        own_sep = None
    else:
        own_sep = desc.cap_sep
        c = layout.sep_height[own_sep] - val * layout.sep_xi[own_sep]

    trans: list[tuple[CurvePoint, CurvePoint]] = []
    level = desc.tag.level
    J = len(layout.seps)

    entry = layout.entry_piece(val)
    canon_in = layout.wall_canon(entry, val, level)
    entry_band = f"B{0 if val > 0 else J}"
    trans.append(
        (
            _pos_on(layout, ("O", entry, "+"), canon_in),
            _pos_on(layout, (entry_band, entry, "-"), canon_in),
        )
    )

    sep_order = range(J) if val > 0 else range(J - 1, -1, -1)
    for r in sep_order:
        if own_sep is not None and r == own_sep:
            u = layout.cap_u(val)
            cap_label = "x%d" % layout.seps[r].payload
            below, above = f"B{r}", f"B{r + 1}"
            if val > 0:
                trans.append(
                    (
                        _pos_on(layout, (below, cap_label, "+"), u),
                        _pos_on(layout, (above, cap_label, "+"), u),
                    )
                )
            else:
                trans.append(
                    (
                        _pos_on(layout, (above, cap_label, "+"), u),
                        _pos_on(layout, (below, cap_label, "+"), u),
                    )
                )
            continue
        x = (layout.sep_height[r] - c) / val
        edge, canon = layout.z_canon(r, x)
        below, above = f"B{r}", f"B{r + 1}"
        if val > 0:
            trans.append(
                (
                    _pos_on(layout, (below, edge, "-"), canon),
                    _pos_on(layout, (above, edge, "+"), canon),
                )
            )
        else:
            trans.append(
                (
                    _pos_on(layout, (above, edge, "+"), canon),
                    _pos_on(layout, (below, edge, "-"), canon),
                )
            )

    exit_ = layout.exit_piece(val)
    canon_out = layout.wall_canon(exit_, val, level)
    trans.append(
        (
            _pos_on(layout, (f"B{J if val > 0 else 0}", exit_, "+"), canon_out),
            _pos_on(layout, ("O", exit_, "-"), canon_out),
        )
    )

    # Outside: close up through the polygon.
    if desc.slope == 0:
        eps = _corner_eps(level)
        j = 0
        for _ in range(2 * m):
            occ_cross = _side_occ(layout, j)
            occ_emerge = _side_occ(layout, (j + 2 * m) % (4 * m))
            trans.append(
                (
                    CurvePoint(layout.occ[occ_cross], _near_end(occ_cross, eps)),
                    CurvePoint(layout.occ[occ_emerge], _near_start(occ_emerge, eps)),
                )
            )
            j = (j + 2 * m - 1) % (4 * m)
    else:
        j = desc.slope
        t = _side_pos(level)
        if val > 0:
            first, second = (f"a{j}", "+"), (f"a{j}", "-")
        else:
            first, second = (f"a{j}", "-"), (f"a{j}", "+")
        trans.append(
            (
                CurvePoint(layout.occ[("O",) + first], t),
                CurvePoint(layout.occ[("O",) + second], 1 - t),
            )
        )
    return trans


def _side_occ(layout: _Layout, side_index: int) -> tuple[str, str, str]:
    m = layout.m
    if side_index < 2 * m:
        return ("O", f"a{side_index + 1}", "+")
    return ("O", f"a{side_index - 2 * m + 1}", "-")


def _near_end(occ_key: tuple[str, str, str], eps: F) -> F:
    return 1 - eps


def _near_start(occ_key: tuple[str, str, str], eps: F) -> F:
    return eps


def _core_transitions(layout: _Layout, desc: _CoreCurve) -> list[tuple[CurvePoint, CurvePoint]]:
    r = desc.cap_sep
    cap_label = "x%d" % layout.seps[r].payload
    below, above = f"B{r}", f"B{r + 1}"
    u = F(7, 8)
    x = layout.sep_xi[r] + 3 * layout.rho / 2
    edge, canon = layout.z_canon(r, x)
    if edge != f"z{r}R":  # pragma: no cover - x is right of the payload
        raise ConstructionError("core return must cross the right separator piece")
    return [
        (
            _pos_on(layout, (below, cap_label, "+"), u),
            _pos_on(layout, (above, cap_label, "+"), u),
        ),
        (
            _pos_on(layout, (above, edge, "+"), canon),
            _pos_on(layout, (below, edge, "-"), canon),
        ),
    ]


def _meridian_transitions(
    layout: _Layout, desc: _MeridianCurve
) -> list[tuple[CurvePoint, CurvePoint]]:
    t = desc.handle
    face = f"H{t}"
    c = F(1, 2) + F(1, 7)
    return [
        (
            _pos_on(layout, (face, f"q{t}", "-"), c),
            _pos_on(layout, (face, f"q{t}", "+"), c),
        )
    ]


def _chords_from_transitions(
    curve_id: str, trans: Sequence[tuple[CurvePoint, CurvePoint]]
) -> Curve:
    chords = []
    n = len(trans)
    for i in range(n):
        start = trans[i][1]
        end = trans[(i + 1) % n][0]
        if start.occ[0] != end.occ[0]:
            raise ConstructionError(
                f"{curve_id}: transition {i} exits into {start.occ[0]!r} but the "
                f"next chord starts in {end.occ[0]!r}"
            )
        chords.append(Chord(start.occ[0], (start, end)))
    return Curve(curve_id, tuple(chords))


def _materialize(plan: _Plan) -> ConstructionState:
    layout = _Layout(plan)
    schema = layout.schema()
    family_curves: list[Curve] = []
    aux: list[Curve] = []
    tags: dict[str, LevelTag] = {}
    for desc in plan.curves:
        if isinstance(desc, _LineCurve):
            trans = _line_transitions(layout, desc)
        elif isinstance(desc, _CoreCurve):
            trans = _core_transitions(layout, desc)
        else:
            trans = _meridian_transitions(layout, desc)
        cid = desc.tag.curve_id()
        if isinstance(desc, _LineCurve) and desc.aux:
            cid = "aux-" + cid
        curve = _chords_from_transitions(cid, trans)
        tags[cid] = desc.tag
        if isinstance(desc, _LineCurve) and desc.aux:
            aux.append(curve)
        else:
            family_curves.append(curve)
    # Joint genericity across family and witnesses, validated in one pass.
    combined = CurveFamily(schema, family_curves + aux, tags=tags)
    family = CurveFamily(schema, family_curves, tags=tags, check=False)
    disc = DiscRegion(
        outer_face="O",
        band_faces=tuple(f"B{i}" for i in range(len(layout.bands))),
        separator_kinds=tuple(s.kind for s in layout.seps),
        slope_values=tuple(layout.vals),
        m=plan.m,
    )
    del combined
    return ConstructionState(plan, schema, family, tuple(aux), disc)


# -- public build steps -----------------------------------------------------


def _plan_base(m: int, aux: bool = False) -> _Plan:
    if m < 1:
        raise ConstructionError(f"base needs m >= 1, got {m}")
    tags = [LevelTag(ROLE_BASE, level=0, slope=j) for j in range(2 * m + 1)]
    return _Plan(
        m=m,
        strata=(_Band(0, "base"),),
        curves=tuple(_LineCurve(t, t.slope, band=0, aux=aux) for t in tags),
        next_level=1,
    )


def _plan_shift(plan: _Plan) -> _Plan:
    level = plan.next_level
    n_seps = sum(1 for s in plan.strata if isinstance(s, _Sep))
    n_bands = sum(1 for s in plan.strata if isinstance(s, _Band))
    strata = plan.strata + (_Sep("hole", n_seps), _Band(level, "shift"))
    tags = [LevelTag(ROLE_SHIFT, level=level, slope=j) for j in range(2 * plan.m + 1)]
    curves = plan.curves + tuple(_LineCurve(t, t.slope, band=n_bands) for t in tags)
    return replace(plan, strata=strata, curves=curves, next_level=level + 1)


def _plan_glue(plan: _Plan, n_pairs: int) -> _Plan:
    free_holes = [
        r
        for r, s in enumerate(x for x in plan.strata if isinstance(x, _Sep))
        if s.kind == "hole" and not any(r in pair for pair in plan.handles)
    ]
    if len(free_holes) < 2 * n_pairs:
        raise ConstructionError(
            f"need {2 * n_pairs} unglued holes, have {len(free_holes)}"
        )
    handles = list(plan.handles)
    curves = list(plan.curves)
    for _ in range(n_pairs):
        idx = len(handles)
        r1, r2 = free_holes.pop(0), free_holes.pop(0)
        handles.append((r1, r2))
        tag = LevelTag(ROLE_MERIDIAN, level=idx, handle_index=idx)
        curves.append(_MeridianCurve(tag, idx))
    return replace(plan, handles=tuple(handles), curves=tuple(curves))


def _plan_cap(plan: _Plan, gamma_only: bool = False) -> _Plan:
    n_seps = sum(1 for s in plan.strata if isinstance(s, _Sep))
    n_bands = sum(1 for s in plan.strata if isinstance(s, _Band))
    cap_index = 1 + sum(
        1 for s in plan.strata if isinstance(s, _Sep) and s.kind == "cap"
    )
    gamma_level = plan.next_level
    tilde_level = gamma_level + 1
    strata = plan.strata + (
        _Sep("cap", cap_index),
        _Band(tilde_level, "spacer" if gamma_only else "tilde"),
    )
    curves = list(plan.curves)
    for j in range(2 * plan.m + 1):
        tag = LevelTag(ROLE_GAMMA, level=gamma_level, slope=j, crosscap_index=cap_index)
        curves.append(_LineCurve(tag, j, band=None, cap_sep=n_seps))
    curves.append(
        _CoreCurve(
            LevelTag(ROLE_GAMMA_CORE, level=gamma_level, crosscap_index=cap_index),
            cap_sep=n_seps,
        )
    )
    if not gamma_only:
        for j in range(2 * plan.m + 1):
            tag = LevelTag(ROLE_TILDE, level=tilde_level, slope=j, crosscap_index=cap_index)
            curves.append(_LineCurve(tag, j, band=n_bands))
    return replace(plan, strata=strata, curves=tuple(curves), next_level=tilde_level + 1)


def mrt_base(m: int) -> ConstructionState:
    """The 2m+1 curves through one point of the genus-m orientable surface."""
    return _materialize(_plan_base(m))


def mrt_shift_step(st: ConstructionState) -> ConstructionState:
    """Copy-and-shift: a parallel family at a new level, one hole punched."""
    return _materialize(_plan_shift(st.plan))


def glue_handles_with_meridians(st: ConstructionState, n_pairs: int) -> ConstructionState:
    """Join hole pairs with cylinder faces and add their meridian curves."""
    return _materialize(_plan_glue(st.plan, n_pairs))


def crosscap_step(st: ConstructionState, gamma_only: bool = False) -> ConstructionState:
    """The non-orientable copy-and-shift: a cross-cap where the new copies
    crossed, making them one-sided, plus the cap's core, plus (unless
    ``gamma_only``) a further plain two-sided copy."""
    return _materialize(_plan_cap(st.plan, gamma_only))


# -- assembled builds --------------------------------------------------------


def _check_size(st: ConstructionState, expected: int, what: str):
    if len(st.family) != expected:
        raise ConstructionError(
            f"{what}: built {len(st.family)} curves, formula says {expected}"
        )


def _check_type(st: ConstructionState, expected: SurfaceType, what: str):
    got = classify_surface(st.schema)
    if got != expected:
        raise ConstructionError(f"{what}: schema classifies as {got}, wanted {expected}")


def mrt_sizes(k: int, b: int) -> tuple[int, int, int]:
    m = k // 2
    n = k - m
    return m, n, (2 * m + 1) * (2 * n + b + 1) + n


def build_mrt(k: int, b: int = 0) -> ConstructionState:
    """The orientable 1-system on S_{k,b}: base, 2n+b shifts, n handles."""
    if k < 2:
        raise ConstructionError(f"the orientable build needs k >= 2, got {k}")
    if b < 0:
        raise ConstructionError("negative boundary count")
    m, n, size = mrt_sizes(k, b)
    plan = _plan_base(m)
    for _ in range(2 * n + b):
        plan = _plan_shift(plan)
    plan = _plan_glue(plan, n)
    st = _materialize(plan)
    _check_size(st, size, f"MRT k={k} b={b}")
    _check_type(st, SurfaceType(True, k, b), f"MRT k={k} b={b}")
    return st


def theorem_a_default_k(g: int) -> int:
    k = max(2, g // 3)
    while g - 2 * k < 1:
        k -= 1
    return k


def theorem_a_size(g: int, b: int, k: int) -> int:
    return mrt_sizes(k, b)[2] + (g - 2 * k) * (4 * (k // 2) + 3)


def build_theorem_a(g: int, b: int = 0, k: int | None = None) -> ConstructionState:
    """The mixed 1-system on N_{g,b}: MRT then g-2k cross-cap steps."""
    if g < 5:
        raise ConstructionError(
            f"g={g} unsupported: the default base degenerates below g=5 "
            "(k >= 2 requires g - 2k >= 1)"
        )
    if k is None:
        k = theorem_a_default_k(g)
    if k < 2 or g - 2 * k < 1:
        raise ConstructionError(f"need k >= 2 and g - 2k >= 1, got g={g} k={k}")
    m, n, _ = mrt_sizes(k, b)
    plan = _plan_base(m)
    for _ in range(2 * n + b):
        plan = _plan_shift(plan)
    plan = _plan_glue(plan, n)
    for _ in range(g - 2 * k):
        plan = _plan_cap(plan)
    st = _materialize(plan)
    _check_size(st, theorem_a_size(g, b, k), f"theorem A g={g} b={b} k={k}")
    _check_type(st, SurfaceType(False, g, b), f"theorem A g={g} b={b} k={k}")
    return st


def theorem_b_default_k(g: int) -> int:
    k = max(1, g // 4)
    while g - 2 * k < 1:
        k -= 1
    return k


def theorem_b_size(g: int, k: int) -> int:
    return (g - 2 * k) * (2 * k + 2)


def build_theorem_b(g: int, k: int | None = None) -> ConstructionState:
    """The all-one-sided 1-system on N_g: gamma families only.

    The base curves are built anyway and kept aside as witnesses for the
    verifier's auxiliary-curve certificates; they are not part of the family.
    """
    if g < 3:
        raise ConstructionError(f"g={g} unsupported: need at least one cap and k >= 1")
    if k is None:
        k = theorem_b_default_k(g)
    if k < 1 or g - 2 * k < 1:
        raise ConstructionError(f"need k >= 1 and g - 2k >= 1, got g={g} k={k}")
    plan = _plan_base(k, aux=True)
    for _ in range(g - 2 * k):
        plan = _plan_cap(plan, gamma_only=True)
    st = _materialize(plan)
    _check_size(st, theorem_b_size(g, k), f"theorem B g={g} k={k}")
    _check_type(st, SurfaceType(False, g, 0), f"theorem B g={g} k={k}")
    return st


# -- size formulas and the k optimization -------------------------------------


def theorem_a_bound(g: int, b: int = 0) -> F:
    return F(1, 3) * g * g + F(5, 18) * g - 1 + F(b, 3) * (g - 2)


def theorem_b_bound(g: int) -> F:
    return F(1, 4) * (g * g + 3 * g + 2)


def optimal_k_a(g: int, b: int = 0) -> int:
    legal = [k for k in range(2, g) if g - 2 * k >= 1]
    if not legal:
        raise ConstructionError(f"no legal k for theorem A at g={g}")
    return max(legal, key=lambda k: (theorem_a_size(g, b, k), -k))


def optimal_k_b(g: int) -> int:
    legal = [k for k in range(1, g) if g - 2 * k >= 1]
    if not legal:
        raise ConstructionError(f"no legal k for theorem B at g={g}")
    return max(legal, key=lambda k: (theorem_b_size(g, k), -k))


def predicted_sizes(g: int, b: int = 0, k: int | None = None) -> dict:
    """Exact counts and bounds for the families at the given parameters."""
    k_a = theorem_a_default_k(g) if k is None else k
    k_b = theorem_b_default_k(g) if k is None else k
    out = {
        "g": g,
        "b": b,
        "k_a": k_a,
        "k_b": k_b,
        "size_C": mrt_sizes(k_a, b)[2],
        "size_Gamma": theorem_a_size(g, b, k_a) if g - 2 * k_a >= 1 else None,
        "size_Omega": theorem_b_size(g, k_b) if g - 2 * k_b >= 1 else None,
        "bound_A": theorem_a_bound(g, b),
        "bound_B": theorem_b_bound(g),
    }
    try:
        out["optimal_k_A"] = optimal_k_a(g, b)
    except ConstructionError:
        out["optimal_k_A"] = None
    try:
        out["optimal_k_B"] = optimal_k_b(g)
    except ConstructionError:
        out["optimal_k_B"] = None
    return out
