"""Chord curves: validity, crossing kernel, sidedness, cap passes."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from crosscap.curve import (
    Chord,
    Curve,
    CurveError,
    CurveFamily,
    CurvePoint,
    GenericityError,
    cap_chain_curve,
    core_curve,
    crosscap_passes,
    crosscap_parity_profile,
    crossings,
    dump_family,
    is_simple,
    load_family,
    mod2_intersection,
    sidedness,
    validate_curve,
)
from crosscap.schema import SurfaceType, schema_from_words, standard_schema

from geom_oracle import geometric_crossing

F = Fraction


def n2_schema():
    return standard_schema(SurfaceType(False, 2, 0))  # word x1 x1 x2 x2


def test_core_curve_valid_on_rp2():
    s = schema_from_words("a a")
    c = core_curve(s, "a")
    assert validate_curve(s, c).valid
    assert is_simple(c)
    assert sidedness(s, c) == "one_sided"
    assert crosscap_passes(s, c) == {"a": 1}


def test_corner_contact_rejected():
    with pytest.raises(CurveError):
        CurvePoint(("P", 0), F(0))


def test_closure_mismatch_reported():
    s = schema_from_words("a a")
    bad = Curve(
        "bad",
        (Chord("F0", (CurvePoint(("F0", 1), F(1, 3)), CurvePoint(("F0", 0), F(2, 3)))),),
    )
    report = validate_curve(s, bad)
    assert not report.valid
    assert any("position mismatch" in v for v in report.violations)


def test_single_chord_curves_are_simple():
    s = n2_schema()
    assert is_simple(core_curve(s, "x1"))


def test_parallel_chords_simple_interleaved_not():
    # Two chords across a square face: parallel vs alternating endpoints.
    a = Chord("P", (CurvePoint(("P", 0), F(1, 3)), CurvePoint(("P", 2), F(2, 3))))
    b = Chord("P", (CurvePoint(("P", 0), F(2, 3)), CurvePoint(("P", 2), F(1, 3))))
    cross = Chord("P", (CurvePoint(("P", 1), F(1, 2)), CurvePoint(("P", 3), F(1, 2))))
    parallel = Curve("p", (a, b))
    assert is_simple(parallel)
    alternating = Curve("x", (a, cross))
    assert not is_simple(alternating)


def test_crossings_square_face():
    a = Curve("a", (Chord("P", (CurvePoint(("P", 0), F(1, 2)), CurvePoint(("P", 2), F(1, 2)))),))
    b = Curve("b", (Chord("P", (CurvePoint(("P", 1), F(1, 2)), CurvePoint(("P", 3), F(1, 2)))),))
    assert crossings(a, b) == 1
    assert crossings(b, a) == 1
    assert mod2_intersection(a, b) == 1
    shifted = Curve(
        "c", (Chord("P", (CurvePoint(("P", 0), F(1, 3)), CurvePoint(("P", 2), F(2, 3)))),)
    )
    assert crossings(a, shifted) == 0


def test_klein_alpha_two_sided_beta_one_sided():
    s = n2_schema()
    alpha = cap_chain_curve(s, ["x1", "x2"], curve_id="alpha")
    beta = core_curve(s, "x1", pos=F(1, 3), curve_id="beta")
    assert validate_curve(s, alpha).valid
    assert is_simple(alpha)
    assert sidedness(s, alpha) == "two_sided"
    assert sidedness(s, beta) == "one_sided"
    assert crosscap_passes(s, alpha) == {"x1": 1, "x2": 1}
    assert crosscap_passes(s, beta) == {"x1": 1, "x2": 0}
    assert crosscap_parity_profile(s, alpha) == (1, 1)
    assert crossings(alpha, beta) == 1


def test_any_curve_on_orientable_schema_two_sided():
    s = schema_from_words("a b a- b-")
    one = Curve(
        "v", (Chord("F0", (CurvePoint(("F0", 0), F(1, 2)), CurvePoint(("F0", 2), F(1, 2)))),)
    )
    assert sidedness(s, one) == "two_sided"


def test_family_genericity_enforced():
    s = n2_schema()
    a = core_curve(s, "x1", pos=F(1, 2), curve_id="a")
    b = core_curve(s, "x1", pos=F(1, 2), curve_id="b")
    with pytest.raises(GenericityError):
        CurveFamily(s, [a, b])
    ok = CurveFamily(s, [a, core_curve(s, "x1", pos=F(1, 3), curve_id="b")])
    assert len(ok) == 2


def random_chord(rng: random.Random, n: int, salt: int) -> Chord:
    i = rng.randrange(n)
    j = rng.randrange(n)
    p = CurvePoint(("P", i), F(rng.randrange(1, 512), 512) + F(salt, 512 * 7919))
    q = CurvePoint(("P", j), F(rng.randrange(1, 512), 512) + F(salt + 1, 512 * 7919))
    if p.occ == q.occ and p.pos == q.pos:
        q = CurvePoint(q.occ, q.pos + F(1, 512 * 7919 * 2))
    return Chord("P", (p, q))


def test_interleaving_matches_geometric_oracle():
    """Randomized equivalence with the exact convex-embedding oracle."""
    from crosscap.curve import _interleave

    rng = random.Random(20260810)
    checked = 0
    for _ in range(400):
        n = rng.randrange(3, 12)
        a = random_chord(rng, n, 2)
        b = random_chord(rng, n, 4)
        keys = {(p.occ, p.pos) for p in (*a.endpoints, *b.endpoints)}
        if len(keys) < 4:
            continue
        assert _interleave(a, b) == geometric_crossing(n, a, b)
        checked += 1
    assert checked > 350


def _reparam(curve: Curve, schema) -> Curve:
    """Common order-preserving reparameterization of every edge."""

    def f(t: Fraction) -> Fraction:
        return t / (2 - t)

    new_chords = []
    for ch in curve.chords:
        pts = []
        for p in ch.endpoints:
            label = schema.occ_edge(p.occ)[0]
            o1 = schema.pairing[label][0] if label in schema.pairing else p.occ
            if p.occ == o1 or schema.flag(label) == "same":
                pts.append(CurvePoint(p.occ, f(p.pos)))
            else:
                pts.append(CurvePoint(p.occ, 1 - f(1 - p.pos)))
        new_chords.append(Chord(ch.face_id, (pts[0], pts[1])))
    return Curve(curve.id, tuple(new_chords))


def test_reparameterization_stability():
    s = n2_schema()
    alpha = cap_chain_curve(s, ["x1", "x2"], positions=[F(1, 3), F(2, 5)], curve_id="alpha")
    beta = core_curve(s, "x1", pos=F(4, 7), curve_id="beta")
    a2, b2 = _reparam(alpha, s), _reparam(beta, s)
    assert validate_curve(s, a2).valid
    assert validate_curve(s, b2).valid
    assert crossings(alpha, beta) == crossings(a2, b2)
    assert sidedness(s, a2) == sidedness(s, alpha)
    assert is_simple(a2) == is_simple(alpha)


def test_family_json_round_trip():
    s = n2_schema()
    fam = CurveFamily(
        s,
        [
            cap_chain_curve(s, ["x1", "x2"], positions=[F(1, 3), F(2, 5)], curve_id="alpha"),
            core_curve(s, "x1", pos=F(4, 7), curve_id="beta"),
        ],
    )
    text = dump_family(fam)
    assert '"4/7"' in text
    back = load_family(text)
    assert [c.id for c in back.curves] == ["alpha", "beta"]
    assert back.curves[1].chords == fam.curves[1].chords
    assert dump_family(back) == text
