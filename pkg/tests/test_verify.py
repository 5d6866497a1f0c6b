"""The verifier: oracle, certificates, reports, enumeration."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest

from crosscap.construct import (
    LevelTag,
    build_mrt,
    build_theorem_a,
    build_theorem_b,
    crosscap_step,
    mrt_base,
)
from crosscap.curve import (
    Chord,
    Curve,
    CurveError,
    CurveFamily,
    CurvePoint,
    cap_chain_curve,
    core_curve,
    crossings,
    mod2_intersection,
    sidedness,
)
from crosscap.cut import cut_along, is_essential
from crosscap.schema import SurfaceType, standard_schema
from crosscap.verify import (
    BudgetExceeded,
    NO_ANNULUS,
    ODD_CROSSING,
    PARITY_PROFILE,
    SIDEDNESS_MISMATCH,
    WITNESS_PARITY,
    enumerate_small_curves,
    expected_crossings,
    report_to_json,
    verify_construction,
    verify_one_system,
)

F = Fraction


def T(role, level=0, slope=None, cap=None, handle=None):
    return LevelTag(role, level, slope=slope, crosscap_index=cap, handle_index=handle)


def test_expected_crossings_oracle():
    assert expected_crossings(T("base", 0, 2), T("tilde", 5, 2, cap=1)) == 0
    assert expected_crossings(T("gamma", 3, 1, cap=3), T("gamma", 3, 2, cap=3)) == 0
    assert expected_crossings(T("base", 0, 0), T("tilde", 1, 1, cap=1)) == 1
    assert expected_crossings(T("gamma", 3, 1, cap=3), T("gamma", 5, 1, cap=4)) == 0
    assert expected_crossings(T("gamma", 3, 1, cap=3), T("gamma", 5, 2, cap=4)) == 1
    # A cap's core meets curves through its own cap exactly once (the
    # one-pass-is-essential argument), and nothing else.
    assert expected_crossings(T("gamma_core", 3, cap=2), T("gamma", 3, 1, cap=2)) == 1
    assert expected_crossings(T("gamma_core", 3, cap=2), T("gamma", 5, 1, cap=3)) == 0
    assert expected_crossings(T("gamma_core", 3, cap=2), T("gamma_core", 5, cap=3)) == 0
    assert expected_crossings(T("meridian", 0, handle=0), T("base", 0, 1)) == 0
    with pytest.raises(CurveError):
        expected_crossings("not a tag", T("base", 0, 1))


def test_parity_coherence_on_build():
    st = crosscap_step(mrt_base(1))
    tags = st.family.tags
    for a, b in itertools.combinations(st.family.curves, 2):
        assert mod2_intersection(a, b) == expected_crossings(tags[a.id], tags[b.id]) % 2


def test_verify_passes_on_clean_build():
    rep = verify_construction(build_theorem_a(9, 0, 4))
    assert rep.is_1_system and rep.matrix_ok and rep.sizes_ok
    assert rep.max_crossings == 1
    assert rep.surface == "non-orientable g=9 b=0"
    kinds = {p.certificate for p in rep.pairs}
    assert kinds <= {ODD_CROSSING, SIDEDNESS_MISMATCH, PARITY_PROFILE,
                     WITNESS_PARITY, NO_ANNULUS}
    assert ODD_CROSSING in kinds and NO_ANNULUS in kinds


def test_verify_workers_deterministic():
    st = build_theorem_b(8)
    seq = verify_construction(st)
    par = verify_construction(st, workers=4)
    assert report_to_json(seq) == report_to_json(par)


def test_duplicate_pushoff_fails():
    s = standard_schema(SurfaceType(False, 2, 0))
    a = cap_chain_curve(s, ["x1", "x2"], positions=[F(1, 3), F(2, 3)], curve_id="a")
    b = cap_chain_curve(s, ["x1", "x2"], positions=[F(2, 5), F(3, 5)], curve_id="b")
    rep = verify_one_system(CurveFamily(s, [a, b]))
    assert not rep.is_1_system
    assert any("duplicate" in f for f in rep.failures)


def test_double_crossing_pair_fails():
    # Core of a cap against a sloppily positioned cap encircler: both
    # simple, realized crossings 2, even and positive, so no certificate.
    s = standard_schema(SurfaceType(False, 2, 0))
    o1, o2 = s.pairing["x1"]
    a = core_curve(s, "x1", pos=F(1, 2), curve_id="a")
    z = Curve(
        "z",
        (
            Chord("P", (CurvePoint(o2, F(1, 3)), CurvePoint(o1, F(2, 5)))),
            Chord("P", (CurvePoint(o2, F(2, 5)), CurvePoint(o1, F(1, 3)))),
        ),
    )
    rep = verify_one_system(CurveFamily(s, [a, z]))
    assert not rep.is_1_system
    assert rep.max_crossings == 2
    assert any("2 crossings" in f for f in rep.failures)
    assert any(p.certificate == "unknown" for p in rep.pairs)


def test_gamma_fast_path_agrees_with_cut():
    st = crosscap_step(mrt_base(1))
    tags = st.family.tags
    for c in st.family.curves:
        if tags[c.id].role != "gamma":
            continue
        res = is_essential(st.schema, c)
        assert res.essential and res.method == "one_sided"
        # slow path: the cut exhibits no disc or Möbius side either
        cut = cut_along(st.schema, [c])
        for i, t in enumerate(cut.component_types):
            news = cut.new_circles_in(i)
            if len(news) == 1 and cut.original_circles_in(i) == 0:
                assert t not in (SurfaceType(True, 0, 1), SurfaceType(False, 1, 1))


def test_sidedness_two_ways_on_build():
    st = build_theorem_b(5)
    for c in st.family.curves:
        assert sidedness(st.schema, c) == "one_sided"
        assert cut_along(st.schema, [c]).circles_of_curve(c.id) == 1


def test_report_json_stable_field_order():
    rep = verify_construction(build_theorem_b(5))
    doc = json.loads(report_to_json(rep))
    assert list(doc.keys()) == [
        "count", "is_1_system", "max_crossings", "surface",
        "matrix_ok", "sizes_ok", "failures", "curves", "pairs",
    ]


def test_enumerate_n1_contains_core():
    s = standard_schema(SurfaceType(False, 1, 0))
    curves = enumerate_small_curves(s, 2)
    cores = [
        c
        for c in curves
        if len(c.chords) == 1 and sidedness(s, c) == "one_sided"
    ]
    assert len(cores) == 1
    # In the projective plane the core is the only essential class; the
    # two-chord curves bound discs or Möbius bands.
    for c in curves:
        if c not in cores:
            assert not is_essential(s, c).essential


def test_enumerate_klein_realizes_four_behaviors():
    from crosscap.curve import crosscap_passes
    from crosscap.cut import cut_classification

    s = standard_schema(SurfaceType(False, 2, 0))
    sigs = set()
    for c in enumerate_small_curves(s, 4):
        passes = crosscap_passes(s, c)
        parity = tuple(sorted((k, v % 2) for k, v in passes.items()))
        kinds = tuple(sorted(str(t) for t in cut_classification(s, c)))
        sigs.add((sidedness(s, c), parity, kinds))
    # the four Fig-style behaviors: two cores, the through-both curve, the
    # cap encircler
    assert ("one_sided", (("x1", 1), ("x2", 0)), ("non-orientable g=1 b=1",)) in sigs
    assert ("one_sided", (("x1", 0), ("x2", 1)), ("non-orientable g=1 b=1",)) in sigs
    assert ("two_sided", (("x1", 1), ("x2", 1)), ("orientable k=0 b=2",)) in sigs
    assert (
        "two_sided",
        (("x1", 0), ("x2", 0)),
        ("non-orientable g=1 b=1", "non-orientable g=1 b=1"),
    ) in sigs


def test_enumerate_budget_error():
    s = standard_schema(SurfaceType(False, 4, 0))
    with pytest.raises(BudgetExceeded):
        enumerate_small_curves(s, 8, budget=50)


def test_enumerate_rejects_big_schemas():
    s = standard_schema(SurfaceType(False, 7, 0))  # 14 edge occurrences, 7 labels
    with pytest.raises(CurveError):
        enumerate_small_curves(s, 9)
