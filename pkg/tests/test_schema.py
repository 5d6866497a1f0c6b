"""Classification of gluing schemas against known surfaces."""

from __future__ import annotations

import random

import pytest

from crosscap.schema import (
    FaceWord,
    SchemaError,
    SurfaceSchema,
    SurfaceType,
    boundary_cycles,
    classify_surface,
    connected_components,
    dump_schema,
    euler_characteristic,
    is_orientable,
    load_schema,
    schema_from_words,
    standard_schema,
    validate_schema,
)

TORUS = "a b a- b-"
RP2 = "a a"
KLEIN = "a b a b-"
MOBIUS = "x x e"


def test_multiplicity_violation_rejected():
    with pytest.raises(SchemaError):
        schema_from_words("a a a")


def test_flag_consistency_enforced():
    s = schema_from_words(RP2)
    assert s.flag("a") == "same"
    with pytest.raises(SchemaError):
        SurfaceSchema(s.faces, flags={"a": "reversed"})


def test_validate_reports_disconnected():
    s = schema_from_words("a a", "b b")
    report = validate_schema(s)
    assert not report.valid
    assert any("connected" in v for v in report.violations)
    assert validate_schema(s, require_connected=False).valid


def test_euler_characteristic_known_words():
    assert euler_characteristic(schema_from_words(TORUS)) == 0
    assert euler_characteristic(schema_from_words(RP2)) == 1
    assert euler_characteristic(schema_from_words(MOBIUS)) == 0
    assert euler_characteristic(schema_from_words("a a-")) == 2  # sphere


def test_boundary_cycles_counts():
    assert len(boundary_cycles(schema_from_words(MOBIUS))) == 1
    assert len(boundary_cycles(schema_from_words(KLEIN))) == 0
    pants = standard_schema(SurfaceType(True, 0, 3))
    assert len(boundary_cycles(pants)) == 3
    # A bare free edge appended to a closed word only subdivides; the tube
    # blocks are what create new circles.
    assert len(boundary_cycles(schema_from_words("x x e1 e2"))) == 1


def test_orientability():
    assert is_orientable(schema_from_words(TORUS))
    assert not is_orientable(schema_from_words(RP2))
    assert not is_orientable(schema_from_words(KLEIN))
    assert is_orientable(schema_from_words("a a-"))


def test_classify_klein_and_relatives():
    assert classify_surface(schema_from_words("a a b b")) == SurfaceType(False, 2, 0)
    # torus # RP^2 = N_3
    assert classify_surface(schema_from_words("a b a- b- c c")) == SurfaceType(False, 3, 0)
    assert classify_surface(schema_from_words(MOBIUS)) == SurfaceType(False, 1, 1)
    assert classify_surface(schema_from_words(KLEIN)) == SurfaceType(False, 2, 0)
    assert classify_surface(schema_from_words(TORUS)) == SurfaceType(True, 1, 0)


def test_connected_components_split():
    s = schema_from_words(TORUS, "c c")
    parts = connected_components(s)
    assert len(parts) == 2
    types = sorted(str(classify_surface(p)) for p in parts)
    assert types == ["non-orientable g=1 b=0", "orientable k=1 b=0"]
    assert connected_components(SurfaceSchema([])) == []
    assert len(connected_components(schema_from_words(TORUS))) == 1


@pytest.mark.parametrize(
    "t",
    [
        SurfaceType(True, 0, 0),
        SurfaceType(True, 0, 1),
        SurfaceType(True, 0, 2),
        SurfaceType(True, 1, 0),
        SurfaceType(True, 2, 3),
        SurfaceType(True, 3, 1),
        SurfaceType(False, 1, 0),
        SurfaceType(False, 1, 1),
        SurfaceType(False, 2, 0),
        SurfaceType(False, 3, 1),
        SurfaceType(False, 5, 2),
        SurfaceType(False, 7, 3),
    ],
)
def test_standard_schema_round_trip(t):
    assert classify_surface(standard_schema(t)) == t


def test_standard_schema_rejects_illegal_type():
    with pytest.raises(SchemaError):
        SurfaceType(False, 0, 1)


def test_chi_formula_consistency():
    for t in [SurfaceType(True, 2, 1), SurfaceType(False, 4, 2)]:
        s = standard_schema(t)
        assert euler_characteristic(s) == t.euler_characteristic


def _relabel(s: SurfaceSchema, prefix: str) -> SurfaceSchema:
    faces = [
        FaceWord(f.face_id, tuple((prefix + l, d) for l, d in f.word)) for f in s.faces
    ]
    return SurfaceSchema(faces)


def _rotate(s: SurfaceSchema, k: int) -> SurfaceSchema:
    faces = []
    for f in s.faces:
        r = k % len(f.word)
        faces.append(FaceWord(f.face_id, f.word[r:] + f.word[:r]))
    return SurfaceSchema(faces)


def test_word_move_invariance():
    rng = random.Random(7)
    samples = [
        standard_schema(SurfaceType(False, 3, 2)),
        standard_schema(SurfaceType(True, 2, 1)),
        schema_from_words(KLEIN),
    ]
    for s in samples:
        t = classify_surface(s)
        for _ in range(5):
            moved = _rotate(_relabel(s, "r_"), rng.randrange(1, 8))
            assert classify_surface(moved) == t


def test_connect_sum_arithmetic():
    # Glue standard N_{a,1} and N_{b,1} along their free edges: N_{a+b}.
    for a in range(1, 5):
        for b in range(1, 5):
            f1 = [(f"x{i}", "+") for i in range(1, a + 1) for _ in (0, 1)]
            f2 = [(f"y{i}", "+") for i in range(1, b + 1) for _ in (0, 1)]
            shared = [("e", "+")]
            s = SurfaceSchema(
                [
                    FaceWord("P", tuple(f1 + shared)),
                    FaceWord("Q", tuple(f2 + [("e", "-")])),
                ]
            )
            assert classify_surface(s) == SurfaceType(False, a + b, 0)


def test_json_round_trip():
    s = standard_schema(SurfaceType(False, 3, 2))
    text = dump_schema(s)
    back = load_schema(text)
    assert back == s
    assert dump_schema(back) == text
