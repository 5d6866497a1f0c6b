"""Independent geometric crossing oracle used by the test suite.

Embeds the boundary of a face on the unit circle with rational coordinates
(Pythagorean parameterization), preserving the cyclic boundary order, and
counts proper straight-segment intersections with exact rational orientation
predicates.  Points go on the circle itself rather than on straight polygon
sides so that two points on one side are still in strictly convex position
(a chord with both ends on one side must bow into the interior; a straight
side would make it degenerate).  Deliberately independent of the
combinatorial interleaving kernel it checks.
"""

from __future__ import annotations

from fractions import Fraction

from crosscap.curve import Chord, CurvePoint

Point = tuple[Fraction, Fraction]


def _circle_point(t: Fraction) -> Point:
    """Rational point on the unit circle; angle is monotone in t."""
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def embed_boundary_point(face_size: int, p: CurvePoint) -> Point:
    """Map a boundary point to the circle, preserving boundary order.

    The boundary parameter ``occ_index + pos`` runs over (0, n); an affine
    map sends it into the tan-half-angle line, which traces the circle
    monotonically.
    """
    theta = p.occ[1] + p.pos
    t = 4 * (2 * theta - face_size) / face_size
    return _circle_point(Fraction(t))


def _orient(p: Point, q: Point, r: Point) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Proper (interior) intersection of two segments, exact arithmetic."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def geometric_crossing(face_size: int, a: Chord, b: Chord) -> bool:
    """Do two chords of an n-gon face cross in the convex embedding?"""
    pa = [embed_boundary_point(face_size, p) for p in a.endpoints]
    pb = [embed_boundary_point(face_size, p) for p in b.endpoints]
    return segments_cross(pa[0], pa[1], pb[0], pb[1])
