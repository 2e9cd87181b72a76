"""Newton polygons, edge data and smooth complete 2-D fans.

All geometry is over the integers; nothing here touches floating point.
Lattice vectors are plain ``(int, int)`` tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence

from .arith import LaurentPoly2, UniPoly

Vec = tuple[int, int]


def det(v: Vec, w: Vec) -> int:
    return v[0] * w[1] - v[1] * w[0]


def dot(v: Vec, w: Vec) -> int:
    return v[0] * w[0] + v[1] * w[1]


def is_primitive(v: Vec) -> bool:
    return gcd(v[0], v[1]) == 1


def primitive(v: Vec) -> Vec:
    g = gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g)


def _half(v: Vec) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def angle_cmp(v: Vec, w: Vec) -> int:
    """Compare directions by angle in ``[0, 2*pi)`` measured from ``(1, 0)``."""
    hv, hw = _half(v), _half(w)
    if hv != hw:
        return -1 if hv < hw else 1
    d = det(v, w)
    if d > 0:
        return -1
    if d < 0:
        return 1
    return 0


def sort_by_angle(vs: Iterable[Vec]) -> list[Vec]:
    return sorted(vs, key=cmp_to_key(angle_cmp))


# --- Newton polygons -------------------------------------------------------


@dataclass(frozen=True)
class Polygon2:
    """Lattice polygon given by its vertices.

    Full-dimensional polygons are listed counterclockwise starting from the
    lowest (then leftmost) vertex; segments by their two endpoints in the
    same order; a point by itself.
    """

    vertices: tuple[Vec, ...]

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def __len__(self):
        return len(self.vertices)


def convex_hull(points: Iterable[Vec]) -> Polygon2:
    """Extreme points of a finite lattice point set (monotone chain)."""
    pts = sorted(set((int(a), int(b)) for a, b in points))
    if not pts:
        raise ValueError("convex hull of an empty set")
    if len(pts) == 1:
        return Polygon2((pts[0],))

    def half_chain(seq):
        chain: list[Vec] = []
        for p in seq:
            while len(chain) >= 2 and det(
                (chain[-1][0] - chain[-2][0], chain[-1][1] - chain[-2][1]),
                (p[0] - chain[-2][0], p[1] - chain[-2][1]),
            ) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half_chain(pts)
    upper = half_chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 or len(set(hull)) == 2:
        ends = sorted(set(hull), key=lambda p: (p[1], p[0]))
        return Polygon2(tuple(ends))
    start = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
    return Polygon2(tuple(hull[start:] + hull[:start]))


def newton_polygon(f: LaurentPoly2) -> Polygon2:
    if f.is_zero():
        raise ValueError("newton_polygon: zero polynomial")
    return convex_hull(f.support())


def minkowski_sum(a: Polygon2, b: Polygon2) -> Polygon2:
    return convex_hull((p[0] + q[0], p[1] + q[1]) for p in a.vertices for q in b.vertices)


@dataclass(frozen=True)
class EdgeDatum:
    """One edge of a Newton polygon, oriented so that ``q`` follows ``p``.

    ``rho`` is the primitive inward normal, ``lam`` the minimum of
    ``<., rho>`` over the polygon, ``direction`` the primitive lattice
    step from ``p`` towards ``q`` and ``steps`` the lattice length.
    """

    rho: Vec
    lam: int
    p: Vec
    q: Vec
    direction: Vec
    steps: int


def edge_data(gamma: Polygon2) -> list[EdgeDatum]:
    """Edges of ``gamma`` in counterclockwise order.

    A segment contributes both of its sides, with opposite normals.
    """
    vs = gamma.vertices
    if len(vs) < 2:
        raise ValueError("edge_data: a point polygon has no edges")
    out = []
    n = len(vs)
    for i in range(n):
        p, q = vs[i], vs[(i + 1) % n]
        e = (q[0] - p[0], q[1] - p[1])
        steps = gcd(e[0], e[1])
        step = (e[0] // steps, e[1] // steps)
        rho = (-step[1], step[0])
        out.append(EdgeDatum(rho, dot(p, rho), p, q, (rho[1], -rho[0]), steps))
    return out


def _is_edge_of(f: LaurentPoly2, e: EdgeDatum) -> bool:
    dx, dy = e.direction
    if (e.rho[1], -e.rho[0]) != (dx, dy) or e.steps < 1:
        return False
    if (e.p[0] + e.steps * dx, e.p[1] + e.steps * dy) != e.q:
        return False
    if f.coeff(e.p) == 0 or f.coeff(e.q) == 0 or dot(e.p, e.rho) != e.lam:
        return False
    # supporting line, and p, q are the extreme support points on it
    for v in f.support():
        h = dot(v, e.rho)
        if h < e.lam:
            return False
        if h == e.lam and not 0 <= dot((v[0] - e.p[0], v[1] - e.p[1]), (dx, dy)) <= e.steps * (dx * dx + dy * dy):
            return False
    return True


def edge_polynomial(f: LaurentPoly2, e: EdgeDatum) -> UniPoly:
    """Coefficients of ``f`` read along the edge from ``p`` to ``q``.

    The edge coordinate is the monomial ``x^v y^-u`` for ``rho = (u, v)``,
    so constant term is ``a_p`` and leading coefficient ``a_q``.
    """
    if not _is_edge_of(f, e):
        raise ValueError(f"edge_polynomial: edge {e.p}->{e.q} is not an edge of the Newton polygon")
    dx, dy = e.direction
    return UniPoly(f.coeff((e.p[0] + m * dx, e.p[1] + m * dy)) for m in range(e.steps + 1))


# --- fans --------------------------------------------------------------------


@dataclass(frozen=True)
class Fan2D:
    """Complete fan in the plane given by its rays, counterclockwise."""

    rays: tuple[Vec, ...]

    def adjacent_determinants(self) -> list[int]:
        rs = self.rays
        return [det(rs[i], rs[(i + 1) % len(rs)]) for i in range(len(rs))]

    def is_complete(self) -> bool:
        rs = list(self.rays)
        if len(rs) < 3 or not all(is_primitive(r) for r in rs):
            return False
        # exactly one turn: strictly increasing angles, every gap below pi
        if any(angle_cmp(rs[i], rs[i + 1]) >= 0 for i in range(len(rs) - 1)):
            return False
        return all(d > 0 for d in self.adjacent_determinants())

    def is_smooth(self) -> bool:
        return all(d == 1 for d in self.adjacent_determinants())


P2_FAN = Fan2D(((1, 0), (0, 1), (-1, -1)))


def _resolving_ray(v: Vec, w: Vec) -> Vec:
    # Lattice point u = (a*v + w)/d with det(v, u) = 1 and det(u, w) = a < d.
    d = det(v, w)
    for a in range(1, d):
        x, y = a * v[0] + w[0], a * v[1] + w[1]
        if x % d == 0 and y % d == 0:
            return (x // d, y // d)
    raise AssertionError(f"no resolving ray between {v} and {w}")


def smooth_complete_fan(required_rays: Sequence[Vec]) -> Fan2D:
    """Smallest-effort smooth complete fan containing ``required_rays``.

    Gaps of angle at least pi are first split (by ``-v`` or a quarter
    turn); then each cone of determinant ``d > 1`` gets the lattice point
    ``u`` with ``det(v, u) = 1``, which strictly lowers the determinant of
    the remaining piece.
    """
    rays = [(int(a), int(b)) for a, b in required_rays]
    for r in rays:
        if r == (0, 0) or not is_primitive(r):
            raise ValueError(f"smooth_complete_fan: ray {list(r)} is not primitive")
    if len(set(rays)) != len(rays):
        raise ValueError("smooth_complete_fan: rays must be pairwise distinct")
    if not rays:
        return P2_FAN

    rays = sort_by_angle(rays)
    changed = True
    while changed:
        changed = False
        n = len(rays)
        for i in range(n):
            v, w = rays[i], rays[(i + 1) % n]
            if n == 1 or det(v, w) < 0:
                new = (-v[0], -v[1])
            elif det(v, w) == 0:
                new = (-v[1], v[0])
            else:
                continue
            rays = sort_by_angle(rays + [new])
            changed = True
            break

    i = 0
    while i < len(rays):
        v, w = rays[i], rays[(i + 1) % len(rays)]
        if det(v, w) > 1:
            rays.insert(i + 1, _resolving_ray(v, w))
        else:
            i += 1
    # an insertion in the wrap-around cone may land past angle zero
    return Fan2D(tuple(sort_by_angle(rays)))
