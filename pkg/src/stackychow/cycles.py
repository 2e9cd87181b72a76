"""Zero-cycles on R = P^1 minus {0, -1, oo}, the toric boundary map from
curves on the two-torus, and the norm map to Q*.

A zero-cycle is kept in a canonical form: each rational point on its own,
then one monic square-free polynomial per distinct multiplicity holding
the remaining points, all pairwise coprime.  Two cycles are equal exactly
when their canonical forms agree.  Only rational roots are ever split off,
so no full factorization over Q is needed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import LaurentPoly2, UniPoly, gcd_free_basis, product, rational_roots, squarefree_decomposition
from .toric import EdgeDatum, edge_data, edge_polynomial, newton_polygon

log = logging.getLogger(__name__)

T_PLUS_ONE = UniPoly([1, 1])


def _check_in_r(b: UniPoly) -> None:
    if b(0) == 0:
        raise ValueError(f"cycle component {b} vanishes at 0, which is not in R")
    if b(-1) == 0:
        raise ValueError(f"cycle component {b} vanishes at -1, which is not in R")


class ZeroCycleOnR:
    """Formal Z-combination of closed points of R over Q (immutable)."""

    __slots__ = ("_components",)

    def __init__(self, components: Iterable[tuple[UniPoly, int]] = ()):
        points: dict[Fraction, int] = {}
        rest: list[tuple[UniPoly, int]] = []
        for g, m in components:
            m = int(m)
            if not m:
                continue
            if g.is_zero() or g.degree < 1:
                raise ValueError(f"cycle component {g} has no zeros")
            if g.degree == 1:
                r = -g.coeffs[0] / g.coeffs[1]
                points[r] = points.get(r, 0) + m
                continue
            for r in rational_roots(g):
                lin = UniPoly.linear_root(r)
                q, rem = divmod(g, lin)
                while rem.is_zero():
                    g = q
                    points[r] = points.get(r, 0) + m
                    q, rem = divmod(g, lin)
            if g.degree > 0:
                rest.extend((sq, k * m) for sq, k in squarefree_decomposition(g))

        comps = []
        for r, m in points.items():
            if m:
                if r == 0 or r == -1:
                    raise ValueError(f"cycle has the point {r}, which is not in R")
                comps.append((UniPoly.linear_root(r), m))
        by_mult: dict[int, list[UniPoly]] = {}
        for b, exps in gcd_free_basis([g for g, _ in rest]):
            m = sum(e * pm for e, (_, pm) in zip(exps, rest))
            if m:
                _check_in_r(b)
                by_mult.setdefault(m, []).append(b)
        comps.extend((product(bs, UniPoly([1])), m) for m, bs in by_mult.items())
        comps.sort(key=lambda gm: (gm[0].sort_key(), gm[1]))
        self._components: tuple[tuple[UniPoly, int], ...] = tuple(comps)

    @classmethod
    def zero(cls) -> "ZeroCycleOnR":
        return cls()

    @classmethod
    def sum(cls, cycles: Iterable["ZeroCycleOnR"]) -> "ZeroCycleOnR":
        """Sum of many cycles, canonicalized once."""
        return cls([gm for c in cycles for gm in c.components])

    @classmethod
    def point(cls, r, mult: int = 1) -> "ZeroCycleOnR":
        return cls([(UniPoly.linear_root(r), mult)])

    @classmethod
    def divisor(cls, g: UniPoly, mult: int = 1) -> "ZeroCycleOnR":
        """Zero locus of ``g`` with multiplicities (``g`` need not be square-free)."""
        return cls([(g, mult)])

    @property
    def components(self) -> tuple[tuple[UniPoly, int], ...]:
        return self._components

    def is_zero(self) -> bool:
        return not self._components

    def degree(self) -> int:
        return sum(g.degree * m for g, m in self._components)

    def __eq__(self, other):
        if not isinstance(other, ZeroCycleOnR):
            return NotImplemented
        return self._components == other._components

    def __hash__(self):
        return hash(self._components)

    def __add__(self, other: "ZeroCycleOnR") -> "ZeroCycleOnR":
        if not isinstance(other, ZeroCycleOnR):
            return NotImplemented
        if not other._components:
            return self
        if not self._components:
            return other
        return ZeroCycleOnR(self._components + other._components)

    def __neg__(self) -> "ZeroCycleOnR":
        out = ZeroCycleOnR()
        out._components = tuple((g, -m) for g, m in self._components)
        return out

    def __sub__(self, other: "ZeroCycleOnR") -> "ZeroCycleOnR":
        return self + (-other)

    def __mul__(self, k: int) -> "ZeroCycleOnR":
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ZeroCycleOnR()
        out = ZeroCycleOnR()
        out._components = tuple((g, m * k) for g, m in self._components)
        return out

    __rmul__ = __mul__

    def to_json(self) -> list:
        return [[g.to_string("t"), m] for g, m in self._components]

    @classmethod
    def from_json(cls, data: Sequence) -> "ZeroCycleOnR":
        from .parsing import ParseError, parse_unipoly

        if not isinstance(data, list):
            raise ParseError("a cycle is a JSON list of [polynomial, multiplicity] pairs")
        comps = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise ParseError(f"bad cycle component {item!r}")
            comps.append((parse_unipoly(item[0], "t"), item[1]))
        return cls(comps)

    def __str__(self):
        if not self._components:
            return "0"
        out = ""
        for g, m in self._components:
            body = f"[{{{-g.coeffs[0]}}}]" if g.degree == 1 else f"[V({g})]"
            coef = "" if abs(m) == 1 else str(abs(m))
            if not out:
                out = ("-" if m < 0 else "") + coef + body
            else:
                out += (" - " if m < 0 else " + ") + coef + body
        return out

    def __repr__(self):
        return f"ZeroCycleOnR({self})"


@dataclass(frozen=True)
class HigherChowClass:
    """A class in Z_0 R / boundaries, identified with its norm in Q*."""

    value: Fraction

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("HigherChowClass value must be nonzero")

    def __mul__(self, other: "HigherChowClass") -> "HigherChowClass":
        return HigherChowClass(self.value * other.value)


def norm(c: ZeroCycleOnR) -> Fraction:
    """Norm of the function ``-t``: a point ``r`` maps to ``-r``,
    ``[V(g)]`` (monic ``g``) to ``g(0)``."""
    out = Fraction(1)
    for g, m in c.components:
        out *= g(0) ** m
    return out


def class_of(c: ZeroCycleOnR) -> HigherChowClass:
    return HigherChowClass(norm(c))


def _strip_minus_one(g: UniPoly) -> tuple[UniPoly, int]:
    k = 0
    while g.degree > 0 and g(-1) == 0:
        g = g // T_PLUS_ONE
        k += 1
    return g, k


def boundary_rho(f: LaurentPoly2, e: EdgeDatum) -> ZeroCycleOnR:
    """Contribution of the toric divisor with inward normal ``e.rho``."""
    if f.is_zero() or f.is_monomial():
        raise ValueError("boundary_rho: f must be a non-monomial Laurent polynomial")
    g, dropped = _strip_minus_one(edge_polynomial(f, e).monic())
    if dropped:
        log.info("dropped %d point(s) at -1 on the divisor of rho=%s", dropped, e.rho)
    if g.degree == 0:
        return ZeroCycleOnR()
    return ZeroCycleOnR.divisor(g)


def boundary_by_edge(f: LaurentPoly2) -> list[tuple[EdgeDatum, ZeroCycleOnR]]:
    if f.is_zero():
        raise ValueError("boundary: zero polynomial")
    if f.is_monomial():
        return []
    return [(e, boundary_rho(f, e)) for e in edge_data(newton_polygon(f))]


def total_boundary(f: LaurentPoly2) -> ZeroCycleOnR:
    """Sum of the per-divisor boundaries; a monomial has empty boundary."""
    return ZeroCycleOnR.sum(c for _, c in boundary_by_edge(f))


# --- reduction to a single point ----------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Signed curves whose boundaries account for ``c - normal_form``."""

    steps: tuple[tuple[int, LaurentPoly2], ...] = ()

    def replay(self) -> ZeroCycleOnR:
        return ZeroCycleOnR.sum(total_boundary(curve) * sign for sign, curve in self.steps)

    def to_json(self) -> list:
        return [{"sign": s, "curve": str(curve)} for s, curve in self.steps]

    @classmethod
    def from_json(cls, data) -> "Certificate":
        from .parsing import ParseError, parse_laurent

        if not isinstance(data, list):
            raise ParseError("a certificate is a JSON list of {sign, curve} objects")
        steps = []
        for item in data:
            try:
                steps.append((int(item["sign"]), parse_laurent(item["curve"])))
            except (KeyError, TypeError):
                raise ParseError(f"bad certificate step {item!r}") from None
        return cls(tuple(steps))


def reduction_curve(g: UniPoly) -> LaurentPoly2:
    """The curve ``g(x) + y``; its boundary is ``[V(g)] + [{-1/g(0)}]``."""
    return LaurentPoly2.from_unipoly(g, "x") + LaurentPoly2.y()


def reduce_to_point(c: ZeroCycleOnR) -> tuple[ZeroCycleOnR, Certificate]:
    """Rewrite ``c`` modulo boundaries as the empty cycle or one point ``{-N(c)}``."""
    steps: list[tuple[int, LaurentPoly2]] = []
    points: list[tuple[int, Fraction]] = []

    for g, m in c.components:
        s, k = (1 if m > 0 else -1), abs(m)
        if g.degree == 1 and k == 1:
            points.append((s, -g.coeffs[0]))
            continue
        gk = g ** k
        steps.append((s, reduction_curve(gk)))
        # boundary is k[V(g)] + [{b}] with b = -1/g(0)^k; the point -1 is not in R
        b = -1 / gk(0)
        if b != -1:
            points.append((-s, b))

    positive: list[Fraction] = []
    for s, a in points:
        if s > 0:
            positive.append(a)
        else:
            # -[{a}] = [{1/a}] - boundary((x - a) + y)
            steps.append((-1, reduction_curve(UniPoly.linear_root(a))))
            positive.append(1 / a)

    while len(positive) > 1:
        a = positive.pop()
        b = positive.pop()
        steps.append((1, reduction_curve(UniPoly.linear_root(a) * UniPoly.linear_root(b))))
        r = -1 / (a * b)
        if r != -1:
            steps.append((-1, reduction_curve(UniPoly.linear_root(r))))
            positive.append(1 / r)

    nf = ZeroCycleOnR.point(positive[0]) if positive else ZeroCycleOnR()
    return nf, Certificate(tuple(steps))


def verify_certificate(c: ZeroCycleOnR, nf: ZeroCycleOnR, cert: Certificate) -> bool:
    if any(s not in (1, -1) for s, _ in cert.steps):
        return False
    try:
        return c - nf == cert.replay()
    except ValueError:
        return False
