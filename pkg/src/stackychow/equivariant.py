"""Torus localization over Q[t, 1/t].

Each fixed component carries its own Chow ring, the restriction of the
class being integrated, and the equivariant top Chern class of its normal
bundle.  Integration sums ``restriction / c_top(normal)`` over components.

Sign convention: with torus weights ``w_i`` on the coordinates of ``P^n``,
the equivariant hyperplane class restricts to ``-w_i t`` at the i-th
fixed point and the tangent weights there are ``(w_j - w_i) t``.  This is
the convention under which the hyperplane class on ``P^1`` with
restrictions ``(t, 0)`` and normal weights ``(t, -t)`` integrates to +1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .chow import ChowRingPresentation, GradedClass, point_ring


class LaurentT:
    """Element of ``A_* X_j (x) Q[t, 1/t]``: t-powers to ring classes."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChowRingPresentation, terms: Mapping[int, GradedClass] | None = None):
        self.ring = ring
        clean: dict[int, GradedClass] = {}
        for k, c in (terms or {}).items():
            if isinstance(c, (int, Fraction)):
                c = ring.scalar(c)
            c = c.lift(ring)
            if not c.is_zero():
                clean[int(k)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def t(cls, ring: ChowRingPresentation, power: int = 1, coeff=1) -> "LaurentT":
        return cls(ring, {power: ring.scalar(coeff)})

    @classmethod
    def constant(cls, c: GradedClass | Fraction | int, ring: ChowRingPresentation | None = None) -> "LaurentT":
        if isinstance(c, GradedClass):
            return cls(c.ring if ring is None else ring, {0: c})
        return cls(ring, {0: ring.scalar(c)})

    def _coerce(self, other):
        if isinstance(other, LaurentT):
            if other.ring is not self.ring:
                raise ValueError("LaurentT values over different rings")
            return other
        if isinstance(other, (int, Fraction, GradedClass)):
            return LaurentT.constant(other, self.ring)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentT(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentT(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, GradedClass] = {}
        for a, ca in self.terms.items():
            for b, cb in o.terms.items():
                p = ca * cb
                out[a + b] = out[a + b] + p if a + b in out else p
        return LaurentT(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * invert_ctop(o, self.ring)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("LaurentT powers must be integers")
        if n < 0:
            return invert_ctop(self, self.ring) ** (-n)
        out = LaurentT.constant(1, self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentT):
            if other.ring is not self.ring:
                return False
            o = other
        else:
            o = self._coerce(other)
            if o is None:
                return NotImplemented
        return self.terms.keys() == o.terms.keys() and all(self.terms[k] == o.terms[k] for k in self.terms)

    def __hash__(self):
        return hash((self.ring.uid, tuple((k, hash(c)) for k, c in self.terms.items())))

    def coefficient(self, k: int) -> GradedClass:
        return self.terms.get(k, self.ring.zero())

    def integrate(self) -> "LaurentT":
        """Integrate every coefficient over the component's ring."""
        pt = point_ring()
        return LaurentT(pt, {k: pt.scalar(self.ring.integrate(c)) for k, c in self.terms.items()})

    def scalar_terms(self) -> dict[int, Fraction]:
        """Coefficients as rationals (only for classes of codimension 0)."""
        out = {}
        for k, c in self.terms.items():
            if any(self.ring.codim(m) for m in c.poly):
                raise ValueError("scalar_terms: coefficient has positive codimension")
            out[k] = c.constant()
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            cs = str(c)
            tp = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not tp:
                body = cs
            elif cs == "1":
                body = tp
            elif cs == "-1":
                body = "-" + tp
            elif len(c.poly) == 1 and "+" not in cs[1:] and "-" not in cs[1:]:
                body = f"{cs}*{tp}"
            else:
                body = f"({cs})*{tp}"
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"LaurentT({self})"


def parse_laurent_t(text: str, ring: ChowRingPresentation) -> LaurentT:
    """Parse e.g. ``"t + h"`` or ``"-1/2*t^-1"`` over ``ring``."""
    from .parsing import ParseError, evaluate

    names: dict[str, object] = {n: LaurentT.constant(g) for n, g in ring.gens().items()}
    if "t" in names:
        raise ParseError("ring generators may not be named 't'")
    names["t"] = LaurentT.t(ring)
    try:
        value = evaluate(text, names)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    if isinstance(value, Fraction):
        return LaurentT.constant(value, ring)
    if not isinstance(value, LaurentT):
        raise ParseError(f"not an equivariant class: {text!r}")
    return value


def invert_ctop(c: LaurentT, ring: ChowRingPresentation | None = None) -> LaurentT:
    """Exact inverse of an equivariant class whose scalar part is ``u t^k``.

    Writing ``c = u t^k (1 + eps)`` with ``eps`` of positive codimension,
    the geometric series in ``-eps`` stops after ``dim`` terms.
    """
    ring = c.ring if ring is None else ring
    if c.ring is not ring:
        raise ValueError("invert_ctop: class is not over the given ring")
    if ring.dimension is None:
        raise ValueError("invert_ctop: ring needs a dimension bound for nilpotency")
    units = [(k, cf.constant()) for k, cf in c.terms.items() if cf.constant() != 0]
    if len(units) != 1:
        raise ValueError(f"invert_ctop: {c} is not invertible (scalar part is not a single u*t^k)")
    k, u = units[0]
    lead = LaurentT.t(ring, k, u)
    eps = (c - lead) * LaurentT.t(ring, -k, 1 / u)
    term = LaurentT.constant(1, ring)
    series = term
    for _ in range(ring.dimension):
        term = term * (-eps)
        if term.is_zero():
            break
        series = series + term
    return series * LaurentT.t(ring, -k, 1 / u)


@dataclass(frozen=True, eq=False)
class FixedComponentData:
    """One fixed component: its ring, ``i^* alpha`` and ``c_top(N)``."""

    ring: ChowRingPresentation
    restriction: LaurentT
    normal_ctop: LaurentT

    def __post_init__(self):
        if self.restriction.ring is not self.ring or self.normal_ctop.ring is not self.ring:
            raise ValueError("FixedComponentData: all data must live over the component's ring")
        invert_ctop(self.normal_ctop, self.ring)

    def contribution(self) -> LaurentT:
        return (self.restriction * invert_ctop(self.normal_ctop, self.ring)).integrate()


def localize_integrate(components: Iterable[FixedComponentData]) -> LaurentT:
    pt = point_ring()
    total = LaurentT(pt)
    for comp in components:
        for k, c in comp.contribution().terms.items():
            total = total + LaurentT.t(pt, k, c.constant())
    return total


def check_t_independence(result: LaurentT) -> Fraction:
    """The t^0 coefficient, provided nothing else survives."""
    terms = result.scalar_terms()
    stray = {k: v for k, v in terms.items() if k != 0}
    if stray:
        raise ValueError(f"localization result depends on t: {result}")
    return terms.get(0, Fraction(0))


# --- projective space with isolated fixed points ------------------------------


def pn_fixed_point_data(
    n: int,
    restriction: Callable[[LaurentT, Sequence[Fraction]], LaurentT],
    weights: Sequence | None = None,
) -> list[FixedComponentData]:
    """Fixed-point data on ``P^n`` for a torus with distinct ``weights``.

    ``restriction(h_i, tangent_weights_i)`` returns the restriction of the
    class to the i-th fixed point, given the restriction ``h_i = -w_i t``
    of the equivariant hyperplane class.
    """
    ws = [Fraction(w) for w in (range(n + 1) if weights is None else weights)]
    if len(ws) != n + 1 or len(set(ws)) != n + 1:
        raise ValueError("pn_fixed_point_data: need n+1 distinct weights")
    out = []
    for i, wi in enumerate(ws):
        pt = point_ring()
        tangent = [wj - wi for j, wj in enumerate(ws) if j != i]
        ctop = LaurentT.constant(1, pt)
        for a in tangent:
            ctop = ctop * LaurentT.t(pt, 1, a)
        h = LaurentT.t(pt, 1, -wi)
        out.append(FixedComponentData(pt, restriction(h, tangent), ctop))
    return out
