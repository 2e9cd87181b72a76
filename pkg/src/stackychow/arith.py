"""Exact rational arithmetic: univariate polynomials, two-variable Laurent
polynomials, and gcd-free bases.

Rationals are :class:`fractions.Fraction` throughout; it already keeps
numerator and denominator coprime with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

Rat = Fraction


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rat(r: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when integral)."""
    r = as_rat(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _monomial_str(coeff: Fraction, factors: list[str]) -> str:
    # returns a signed term like "-3*x^2*y" or "+1/2"
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if not factors:
        return sign + format_rat(mag)
    body = "*".join(factors)
    if mag == 1:
        return sign + body
    return sign + format_rat(mag) + "*" + body


def _join_terms(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = "".join(terms)
    return out[1:] if out.startswith("+") else out


def _power_factor(name: str, e: int) -> str | None:
    if e == 0:
        return None
    if e == 1:
        return name
    return f"{name}^{e}"


class UniPoly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def linear_root(cls, r) -> "UniPoly":
        """The monic polynomial ``t - r``."""
        return cls([-as_rat(r), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        return UniPoly(c / lc for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def sort_key(self):
        """Degree first, then coefficients from the top down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other: "UniPoly"):
        return self.sort_key() < other.sort_key()

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("UniPoly powers must be non-negative integers")
        out = UniPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.degree == 1 and self.degree >= 1:
            # synthetic division by t - r
            r = -other.coeffs[0] / other.coeffs[1]
            acc = Fraction(0)
            quot = []
            for c in reversed(self.coeffs):
                acc = acc * r + c
                quot.append(acc)
            rem = quot.pop()
            quot.reverse()
            return UniPoly(q / other.coeffs[1] for q in quot), UniPoly([rem])
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other: "UniPoly"):
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly"):
        return divmod(self, other)[1]

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def to_string(self, var: str = "t") -> str:
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c:
                f = _power_factor(var, e)
                terms.append(_monomial_str(c, [f] if f else []))
        return _join_terms(terms)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"UniPoly({self.to_string()!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic ``f = prod s_k^k`` with square-free, coprime ``s_k``.

    Only factors of positive degree are returned.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        s = poly_gcd(b, d)
        b = b // s
        c = d // s
        d = c - b.derivative()
        if s.degree > 0:
            out.append((s, k))
        k += 1
    return out


def _integer_coeffs(f: UniPoly) -> list[int]:
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in f.coeffs), 1)
    ints = [int(c * den) for c in f.coeffs]
    g = reduce(gcd, ints, 0)
    return [c // g for c in ints]


def _rational_reconstruct(u: int, m: int, bound: int) -> Fraction | None:
    # Wang: find p/q = u mod m with |p|, q <= bound
    r0, r1, s0, s1 = m, u % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Distinct rational roots of ``f``, sorted.

    Roots modulo a small prime are Hensel-lifted and reconstructed as
    fractions, then checked exactly.
    """
    if f.is_zero():
        raise ValueError("rational_roots: zero polynomial")
    out = []
    while f.degree > 0 and f.coeffs[0] == 0:
        f = UniPoly(f.coeffs[1:])
        if not out:
            out.append(Fraction(0))
    if f.degree < 1:
        return out
    a = _integer_coeffs(f)
    bound = max(abs(a[0]), abs(a[-1]))

    def ev(cs, x, m):
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % m
        return acc

    # lifting needs simple roots mod ell; a repeated root defeats every
    # prime, so after a few tries pass to the square-free part
    ell, tries = 2 * (len(a) + 1) + 1, 0
    while True:
        ell += 1
        if any(ell % d == 0 for d in range(2, int(ell**0.5) + 1)) or a[-1] % ell == 0:
            continue
        da = [i * c for i, c in enumerate(a)][1:]
        roots = [r for r in range(ell) if ev(a, r, ell) == 0]
        if all(ev(da, r, ell) != 0 for r in roots):
            break
        tries += 1
        if tries == 4 and f.degree > 1:
            f = f // poly_gcd(f, f.derivative())
            a = _integer_coeffs(f)
            bound = max(abs(a[0]), abs(a[-1]))
    target = 2 * bound * bound + 1
    for r in roots:
        m = ell
        while m < target:
            # Newton step doubles the precision
            m2 = m * m
            r = (r - ev(a, r, m2) * pow(ev(da, r, m2), -1, m2)) % m2
            m = m2
        cand = _rational_reconstruct(r, m, bound)
        if cand is not None and f(cand) == 0:
            out.append(cand)
    return sorted(set(out))


def gcd_free_basis(polys: Sequence[UniPoly]) -> list[tuple[UniPoly, tuple[int, ...]]]:
    """Refine ``polys`` into pairwise coprime, square-free monic factors.

    Returns ``[(b, (e_1, ..., e_n)), ...]`` where ``polys[i] == prod b**e_i``.
    The basis is sorted by degree, then coefficients.
    """
    for p in polys:
        if p.is_zero():
            raise ValueError("gcd_free_basis: zero polynomial")
        if not p.is_monic():
            raise ValueError(f"gcd_free_basis: {p} is not monic")
    pieces: list[tuple[int, UniPoly, int]] = []
    for idx, p in enumerate(polys):
        pieces.extend((idx, s, k) for s, k in squarefree_decomposition(p))

    basis: list[UniPoly] = []
    for _, s, _ in pieces:
        pending = [s]
        while pending:
            f = pending.pop()
            if f.degree == 0:
                continue
            for i, b in enumerate(basis):
                g = poly_gcd(f, b)
                if g.degree > 0:
                    # split b into g and b/g, keep refining what remains of f
                    del basis[i]
                    basis.append(g)
                    rest = b // g
                    if rest.degree > 0:
                        basis.append(rest)
                    pending.append(f // g)
                    break
            else:
                basis.append(f)
    basis.sort(key=UniPoly.sort_key)

    out = []
    for b in basis:
        mults = [0] * len(polys)
        for idx, s, k in pieces:
            if b.divides(s):
                mults[idx] += k
        out.append((b, tuple(mults)))
    return out


Exponent = tuple[int, int]


class LaurentPoly2:
    """Laurent polynomial in ``x`` and ``y`` with rational coefficients.

    Immutable; ``terms`` maps exponent pairs to nonzero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        for (mu, nu), c in (terms or {}).items():
            c = as_rat(c)
            if c:
                clean[(int(mu), int(nu))] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def constant(cls, c) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "LaurentPoly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "LaurentPoly2":
        return cls({(0, 1): 1})

    @classmethod
    def from_unipoly(cls, g: UniPoly, var: str = "x") -> "LaurentPoly2":
        if var == "x":
            return cls({(e, 0): c for e, c in enumerate(g.coeffs)})
        return cls({(0, e): c for e, c in enumerate(g.coeffs)})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coeff(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly2.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for (a, b), c in self._terms.items():
            for (u, v), d in other._terms.items():
                k = (a + u, b + v)
                out[k] = out.get(k, 0) + c * d
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly2({k: c / other for k, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_monomial():
            raise ValueError("Laurent division only by monomials")
        return self * other ** -1

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("Laurent powers must be integers")
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible Laurent polynomials")
            ((a, b), c), = self._terms.items()
            return LaurentPoly2({(a * n, b * n): c ** n})
        out = LaurentPoly2.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self):
        # highest total degree first, reads naturally for x^2-3*x+2+y
        items = sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        terms = []
        for (mu, nu), c in items:
            fs = [f for f in (_power_factor("x", mu), _power_factor("y", nu)) if f]
            terms.append(_monomial_str(c, fs))
        return _join_terms(terms)

    def __repr__(self):
        return f"LaurentPoly2({str(self)!r})"


def lp_add(f: LaurentPoly2, g: LaurentPoly2) -> LaurentPoly2:
    return f + g


def lp_mul(f: LaurentPoly2, g: LaurentPoly2) -> LaurentPoly2:
    return f * g


def product(items: Iterable, start=None):
    items = list(items)
    if start is None:
        start = 1
    return reduce(lambda a, b: a * b, items, start)
