"""Formally presented graded Chow rings with Chern and Segre calculus.

A ring is a tower: each level adds generators, optional monic rewrite
rules ``g^k = (terms of lower g-degree in earlier generators)``, and a
dimension bound on the codimension of monomials in the generators seen so
far.  Projective bundles add one level with the generator ``zeta`` and
the relation ``zeta^e + c_1 zeta^(e-1) + ... + c_e = 0``.

Polynomials are dicts from exponent tuples (one slot per generator) to
:class:`Fraction`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import comb
from typing import Sequence

Mono = tuple[int, ...]
Poly = dict[Mono, Fraction]

_ids = count()


def _add_into(acc: Poly, mono: Mono, c: Fraction) -> None:
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


class ChowRingPresentation:
    """Graded ring ``Q[generators] / (relations, codim > dimension)``.

    Use the constructors :func:`point_ring`, :func:`free_ring`,
    :func:`projective_bundle`, :func:`projective_space` and
    :func:`weighted_projective_line` rather than calling this directly.
    """

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        relations: dict[int, tuple[int, Poly]],
        truncations: Sequence[tuple[int, int]],
        dimension: int | None,
        *,
        degree_table: dict[Mono, Fraction] | None = None,
        base: "ChowRingPresentation | None" = None,
        bundle: "BundleClass | None" = None,
        label: str = "",
    ):
        names = [g for g, _ in generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names {names}")
        for _, c in generators:
            if c < 1:
                raise ValueError("generators must have codimension >= 1")
        self.generators: tuple[tuple[str, int], ...] = tuple(generators)
        self.relations = dict(relations)
        self.truncations = tuple(truncations)
        self.dimension = dimension
        self._degree_table = dict(degree_table) if degree_table is not None else None
        self.base = base
        self.bundle = bundle
        self.label = label
        self.uid = next(_ids)

    def __repr__(self):
        return f"<ChowRing {self.label or self.uid}: gens={list(self.generators)} dim={self.dimension}>"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list[str]:
        return [g for g, _ in self.generators]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def codim(self, mono: Mono) -> int:
        return sum(e * c for e, (_, c) in zip(mono, self.generators))

    def _truncated(self, mono: Mono) -> bool:
        for prefix, bound in self.truncations:
            if sum(e * c for e, (_, c) in zip(mono[:prefix], self.generators)) > bound:
                return True
        return False

    def is_bundle_ring(self) -> bool:
        return self.bundle is not None

    def ancestors(self) -> list["ChowRingPresentation"]:
        out, r = [], self
        while r is not None:
            out.append(r)
            r = r.base
        return out

    def extends(self, other: "ChowRingPresentation") -> bool:
        return any(r is other for r in self.ancestors())

    # --- normal forms -------------------------------------------------------

    def normal_form(self, poly: Poly, strategy: str = "ordered", rng: random.Random | None = None) -> Poly:
        """Reduce ``poly`` by the rewrite rules and the dimension bounds.

        ``strategy="ordered"`` eliminates generators from the last one down;
        ``"random"`` rewrites one randomly chosen reducible term at a time and
        truncates only at the end.  Both land on the same normal form.
        """
        if strategy == "ordered":
            work: Poly = {}
            for m, c in poly.items():
                if c and not self._truncated(m):
                    _add_into(work, m, Fraction(c))
            for i in sorted(self.relations, reverse=True):
                k, rhs = self.relations[i]
                done: Poly = {}
                stack = list(work.items())
                while stack:
                    m, c = stack.pop()
                    if m[i] < k:
                        _add_into(done, m, c)
                        continue
                    rest = m[:i] + (m[i] - k,) + m[i + 1 :]
                    for rm, rc in rhs.items():
                        nm = _mono_mul(rest, rm)
                        if not self._truncated(nm):
                            stack.append((nm, c * rc))
                work = done
            return work
        if strategy == "random":
            rng = rng or random.Random()
            work = {m: Fraction(c) for m, c in poly.items() if c}
            while True:
                hits = [(m, i) for m in work for i, (k, _) in self.relations.items() if m[i] >= k]
                if not hits:
                    break
                m, i = rng.choice(sorted(hits))
                k, rhs = self.relations[i]
                c = work.pop(m)
                rest = m[:i] + (m[i] - k,) + m[i + 1 :]
                for rm, rc in rhs.items():
                    _add_into(work, _mono_mul(rest, rm), c * rc)
            return {m: c for m, c in work.items() if not self._truncated(m)}
        raise ValueError(f"unknown normal form strategy {strategy!r}")

    def basis(self, codim: int) -> list[Mono]:
        """Normal-form monomials of the given codimension."""
        if codim < 0 or (self.dimension is not None and codim > self.dimension):
            return []
        out: list[Mono] = []

        def rec(i: int, left: int, acc: list[int]):
            if i == self.ngens:
                if left == 0:
                    m = tuple(acc)
                    if not self._truncated(m):
                        out.append(m)
                return
            c = self.generators[i][1]
            cap = left // c
            if i in self.relations:
                cap = min(cap, self.relations[i][0] - 1)
            for e in range(cap + 1):
                rec(i + 1, left - e * c, acc + [e])

        rec(0, codim, [])
        return sorted(out, reverse=True)

    # --- elements -----------------------------------------------------------

    def element(self, poly: Poly | None = None) -> "GradedClass":
        return GradedClass(self, self.normal_form(poly or {}))

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return self.scalar(1)

    def scalar(self, c) -> "GradedClass":
        c = Fraction(c)
        return GradedClass(self, {(0,) * self.ngens: c} if c else {})

    def gen(self, name: str) -> "GradedClass":
        i = self.index(name)
        m = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.element({m: Fraction(1)})

    def gens(self) -> dict[str, "GradedClass"]:
        return {n: self.gen(n) for n in self.names}

    def parse(self, text: str) -> "GradedClass":
        from .parsing import ParseError, evaluate

        value = evaluate(text, self.gens())
        if isinstance(value, Fraction):
            return self.scalar(value)
        if not isinstance(value, GradedClass):
            raise ParseError(f"not a class: {text!r}")
        return value

    def format(self, poly: Poly) -> str:
        from .arith import _join_terms, _monomial_str, _power_factor

        items = sorted(poly.items(), key=lambda kv: (-self.codim(kv[0]), tuple(-e for e in kv[0])))
        terms = []
        for m, c in items:
            fs = [f for f in (_power_factor(n, e) for (n, _), e in zip(self.generators, m)) if f]
            terms.append(_monomial_str(c, fs))
        return _join_terms(terms)

    # --- degree --------------------------------------------------------------

    def has_degree(self) -> bool:
        if self.dimension is None:
            return False
        if self._degree_table is not None:
            return True
        return self.bundle is not None and self.base.has_degree()

    def integrate(self, alpha: "GradedClass") -> Fraction:
        alpha = alpha.lift(self)
        if self.dimension is None:
            raise ValueError("integrate: ring has no dimension bound")
        top = alpha.part(self.dimension)
        if self._degree_table is not None:
            total = Fraction(0)
            for m, c in top.poly.items():
                if m not in self._degree_table:
                    raise ValueError(f"integrate: no degree assigned to {self.format({m: Fraction(1)})}")
                total += c * self._degree_table[m]
            return total
        if self.bundle is not None:
            return self.base.integrate(pushforward_pb(top))
        raise ValueError("integrate: ring has no degree functional")

    def degree_table(self) -> dict[Mono, Fraction]:
        """The degree functional on the top-codimension monomial basis."""
        if self.dimension is None:
            raise ValueError("degree_table: ring has no dimension bound")
        return {m: self.integrate(self.element({m: Fraction(1)})) for m in self.basis(self.dimension)}


class GradedClass:
    """Element of a :class:`ChowRingPresentation`, always in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: ChowRingPresentation, poly: Poly):
        self.ring = ring
        self.poly: Poly = poly

    # arithmetic helpers
    def _other(self, other) -> "GradedClass | None":
        if isinstance(other, GradedClass):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return None

    def _common(self, other: "GradedClass") -> tuple["GradedClass", "GradedClass"]:
        if other.ring is self.ring:
            return self, other
        if self.ring.extends(other.ring):
            return self, other.lift(self.ring)
        if other.ring.extends(self.ring):
            return self.lift(other.ring), other
        raise ValueError("classes live in unrelated rings")

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        out = dict(a.poly)
        for m, c in b.poly.items():
            _add_into(out, m, c)
        return GradedClass(a.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self.poly.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return GradedClass(self.ring, {m: v * c for m, v in self.poly.items()} if c else {})
        if not isinstance(other, GradedClass):
            return NotImplemented
        a, b = self._common(other)
        out: Poly = {}
        for m1, c1 in a.poly.items():
            for m2, c2 in b.poly.items():
                _add_into(out, _mono_mul(m1, m2), c1 * c2)
        return GradedClass(a.ring, a.ring.normal_form(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("classes can only be raised to non-negative integer powers")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        try:
            a, b = self._common(o)
        except ValueError:
            return False
        return a.poly == b.poly

    def __hash__(self):
        return hash((self.ring.uid, tuple(sorted(self.poly.items()))))

    def is_zero(self) -> bool:
        return not self.poly

    def part(self, codim: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self.poly.items() if self.ring.codim(m) == codim})

    def parts(self) -> dict[int, "GradedClass"]:
        return {k: self.part(k) for k in sorted({self.ring.codim(m) for m in self.poly})}

    def constant(self) -> Fraction:
        return self.poly.get((0,) * self.ring.ngens, Fraction(0))

    def is_homogeneous(self, codim: int) -> bool:
        return all(self.ring.codim(m) == codim for m in self.poly)

    def lift(self, ring: ChowRingPresentation) -> "GradedClass":
        """Pull back along the tower: base generators map to themselves."""
        if ring is self.ring:
            return self
        if not ring.extends(self.ring):
            raise ValueError("lift: target ring does not extend the source ring")
        pad = (0,) * (ring.ngens - self.ring.ngens)
        return GradedClass(ring, ring.normal_form({m + pad: c for m, c in self.poly.items()}))

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def __str__(self):
        return self.ring.format(self.poly)

    def __repr__(self):
        return f"GradedClass({self})"


@dataclass(frozen=True, eq=False)
class BundleClass:
    """Vector bundle known through its rank and total Chern class."""

    rank: int
    total_chern: GradedClass

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("bundle rank must be >= 0")
        if self.total_chern.constant() != 1:
            raise ValueError("total Chern class must start with 1")
        parts = self.total_chern.parts()
        if any(k > self.rank for k in parts if not parts[k].is_zero()):
            raise ValueError(f"Chern classes above the rank {self.rank} must vanish")

    @property
    def ring(self) -> ChowRingPresentation:
        return self.total_chern.ring

    def chern(self, i: int) -> GradedClass:
        if i < 0 or i > self.rank:
            return self.ring.zero()
        return self.total_chern.part(i)

    def lift(self, ring: ChowRingPresentation) -> "BundleClass":
        return BundleClass(self.rank, self.total_chern.lift(ring))

    def __eq__(self, other):
        if not isinstance(other, BundleClass):
            return NotImplemented
        return self.rank == other.rank and self.total_chern == other.total_chern

    def __hash__(self):
        return hash((self.rank, self.total_chern))

    def __str__(self):
        return f"rank {self.rank}, c = {self.total_chern}"


# --- rings ------------------------------------------------------------------------


_POINT: ChowRingPresentation | None = None


def point_ring() -> ChowRingPresentation:
    """The shared ring ``Q`` of a point."""
    global _POINT
    if _POINT is None:
        _POINT = ChowRingPresentation([], {}, [], 0, degree_table={(): Fraction(1)}, label="point")
    return _POINT


def free_ring(
    generators: Sequence[tuple[str, int]],
    dimension: int | None,
    *,
    base: ChowRingPresentation | None = None,
    degree_table: dict[Mono, Fraction] | None = None,
    label: str = "",
) -> ChowRingPresentation:
    """Polynomial ring on ``generators`` with everything above ``dimension`` killed.

    With ``base`` the new generators are appended to the base's.  A
    ``dimension`` of ``None`` means no truncation (graded polynomial ring).
    """
    gens = list(base.generators if base else []) + list(generators)
    rels = dict(base.relations) if base else {}
    trunc = list(base.truncations) if base else []
    if dimension is not None:
        trunc.append((len(gens), dimension))
    return ChowRingPresentation(
        gens, rels, trunc, dimension, degree_table=degree_table, base=base, label=label
    )


def _fresh_name(base: ChowRingPresentation, name: str | None) -> str:
    if name is not None:
        if name in base.names:
            raise ValueError(f"generator name {name!r} already used in the base ring")
        return name
    for cand in ["zeta"] + [f"zeta{i}" for i in range(1, 100)]:
        if cand not in base.names:
            return cand
    raise ValueError("ran out of fresh generator names")


def projective_bundle(
    base: ChowRingPresentation, E: "BundleClass", name: str | None = None
) -> ChowRingPresentation:
    """Ring of ``P(E)``: base ring with ``zeta`` subject to the Chern relation."""
    if E.rank < 1:
        raise ValueError("projective_bundle: rank must be at least 1")
    if not base.extends(E.ring):
        raise ValueError("projective_bundle: bundle is not defined over the base ring")
    E = E.lift(base)
    zname = _fresh_name(base, name)
    n = base.ngens
    e = E.rank
    gens = list(base.generators) + [(zname, 1)]
    rhs: Poly = {}
    for i in range(1, e + 1):
        for m, c in E.chern(i).poly.items():
            _add_into(rhs, m + (e - i,), -c)
    rels = dict(base.relations)
    rels[n] = (e, rhs)
    trunc = list(base.truncations)
    dim = None if base.dimension is None else base.dimension + e - 1
    if dim is not None:
        trunc.append((n + 1, dim))
    return ChowRingPresentation(
        gens, rels, trunc, dim, base=base, bundle=E, label=f"P(rank {e} over {base.label or base.uid})"
    )


def trivial_bundle(ring: ChowRingPresentation, rank: int) -> BundleClass:
    return BundleClass(rank, ring.one())


def line_bundle(c1: GradedClass) -> BundleClass:
    if not c1.is_homogeneous(1):
        raise ValueError("line_bundle: first Chern class must have codimension 1")
    return BundleClass(1, c1.ring.one() + c1)


def bundle_from_chern(ring: ChowRingPresentation, chern: Sequence, rank: int | None = None) -> BundleClass:
    """Bundle with ``c_i = chern[i-1]``; entries may be classes or strings."""
    total = ring.one()
    for i, c in enumerate(chern, start=1):
        cl = ring.parse(c) if isinstance(c, str) else (c if isinstance(c, GradedClass) else ring.scalar(c))
        cl = cl.lift(ring)
        if not cl.is_zero() and not cl.is_homogeneous(i):
            raise ValueError(f"c_{i} must be homogeneous of codimension {i}")
        total = total + cl
    return BundleClass(len(chern) if rank is None else rank, total)


def projective_space(n: int, name: str = "h") -> ChowRingPresentation:
    """``P^n`` as the projectivization of a trivial bundle over a point."""
    if n < 0:
        raise ValueError("projective_space: n must be >= 0")
    pt = point_ring()
    ring = projective_bundle(pt, trivial_bundle(pt, n + 1), name=name)
    ring.label = f"P^{n}"
    return ring


def weighted_projective_line(a: int, b: int, name: str = "h") -> ChowRingPresentation:
    """``Q[h]/(h^2)`` with ``integral(h) = 1/(a*b)``."""
    if a < 1 or b < 1:
        raise ValueError("weighted_projective_line: weights must be positive")
    return free_ring(
        [(name, 1)], 1, degree_table={(1,): Fraction(1, a * b)}, label=f"P({a},{b})"
    )


# --- Chern/Segre calculus -------------------------------------------------------


def segre_class(E: BundleClass, i: int) -> GradedClass:
    """``s_i(E)`` from ``s_0 = 1``, ``s_k = -sum_j c_j s_(k-j)``."""
    ring = E.ring
    if i < 0:
        return ring.zero()
    s = [ring.one()]
    for k in range(1, i + 1):
        acc = ring.zero()
        for j in range(1, min(k, E.rank) + 1):
            acc = acc + E.chern(j) * s[k - j]
        s.append(-acc)
    return s[i]


def segre_total(E: BundleClass) -> GradedClass:
    ring = E.ring
    if ring.dimension is None:
        raise ValueError("segre_total: ring has no dimension bound; ask for a single segre_class")
    out = ring.zero()
    for k in range(ring.dimension + 1):
        out = out + segre_class(E, k)
    return out


def whitney_sum(E: BundleClass, F: BundleClass) -> BundleClass:
    a, b = E.total_chern._common(F.total_chern)
    return BundleClass(E.rank + F.rank, a * b)


def dual_bundle(E: BundleClass) -> BundleClass:
    total = E.ring.zero()
    for i in range(E.rank + 1):
        total = total + E.chern(i) * (-1) ** i
    return BundleClass(E.rank, total)


def tensor_line(E: BundleClass, L) -> BundleClass:
    """``E (x) L`` for a line bundle with first Chern class ``L``.

    Shifting every Chern root by ``l`` gives
    ``c_k(E (x) L) = sum_i binom(e-i, k-i) c_i(E) l^(k-i)``.
    """
    l = L.chern(1) if isinstance(L, BundleClass) else L
    if not l.is_zero() and not l.is_homogeneous(1):
        raise ValueError("tensor_line: L must be a codimension-1 class")
    e = E.rank
    base, l = E.total_chern._common(l)
    E = E.lift(base.ring)
    total = base.ring.zero()
    for k in range(e + 1):
        for i in range(k + 1):
            total = total + E.chern(i) * l ** (k - i) * comb(e - i, k - i)
    return BundleClass(e, total)


def c_top(E: BundleClass) -> GradedClass:
    return E.chern(E.rank) if E.rank else E.ring.one()


# --- projective bundle theorem -------------------------------------------------


def _bundle_ring(alpha: GradedClass) -> ChowRingPresentation:
    ring = alpha.ring
    if not ring.is_bundle_ring():
        raise ValueError("class does not live on a projective bundle ring")
    return ring


def theta_decompose(alpha: GradedClass) -> list[GradedClass]:
    """Coefficients ``(a_0, ..., a_(e-1))`` with ``alpha = sum zeta^i a_i``."""
    ring = _bundle_ring(alpha)
    base, e = ring.base, ring.bundle.rank
    polys: list[Poly] = [{} for _ in range(e)]
    for m, c in alpha.poly.items():
        polys[m[-1]][m[:-1]] = c
    return [GradedClass(base, p) for p in polys]


def theta_assemble(ring: ChowRingPresentation, coeffs: Sequence[GradedClass]) -> GradedClass:
    if not ring.is_bundle_ring() or len(coeffs) != ring.bundle.rank:
        raise ValueError("theta_assemble: need one base class per power of zeta")
    zeta = ring.gen(ring.names[-1])
    out = ring.zero()
    for i, a in enumerate(coeffs):
        out = out + zeta ** i * a.lift(ring)
    return out


def pushforward_pb(alpha: GradedClass) -> GradedClass:
    """``p_*`` along ``P(E) -> X``: ``zeta^k beta`` goes to ``s_(k-e+1)(E) beta``.

    In normal form ``k <= e-1``, so only ``zeta^(e-1)`` survives (``s_0 = 1``).
    """
    ring = _bundle_ring(alpha)
    e = ring.bundle.rank
    out = ring.base.zero()
    for k, a in enumerate(theta_decompose(alpha)):
        out = out + segre_class(ring.bundle, k - e + 1) * a
    return out


def integrate(alpha: GradedClass) -> Fraction:
    return alpha.ring.integrate(alpha)


def random_class(ring: ChowRingPresentation, rng: random.Random, max_codim: int | None = None, coeff_range: int = 5) -> GradedClass:
    """Random element with small integer coefficients (for property tests)."""
    top = ring.dimension if max_codim is None else max_codim
    if top is None:
        raise ValueError("random_class: need a codimension bound")
    poly: Poly = {}
    for k in range(top + 1):
        for m in ring.basis(k):
            if rng.random() < 0.6:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    poly[m] = Fraction(c)
    return ring.element(poly)


def random_homogeneous(ring: ChowRingPresentation, codim: int, rng: random.Random, coeff_range: int = 5) -> GradedClass:
    poly = {m: Fraction(rng.randint(-coeff_range, coeff_range)) for m in ring.basis(codim)}
    return ring.element({m: c for m, c in poly.items() if c})


def random_bundle(ring: ChowRingPresentation, rank: int, rng: random.Random) -> BundleClass:
    chern = [random_homogeneous(ring, i, rng) for i in range(1, rank + 1)]
    return bundle_from_chern(ring, chern, rank)

