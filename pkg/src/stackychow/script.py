"""Line-oriented scripts for the ``chow`` subcommand.

One statement per line, ``#`` starts a comment::

    ring P = proj_bundle(base=point, rank=3)
    let a = zeta^2
    print integrate(a)
    bundle E = chern(1 + c1)
    print segre(E, 2)

Statements: ``ring NAME = RINGEXPR`` (the new ring becomes current),
``use NAME``, ``let NAME = EXPR``, ``bundle NAME = BUNDLEEXPR`` and
``print EXPR``.  Ring expressions: ``point``, ``proj_space(n)``,
``proj_bundle(base=R, rank=n | bundle=E [, name=zeta])``, ``wpl(a, b)``,
``free(x=1, y=2, dim=d)``.  Bundle expressions: ``chern(total [, rank=r])``,
``trivial(r)``, ``line(c1)``, ``whitney(E, F)``, ``dual(E)``,
``tensor(E, L)``.  Symbols named ``c<k>`` that are not yet known inside
``chern(...)`` are adjoined as free generators of codimension ``k``.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction

from .arith import format_rat
from .chow import (
    BundleClass,
    ChowRingPresentation,
    GradedClass,
    c_top,
    dual_bundle,
    free_ring,
    line_bundle,
    point_ring,
    projective_bundle,
    projective_space,
    pushforward_pb,
    segre_class,
    segre_total,
    tensor_line,
    theta_decompose,
    trivial_bundle,
    weighted_projective_line,
    whitney_sum,
)
from .parsing import ParseError, _prepare, evaluate


class ScriptError(ParseError):
    """Malformed script statement."""


class _Symbol(str):
    pass


class _SymbolTable(dict):
    # unknown names evaluate to bare symbols (for name=zeta keywords)
    def __contains__(self, key):
        return True

    def __getitem__(self, key):
        if dict.__contains__(self, key):
            return dict.__getitem__(self, key)
        return _Symbol(key)


def _int(v, what: str) -> int:
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    raise ScriptError(f"{what} must be an integer")


def format_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, int):
        return str(v)
    return str(v)


_STATEMENT = re.compile(r"^(ring|let|bundle)\s+([A-Za-z_]\w*)\s*=\s*(.+)$|^(use)\s+([A-Za-z_]\w*)$|^(print)\s+(.+)$")
_CHERN_SYMBOL = re.compile(r"^c(\d+)$")


class ChowScript:
    def __init__(self):
        self.point = point_ring()
        self.rings: dict[str, ChowRingPresentation] = {"point": self.point}
        self.bundles: dict[str, BundleClass] = {}
        self.values: dict[str, object] = {}
        self.current: ChowRingPresentation = self.point

    # --- statements -------------------------------------------------------

    def run(self, text: str) -> list[tuple[str, str]]:
        out = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _STATEMENT.match(line)
            if not m:
                raise ScriptError(f"line {lineno}: cannot parse statement {line!r}")
            try:
                if m.group(1) == "ring":
                    self.rings[m.group(2)] = self.current = self._ring(m.group(3))
                elif m.group(1) == "let":
                    self.values[m.group(2)] = self._expr(m.group(3))
                elif m.group(1) == "bundle":
                    self.bundles[m.group(2)] = self._bundle(m.group(3))
                elif m.group(4) == "use":
                    name = m.group(5)
                    if name not in self.rings:
                        raise ScriptError(f"unknown ring {name!r}")
                    self.current = self.rings[name]
                else:
                    expr = m.group(7).strip()
                    out.append((expr, format_value(self._expr(expr))))
            except ParseError as exc:
                raise ScriptError(f"line {lineno}: {exc}") from None
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return out

    def _ring(self, text: str) -> ChowRingPresentation:
        names = _SymbolTable(self.rings)
        names.update(self.bundles)

        def proj_bundle(base=None, rank=None, bundle=None, name=None):
            base = self.point if base is None else base
            if not isinstance(base, ChowRingPresentation):
                raise ScriptError("proj_bundle: base must be a ring")
            if bundle is None:
                if rank is None:
                    raise ScriptError("proj_bundle needs rank= or bundle=")
                bundle = trivial_bundle(base, _int(rank, "rank"))
            if not isinstance(bundle, BundleClass):
                raise ScriptError("proj_bundle: bundle= must name a bundle")
            return projective_bundle(base, bundle, name=str(name) if name else None)

        def proj_space(n, name=None):
            return projective_space(_int(n, "n"), name=str(name) if name else "h")

        def wpl(a, b, name=None):
            return weighted_projective_line(_int(a, "a"), _int(b, "b"), name=str(name) if name else "h")

        def free(base=None, dim=None, **gens):
            if not gens:
                raise ScriptError("free() needs at least one generator")
            return free_ring(
                [(g, _int(c, "codimension")) for g, c in gens.items()],
                None if dim is None else _int(dim, "dim"),
                base=base,
            )

        fns = {
            "point": lambda: self.point,
            "proj_bundle": proj_bundle,
            "projective_bundle": proj_bundle,
            "proj_space": proj_space,
            "projective_space": proj_space,
            "wpl": wpl,
            "weighted_projective_line": wpl,
            "free": free,
        }
        value = evaluate(text, names, fns)
        if not isinstance(value, ChowRingPresentation):
            raise ScriptError(f"not a ring: {text!r}")
        return value

    def _names(self) -> dict[str, object]:
        names: dict[str, object] = {}
        names.update(self.bundles)
        names.update(self.values)
        names.update(self.current.gens())
        return names

    def _adjoin_chern_symbols(self, text: str) -> None:
        known = set(self._names()) | set(self.rings) | set(self._bundle_fns()) | {"rank"}
        try:
            tree = ast.parse(_prepare(text), mode="eval")
        except SyntaxError:
            return
        fresh = []
        for node in ast.walk(tree):
            if isinstance(node, ast.Name) and node.id not in known and node.id not in fresh:
                fresh.append(node.id)
        if not fresh:
            return
        gens = []
        for name in fresh:
            m = _CHERN_SYMBOL.match(name)
            if not m or int(m.group(1)) < 1:
                raise ScriptError(f"unknown name {name!r}")
            gens.append((name, int(m.group(1))))
        gens.sort(key=lambda g: g[1])
        self.current = free_ring(gens, None, base=self.current, label="free")

    def _bundle_fns(self):
        def chern(total, rank=None):
            if isinstance(total, Fraction):
                total = self.current.scalar(total)
            if not isinstance(total, GradedClass):
                raise ScriptError("chern() takes a total Chern class")
            if rank is None:
                parts = total.parts()
                rank = max(parts) if parts else 0
            return BundleClass(_int(Fraction(rank), "rank"), total)

        def line(c1):
            if isinstance(c1, Fraction) and c1 == 0:
                return trivial_bundle(self.current, 1)
            return line_bundle(c1)

        return {
            "chern": chern,
            "trivial": lambda r: trivial_bundle(self.current, _int(r, "rank")),
            "line": line,
            "whitney": whitney_sum,
            "sum": whitney_sum,
            "dual": dual_bundle,
            "tensor": tensor_line,
        }

    def _bundle(self, text: str) -> BundleClass:
        self._adjoin_chern_symbols(text)
        value = evaluate(text, self._names(), self._bundle_fns())
        if not isinstance(value, BundleClass):
            raise ScriptError(f"not a bundle: {text!r}")
        return value

    def _expr(self, text: str):
        def need_bundle(E):
            if not isinstance(E, BundleClass):
                raise ScriptError("expected a bundle")
            return E

        def as_class(a):
            return self.current.scalar(a) if isinstance(a, Fraction) else a

        def segre(E, k=None):
            E = need_bundle(E)
            return segre_total(E) if k is None else segre_class(E, _int(k, "k"))

        def chern(E, k=None):
            E = need_bundle(E)
            return E.total_chern if k is None else E.chern(_int(k, "k"))

        def theta(a, i):
            parts = theta_decompose(as_class(a))
            i = _int(i, "i")
            if not 0 <= i < len(parts):
                raise ValueError(f"theta: index {i} outside 0..{len(parts) - 1}")
            return parts[i]

        fns = {
            "integrate": lambda a: as_class(a).integrate(),
            "segre": segre,
            "chern": chern,
            "ctop": lambda E: c_top(need_bundle(E)),
            "rank": lambda E: Fraction(need_bundle(E).rank),
            "pushforward": lambda a: pushforward_pb(as_class(a)),
            "theta": theta,
            "part": lambda a, k: as_class(a).part(_int(k, "k")),
        }
        return evaluate(text, self._names(), fns)


def run_script(text: str) -> list[tuple[str, str]]:
    return ChowScript().run(text)
