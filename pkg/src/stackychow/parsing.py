"""Text syntax for polynomial-like expressions.

Accepts things like ``3*x^2*y^-1 - 1/2``, ``(x-1)*(x-2) + y`` or ``2t + h``.
``^`` is exponentiation, a numeral directly followed by a name or ``(``
is an implicit product, and whitespace is ignored.  Evaluation walks the
Python AST with a whitelist, so nothing is ever executed.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Callable, Mapping

from .arith import LaurentPoly2, UniPoly


class ParseError(ValueError):
    """Malformed expression text."""


_IMPLICIT = re.compile(r"\b(\d+)\s*(?=[A-Za-z_(])")


def _prepare(text: str) -> str:
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression")
    src = text.strip().replace("^", "**")
    return _IMPLICIT.sub(r"\1*", src)


def evaluate(
    text: str,
    names: Mapping[str, object],
    functions: Mapping[str, Callable] | None = None,
):
    """Evaluate ``text`` with the given name bindings.

    Values only need ``+ - * **`` (and ``/`` by scalars); integer literals
    come through as :class:`Fraction`.
    """
    try:
        tree = ast.parse(_prepare(text), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    functions = functions or {}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"unsupported literal {node.value!r} in {text!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id in names:
                return names[node.id]
            raise ParseError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = ev(node.left)
                exp = ev(node.right)
                if not isinstance(exp, Fraction) or exp.denominator != 1:
                    raise ParseError(f"exponents must be integers in {text!r}")
                return base ** int(exp)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if isinstance(right, Fraction) and right == 0:
                    raise ParseError(f"division by zero in {text!r}")
                return left / right
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = functions.get(node.func.id)
            if fn is None:
                raise ParseError(f"unknown function {node.func.id!r} in {text!r}")
            args = [ev(a) for a in node.args]
            kwargs = {k.arg: ev(k.value) for k in node.keywords}
            return fn(*args, **kwargs)
        raise ParseError(f"unsupported syntax in {text!r}")

    try:
        return ev(tree)
    except ParseError:
        raise
    except (TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot evaluate {text!r}: {exc}") from None


def parse_rat(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational: {text!r}") from None


def parse_laurent(text: str) -> LaurentPoly2:
    try:
        value = evaluate(text, {"x": LaurentPoly2.x(), "y": LaurentPoly2.y()})
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    if isinstance(value, Fraction):
        return LaurentPoly2.constant(value)
    if not isinstance(value, LaurentPoly2):
        raise ParseError(f"not a Laurent polynomial: {text!r}")
    return value


def parse_unipoly(text: str, var: str = "t") -> UniPoly:
    try:
        value = evaluate(text, {var: UniPoly([0, 1])})
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    if isinstance(value, Fraction):
        return UniPoly([value])
    if not isinstance(value, UniPoly):
        raise ParseError(f"not a polynomial in {var}: {text!r}")
    return value
