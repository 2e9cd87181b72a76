"""Command-line front end.

    stackychow boundary f="x^2-3*x+2+y"
    stackychow reduce cycle='[["t^2-3*t+2", 1]]' --verify
    stackychow fan rays='[[1,0],[1,2]]'
    stackychow chow script=session.chow      (or the script on stdin)
    stackychow localize data=fixed_points.json

Exit status: 0 on success, 2 for unparseable input, 1 when the input is
well formed but violates a precondition.  Rationals are always written
as ``"p/q"`` strings.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from .arith import format_rat
from .chow import (
    ChowRingPresentation,
    free_ring,
    point_ring,
    projective_space,
    weighted_projective_line,
)
from .cycles import (
    Certificate,
    ZeroCycleOnR,
    boundary_by_edge,
    class_of,
    norm,
    reduce_to_point,
    total_boundary,
    verify_certificate,
)
from .equivariant import FixedComponentData, check_t_independence, localize_integrate, parse_laurent_t
from .parsing import ParseError, parse_laurent, parse_rat
from .sampling import random_cycle, random_laurent
from .script import run_script
from .toric import edge_polynomial, smooth_complete_fan

log = logging.getLogger("stackychow")

SUBCOMMANDS = {
    "boundary": {"f"},
    "reduce": {"cycle", "nf", "cert"},
    "fan": {"rays"},
    "chow": {"script"},
    "localize": {"data"},
}


class UsageError(Exception):
    """Bad command line or unparseable input (exit 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = _Parser(prog="stackychow", parents=[common], description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("args", nargs="*", metavar="key=value")
        if name == "reduce":
            sp.add_argument("--verify", action="store_true")
    return parser


def _kv(command: str, items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"{command}: expected key=value, got {item!r}")
        if key not in SUBCOMMANDS[command]:
            raise UsageError(f"{command}: unknown argument {key!r}")
        out[key] = value
    return out


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None


def _need(kv: dict, key: str, command: str) -> str:
    if key not in kv:
        raise UsageError(f"{command}: missing {key}=...")
    return kv[key]


# --- subcommands -------------------------------------------------------------


def cmd_boundary(kv, opts) -> dict:
    text = _need(kv, "f", "boundary")
    if text == "random":
        f = random_laurent(random.Random(opts.seed))
    else:
        f = parse_laurent(text)
    if f.is_zero():
        raise ValueError("boundary: precondition f != 0 violated")
    if f.is_monomial():
        raise ValueError("boundary: precondition 'f is not a monomial' violated (a monomial has no zeros on the torus)")
    edges = []
    total = ZeroCycleOnR()
    pairs = boundary_by_edge(f)
    # already counterclockwise; rotate to start at the lex-least normal
    start = min(range(len(pairs)), key=lambda i: pairs[i][0].rho)
    for e, cyc in pairs[start:] + pairs[:start]:
        total = total + cyc
        edges.append(
            {
                "rho": list(e.rho),
                "lambda": e.lam,
                "p": list(e.p),
                "q": list(e.q),
                "edge_poly": edge_polynomial(f, e).to_string("t"),
                "cycle": cyc.to_json(),
                "norm": format_rat(norm(cyc)),
            }
        )
    fan = smooth_complete_fan(sorted({tuple(e["rho"]) for e in edges}))
    return {
        "f": str(f),
        "edges": edges,
        "total_cycle": total.to_json(),
        "norm_product": format_rat(norm(total)),
        "fan": [list(r) for r in fan.rays],
    }


def _boundary_text(out: dict) -> str:
    lines = [f"f = {out['f']}"]
    for e in out["edges"]:
        cyc = ZeroCycleOnR.from_json(e["cycle"])
        lines.append(f"rho = {tuple(e['rho'])}  lambda = {e['lambda']}  edge_poly = {e['edge_poly']}  cycle = {cyc}  norm = {e['norm']}")
    lines.append(f"total_cycle = {ZeroCycleOnR.from_json(out['total_cycle'])}")
    lines.append(f"norm_product = {out['norm_product']}")
    return "\n".join(lines)


def cmd_reduce(kv, opts) -> dict:
    text = _need(kv, "cycle", "reduce")
    if text == "random":
        c = random_cycle(random.Random(opts.seed))
    else:
        c = ZeroCycleOnR.from_json(_load_json(text, "cycle"))
    if "cert" in kv or "nf" in kv:
        nf = ZeroCycleOnR.from_json(_load_json(_need(kv, "nf", "reduce"), "nf"))
        cert = Certificate.from_json(_load_json(_need(kv, "cert", "reduce"), "cert"))
        return {
            "input": c.to_json(),
            "normal_form": nf.to_json(),
            "certificate": cert.to_json(),
            "verified": verify_certificate(c, nf, cert),
        }
    nf, cert = reduce_to_point(c)
    out = {
        "input": c.to_json(),
        "normal_form": nf.to_json(),
        "class": format_rat(class_of(c).value),
        "certificate": cert.to_json(),
        "verified": verify_certificate(c, nf, cert),
    }
    if opts.verify:
        # replay each step from its serialized form, as a consumer would
        replay = []
        for step in out["certificate"]:
            b = total_boundary(parse_laurent(step["curve"]))
            replay.append({"sign": step["sign"], "curve": step["curve"], "boundary": b.to_json()})
        reparsed = Certificate.from_json(out["certificate"])
        out["replay"] = replay
        out["verified"] = out["verified"] and verify_certificate(c, nf, reparsed)
    return out


def _reduce_text(out: dict) -> str:
    lines = [
        f"input = {ZeroCycleOnR.from_json(out['input'])}",
        f"normal_form = {ZeroCycleOnR.from_json(out['normal_form'])}",
    ]
    if "class" in out:
        lines.append(f"class = {out['class']}")
    for step in out["certificate"]:
        lines.append(f"step = {'+' if step['sign'] > 0 else '-'}boundary({step['curve']})")
    lines.append(f"verified = {'true' if out['verified'] else 'false'}")
    return "\n".join(lines)


def cmd_fan(kv, opts) -> dict:
    data = _load_json(_need(kv, "rays", "fan"), "rays")
    if not isinstance(data, list) or not all(
        isinstance(r, list) and len(r) == 2 and all(isinstance(x, int) for x in r) for r in data
    ):
        raise UsageError("fan: rays must be a JSON array of [u, v] integer pairs")
    fan = smooth_complete_fan([tuple(r) for r in data])
    return {"rays": [list(r) for r in fan.rays], "smooth": fan.is_smooth(), "complete": fan.is_complete()}


def cmd_chow(kv, opts, stdin) -> dict:
    if "script" in kv:
        path = Path(kv["script"])
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"chow: cannot read script {path}: {exc.strerror}") from None
    else:
        text = stdin.read()
    return {"results": [{"name": n, "value": v} for n, v in run_script(text)]}


def ring_from_json(desc) -> ChowRingPresentation:
    """Ring description used by ``localize`` component data."""
    if desc is None:
        return point_ring()
    if not isinstance(desc, dict) or "type" not in desc:
        raise UsageError("ring must be an object with a 'type' field")
    kind = desc["type"]
    name = desc.get("name", "h")
    try:
        if kind == "point":
            return point_ring()
        if kind == "projective_space":
            return projective_space(int(desc["n"]), name=name)
        if kind == "weighted_projective_line":
            return weighted_projective_line(int(desc["a"]), int(desc["b"]), name=name)
        if kind == "free":
            gens = [(g, int(c)) for g, c in desc["generators"]]
            dim = int(desc["dimension"])
            table = None
            if "degree" in desc:
                # keys are monomials such as "a*b^2", values their degrees
                scratch = free_ring(gens, dim)
                table = {}
                for mono, val in desc["degree"].items():
                    ((m, c),) = scratch.parse(mono).poly.items()
                    table[m] = parse_rat(val) / c
            return free_ring(gens, dim, degree_table=table)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(f"bad ring description {desc!r}") from None
    raise UsageError(f"unknown ring type {kind!r}")


def cmd_localize(kv, opts) -> dict:
    src = _need(kv, "data", "localize")
    if src.lstrip().startswith("{"):
        data = _load_json(src, "data")
    else:
        try:
            data = _load_json(Path(src).read_text(), "data")
        except OSError as exc:
            raise UsageError(f"localize: cannot read {src}: {exc.strerror}") from None
    comps_json = data.get("components") if isinstance(data, dict) else None
    if not isinstance(comps_json, list):
        raise UsageError("localize: data must have a 'components' list")
    comps = []
    for item in comps_json:
        if not isinstance(item, dict) or "restriction" not in item or "normal_ctop" not in item:
            raise UsageError("localize: each component needs 'restriction' and 'normal_ctop'")
        ring = ring_from_json(item.get("ring"))
        comps.append(
            FixedComponentData(
                ring,
                parse_laurent_t(str(item["restriction"]), ring),
                parse_laurent_t(str(item["normal_ctop"]), ring),
            )
        )
    raw = localize_integrate(comps)
    out = {"raw": str(raw)}
    try:
        out["value"] = format_rat(check_t_independence(raw))
    except ValueError:
        pass
    return out


# --- dispatch ------------------------------------------------------------------


def _configure_logging() -> None:
    level = os.environ.get("STACKYCHOW_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: list[str], stdin=None) -> tuple[int, str]:
    """Run one command; returns ``(exit_code, stdout_text)``.

    Diagnostics for failures go in the returned text as a single line.
    """
    stdin = sys.stdin if stdin is None else stdin
    try:
        opts = build_parser().parse_args(argv)
        if not opts.command:
            raise UsageError("missing subcommand (boundary, reduce, fan, chow, localize)")
        fmt = getattr(opts, "format", None) or "json"
        opts.seed = getattr(opts, "seed", None)
        opts.verify = getattr(opts, "verify", False)
        kv = _kv(opts.command, opts.args)
        if opts.command == "chow":
            out = cmd_chow(kv, opts, stdin)
        else:
            out = {"boundary": cmd_boundary, "reduce": cmd_reduce, "fan": cmd_fan, "localize": cmd_localize}[
                opts.command
            ](kv, opts)
    except (UsageError, ParseError) as exc:
        return 2, f"stackychow: error: {exc}"
    except ValueError as exc:
        return 1, f"stackychow: {exc}"

    if fmt == "json":
        return 0, json.dumps(out, indent=2)
    if opts.command == "boundary":
        return 0, _boundary_text(out)
    if opts.command == "reduce":
        return 0, _reduce_text(out)
    if opts.command == "chow":
        return 0, "\n".join(f"{r['name']} = {r['value']}" for r in out["results"])
    if opts.command == "fan":
        return 0, "\n".join(
            [f"rays = {' '.join(str(tuple(r)) for r in out['rays'])}", f"smooth = {str(out['smooth']).lower()}", f"complete = {str(out['complete']).lower()}"]
        )
    lines = [f"raw = {out['raw']}"]
    if "value" in out:
        lines.append(f"value = {out['value']}")
    return 0, "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    if text:
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
