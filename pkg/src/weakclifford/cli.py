"""Command-line front end and the tensor-expression parser.

Expression grammar (loosest binding first)::

    expr    := term (("+" | "-") term)*
    term    := "-" term | product
    product := wedge (("*" | ".") wedge)*          left associative
    wedge   := atom ("^" atom)*                     left associative
    atom    := rational | e1..e9 | J1..J3 | C | "(" expr ")"

``*`` and ``.`` are both the tensor product; ``^`` is the exterior product
(antisymmetrized tensor product), so ``e1^e2*e3`` means ``(e1^e2)*e3``.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, fields
from typing import Sequence

from . import __version__
from .freealg import Element, MetricSpace, concat, exterior, format_element
from .geometry import j_image, lambda_metric, pbw_image, solve_f_constraint
from .quotient import algebra_family, build_context, stabilization_audit
from .scalar import format_rational, half_integer, parse_rational, substitute_casimir
from .uea import casimir, format_pbw, monopole_part, multipole, pbw_normal_form, to_free

CONFIG_ENV = "WEAKCLIFFORD_CONFIG"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# parsing ------------------------------------------------------------------------------
class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>[eJ][1-9])|(?P<op>[-+*.^()C]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class ExpressionParser:
    """Parse text into an Element.

    ``j_mode`` selects how J and C are read: ``"weak"`` or ``"strong"`` map
    them to vector words through the corresponding bivector transform;
    ``"letters"`` keeps them as letters of U(so(3)) and rejects e-tokens.
    """

    def __init__(self, dim: int = 3, j_mode: str = "weak"):
        if j_mode not in ("weak", "strong", "letters"):
            raise ValueError(f"unknown J mode {j_mode!r}")
        self.dim = dim
        self.j_mode = j_mode

    def parse(self, text: str) -> Element:
        self._text = text
        self._tokens = tokenize(text)
        self._i = 0
        x = self._expr()
        kind, value, pos = self._peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", text, pos)
        return x

    def _peek(self):
        return self._tokens[self._i]

    def _take(self):
        tok = self._tokens[self._i]
        self._i += 1
        return tok

    def _at(self, *ops: str) -> bool:
        kind, value, _ = self._peek()
        return kind == "op" and value in ops

    def _expr(self) -> Element:
        x = self._term()
        while self._at("+", "-"):
            op = self._take()[1]
            y = self._term()
            x = x + y if op == "+" else x - y
        return x

    def _term(self) -> Element:
        if self._at("-"):
            self._take()
            return -self._term()
        return self._product()

    def _product(self) -> Element:
        x = self._wedge()
        while self._at("*", "."):
            self._take()
            x = concat(x, self._wedge())
        return x

    def _wedge(self) -> Element:
        x = self._atom()
        while self._at("^"):
            self._take()
            x = exterior(x, self._atom())
        return x

    def _atom(self) -> Element:
        kind, value, pos = self._take()
        if kind == "num":
            try:
                return Element.scalar(parse_rational(value), self.dim)
            except ZeroDivisionError:
                raise ParseError("zero denominator", self._text, pos) from None
        if kind == "gen":
            idx = int(value[1])
            if value[0] == "e":
                if self.j_mode == "letters":
                    raise ParseError("vector letters are not allowed here (use J1..J3)", self._text, pos)
                if idx > self.dim:
                    raise ParseError(f"{value} is outside dimension {self.dim}", self._text, pos)
                return Element.word((idx,), dim=self.dim)
            if idx > 3:
                raise ParseError(f"{value} is not a generator (J1..J3)", self._text, pos)
            if self.j_mode == "letters":
                return Element.word((idx,), dim=3)
            self._need_three(pos)
            return j_image(idx, strong=self.j_mode == "strong")
        if kind == "op" and value == "C":
            if self.j_mode == "letters":
                return to_free(casimir())
            self._need_three(pos)
            return pbw_image(casimir(), strong=self.j_mode == "strong")
        if kind == "op" and value == "(":
            x = self._expr()
            k, v, p = self._take()
            if not (k == "op" and v == ")"):
                raise ParseError("expected ')'", self._text, p)
            return x
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", self._text, pos)

    def _need_three(self, pos: int) -> None:
        if self.dim != 3:
            raise ParseError("J and C need three-dimensional space", self._text, pos)


def parse_expression(text: str, dim: int = 3, j_mode: str = "weak") -> Element:
    return ExpressionParser(dim, j_mode).parse(text)


# configuration -------------------------------------------------------------------------
@dataclass
class RunConfig:
    algebra: str = "weak"
    spin: str | None = None
    degree: int | None = None
    headroom: int = 2
    format: str = "text"
    seed: int = 0
    signature: str = "3,0"

    def __post_init__(self):
        if self.degree is not None and self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.headroom < 0:
            raise ValueError("headroom must be nonnegative")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")

    @property
    def space(self) -> MetricSpace:
        try:
            p, q = (int(x) for x in self.signature.split(","))
        except ValueError:
            raise ValueError(f"signature must look like 'p,q', got {self.signature!r}") from None
        return MetricSpace.signature(p, q)

    @property
    def selector(self) -> str:
        if self.spin is not None:
            return f"spin:{self.spin}"
        return self.algebra

    def as_dict(self) -> dict:
        return asdict(self)


_INT_KEYS = {"degree", "headroom", "seed"}


def load_config_file(path: str) -> dict:
    """key = value lines; '#' starts a comment; keys mirror the long flag names."""
    known = {f.name for f in fields(RunConfig)}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise ValueError(f"{path}:{n}: unknown key {key!r}")
            out[key] = int(value) if key in _INT_KEYS else value
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        values.update(load_config_file(path))
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return RunConfig(**values)


def default_degree(selector: str) -> int | None:
    """Truncation used when -D is not given: enough for the spin identities plus one product."""
    if selector.startswith("spin:"):
        s = half_integer(selector[5:])
        return int(4 * s + 4) if s else None
    return None


# reports --------------------------------------------------------------------------------
def make_report(command: str, config: RunConfig, results: list) -> dict:
    return {"command": command, "config": config.as_dict(), "results": results, "version": __version__}


REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "config", "results", "version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["algebra", "degree", "headroom", "format", "seed", "signature", "spin"],
        },
        "results": {"type": "array"},
        "version": {"type": "string"},
    },
}


def _emit(config: RunConfig, command: str, results: list, text_lines: list[str]) -> None:
    if config.format == "json":
        print(json.dumps(make_report(command, config, results), indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# commands -------------------------------------------------------------------------------
def cmd_multipole(args, config: RunConfig) -> int:
    word = tuple(args.indices)
    if len(word) != args.k:
        raise UsageError(f"multipole of order {args.k} needs {args.k} indices, got {len(word)}")
    if any(a not in (1, 2, 3) for a in word):
        raise UsageError("multipole indices must be 1, 2 or 3")
    text = format_pbw(multipole(args.k, word))
    _emit(config, "multipole", [{"k": args.k, "word": list(word), "multipole": text}], [text])
    return EXIT_OK


def _context_for(config: RunConfig, degree: int):
    family, note = algebra_family(config.selector, config.space)
    if note:
        print(f"note: {note}", file=sys.stderr)
    return build_context(config.space, family, degree, config.headroom)


def cmd_reduce(args, config: RunConfig) -> int:
    strong = config.selector == "clifford"
    x = parse_expression(args.expr, config.space.dim, "strong" if strong else "weak")
    D = config.degree
    if D is None:
        D = max(x.degree, default_degree(config.selector) or 0)
    if x.degree > D:
        raise UsageError(f"expression has degree {x.degree}, above the truncation degree {D}")
    ctx = _context_for(config, D)
    text = format_element(ctx.reduce(x))
    _emit(config, "reduce", [{"input": args.expr, "degree_bound": D, "reduced": text}], [text])
    return EXIT_OK


def cmd_dims(args, config: RunConfig) -> int:
    D = config.degree if config.degree is not None else 4
    family, note = algebra_family(config.selector, config.space)
    if note:
        print(f"note: {note}", file=sys.stderr)
    audit = stabilization_audit(config.space, family, D, config.headroom)
    status = (f"stabilized (headroom {config.headroom} and {config.headroom + 2} agree)" if audit.stabilized
              else f"NOT stabilized at headroom {config.headroom}: increase headroom")
    _emit(config, "dims", [{"algebra": family.name, "dims": audit.dims, "audit": audit.as_dict()}],
          [" ".join(map(str, audit.dims)), status])
    if not audit.stabilized:
        print(f"dimension sequence changed with more headroom ({audit.dims_more_headroom}); "
              "increase headroom", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite in (None, "all") else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results, lines = [], []
    ok = True
    for name in names:
        checks = run_suite(name, kmax=args.kmax, seed=config.seed)
        passed = all(c.passed for c in checks)
        ok &= passed
        results.append({"suite": name, "pass": passed, "checks": [c.as_dict() for c in checks]})
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {name}")
        lines += [f"  {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.value}  ({c.anchor})" for c in checks]
    _emit(config, "verify", results, lines)
    return EXIT_OK if ok else EXIT_FAIL


_BLADES = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def _blade_label(I) -> str:
    return "^".join(f"e{i}" for i in I) if I else "1"


def cmd_metric_table(args, config: RunConfig) -> int:
    from .verify import blade

    spins = [half_integer(s) for s in (args.spins or ["0", "1/2", "1"])]
    entries = []
    for I in _BLADES:
        for K in _BLADES:
            poly = lambda_metric(blade(I), blade(K))
            entries.append({
                "pair": f"{_blade_label(I)} | {_blade_label(K)}",
                "symbolic": str(poly),
                "by_spin": {format_rational(s): format_rational(substitute_casimir(poly, s)) for s in spins},
            })
    rows = []
    for s in spins:
        norms = {name: format_rational(substitute_casimir(lambda_metric(blade(I), blade(I)), s))
                 for name, I in (("scalar", ()), ("vector", (1,)), ("bivector", (1, 2)), ("trivector", (1, 2, 3)))}
        rows.append({"s": format_rational(s), "norms": norms})
    lines = [f"{'pair':<22}{'g_Lambda':<12}" + "".join(f"s={format_rational(s):<8}" for s in spins)]
    for e in entries:
        if e["symbolic"] != "0":
            lines.append(f"{e['pair']:<22}{e['symbolic']:<12}" + "".join(f"{v:<10}" for v in e["by_spin"].values()))
    lines.append("")
    for r in rows:
        lines.append(f"s={r['s']}: " + ", ".join(f"{k} norm {v}" for k, v in r["norms"].items()))
    _emit(config, "metric-table", [{"spins": rows, "entries": entries}], lines)
    return EXIT_OK


def cmd_solve_f(args, config: RunConfig) -> int:
    sol = solve_f_constraint(config.space)
    result = {
        "families": [[format_rational(c) for c in d] for d in sol.directions],
        "degenerate": [[format_rational(c) for c in d] for d in sol.degenerate],
        "description": sol.describe(),
    }
    _emit(config, "solve-f", [result], [sol.describe()])
    return EXIT_OK


def cmd_mon(args, config: RunConfig) -> int:
    x = parse_expression(args.expr, 3, "letters")
    poly = monopole_part(pbw_normal_form(x))
    _emit(config, "mon", [{"input": args.expr, "mon": str(poly)}], [str(poly)])
    return EXIT_OK


# entry point ------------------------------------------------------------------------------
class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="free | clifford | weak | spin:s | sym (default weak)")
    common.add_argument("--spin", help="shorthand for --algebra spin:S")
    common.add_argument("-D", "--degree", type=int, help="truncation degree")
    common.add_argument("-H", "--headroom", type=int, help="extra elimination degrees (default 2)")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--signature", help="metric signature p,q (default 3,0)")
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")

    p = argparse.ArgumentParser(prog="weakclifford", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("multipole", parents=[common], help="print a multipole in PBW form")
    s.add_argument("k", type=int)
    s.add_argument("indices", type=int, nargs="*")
    s.set_defaults(func=cmd_multipole)

    s = sub.add_parser("reduce", parents=[common], help="canonical representative of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", parents=[common], help="run check suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--kmax", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("metric-table", parents=[common], help="g_Lambda on basis blades")
    s.add_argument("spins", nargs="*")
    s.set_defaults(func=cmd_metric_table)

    s = sub.add_parser("dims", parents=[common], help="quotient dimensions with stabilization audit")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("solve-f", parents=[common], help="solve the f-tensor closure constraint")
    s.set_defaults(func=cmd_solve_f)

    s = sub.add_parser("mon", parents=[common], help="monopole part of a J expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_mon)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.spin is not None:
            args.spin = format_rational(half_integer(args.spin))
            args.algebra = None
        config = resolve_config(args)
        return args.func(args, config)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
