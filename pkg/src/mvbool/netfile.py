"""Line-oriented text format for multivalued networks.

A document declares its components and then gives the map either as a full
table or as one rule per component::

    # comment
    components: a:2 b:1
    map:
    0 0 -> 1 0
    ...

    components: a:2
    rules:
    a = 2 - a

Rule expressions use integers, component names, unary minus, ``+``/``-``,
``min(e, e)``, ``max(e, e)`` and ``ite(e OP e, e, e)`` with OP one of
``== <= >= < >``.  The value of each rule is clamped to the component range.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import MultiSpace, MultivaluedMap
from .errors import NetworkParseError


# -- rule expressions ----------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+" or "-"
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str  # "min" or "max"
    args: tuple


@dataclass(frozen=True)
class Compare:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Ite:
    cond: Compare
    then: object
    other: object


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(==|<=|>=|[-+(),<>]))")
_COMPARISONS = ("==", "<=", ">=", "<", ">")


class _ExprParser:
    def __init__(self, text, line, offset, names):
        self.text = text
        self.line = line
        self.offset = offset  # column of text[0], 1-based
        self.names = names
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip())
                self.fail(f"unexpected character {text[col]!r}", col)
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def fail(self, msg, pos=None):
        col = None if pos is None else self.offset + pos
        raise NetworkParseError(msg, self.line, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            got = "end of line" if tok[0] == "end" else repr(tok[1])
            self.fail(f"expected {value!r}, got {got}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            self.fail(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(int(val))
        if val == "-":
            self.take()
            return Neg(self.term())
        if val == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if kind == "name":
            self.take()
            if val in ("min", "max") and self.peek()[1] == "(":
                self.take("(")
                a = self.expr()
                self.take(",")
                b = self.expr()
                self.take(")")
                return Call(val, (a, b))
            if val == "ite" and self.peek()[1] == "(":
                self.take("(")
                left = self.expr()
                op = self.peek()
                if op[1] not in _COMPARISONS:
                    self.fail("expected a comparison", op[2])
                self.take()
                cond = Compare(op[1], left, self.expr())
                self.take(",")
                then = self.expr()
                self.take(",")
                other = self.expr()
                self.take(")")
                return Ite(cond, then, other)
            if val not in self.names:
                self.fail(f"unknown component {val!r}", pos)
            return Ref(val)
        got = "end of line" if kind == "end" else repr(val)
        self.fail(f"expected an expression, got {got}", pos)


def parse_expression(text, names=(), line=None, column=1):
    return _ExprParser(text, line, column, set(names)).parse()


def evaluate(expr, env):
    """Evaluate ``expr`` with ``env`` mapping names to integers or integer arrays."""
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Ref):
        return env[expr.name]
    if isinstance(expr, Neg):
        return -evaluate(expr.arg, env)
    if isinstance(expr, BinOp):
        a, b = evaluate(expr.left, env), evaluate(expr.right, env)
        return a + b if expr.op == "+" else a - b
    if isinstance(expr, Call):
        a, b = (evaluate(x, env) for x in expr.args)
        return np.minimum(a, b) if expr.fn == "min" else np.maximum(a, b)
    if isinstance(expr, Ite):
        a, b = evaluate(expr.cond.left, env), evaluate(expr.cond.right, env)
        cond = {
            "==": np.equal,
            "<=": np.less_equal,
            ">=": np.greater_equal,
            "<": np.less,
            ">": np.greater,
        }[expr.cond.op](a, b)
        return np.where(cond, evaluate(expr.then, env), evaluate(expr.other, env))
    raise TypeError(f"not an expression node: {expr!r}")


def format_expression(expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, Neg):
        inner = format_expression(expr.arg)
        return f"-({inner})" if isinstance(expr.arg, BinOp) else f"-{inner}"
    if isinstance(expr, BinOp):
        right = format_expression(expr.right)
        if isinstance(expr.right, BinOp):
            right = f"({right})"
        return f"{format_expression(expr.left)} {expr.op} {right}"
    if isinstance(expr, Call):
        return f"{expr.fn}({', '.join(format_expression(a) for a in expr.args)})"
    if isinstance(expr, Ite):
        c = expr.cond
        return (
            f"ite({format_expression(c.left)} {c.op} {format_expression(c.right)}, "
            f"{format_expression(expr.then)}, {format_expression(expr.other)})"
        )
    raise TypeError(f"not an expression node: {expr!r}")


# -- documents -------------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    source: tuple
    target: tuple
    line: int


@dataclass(frozen=True)
class Rule:
    name: str
    expr: object
    line: int


@dataclass(frozen=True)
class NetworkDocument:
    names: tuple
    levels: tuple
    mode: str  # "table" or "rules"
    rows: tuple = ()
    rules: tuple = ()
    comments: tuple = field(default=(), compare=False)

    @property
    def space(self) -> MultiSpace:
        return MultiSpace(self.levels, names=self.names)

    def to_map(self) -> MultivaluedMap:
        space = self.space
        if self.mode == "table":
            table = np.empty(space.size, dtype=np.int64)
            for row in self.rows:
                table[space.rank(row.source)] = space.rank(row.target)
            return MultivaluedMap(space, table)
        cur = space.coords
        env = {name: cur[:, k] for k, name in enumerate(self.names)}
        by_name = {r.name: r for r in self.rules}
        out = np.empty_like(cur)
        for k, name in enumerate(self.names):
            val = np.broadcast_to(np.asarray(evaluate(by_name[name].expr, env)), (space.size,))
            out[:, k] = np.clip(val, 0, self.levels[k])
        return MultivaluedMap(space, out @ space.weights)


def _strip_comment(line):
    k = line.find("#")
    return (line, None) if k < 0 else (line[:k], line[k + 1 :].strip())


def _ints(text, line, offset):
    out = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if not re.fullmatch(r"\d+", tok):
            raise NetworkParseError(f"expected a non-negative integer, got {tok!r}", line, offset + m.start())
        out.append((int(tok), offset + m.start()))
    return out


def parse(text: str) -> NetworkDocument:
    """Parse and validate a network document."""
    names: list = []
    levels: list = []
    mode = None
    rows: list = []
    rules: list = []
    comments: list = []
    comp_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, comment = _strip_comment(raw)
        if comment is not None and mode is None and not body.strip():
            comments.append(comment)
        if not body.strip():
            continue
        stripped = body.strip()
        col0 = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("components:"):
            if comp_line is not None:
                raise NetworkParseError("duplicate components line", lineno, col0)
            comp_line = lineno
            rest_off = body.index("components:") + len("components:")
            for m in re.finditer(r"\S+", body[rest_off:]):
                tok, col = m.group(), rest_off + m.start() + 1
                mm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*):(\d+)", tok)
                if not mm:
                    raise NetworkParseError(f"expected name:level, got {tok!r}", lineno, col)
                name, level = mm.group(1), int(mm.group(2))
                if name in ("min", "max", "ite"):
                    raise NetworkParseError(f"reserved name {name!r}", lineno, col)
                if name in names:
                    raise NetworkParseError(f"duplicate component {name!r}", lineno, col)
                if level < 1:
                    raise NetworkParseError(f"level of {name!r} must be at least 1", lineno, col)
                names.append(name)
                levels.append(level)
            if not names:
                raise NetworkParseError("no components declared", lineno, None)
            continue
        if stripped in ("map:", "rules:"):
            if comp_line is None:
                raise NetworkParseError("components line must come first", lineno, col0)
            if mode is not None:
                raise NetworkParseError(f"second section {stripped!r}", lineno, col0)
            mode = "table" if stripped == "map:" else "rules"
            continue
        if mode is None:
            raise NetworkParseError(f"unexpected line {stripped!r}", lineno, col0)
        if mode == "table":
            if body.count("->") != 1:
                raise NetworkParseError("table row needs exactly one '->'", lineno, col0)
            k = body.index("->")
            left = _ints(body[:k], lineno, 1)
            right = _ints(body[k + 2 :], lineno, k + 3)
            for side, vals in (("source", left), ("target", right)):
                if len(vals) != len(names):
                    raise NetworkParseError(
                        f"{side} has {len(vals)} values, expected {len(names)}", lineno, col0 if side == "source" else k + 3
                    )
                for (v, col), m, name in zip(vals, levels, names):
                    if v > m:
                        raise NetworkParseError(f"value {v} out of range for {name} (max {m})", lineno, col)
            rows.append(Row(tuple(v for v, _ in left), tuple(v for v, _ in right), lineno))
        else:
            if "=" not in body or body.index("=") == body.find("=="):
                raise NetworkParseError("rule needs the form 'name = expression'", lineno, col0)
            k = body.index("=")
            target = body[:k].strip()
            if target not in names:
                raise NetworkParseError(f"rule for undeclared component {target!r}", lineno, col0)
            if any(r.name == target for r in rules):
                raise NetworkParseError(f"second rule for {target!r}", lineno, col0)
            expr = parse_expression(body[k + 1 :], names, lineno, k + 2)
            rules.append(Rule(target, expr, lineno))
    if comp_line is None:
        raise NetworkParseError("missing components line")
    if mode is None:
        raise NetworkParseError("missing 'map:' or 'rules:' section")
    doc = NetworkDocument(tuple(names), tuple(levels), mode, tuple(rows), tuple(rules), tuple(comments))
    _validate(doc)
    return doc


def _validate(doc: NetworkDocument):
    space = doc.space
    if doc.mode == "table":
        seen: dict = {}
        for row in doc.rows:
            r = space.rank(row.source)
            if r in seen:
                raise NetworkParseError(
                    f"state {space.format_state(row.source)} already given on line {seen[r]}", row.line
                )
            seen[r] = row.line
        if len(seen) != space.size:
            missing = next(x for x in space.states() if space.rank(x) not in seen)
            raise NetworkParseError(
                f"{space.size - len(seen)} states missing, first {space.format_state(missing)}"
            )
    else:
        given = {r.name for r in doc.rules}
        absent = [n for n in doc.names if n not in given]
        if absent:
            raise NetworkParseError(f"no rule for {', '.join(absent)}")


def render(obj, comments=()) -> str:
    """Canonical text of a document or map (maps render as tables)."""
    if isinstance(obj, MultivaluedMap):
        space = obj.space
        names, levels = space.component_names, space.levels
        rows = [(x, obj(x)) for x in space.states()]
        mode = "table"
        rules = ()
    else:
        names, levels, mode = obj.names, obj.levels, obj.mode
        rows = sorted(((r.source, r.target) for r in obj.rows))
        by_name = {r.name: r for r in obj.rules}
        rules = [(n, by_name[n].expr) for n in names] if mode == "rules" else ()
        comments = comments or obj.comments
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append("components: " + " ".join(f"{n}:{m}" for n, m in zip(names, levels)))
    if mode == "table":
        lines.append("map:")
        for x, y in rows:
            lines.append(" ".join(map(str, x)) + " -> " + " ".join(map(str, y)))
    else:
        lines.append("rules:")
        for n, e in rules:
            lines.append(f"{n} = {format_expression(e)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> MultivaluedMap:
    return parse(text).to_map()


def load_map(path) -> MultivaluedMap:
    return loads(Path(path).read_text())


def parse_state(text: str, n: int | None = None) -> tuple:
    """Read ``0,1,2``, ``(0,1,2)``, ``0 1 2`` or a bit string like ``0101``."""
    t = text.strip().strip("()")
    if re.fullmatch(r"\d+", t) and (n is None or len(t) == n):
        return tuple(int(c) for c in t)
    parts = [p for p in re.split(r"[,\s]+", t) if p]
    if not parts or not all(re.fullmatch(r"\d+", p) for p in parts):
        raise ValueError(f"cannot read a state from {text!r}")
    return tuple(int(p) for p in parts)
