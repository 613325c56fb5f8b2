"""Line-oriented construction language.

Example::

    point A = (-2, 0)
    point B = (2, 0)
    circle c0 = circle(A, 2.5)
    circle c1 = circle(B, 2.5)
    point C = mover on_circle(c0)
    circle c2 = circle(C, 3)
    point D = meet_cc(c1, c2, branch=0)
    point E = midpoint(C, D)
    trace mover=C tracer=E

``#`` starts a comment.  Numbers are plain decimal literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import construction as cn
from .projective import HomLine, HomPoint


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1


KINDS = ("Syntax", "UnknownIdentifier", "TypeMismatch", "ForwardReference", "DuplicateName", "NoTraceDirective")


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str, kind: str = "Syntax"):
        assert kind in KINDS and message
        self.span = span
        self.message = message
        self.kind = kind
        super().__init__(f"{span.line}:{span.column}: {kind}: {message}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),=]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
            raise ParseError(SourceSpan(lineno, col, 1), f"unexpected character {line[col - 1]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), SourceSpan(lineno, start + 1, max(1, m.end() - start))))
        pos = m.end()
    return toks


class _Line:
    """Cursor over the tokens of one statement."""

    def __init__(self, toks, lineno, text):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.text = text

    def _end_span(self):
        return SourceSpan(self.lineno, len(self.text.rstrip()) + 1, 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, kind=None, text=None, what=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(self._end_span(), f"expected {what or text or kind}, found end of line")
        if (kind and tok.kind != kind) or (text and tok.text != text):
            raise ParseError(tok.span, f"expected {what or text or kind}, found {tok.text!r}")
        self.i += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise ParseError(tok.span, f"unexpected {tok.text!r} after statement")

    def number(self) -> float:
        return float(self.next("num", what="a number").text)

    def tuple_of_numbers(self, n):
        self.next(text="(")
        vals = [self.number()]
        for _ in range(n - 1):
            self.next(text=",")
            vals.append(self.number())
        self.next(text=")")
        return vals

    def call_args(self, n_names, branch=False):
        self.next(text="(")
        names = [self.next("name", what="a name")]
        for _ in range(n_names - 1):
            self.next(text=",")
            names.append(self.next("name", what="a name"))
        b = None
        if branch:
            self.next(text=",")
            self.next(text="branch")
            self.next(text="=")
            tok = self.next("num", what="branch index")
            if tok.text not in ("0", "1"):
                raise ParseError(tok.span, "branch must be 0 or 1")
            b = int(tok.text)
        self.next(text=")")
        return names, b


# statement keyword -> (result kind, operand kinds, node factory, takes branch)
_POINT_OPS = {
    "meet": (("line", "line"), cn.Meet, False),
    "meet_cl": (("circle", "line"), cn.CircleLineMeet, True),
    "meet_cc": (("circle", "circle"), cn.CircleCircleMeet, True),
    "midpoint": (("point", "point"), cn.Midpoint, False),
}
_LINE_OPS = {
    "join": (("point", "point"), cn.Join, False),
    "perp": (("line", "point"), cn.PerpThrough, False),
}
_MOVERS = {
    ("point", "on_circle"): ("circle", cn.PointOnCircle),
    ("point", "on_line"): ("line", cn.PointOnLine),
    ("line", "line_through"): ("point", cn.LineThroughPoint),
}


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_construction(text: str) -> cn.Construction:
    """Parse construction source; raises ParseError (first error wins)."""
    lines = text.splitlines()
    # names declared anywhere, to tell forward references from unknown names
    declared_at = {}
    for lineno, raw in enumerate(lines, 1):
        m = re.match(r"\s*(point|line|circle)\s+([A-Za-z_][A-Za-z0-9_]*)", _strip_comment(raw))
        if m:
            declared_at.setdefault(m.group(2), lineno)

    nodes, names, branches = [], [], []
    index = {}
    trace = None
    last_span = SourceSpan(max(1, len(lines)), 1, 1)

    def lookup(tok, want):
        if tok.text not in index:
            if tok.text in declared_at:
                raise ParseError(tok.span, f"{tok.text!r} is used before its declaration", "ForwardReference")
            raise ParseError(tok.span, f"unknown name {tok.text!r}", "UnknownIdentifier")
        i = index[tok.text]
        if nodes[i].kind != want:
            raise ParseError(tok.span, f"{tok.text!r} is a {nodes[i].kind}, expected a {want}", "TypeMismatch")
        return i

    for lineno, raw in enumerate(lines, 1):
        body = _strip_comment(raw)
        toks = _tokenize(body, lineno)
        if not toks:
            continue
        cur = _Line(toks, lineno, body)
        head = cur.next("name", what="a statement")
        if trace is not None:
            raise ParseError(head.span, "nothing may follow the trace directive")
        if head.text == "trace":
            cur.next(text="mover")
            cur.next(text="=")
            mtok = cur.next("name", what="the mover name")
            cur.next(text="tracer")
            cur.next(text="=")
            ttok = cur.next("name", what="the tracer name")
            cur.done()
            trace = (mtok, ttok)
            continue
        if head.text not in ("point", "line", "circle"):
            raise ParseError(head.span, f"unknown statement {head.text!r}")
        name = cur.next("name", what="a name")
        if name.text in index:
            raise ParseError(name.span, f"{name.text!r} is already defined", "DuplicateName")
        cur.next(text="=")
        node, branch = _parse_rhs(cur, head.text, lookup)
        cur.done()
        index[name.text] = len(nodes)
        nodes.append(node)
        names.append(name.text)
        if branch is not None:
            branches.append(branch)

    if trace is None:
        raise ParseError(last_span, "missing 'trace mover=... tracer=...' directive", "NoTraceDirective")
    mtok, ttok = trace
    movers = [i for i, n in enumerate(nodes) if isinstance(n, cn.Mover)]
    if len(movers) != 1:
        raise ParseError(mtok.span, f"a construction needs exactly one mover, found {len(movers)}")
    for tok in (mtok, ttok):
        if tok.text not in index:
            raise ParseError(tok.span, f"unknown name {tok.text!r}", "UnknownIdentifier")
    if index[mtok.text] != movers[0]:
        raise ParseError(mtok.span, f"{mtok.text!r} is not the mover", "TypeMismatch")
    if nodes[index[ttok.text]].kind != "point":
        raise ParseError(ttok.span, f"tracer {ttok.text!r} must be a point", "TypeMismatch")
    return cn.Construction(tuple(nodes), movers[0], index[ttok.text], tuple(branches), tuple(names))


def _parse_rhs(cur: _Line, kind: str, lookup):
    tok = cur.peek()
    if tok is None:
        cur.next(what="an expression")
    if kind == "circle":
        cur.next(text="circle", what="circle(...)")
        cur.next(text="(")
        center = lookup(cur.next("name", what="a center point"), "point")
        cur.next(text=",")
        rtok = cur.peek()
        r = cur.number()
        if r < 0:
            raise ParseError(rtok.span, "radius must be nonnegative")
        cur.next(text=")")
        return cn.CircleCR(center, r), None
    if tok.text == "(":
        vals = cur.tuple_of_numbers(2 if kind == "point" else 3)
        if kind == "point":
            return cn.FreePoint(HomPoint.affine(*vals)), None
        if vals == [0.0, 0.0, 0.0]:
            raise ParseError(tok.span, "the zero vector is not a line")
        return cn.FreeLine(HomLine(*map(complex, vals))), None
    if tok.text == "mover":
        cur.next()
        mtok = cur.next("name", what="a mover kind")
        spec = _MOVERS.get((kind, mtok.text))
        if spec is None:
            raise ParseError(mtok.span, f"{mtok.text!r} is not a {kind} mover")
        want, param = spec
        (ref,), _ = cur.call_args(1)
        return cn.Mover(param(lookup(ref, want))), None
    ops = _POINT_OPS if kind == "point" else _LINE_OPS
    op = cur.next("name", what="an operation")
    if op.text not in ops:
        raise ParseError(op.span, f"unknown {kind} operation {op.text!r}")
    wants, factory, takes_branch = ops[op.text]
    refs, branch = cur.call_args(len(wants), takes_branch)
    args = [lookup(r, w) for r, w in zip(refs, wants)]
    return factory(*args), branch
