"""Formulas, bunches and consecutions, with a text parser and renderer.

Concrete syntax (ASCII only)::

    ~A        negation
    (A & B)   conjunction
    (A | B)   disjunction
    (A -> B)  conditional
    (A * B)   fusion
    (X , Y)   extensional bunch
    (X ; Y)   intensional bunch
    X |- A    consecution

Binary operators always need parentheses, except around the whole input.
``~`` binds tighter than any binary operator.

Positions are tuples of child indices.  A ``Leaf`` does not add a level:
the path of a leaf bunch is also the path of the formula it wraps, and
paths continue straight into that formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "Neg", "And", "Or", "Imp", "Fus", "Formula",
    "Leaf", "Comma", "Semi", "Bunch", "Consecution", "Path",
    "ParseError", "PathError",
    "parse_formula", "parse_bunch", "parse_consecution", "parse_any",
    "render", "vars_of", "subterm_at", "replace_at", "children",
    "iter_nodes", "bunch_paths", "as_bunch", "atom_key",
    "format_path", "parse_path",
]

Path = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class PathError(ValueError):
    pass


_P_INDEX = re.compile(r"p([1-9][0-9]*)\Z")


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    @property
    def index(self) -> int | None:
        m = _P_INDEX.match(self.name)
        return int(m.group(1)) if m else None

    @classmethod
    def p(cls, i: int) -> "Atom":
        if i < 1:
            raise ValueError("atom indices start at 1")
        return cls(f"p{i}")

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Neg:
    arg: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Fus:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Neg, And, Or, Imp, Fus]


@dataclass(frozen=True, slots=True)
class Leaf:
    formula: Formula


@dataclass(frozen=True, slots=True)
class Comma:
    left: "Bunch"
    right: "Bunch"


@dataclass(frozen=True, slots=True)
class Semi:
    left: "Bunch"
    right: "Bunch"


Bunch = Union[Leaf, Comma, Semi]

FORMULA_TYPES = (Atom, Neg, And, Or, Imp, Fus)
BUNCH_TYPES = (Leaf, Comma, Semi)


@dataclass(frozen=True, slots=True)
class Consecution:
    antecedent: Bunch
    succedent: Formula

    def __str__(self) -> str:
        return render(self)


def atom_key(a: Atom) -> tuple:
    """Sort key: p-atoms by index first, then other names alphabetically."""
    i = a.index
    return (0, i, "") if i is not None else (1, 0, a.name)


def as_bunch(e: Bunch | Formula) -> Bunch:
    return e if isinstance(e, BUNCH_TYPES) else Leaf(e)


# ---------------------------------------------------------------- rendering

_FORMULA_OPS = {And: "&", Or: "|", Imp: "->", Fus: "*"}
_BUNCH_OPS = {Comma: ",", Semi: ";"}


def _render(e, top: bool) -> str:
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Neg):
        return "~" + _render(e.arg, False)
    if isinstance(e, Leaf):
        return _render(e.formula, top)
    op = _FORMULA_OPS.get(type(e)) or _BUNCH_OPS.get(type(e))
    if op is None:
        raise TypeError(f"cannot render {e!r}")
    body = f"{_render(e.left, False)} {op} {_render(e.right, False)}"
    return body if top else f"({body})"


def render(e: Formula | Bunch | Consecution) -> str:
    if isinstance(e, Consecution):
        return f"{_render(e.antecedent, True)} |- {_render(e.succedent, True)}"
    return _render(e, True)


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\|-)|(->)|([~&|*,;()])|([A-Za-z][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", n))
    return tokens


# Raw parse tree: ("atom", name, pos) | ("~", node, pos) | (op, left, right, pos)
class _Parser:
    BINOPS = {"&", "|", "->", "*", ",", ";"}

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.peek()[1] if pos is None else pos, self.text)

    def top(self, stop: str = ""):
        left = self.unit()
        tok, pos = self.peek()
        if tok in self.BINOPS:
            self.take()
            right = self.unit()
            left = (tok, left, right, pos)
            tok, pos = self.peek()
            if tok in self.BINOPS:
                self.fail(f"ambiguous operator {tok!r}; add parentheses")
        if tok != stop:
            self.fail(f"unexpected {tok!r}" if tok else "unexpected end of input")
        return left

    def unit(self):
        tok, pos = self.take()
        if tok == "~":
            return ("~", self.unit(), pos)
        if tok == "(":
            inner = self.top(stop=")")
            self.take()
            return inner
        if tok and (tok[0].isalpha()):
            return ("atom", tok, pos)
        self.i -= 1
        self.fail(f"unexpected {tok!r}" if tok else "unexpected end of input")


_FORMULA_CTORS = {"&": And, "|": Or, "->": Imp, "*": Fus}
_BUNCH_CTORS = {",": Comma, ";": Semi}


def _to_formula(node, text: str) -> Formula:
    kind = node[0]
    if kind == "atom":
        return Atom(node[1])
    if kind == "~":
        return Neg(_to_formula(node[1], text))
    if kind in _BUNCH_CTORS:
        raise ParseError(f"bunch operator {kind!r} inside a formula", node[3], text)
    return _FORMULA_CTORS[kind](_to_formula(node[1], text), _to_formula(node[2], text))


def _to_bunch(node, text: str) -> Bunch:
    kind = node[0]
    if kind in _BUNCH_CTORS:
        return _BUNCH_CTORS[kind](_to_bunch(node[1], text), _to_bunch(node[2], text))
    return Leaf(_to_formula(node, text))


def parse_formula(text: str) -> Formula:
    return _to_formula(_Parser(text).top(), text)


def parse_bunch(text: str) -> Bunch:
    return _to_bunch(_Parser(text).top(), text)


def parse_consecution(text: str) -> Consecution:
    parser = _Parser(text)
    ant = parser.top(stop="|-")
    parser.take()
    succ = parser.top()
    return Consecution(_to_bunch(ant, text), _to_formula(succ, text))


def parse_any(text: str) -> Formula | Bunch | Consecution:
    """Parse a consecution if ``|-`` occurs, else a bunch, else a formula."""
    if "|-" in text:
        return parse_consecution(text)
    b = parse_bunch(text)
    return b.formula if isinstance(b, Leaf) else b


# -------------------------------------------------------------- structure

def children(e: Formula | Bunch) -> tuple:
    if isinstance(e, Atom):
        return ()
    if isinstance(e, Neg):
        return (e.arg,)
    if isinstance(e, Leaf):
        return children(e.formula)
    return (e.left, e.right)


def iter_nodes(e: Formula | Bunch, path: Path = ()) -> Iterator[tuple[Path, Formula | Bunch]]:
    """Pre-order walk yielding ``(path, node)``, left before right."""
    yield path, e
    for i, c in enumerate(children(e)):
        yield from iter_nodes(c, path + (i,))


def bunch_paths(b: Bunch, path: Path = ()) -> Iterator[Path]:
    """Pre-order paths of every subbunch occurrence (leaves included)."""
    yield path
    if isinstance(b, (Comma, Semi)):
        yield from bunch_paths(b.left, path + (0,))
        yield from bunch_paths(b.right, path + (1,))


def vars_of(e: Formula | Bunch | Consecution) -> frozenset[Atom]:
    if isinstance(e, Consecution):
        return vars_of(e.antecedent) | vars_of(e.succedent)
    out = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Leaf):
            x = x.formula
        if isinstance(x, Atom):
            out.add(x)
        else:
            stack.extend(children(x))
    return frozenset(out)


def subterm_at(b: Bunch | Formula, path: Path) -> Bunch | Formula:
    node = b
    for depth, step in enumerate(path):
        kids = children(node)
        if not 0 <= step < len(kids):
            raise PathError(f"invalid path {format_path(path)}: no child {step} at depth {depth}")
        node = kids[step]
    return node


def replace_at(b: Bunch, path: Path, new: Bunch) -> Bunch:
    if not path:
        return new
    if not isinstance(b, (Comma, Semi)):
        raise PathError(f"path {format_path(path)} does not address a subbunch")
    step, rest = path[0], path[1:]
    if step == 0:
        return type(b)(replace_at(b.left, rest, new), b.right)
    if step == 1:
        return type(b)(b.left, replace_at(b.right, rest, new))
    raise PathError(f"invalid path step {step}")


def format_path(path: Path) -> str:
    return ".".join(map(str, path)) if path else "."


def parse_path(text: str) -> Path:
    text = text.strip()
    if text in ("", "."):
        return ()
    try:
        steps = tuple(int(s) for s in text.split("."))
    except ValueError:
        raise PathError(f"malformed path {text!r}") from None
    if any(s < 0 for s in steps):
        raise PathError(f"malformed path {text!r}")
    return steps
