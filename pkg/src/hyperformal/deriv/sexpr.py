"""Derivation files as S-expressions.

::

    tree := (id "<formula>")
          | (open "<consecution>")
          | (rule <RULE> <tree>* (concl "<consecution>") [(hole "<path>")])

``;;`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re

from ..syntax import (
    Consecution, Leaf, format_path, parse_consecution, parse_formula, parse_path, render,
)
from .tree import ProofTree, Rule

__all__ = ["parse_tree", "format_tree", "DerivationSyntaxError"]


class DerivationSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r'\s+|;;[^\n]*|(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()";]+)')


def _read(text: str):
    stack: list[list] = [[]]
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DerivationSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise DerivationSyntaxError(f"unbalanced ')' at offset {m.start()}")
            done = stack.pop()
            stack[-1].append(done)
        elif m.group(3) is not None:
            stack[-1].append(("str", m.group(3).replace('\\"', '"').replace("\\\\", "\\")))
        elif m.group(4):
            stack[-1].append(m.group(4))
    if len(stack) != 1:
        raise DerivationSyntaxError("unbalanced '(': missing ')'")
    return stack[0]


def _string(x, what: str) -> str:
    if not (isinstance(x, tuple) and x[0] == "str"):
        raise DerivationSyntaxError(f"expected a quoted {what}")
    return x[1]


def _build(sx) -> ProofTree:
    if not isinstance(sx, list) or not sx:
        raise DerivationSyntaxError(f"expected a tree, got {sx!r}")
    head = sx[0]
    if head == "id":
        if len(sx) != 2:
            raise DerivationSyntaxError("(id ...) takes one formula")
        a = parse_formula(_string(sx[1], "formula"))
        return ProofTree(Consecution(Leaf(a), a), Rule.ID)
    if head == "open":
        if len(sx) != 2:
            raise DerivationSyntaxError("(open ...) takes one consecution")
        return ProofTree(parse_consecution(_string(sx[1], "consecution")))
    if head != "rule":
        raise DerivationSyntaxError(f"unknown form {head!r}")
    if len(sx) < 2 or not isinstance(sx[1], str):
        raise DerivationSyntaxError("(rule ...) needs a rule name")
    try:
        rule = Rule.from_token(sx[1])
    except ValueError as exc:
        raise DerivationSyntaxError(str(exc)) from None
    premises, concl, hole = [], None, None
    for item in sx[2:]:
        if isinstance(item, list) and item and item[0] == "concl":
            concl = parse_consecution(_string(item[1], "consecution"))
        elif isinstance(item, list) and item and item[0] == "hole":
            hole = parse_path(_string(item[1], "path"))
        else:
            if concl is not None:
                raise DerivationSyntaxError("premises must precede (concl ...)")
            premises.append(_build(item))
    if concl is None:
        raise DerivationSyntaxError(f"rule {rule.value} is missing (concl ...)")
    return ProofTree(concl, rule, tuple(premises), hole)


def parse_tree(text: str) -> ProofTree:
    forms = _read(text)
    if len(forms) != 1:
        raise DerivationSyntaxError(f"expected exactly one tree, found {len(forms)}")
    return _build(forms[0])


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_tree(t: ProofTree, indent: int = 0) -> str:
    pad = "  " * indent
    c = t.conclusion
    if t.rule is None:
        return f"{pad}(open {_q(render(c))})"
    if t.rule is Rule.ID and not t.premises and c.antecedent == Leaf(c.succedent):
        return f"{pad}(id {_q(render(c.succedent))})"
    lines = [f"{pad}(rule {t.rule.value}"]
    lines.extend(format_tree(p, indent + 1) for p in t.premises)
    tail = f"{pad}  (concl {_q(render(c))})"
    if t.hole is not None:
        tail += f" (hole {_q(format_path(t.hole))})"
    lines.append(tail + ")")
    return "\n".join(lines)
