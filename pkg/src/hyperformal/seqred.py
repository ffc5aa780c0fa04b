"""Sequences over {l, r, lambda, rho, n} and their reduction.

Sequences are plain strings.  Letters are written ``l``, ``r``, ``L``
(lambda), ``P`` (rho) and ``n``; the empty string is the empty sequence,
printed as ``e`` on the command line.

The five immediate reductions are::

    lL -> P     rL -> ''     Lr -> ''     Pr -> l     nn -> ''
"""

from __future__ import annotations

from collections import deque

__all__ = [
    "LETTERS", "RULES", "EMPTY_LITERAL",
    "is_reduced", "reduce_once", "red", "red_concat",
    "oracle_red_all_orders", "parse_seq", "format_seq", "to_greek",
    "SeqError", "solve_prefix",
]

LETTERS = "lrLPn"
EMPTY_LITERAL = "e"

RULES: tuple[tuple[str, str], ...] = (
    ("lL", "P"),
    ("rL", ""),
    ("Lr", ""),
    ("Pr", "l"),
    ("nn", ""),
)
_RULE_MAP = dict(RULES)


class SeqError(ValueError):
    pass


def parse_seq(text: str) -> str:
    text = text.strip()
    if text in (EMPTY_LITERAL, ""):
        return ""
    bad = set(text) - set(LETTERS)
    if bad:
        raise SeqError(f"invalid sequence literal {text!r}: letters must be from {LETTERS!r} or 'e'")
    return text


def format_seq(s: str) -> str:
    return s or EMPTY_LITERAL


def to_greek(s: str) -> str:
    return s.replace("L", "λ").replace("P", "ρ") or "ε"


def is_reduced(s: str) -> bool:
    return not any(s[i:i + 2] in _RULE_MAP for i in range(len(s) - 1))


def reduce_once(s: str) -> set[str]:
    """Every sequence obtained by one rule applied at one position."""
    out = set()
    for i in range(len(s) - 1):
        rhs = _RULE_MAP.get(s[i:i + 2])
        if rhs is not None:
            out.add(s[:i] + rhs + s[i + 2:])
    return out


def red(s: str) -> str:
    """Normal form of ``s``, reducing the leftmost redex first.

    The stack holds a reduced prefix; only the junction with the next
    letter can form a redex, and no right-hand side can start a new one
    with the letter below it.
    """
    stack: list[str] = []
    for c in s:
        if stack:
            rhs = _RULE_MAP.get(stack[-1] + c)
            if rhs is not None:
                stack.pop()
                if rhs:
                    stack.append(rhs)
                continue
        stack.append(c)
    return "".join(stack)


def red_concat(a: str, b: str) -> str:
    return red(a + b)


def oracle_red_all_orders(s: str, limit: int = 10) -> set[str]:
    """Reduced sequences reachable from ``s`` under any rewriting order.

    Breadth-first closure under :func:`reduce_once`; independent of
    :func:`red`.
    """
    if len(s) > limit:
        raise SeqError(f"sequence of length {len(s)} exceeds oracle limit {limit}")
    seen = {s}
    queue = deque([s])
    normal = set()
    while queue:
        cur = queue.popleft()
        succ = reduce_once(cur)
        if not succ:
            normal.add(cur)
        for t in succ:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return normal


def _preimages(x: str, a: str) -> list[str]:
    # reduced u with red(u + a) == x; at most one junction step is possible
    out = []
    if x.endswith(a) and is_reduced(x):
        out.append(x[:-1])
    for lhs, rhs in RULES:
        if lhs[1] != a or not x.endswith(rhs):
            continue
        u = x[:len(x) - len(rhs)] + lhs[0]
        if is_reduced(u):
            out.append(u)
    return [u for u in out if red(u + a) == x]


def solve_prefix(x: str, w: str) -> str | None:
    """The reduced ``z`` with ``red(z + w) == x``, or None.

    Peels letters of ``w`` off the right, inverting one junction
    reduction at a time.  Cancellation makes the answer unique.
    """
    targets = {x}
    for a in reversed(w):
        nxt: set[str] = set()
        for t in targets:
            nxt.update(_preimages(t, a))
        if not nxt:
            return None
        targets = nxt
    if len(targets) > 1:
        raise AssertionError(f"cancellation violated for x={x!r}, w={w!r}: {sorted(targets)}")
    return next(iter(targets))
