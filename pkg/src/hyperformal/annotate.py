"""Depth and sequence annotations of parse trees, hole data and sharing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .seqred import red
from .syntax import (
    And, Atom, Bunch, Comma, Formula, Fus, Imp, Leaf, Neg, Or, Path,
    PathError, Semi, atom_key, subterm_at,
)

__all__ = [
    "AnnotatedNode", "HoleInfo", "SharingWitness",
    "depth_annotations", "rseq_annotations", "hole_info", "sharing_report",
    "atom_occurrences",
]


@dataclass(frozen=True, slots=True)
class AnnotatedNode:
    path: Path
    node: Bunch | Formula
    annotation: int | str


@dataclass(frozen=True, slots=True)
class HoleInfo:
    path: Path
    depth: int
    seq: str


@dataclass(frozen=True, slots=True)
class SharingWitness:
    atom: Atom
    annotation: int | str | None
    left_path: Path
    right_path: Path


def _depth_children(e, n: int):
    if isinstance(e, Leaf):
        return _depth_children(e.formula, n)
    if isinstance(e, (Semi, Fus)):
        return ((e.left, n - 1), (e.right, n))
    if isinstance(e, (Comma, And, Or)):
        return ((e.left, n), (e.right, n))
    if isinstance(e, Imp):
        return ((e.left, n + 1), (e.right, n + 1))
    if isinstance(e, Neg):
        return ((e.arg, n),)
    return ()


def _rseq_children(e, x: str):
    if isinstance(e, Leaf):
        return _rseq_children(e.formula, x)
    if isinstance(e, (Semi, Fus)):
        return ((e.left, red("L" + x)), (e.right, red("P" + x)))
    if isinstance(e, (Comma, And, Or)):
        return ((e.left, x), (e.right, x))
    if isinstance(e, Imp):
        return ((e.left, red("l" + x)), (e.right, red("r" + x)))
    if isinstance(e, Neg):
        return ((e.arg, red("n" + x)),)
    return ()


def _annotate(e, root, step) -> list[AnnotatedNode]:
    out = []
    stack = [((), e, root)]
    while stack:
        path, node, ann = stack.pop()
        out.append(AnnotatedNode(path, node, ann))
        kids = step(node, ann)
        for i in reversed(range(len(kids))):
            child, child_ann = kids[i]
            stack.append((path + (i,), child, child_ann))
    return out


def depth_annotations(e: Bunch | Formula) -> list[AnnotatedNode]:
    """Every node of ``e`` in pre-order with its depth (root at 0)."""
    return _annotate(e, 0, _depth_children)


def rseq_annotations(e: Bunch | Formula) -> list[AnnotatedNode]:
    """Every node of ``e`` in pre-order with the reduced sequence it falls under."""
    return _annotate(e, "", _rseq_children)


def _walk_to(e, path: Path, root, step):
    ann = root
    node = e
    for i in path:
        kids = step(node, ann)
        if not 0 <= i < len(kids):
            raise PathError(f"invalid path {path}")
        node, ann = kids[i]
    return ann


def hole_info(b: Bunch, path: Path) -> HoleInfo:
    node = subterm_at(b, path)
    if not isinstance(node, (Leaf, Comma, Semi)):
        raise PathError(f"path {path} addresses a formula position, not a subbunch")
    return HoleInfo(path, _walk_to(b, path, 0, _depth_children), _walk_to(b, path, "", _rseq_children))


def atom_occurrences(e, mode: Literal["plain", "depth", "rseq"]) -> dict[tuple[Atom, object], Path]:
    """First (pre-order) path for each (atom, annotation) occurring in ``e``."""
    if mode == "plain":
        entries = _annotate(e, None, lambda node, _: tuple((c, None) for c in _plain_children(node)))
    elif mode == "depth":
        entries = depth_annotations(e)
    elif mode == "rseq":
        entries = rseq_annotations(e)
    else:
        raise ValueError(f"unknown sharing mode {mode!r}")
    occ: dict[tuple[Atom, object], Path] = {}
    for entry in entries:
        if isinstance(entry.node, Atom):
            occ.setdefault((entry.node, entry.annotation), entry.path)
        elif isinstance(entry.node, Leaf) and isinstance(entry.node.formula, Atom):
            occ.setdefault((entry.node.formula, entry.annotation), entry.path)
    return occ


def _plain_children(node):
    return [c for c, _ in _depth_children(node, 0)]


def sharing_report(
    x: Bunch, a: Formula, mode: Literal["plain", "depth", "rseq"] = "plain"
) -> SharingWitness | None:
    """Canonical common (atom, annotation) of ``x`` and ``a``, if any.

    Candidates are ordered by atom, then by the path of the occurrence in
    ``x``.
    """
    left = atom_occurrences(x, mode)
    right = atom_occurrences(a, mode)
    common = [key for key in left if key in right]
    if not common:
        return None
    atom, ann = min(common, key=lambda k: (atom_key(k[0]), left[k]))
    return SharingWitness(atom, ann, left[(atom, ann)], right[(atom, ann)])
