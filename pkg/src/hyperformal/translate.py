"""Characteristic formulas of bunches and the fusion-free translation."""

from __future__ import annotations

from .syntax import And, Atom, Bunch, Comma, Formula, Fus, Imp, Leaf, Neg, Or, Semi

__all__ = ["cf", "tau", "fusion_free"]


def cf(b: Bunch) -> Formula:
    """Comma becomes conjunction, semicolon becomes fusion."""
    if isinstance(b, Leaf):
        return b.formula
    if isinstance(b, Comma):
        return And(cf(b.left), cf(b.right))
    if isinstance(b, Semi):
        return Fus(cf(b.left), cf(b.right))
    raise TypeError(f"not a bunch: {b!r}")


def tau(e: Formula | Bunch) -> Formula:
    """Rewrite ``A * B`` as ``~(A -> ~B)`` throughout; bunches go through :func:`cf`."""
    if isinstance(e, (Leaf, Comma, Semi)):
        return tau(cf(e))
    if isinstance(e, Atom):
        return e
    if isinstance(e, Neg):
        return Neg(tau(e.arg))
    if isinstance(e, Fus):
        return Neg(Imp(tau(e.left), Neg(tau(e.right))))
    if isinstance(e, (And, Or, Imp)):
        return type(e)(tau(e.left), tau(e.right))
    raise TypeError(f"cannot translate {e!r}")


def fusion_free(e: Formula) -> bool:
    if isinstance(e, Fus):
        return False
    if isinstance(e, Atom):
        return True
    if isinstance(e, Neg):
        return fusion_free(e.arg)
    return fusion_free(e.left) and fusion_free(e.right)
