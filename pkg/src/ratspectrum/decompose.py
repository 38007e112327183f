"""Decomposability of r = f/g.

r is composite over the algebraic closure exactly when every member of the
pencil f - T*g is reducible, i.e. when every maximal minor of the pencil
matrix vanishes identically.  A single nonzero minor certifies the opposite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .binaryforms import BinaryForm
from .errors import PreconditionError
from .noether import pencil_matrix, pencil_rank, pivot_minor
from .polyring import MultiPoly, RationalFunction
from .spectrum import check_pencil

__all__ = ["CompositeVerdict", "is_composite", "char_guard"]


def char_guard(field_or_char, d: int) -> str:
    """'ok', 'criterion_only' (d(d-1) < p < d^2) or 'blocked' (0 < p <= d(d-1))."""
    p = field_or_char if isinstance(field_or_char, int) else field_or_char.characteristic
    if p == 0:
        return "ok"
    if p <= d * (d - 1):
        return "blocked"
    if p < d * d:
        return "criterion_only"
    return "ok"


@dataclass
class CompositeVerdict:
    composite: bool
    witness_index: tuple | None
    witness_form: BinaryForm | None
    guard: str
    mode: str
    seed: int
    caveat: str = ""

    @property
    def descent_note(self) -> str:
        if self.guard == "ok":
            return "composite over the base field iff over its algebraic closure"
        return "verdict holds over the algebraic closure only"

    def to_json(self) -> dict:
        out = {
            "composite": self.composite,
            "guard": self.guard,
            "mode": self.mode,
            "seed": self.seed,
            "descent_note": self.descent_note,
        }
        if self.witness_form is not None:
            out["witness_index"] = list(self.witness_index)
            out["witness_form"] = self.witness_form.to_json()
        else:
            out["witness"] = "all minors vanish"
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def _unpack(r) -> tuple[MultiPoly, MultiPoly]:
    if isinstance(r, RationalFunction):
        return r.num, r.den
    f, g = r
    return f, g


def is_composite(r, mode: str = "exact", seed: int = 0) -> CompositeVerdict:
    """Decide whether r = f/g (a RationalFunction or a pair) is composite.

    The generic rank of the pencil matrix is computed exactly (or estimated in
    mc mode).  At full rank the witness is the first nonzero minor met when
    rows are taken greedily in canonical order (seeded order in mc mode).
    """
    f, g = _unpack(r)
    if f.nvars == 1:
        raise PreconditionError("univariate rational functions are not supported")
    if f.nvars != 2:
        raise PreconditionError(
            "decomposability needs 2 variables; reduce with transfer.bertini_reduce first"
        )
    if f.is_constant() and g.is_constant():
        raise PreconditionError("r is constant")
    f, g, d = check_pencil(f, g)
    guard = char_guard(f.ring, d)
    mc = mode in ("mc", "monte_carlo")
    if not mc and mode != "exact":
        raise PreconditionError(f"unknown mode {mode!r}")
    pm = pencil_matrix(f, g, d)
    N = pm.ncols
    rank = pencil_rank(pm, exact=not mc, seed=seed)
    label = "mc" if mc else "exact"
    if rank < N:
        caveat = "all minors vanish at the sampled points only" if mc else ""
        return CompositeVerdict(True, None, None, guard, label, seed, caveat)
    rows = pm.poly_rows()
    order = list(range(pm.nrows))
    if mc:
        random.Random(seed).shuffle(order)
    res = pivot_minor(rows, N, order)
    if res is None:
        raise PreconditionError("full-rank pencil without a nonzero minor")
    key, minor = res
    return CompositeVerdict(False, key, BinaryForm.from_unipoly(minor, N), guard, label, seed)
