"""Extremal sections over the compactified naturals, exact and brute-force.

A separately continuous function on [0, 1] x alphaN is stored by its x-slices
over the points y_1, y_2, ... and y = infinity: finitely many explicit head
slices u_1, ..., u_N, a limit slice, and a structured tail

    u_n = limit + coeff(n) * shape          (n > N),

where coeff is a :class:`~hahnforge.tailrules.TailRule` converging to 0.  The
null tail makes every x-slice continuous on the compactification, and the
extrema over all of alphaN are attained: past the head, |coeff| decreases, so
at each x the tail contributions stay between 0 and the first one (first two,
for an alternating ratio).  Hence the exact envelopes over the whole space
are lattice envelopes of head + limit + the first one or two tail slices.

:func:`brute_sections` is the independent twin: it enumerates slices up to a
cutoff M and certifies the truncation error |coeff(M+1)| * sup|shape|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .plalg import PLFunc, PwFunc, pl_max, pl_min, pl_scale, pl_sum
from .rational import rat, rat_float, rat_str
from .tailrules import TailRule

INFINITY = "inf"
Witness = Union[int, str]


@dataclass(frozen=True)
class TailFamily:
    """Slices of a separately continuous function on [0, 1] x alphaN."""

    head: tuple[PLFunc, ...]
    limit: PLFunc
    tail_coeff: TailRule
    tail_shape: PLFunc

    def __post_init__(self) -> None:
        if self.tail_coeff.limit() != 0:
            raise ValueError("tail coefficients must converge to 0")

    @property
    def head_size(self) -> int:
        return len(self.head)

    def member(self, n: int) -> PLFunc:
        """The slice over y_n (1-based)."""
        if n < 1:
            raise ValueError("slice indices are 1-based")
        if n <= len(self.head):
            return self.head[n - 1]
        c = self.tail_coeff.value(n)
        if c == 0:
            return self.limit
        return pl_sum((self.limit, pl_scale(c, self.tail_shape)))


@dataclass(frozen=True)
class SectionPair:
    """Exact envelopes of a slice family, with per-grid-point attainment data.

    ``witnesses`` maps each grid point x to (index attaining the min, index
    attaining the max); an index is a 1-based natural or "inf" for the point
    at infinity.
    """

    g: PwFunc
    h: PwFunc
    witnesses: Mapping[Fraction, tuple[Witness, Witness]]

    def rows(self) -> list[tuple[str, str, str, str, str]]:
        out = []
        for x in sorted(self.witnesses):
            lo_w, hi_w = self.witnesses[x]
            out.append(
                (rat_str(x), rat_str(self.g.value(x)), rat_str(self.h.value(x)), str(lo_w), str(hi_w))
            )
        return out

    def to_json(self) -> dict:
        return {
            "grid": [
                {
                    "x": rat_str(x),
                    "g": rat_str(self.g.value(x)),
                    "h": rat_str(self.h.value(x)),
                    "g_float": rat_float(self.g.value(x)),
                    "h_float": rat_float(self.h.value(x)),
                    "min_witness": self.witnesses[x][0],
                    "max_witness": self.witnesses[x][1],
                }
                for x in sorted(self.witnesses)
            ]
        }


def _pick_witness(
    candidates: Sequence[tuple[Witness, PLFunc]], x: Fraction, target: Fraction
) -> Witness:
    for idx, f in candidates:
        if f(x) == target:
            return idx
    raise AssertionError("envelope value must be attained by a candidate")


def _pair_from_candidates(
    candidates: Sequence[tuple[Witness, PLFunc]], grid: Sequence[Fraction] | None
) -> SectionPair:
    fs = [f for _, f in candidates]
    g = pl_min(fs)
    h = pl_max(fs)
    if grid is None:
        xs = sorted(set(g.breakpoints) | set(h.breakpoints))
    else:
        xs = [rat(x) for x in grid]
    witnesses = {
        x: (_pick_witness(candidates, x, g(x)), _pick_witness(candidates, x, h(x)))
        for x in xs
    }
    return SectionPair(g.to_pw(), h.to_pw(), witnesses)


def tail_sections(family: TailFamily, grid: Sequence[Fraction] | None = None) -> SectionPair:
    """Exact extremal sections over all of alphaN.

    Candidate slices: the head, the limit (the value at infinity), and the
    first two tail slices.  Sign-constant coefficient rules need only the
    first; the second also covers an alternating geometric ratio, and is
    redundant but harmless otherwise.
    """
    n = family.head_size
    candidates: list[tuple[Witness, PLFunc]] = [
        (i, f) for i, f in enumerate(family.head, start=1)
    ]
    candidates.append((n + 1, family.member(n + 1)))
    candidates.append((n + 2, family.member(n + 2)))
    candidates.append((INFINITY, family.limit))
    return _pair_from_candidates(candidates, grid)


def brute_sections(
    family: TailFamily, m: int, grid: Sequence[Fraction] | None = None
) -> tuple[SectionPair, Fraction]:
    """Envelopes over the slices up to index m plus infinity, with error bound.

    Every omitted slice differs from the limit by at most
    B(m) = |coeff(m+1)| * sup|shape| pointwise, so the true sections lie
    within B(m) of the computed ones.  For a sign-constant coefficient rule
    the result is already exact at m = head_size + 1.
    """
    if m <= family.head_size:
        raise ValueError("cutoff must exceed the head size")
    candidates: list[tuple[Witness, PLFunc]] = [
        (i, family.member(i)) for i in range(1, m + 1)
    ]
    candidates.append((INFINITY, family.limit))
    pair = _pair_from_candidates(candidates, grid)
    sup_shape = max(abs(v) for v in family.tail_shape.values)
    bound = abs(family.tail_coeff.value(m + 1)) * sup_shape
    return pair, bound
