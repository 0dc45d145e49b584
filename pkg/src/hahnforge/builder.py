"""Synthesis of a separately continuous function with prescribed envelopes.

Given a finite family of continuous PL functions on [0, 1] with envelope pair
(g, h), this module assembles f : [0, 1] x alphaN -> Q whose extremal
sections over y are exactly g and h, both attained at every x.

The blending kernel is the Schwartz function sp(s, t) = 2st / (s^2 + t^2)
(0 at the origin), clamped to phi = min(1, 2|sp|).  The kernel's key exact
property: whenever 1/(n+1) <= a <= 1/n, sp(a, 1/n) >= n/(n+1) >= 1/2, so
phi(a, 1/n) = 1.  Each synthesis block combines

* a pair g_blk <= 0 <= h_blk of stage envelopes on [0, 1],
* alpha = min(1, dist(. , A)) for a stage set A (zero set exactly A), and
* an oscillating bump beta on an infinite set of naturals G, taking 1/k at
  the (2k-1)-st point of G and -1/k at the (2k)-th,

into the block value h_blk(x) * phi(alpha(x), beta(y)) where beta(y) >= 0 and
g_blk(x) * phi(...) where beta(y) < 0.  The block vanishes on A x alphaN and
off G, stays inside [g_blk(x), h_blk(x)], and for x outside A attains both
ends at the bump points with index n = floor(1 / alpha(x)).

The pipeline shifts the family by its first member (so the envelopes
straddle 0), accumulates stage sets F_n from the exact equality sets of the
shifted members against the shifted envelopes, builds one block per stage on
the n-th member of the canonical partition of the naturals, and adds the
shift back at the end.  Stage envelopes are min(0, running min) and
max(0, running max): between the global envelopes everywhere, and equal to
them on F_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .pairs import StableFamily, envelopes
from .plalg import (
    EMPTY_SET,
    FULL_SET,
    PLFunc,
    RatSet,
    distance_function,
    dominates,
    equality_set,
    pl_max,
    pl_min,
)
from .rational import rat, rat_float, rat_str
from .sections import INFINITY, Witness
from .spaces import NatSet, Pow2OddSet, ResidueSet, disjoint_opens


def schwartz(s: int | str | Fraction, t: int | str | Fraction) -> Fraction:
    """2st / (s^2 + t^2), extended by 0 at the origin."""
    s, t = rat(s), rat(t)
    if s == 0 and t == 0:
        return Fraction(0)
    return 2 * s * t / (s * s + t * t)


def phi(s: int | str | Fraction, t: int | str | Fraction) -> Fraction:
    """min(1, 2|sp(s, t)|): the [0, 1]-clamped blending kernel."""
    doubled = 2 * abs(schwartz(s, t))
    return Fraction(1) if doubled >= 1 else doubled


def bump_witness_index(a: Fraction) -> int:
    """The n with 1/(n+1) <= a <= 1/n, for 0 < a <= 1; phi(a, 1/n) = 1 there."""
    if not 0 < a <= 1:
        raise ValueError(f"need 0 < a <= 1, got {a}")
    return a.denominator // a.numerator


@dataclass(frozen=True)
class BumpMap:
    """Oscillating bump on an infinite set of naturals, null at infinity.

    Along the increasing enumeration y_1, y_2, ... of the support the values
    are 1, -1, 1/2, -1/2, 1/3, ...: the (2k-1)-st point carries 1/k and the
    (2k)-th carries -1/k; everything off the support (and infinity) is 0.
    """

    support: NatSet

    def value(self, m: int) -> Fraction:
        j = self.support.index_of(m)
        if j is None:
            return Fraction(0)
        if j % 2 == 1:
            return Fraction(1, (j + 1) // 2)
        return Fraction(-1, j // 2)

    def point(self, j: int) -> int:
        """The j-th support point (1-based)."""
        return self.support.element(j)


def oscillating_bump(support: NatSet) -> BumpMap:
    if not support.is_infinite:
        raise ValueError("bump supports must be infinite")
    return BumpMap(support)


@dataclass(frozen=True)
class SchwartzBlock:
    """One synthesis block: stage envelopes, stage distance, and a bump."""

    g_blk: PLFunc
    h_blk: PLFunc
    alpha: PLFunc
    beta: BumpMap

    def __post_init__(self) -> None:
        lo, hi = self.alpha.bounds()
        if lo < 0 or hi > 1:
            raise ValueError("alpha must take values in [0, 1]")
        if max(self.g_blk.values) > 0 or min(self.h_blk.values) < 0:
            raise ValueError("blocks need g_blk <= 0 <= h_blk")

    def value(self, x: int | str | Fraction, m: int) -> Fraction:
        b = self.beta.value(m)
        if b == 0:
            return Fraction(0)
        scale = phi(self.alpha(x), b)
        if scale == 0:
            return Fraction(0)
        side = self.g_blk if b < 0 else self.h_blk
        return side(x) * scale


def hahn_block(g_blk: PLFunc, h_blk: PLFunc, a: RatSet, support: NatSet) -> SchwartzBlock:
    """Block vanishing on a x alphaN and off its support, attaining g_blk/h_blk.

    Requires g_blk <= 0 <= h_blk.  For x outside a, with n = floor(1/alpha(x)),
    the block takes h_blk(x) at the (2n-1)-st support point and g_blk(x) at
    the (2n)-th.
    """
    below = dominates(g_blk, PLFunc.constant(0))
    if not below.ok:
        raise ValueError(f"lower stage envelope is positive at x={below.witness}")
    above = dominates(PLFunc.constant(0), h_blk)
    if not above.ok:
        raise ValueError(f"upper stage envelope is negative at x={above.witness}")
    return SchwartzBlock(g_blk, h_blk, distance_function(a), oscillating_bump(support))


def _support_json(s: NatSet) -> dict:
    if isinstance(s, Pow2OddSet):
        return {"kind": "pow2odd", "power": s.power}
    if isinstance(s, ResidueSet):
        return {"kind": "residue", "modulus": s.modulus, "residue": s.residue}
    raise TypeError(f"cannot serialize support {s!r}")


def _support_from_json(data: dict) -> NatSet:
    if data["kind"] == "pow2odd":
        return Pow2OddSet(data["power"])
    if data["kind"] == "residue":
        return ResidueSet(data["modulus"], data["residue"])
    raise ValueError(f"unknown support kind {data['kind']!r}")


@dataclass(frozen=True)
class BlockProductFunc:
    """f(x, y) = theta(x) + sum of block values; the sum vanishes at infinity.

    Block supports are pairwise disjoint, so at most one summand is nonzero
    at any natural y.  The stage sets F_1 <= ... <= F_N record where each
    stage's envelopes already agree with the global ones; the last one is all
    of [0, 1].
    """

    blocks: tuple[SchwartzBlock, ...]
    stage_sets: tuple[RatSet, ...]
    theta: PLFunc

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.stage_sets):
            raise ValueError("one stage set per block")
        if not self.blocks:
            raise ValueError("need at least one block")
        supports = [b.beta.support for b in self.blocks]
        if all(isinstance(s, Pow2OddSet) for s in supports):
            powers = [s.power for s in supports]
            if len(set(powers)) != len(powers):
                raise ValueError("block supports must be pairwise disjoint")
        else:
            for y in range(1, 257):
                if sum(1 for s in supports if y in s) > 1:
                    raise ValueError("block supports must be pairwise disjoint")
        for cur, nxt in zip(self.stage_sets, self.stage_sets[1:]):
            if cur.intersect(nxt) != cur:
                raise ValueError("stage sets must be increasing")
        if self.stage_sets[-1] != FULL_SET:
            raise ValueError("the last stage set must cover [0, 1]")

    @property
    def size(self) -> int:
        return len(self.blocks)

    def stage_set(self, n: int) -> RatSet:
        """F_n, with F_0 the empty set."""
        return EMPTY_SET if n == 0 else self.stage_sets[n - 1]

    def tilde_value(self, x: int | str | Fraction, m: int) -> Fraction:
        return sum((b.value(x, m) for b in self.blocks), Fraction(0))

    def value(self, x: int | str | Fraction, m: int) -> Fraction:
        return self.theta(x) + self.tilde_value(x, m)

    def value_at_infinity(self, x: int | str | Fraction) -> Fraction:
        return self.theta(x)

    def active_stage(self, x: int | str | Fraction) -> int:
        """Least n with x in F_n; block n attains the envelopes at x."""
        x = rat(x)
        for n, s in enumerate(self.stage_sets, start=1):
            if x in s:
                return n
        raise AssertionError("stage sets must cover [0, 1]")

    def section_values(
        self, x: int | str | Fraction
    ) -> tuple[Fraction, Fraction, Witness, Witness]:
        """Exact (min, max, min witness y, max witness y) over all of alphaN.

        Every block with alpha(x) > 0 ranges over [g_blk(x), h_blk(x)] on its
        support with both ends attained at its bump-index points; inactive
        blocks and all remaining y contribute the value at infinity.
        """
        x = rat(x)
        base = self.theta(x)
        lo, hi = base, base
        lo_w: Witness = INFINITY
        hi_w: Witness = INFINITY
        for block in self.blocks:
            a = block.alpha(x)
            if a == 0:
                continue
            n = bump_witness_index(a)
            lo_cand = base + block.g_blk(x)
            if lo_cand < lo:
                lo, lo_w = lo_cand, block.beta.point(2 * n)
            hi_cand = base + block.h_blk(x)
            if hi_cand > hi:
                hi, hi_w = hi_cand, block.beta.point(2 * n - 1)
        return lo, hi, lo_w, hi_w

    def to_json(self) -> dict:
        return {
            "theta": self.theta.to_json(),
            "blocks": [
                {
                    "g": b.g_blk.to_json(),
                    "h": b.h_blk.to_json(),
                    "alpha": b.alpha.to_json(),
                    "support": _support_json(b.beta.support),
                }
                for b in self.blocks
            ],
            "stage_sets": [s.to_json() for s in self.stage_sets],
        }

    @staticmethod
    def from_json(data: dict) -> "BlockProductFunc":
        blocks = tuple(
            SchwartzBlock(
                PLFunc.from_json(b["g"]),
                PLFunc.from_json(b["h"]),
                PLFunc.from_json(b["alpha"]),
                BumpMap(_support_from_json(b["support"])),
            )
            for b in data["blocks"]
        )
        stage_sets = tuple(RatSet.from_json(s) for s in data["stage_sets"])
        return BlockProductFunc(blocks, stage_sets, PLFunc.from_json(data["theta"]))

    def sample_rows(
        self, grid: Sequence[Fraction], max_y: int
    ) -> list[tuple[str, str, str, str]]:
        """(x, y, value, value_float) rows for plotting; y = "inf" included."""
        rows = []
        for x in grid:
            for y in range(1, max_y + 1):
                v = self.value(x, y)
                rows.append((rat_str(rat(x)), str(y), rat_str(v), rat_float(v)))
            v = self.value_at_infinity(x)
            rows.append((rat_str(rat(x)), INFINITY, rat_str(v), rat_float(v)))
        return rows


def stage_envelopes(shifted: Sequence[PLFunc], n: int) -> tuple[PLFunc, PLFunc]:
    """(min(0, min of the first n), max(0, max of the first n)) exactly."""
    zero = PLFunc.constant(0)
    members = list(shifted[:n])
    return pl_min([zero] + members), pl_max([zero] + members)


def stage_sets_of(shifted: Sequence[PLFunc], g_sh: PLFunc, h_sh: PLFunc) -> list[RatSet]:
    """F_n = union over j, k <= n of {u_j = g} intersect {u_k = h}."""
    a_sets = [equality_set(u, g_sh) for u in shifted]
    b_sets = [equality_set(u, h_sh) for u in shifted]
    out: list[RatSet] = []
    current = EMPTY_SET
    for n in range(1, len(shifted) + 1):
        for j in range(n):
            current = current.union(a_sets[j].intersect(b_sets[n - 1]))
        for k in range(n - 1):
            current = current.union(a_sets[n - 1].intersect(b_sets[k]))
        out.append(current)
    return out


def synthesize(family: StableFamily) -> BlockProductFunc:
    """Build f on [0, 1] x alphaN whose sections over y are the envelopes.

    Pipeline: shift by the first member so the envelopes straddle 0; compute
    the increasing stage sets from exact equality sets; per stage, build a
    block from the stage envelopes, the distance to the previous stage set,
    and the n-th member of the power-of-two partition of the naturals; attach
    the shift for evaluation.
    """
    theta = family.members[0]
    shifted = [u - theta for u in family.members]
    pair = envelopes(family)
    g_sh = pair.g - theta
    h_sh = pair.h - theta
    stage_sets = stage_sets_of(shifted, g_sh, h_sh)
    if stage_sets[-1] != FULL_SET:
        raise AssertionError("finite families attain their envelopes everywhere")
    partition = disjoint_opens("alphaN", None)
    blocks = []
    for n in range(1, len(shifted) + 1):
        g_blk, h_blk = stage_envelopes(shifted, n)
        previous = EMPTY_SET if n == 1 else stage_sets[n - 2]
        blocks.append(hahn_block(g_blk, h_blk, previous, partition.nat_member(n)))
    return BlockProductFunc(tuple(blocks), tuple(stage_sets), theta)


def continuity_certificate(
    f: BlockProductFunc, x: int | str | Fraction, eps: int | str | Fraction
) -> tuple[int, ...]:
    """All naturals y where f(x, y) deviates from f(x, infinity) by >= eps.

    Solved in closed form per block and bump parity: the deviation at the
    k-th positive (negative) bump point is |h_blk(x)| * phi(a, 1/k)
    (|g_blk(x)| * phi(a, 1/k)) with a = alpha(x), and phi(a, 1/k) >= eps/c
    forces k <= 4c/(eps*a), so an exact scan up to that threshold finds the
    full exception set.  Off the returned set every slice value is within eps
    of the value at infinity.
    """
    x, eps = rat(x), rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    exceptions: list[int] = []
    for block in f.blocks:
        a = block.alpha(x)
        if a == 0:
            continue
        for magnitude, offset in ((abs(block.h_blk(x)), -1), (abs(block.g_blk(x)), 0)):
            if magnitude == 0 or eps > magnitude:
                continue
            tau = eps / magnitude
            k_max = int(4 / (tau * a))
            for k in range(1, k_max + 1):
                if magnitude * phi(a, Fraction(1, k)) >= eps:
                    exceptions.append(block.beta.point(2 * k + offset))
    return tuple(sorted(exceptions))


@dataclass(frozen=True)
class SectionEntry:
    x: Fraction
    g: Fraction
    h: Fraction
    min_witness: Witness
    max_witness: Witness


@dataclass(frozen=True)
class SectionReport:
    entries: tuple[SectionEntry, ...]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "entries": [
                {
                    "x": rat_str(e.x),
                    "g": rat_str(e.g),
                    "h": rat_str(e.h),
                    "min_witness": e.min_witness,
                    "max_witness": e.max_witness,
                }
                for e in self.entries
            ],
        }


def verify_synthesis(
    f: BlockProductFunc, family: StableFamily, grid: Sequence[Fraction]
) -> SectionReport:
    """Exact check that the sections of f equal the family's envelopes.

    Structurally: every stage envelope pair must sit between the shifted
    global envelopes (one dominance check per block, valid at all x, since
    block values are phi-scalings of the stage envelopes).  Pointwise, per
    grid x: f evaluated at the active block's bump-index points must hit g(x)
    and h(x) exactly, the shift and all sampled slice values must lie inside
    [g(x), h(x)].
    """
    pair = envelopes(family)
    g_sh = pair.g - f.theta
    h_sh = pair.h - f.theta
    zero = PLFunc.constant(0)
    failures: list[str] = []
    for n, block in enumerate(f.blocks, start=1):
        for name, lo, hi in (
            ("lower", g_sh, block.g_blk),
            ("lower-zero", block.g_blk, zero),
            ("upper-zero", zero, block.h_blk),
            ("upper", block.h_blk, h_sh),
        ):
            v = dominates(lo, hi)
            if not v.ok:
                failures.append(f"block {n}: {name} envelope bound fails at x={v.witness}")
    entries: list[SectionEntry] = []
    for x_raw in grid:
        x = rat(x_raw)
        g_x, h_x = pair.g(x), pair.h(x)
        n = f.active_stage(x)
        block = f.blocks[n - 1]
        a = block.alpha(x)
        if a == 0:
            failures.append(f"x={x}: active block {n} has vanished (alpha=0)")
            continue
        m = bump_witness_index(a)
        y_hi = block.beta.point(2 * m - 1)
        y_lo = block.beta.point(2 * m)
        v_hi = f.value(x, y_hi)
        v_lo = f.value(x, y_lo)
        if v_hi != h_x:
            failures.append(f"x={x}: f(x, {y_hi})={v_hi} misses the upper envelope {h_x}")
        if v_lo != g_x:
            failures.append(f"x={x}: f(x, {y_lo})={v_lo} misses the lower envelope {g_x}")
        probe_ys = {y_lo, y_hi, 1, 2, 3, 5, 8}
        for other in f.blocks:
            oa = other.alpha(x)
            if oa > 0:
                k = bump_witness_index(oa)
                probe_ys.update((other.beta.point(2 * k - 1), other.beta.point(2 * k)))
        for y in sorted(probe_ys):
            v = f.value(x, y)
            if not g_x <= v <= h_x:
                failures.append(f"x={x}: f(x, {y})={v} escapes [{g_x}, {h_x}]")
        v_inf = f.value_at_infinity(x)
        if not g_x <= v_inf <= h_x:
            failures.append(f"x={x}: f(x, inf)={v_inf} escapes [{g_x}, {h_x}]")
        entries.append(SectionEntry(x, g_x, h_x, y_lo, y_hi))
    return SectionReport(tuple(entries), tuple(failures))
