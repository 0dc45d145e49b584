"""Exact tail sections against the enumerating twin, with certified bounds."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import random_plfunc, random_value
from hahnforge.pairs import StableFamily, envelopes
from hahnforge.plalg import PLFunc, dyadic_grid, pl_equal, pl_neg, pl_scale
from hahnforge.sections import INFINITY, SectionPair, TailFamily, brute_sections, tail_sections
from hahnforge.tailrules import TailRule

X = PLFunc.identity()
ZERO_F = PLFunc.constant(0)
X_MINUS_HALF = PLFunc.affine(1, "-1/2")

CANONICAL = TailFamily(
    head=(ZERO_F, X_MINUS_HALF),
    limit=ZERO_F,
    tail_coeff=TailRule.harmonic(1),
    tail_shape=pl_neg(X),
)

GRID = dyadic_grid(6)


def random_tail_family(rng: random.Random, allow_alternating: bool = False) -> TailFamily:
    n = rng.randint(0, 3)
    head = tuple(random_plfunc(rng) for _ in range(n))
    limit = random_plfunc(rng)
    shape = random_plfunc(rng)
    kinds = ["harmonic", "geometric", "zero"]
    kind = rng.choice(kinds)
    if kind == "harmonic":
        coeff = TailRule.harmonic(random_value(rng, -2, 2, 4))
    elif kind == "geometric":
        ratios = [Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]
        if allow_alternating:
            ratios += [Fraction(-1, 2), Fraction(-2, 3)]
        coeff = TailRule.geometric(random_value(rng, -2, 2, 4), rng.choice(ratios))
    else:
        coeff = TailRule.zero()
    return TailFamily(head, limit, coeff, shape)


def assert_pairs_agree(a: SectionPair, b: SectionPair, grid) -> None:
    for x in grid:
        assert a.g.value(x) == b.g.value(x)
        assert a.h.value(x) == b.h.value(x)


def assert_witnesses_attain(family: TailFamily, pair: SectionPair) -> None:
    for x, (lo_w, hi_w) in pair.witnesses.items():
        lo = family.limit(x) if lo_w == INFINITY else family.member(lo_w)(x)
        hi = family.limit(x) if hi_w == INFINITY else family.member(hi_w)(x)
        assert lo == pair.g.value(x)
        assert hi == pair.h.value(x)


class TestCanonicalFamily:
    def test_exact_envelopes(self):
        pair = tail_sections(CANONICAL, GRID)
        third_slice = pl_scale(Fraction(-1, 3), X)
        for x in GRID:
            assert pair.g.value(x) == min(X_MINUS_HALF(x), third_slice(x))
            assert pair.h.value(x) == max(Fraction(0), X_MINUS_HALF(x))

    def test_min_at_one_attained_by_third_slice(self):
        pair = tail_sections(CANONICAL, [Fraction(1)])
        assert pair.g.value(1) == Fraction(-1, 3)
        assert pair.witnesses[Fraction(1)][0] == 3

    def test_brute_m3_identical_with_quarter_bound(self):
        brute, bound = brute_sections(CANONICAL, 3, GRID)
        exact = tail_sections(CANONICAL, GRID)
        assert bound == Fraction(1, 4)
        assert_pairs_agree(exact, brute, GRID)

    def test_member_formula(self):
        assert pl_equal(CANONICAL.member(1), ZERO_F)
        assert pl_equal(CANONICAL.member(5), pl_scale(Fraction(-1, 5), X))


class TestDegenerateFamilies:
    def test_zero_tail_collapses_to_head_envelopes(self, rng: random.Random):
        for _ in range(10):
            head = tuple(random_plfunc(rng) for _ in range(rng.randint(1, 3)))
            limit = random_plfunc(rng)
            fam = TailFamily(head, limit, TailRule.zero(), random_plfunc(rng))
            pair = tail_sections(fam, GRID)
            ref = envelopes(StableFamily(head + (limit,)))
            for x in GRID:
                assert pair.g.value(x) == ref.g(x)
                assert pair.h.value(x) == ref.h(x)

    def test_empty_head_constant(self):
        c = PLFunc.constant("5/7")
        fam = TailFamily((), c, TailRule.zero(), X)
        pair = tail_sections(fam, GRID)
        for x in GRID:
            assert pair.g.value(x) == Fraction(5, 7)
            assert pair.h.value(x) == Fraction(5, 7)

    def test_zero_tail_bound_is_zero(self):
        fam = TailFamily((ZERO_F,), ZERO_F, TailRule.zero(), X)
        _, bound = brute_sections(fam, 7, GRID)
        assert bound == 0

    def test_cutoff_must_exceed_head(self):
        with pytest.raises(ValueError):
            brute_sections(CANONICAL, 2, GRID)

    def test_nonnull_tail_rejected(self):
        with pytest.raises(ValueError):
            TailFamily((), ZERO_F, TailRule.constant(1), X)


class TestOracleEquivalence:
    def test_sign_constant_families(self, rng: random.Random):
        for _ in range(30):
            fam = random_tail_family(rng)
            exact = tail_sections(fam, GRID)
            brute, _ = brute_sections(fam, fam.head_size + 1, GRID)
            assert_pairs_agree(exact, brute, GRID)
            assert_witnesses_attain(fam, exact)
            assert_witnesses_attain(fam, brute)

    def test_alternating_needs_second_slice(self):
        # Ratio -1/2: the maximum over the tail sits at the second tail slice.
        fam = TailFamily((), ZERO_F, TailRule.geometric(2, "-1/2"), PLFunc.constant(1))
        exact = tail_sections(fam, GRID)
        assert exact.g.value("1/2") == Fraction(-1)  # 2 * (-1/2)^1
        assert exact.h.value("1/2") == Fraction(1, 2)  # 2 * (-1/2)^2
        brute, bound = brute_sections(fam, 6, GRID)
        assert_pairs_agree(exact, brute, GRID)
        short, bound1 = brute_sections(fam, 1, GRID)
        # The one-slice truncation misses the max but stays within its bound.
        assert short.h.value("1/2") == 0
        assert bound1 == Fraction(1, 2)
        assert exact.h.value("1/2") - short.h.value("1/2") <= bound1

    def test_alternating_random_families(self, rng: random.Random):
        for _ in range(20):
            fam = random_tail_family(rng, allow_alternating=True)
            exact = tail_sections(fam, GRID)
            brute, _ = brute_sections(fam, fam.head_size + 6, GRID)
            assert_pairs_agree(exact, brute, GRID)
            assert_witnesses_attain(fam, exact)

    def test_bound_certifies_truncation(self, rng: random.Random):
        for _ in range(20):
            fam = random_tail_family(rng, allow_alternating=True)
            exact = tail_sections(fam, GRID)
            for m in (fam.head_size + 1, fam.head_size + 3):
                approx, bound = brute_sections(fam, m, GRID)
                for x in GRID:
                    assert abs(exact.g.value(x) - approx.g.value(x)) <= bound
                    assert abs(exact.h.value(x) - approx.h.value(x)) <= bound


class TestStructure:
    def test_g_below_h_and_reencoding(self, rng: random.Random):
        # Sections of a sign-constant family coincide with the envelopes of
        # the finite family {head, limit, first tail slice}.
        for _ in range(20):
            fam = random_tail_family(rng)
            pair = tail_sections(fam, GRID)
            finite = StableFamily(
                fam.head + (fam.limit, fam.member(fam.head_size + 1))
            )
            ref = envelopes(finite)
            for x in GRID:
                assert pair.g.value(x) <= pair.h.value(x)
                assert pair.g.value(x) == ref.g(x)
                assert pair.h.value(x) == ref.h(x)

    def test_json_export(self):
        pair = tail_sections(CANONICAL, [Fraction(0), Fraction(1)])
        data = pair.to_json()
        assert data["grid"][0]["x"] == "0/1"
        assert data["grid"][1]["min_witness"] == 3
        rows = pair.rows()
        assert rows[0][0] == "0/1"
