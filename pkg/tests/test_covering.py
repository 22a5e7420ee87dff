import math
from fractions import Fraction

import pytest

from detksat.chains import canonical_realization, solution_space
from detksat.characteristic import lambda_for_zeta
from detksat.covering import (
    CodeFamily,
    CoverError,
    CubeFactor,
    PowerFactor,
    StructuredSpace,
    build_generalized_code,
    cover_cube,
    ell_cover_power,
    ell_cover_spaces,
    ell_for,
    product_code,
    verify_coverage,
)
from detksat.formula import hamming


def covers(family, words):
    for w in words:
        if not any(
            hamming(w, c) <= r for r in family.radii() for c in family.entries[r]
        ):
            return False
    return True


class TestCoverCube:
    def test_width4_radius2(self):
        fam = cover_cube(4, 2)
        assert covers(fam, range(16))
        # the two-word family {0000, 1111} also covers; check the verifier
        hand = CodeFamily(4, {2: (0b0000, 0b1111)})
        assert covers(hand, range(16))

    def test_width1_radius0(self):
        fam = cover_cube(1, 0)
        assert fam.entries[0] == (0, 1)

    def test_width10_radius3(self):
        fam = cover_cube(10, 3)
        assert covers(fam, range(1 << 10))
        ball = sum(math.comb(10, i) for i in range(4))
        assert ball == 176
        bound = (10 * math.log(2) + 1) * (1 << 10) / ball
        assert len(fam.entries[3]) <= bound

    def test_degenerate_radius(self):
        fam = cover_cube(3, 5)
        assert fam.entries[5] == (0,)

    def test_blockwise_large_width(self):
        fam = cover_cube(26, 8)
        assert fam.radii() == [8]
        space = StructuredSpace((CubeFactor(26),))
        rep = verify_coverage(fam, space, samples=20000)
        assert rep.sampled and rep.ok

    def test_determinism(self):
        a = cover_cube(9, 2)
        b = cover_cube(9, 2)
        assert a.entries == b.entries


class TestProductCode:
    def test_example(self):
        c1 = CodeFamily(1, {1: (0,)})
        c2 = CodeFamily(2, {1: (0b00, 0b11)})
        prod = product_code([c1, c2])
        assert prod.radii() == [2]
        assert set(prod.entries[2]) == {0b000, 0b110}
        assert covers(prod, range(8))

    def test_identity(self):
        c = CodeFamily(3, {1: (0, 5)})
        prod = product_code([c])
        assert prod.entries == c.entries

    def test_radius0_product(self):
        c1 = CodeFamily(1, {0: (0, 1)})
        c2 = CodeFamily(1, {0: (0, 1)})
        prod = product_code([c1, c2])
        assert prod.radii() == [0]
        assert set(prod.entries[0]) == {0, 1, 2, 3}

    def test_multi_radius_rejected(self):
        with pytest.raises(CoverError):
            product_code([CodeFamily(1, {0: (0,), 1: (0,)})])


class TestEllFamily:
    def test_ell_formula(self):
        assert ell_for(2, 3, Fraction(3, 7)) == 4

    def test_1chain_power2(self):
        sp = solution_space(canonical_realization("*"))
        fam = ell_cover_power(sp, 2, 3, Fraction(3, 7))
        words = [a | (b << 3) for a in sp.words for b in sp.words]
        assert len(words) == 49
        assert covers(fam, words)

    def test_single_ball_degenerate(self):
        sp = solution_space(canonical_realization("*"))
        fam = ell_cover_power(sp, 1, 3, Fraction(3, 7))
        assert covers(fam, sp.words)

    def test_radius0_no_worse_than_space(self):
        sp = solution_space(canonical_realization("*"))
        fam = ell_cover_spaces((sp,), 3, Fraction(3, 7))
        assert len(fam.entries.get(0, ())) <= len(sp.words)

    def test_centers_inside_space(self):
        sp = solution_space(canonical_realization("t*"))
        fam = ell_cover_power(sp, 1, 3, Fraction(15, 46))
        member = set(sp.words)
        for r in fam.radii():
            assert set(fam.entries[r]) <= member


class TestGeneralized:
    def test_cube_only_reduces_to_single_radius(self):
        space = StructuredSpace((CubeFactor(6),))
        fam = build_generalized_code(space, Fraction(1, 3), [], 3)
        assert fam.radii() == [2]
        rep = verify_coverage(fam, space)
        assert rep.ok and not rep.sampled

    def test_power_only_equals_ell_family(self):
        sp = solution_space(canonical_realization("*"))
        space = StructuredSpace((PowerFactor((sp,)),))
        fam = build_generalized_code(space, Fraction(1, 3), [Fraction(3, 7)], 3)
        direct = ell_cover_spaces((sp,), 3, Fraction(3, 7))
        assert fam.entries == direct.entries

    def test_cube_plus_chain(self):
        sp = solution_space(canonical_realization("*"))
        space = StructuredSpace((CubeFactor(4), PowerFactor((sp,))))
        fam = build_generalized_code(space, Fraction(1, 3), [Fraction(3, 7)], 3)
        assert space.count_words() == 112
        rep = verify_coverage(fam, space)
        assert rep.ok and rep.checked == 112
        # radii run from ceil(rho*4) upward
        assert min(fam.radii()) == 2

    def test_rho_range_enforced(self):
        space = StructuredSpace((CubeFactor(4),))
        with pytest.raises(CoverError):
            build_generalized_code(space, Fraction(1, 2), [], 3)

    def test_determinism(self):
        sp = solution_space(canonical_realization("n*"))
        space = StructuredSpace((CubeFactor(5), PowerFactor((sp,))))
        lam = lambda_for_zeta("n*")
        a = build_generalized_code(space, Fraction(1, 3), [lam], 3)
        b = build_generalized_code(space, Fraction(1, 3), [lam], 3)
        assert a.entries == b.entries


class TestVerifier:
    def test_detects_gap(self):
        fam = CodeFamily(3, {0: (0,)})
        space = StructuredSpace((CubeFactor(3),))
        rep = verify_coverage(fam, space)
        assert not rep.ok
        assert rep.uncovered_example is not None

    def test_dump_format(self):
        fam = CodeFamily(3, {1: (0b101,)}, "demo")
        text = fam.dump()
        lines = text.strip().split("\n")
        assert lines[0].startswith("#")
        assert lines[1] == "r 1 101"
