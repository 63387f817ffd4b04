import math
import random

import pytest

from nhdm.groups import (
    GroupSignature,
    abelian_groups_of_order,
    all_abelian_groups_up_to,
    canonicalize,
    extend_by_antiunitary,
    group_from_snf,
    order,
)


class TestCanonicalize:
    def test_coprime_merge(self):
        assert canonicalize([2, 3]) == GroupSignature((6,))

    def test_divisible_unchanged(self):
        assert canonicalize([2, 4]) == GroupSignature((2, 4))
        assert canonicalize([3, 3]) == GroupSignature((3, 3))

    def test_idempotent(self):
        rng = random.Random(3)
        for _ in range(200):
            factors = [rng.randint(1, 24) for _ in range(rng.randint(0, 4))]
            once = canonicalize(factors)
            assert canonicalize(once.finite) == once

    def test_prime_power_multiset_determines_result(self):
        # Z12 x Z60 and Z3 x Z4 x Z60 share elementary divisors
        assert canonicalize([12, 60]) == canonicalize([3, 4, 60]) == GroupSignature((12, 60))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            canonicalize([0])


class TestGroupFromSnf:
    def test_cyclic_three(self):
        assert group_from_snf((1, 3), 2) == GroupSignature((3,))

    def test_unconstrained_torus(self):
        assert group_from_snf((), 2) == GroupSignature(torus_rank=2)

    def test_klein_four(self):
        assert group_from_snf((2, 2), 2) == GroupSignature((2, 2))

    def test_mixed(self):
        assert group_from_snf((1, 2, 0), 3) == GroupSignature((2,), torus_rank=1)


class TestOrderAndNames:
    def test_orders(self):
        assert order(GroupSignature((2, 4))) == 8
        assert order(GroupSignature((2,), torus_rank=1)) == math.inf
        assert order(GroupSignature((7,))) == 7
        assert order(GroupSignature((2, 2), star=2)) == 8

    def test_names(self):
        assert GroupSignature((4,)).name() == "Z4"
        assert GroupSignature((2, 2)).name() == "Z2xZ2"
        assert GroupSignature((2,), torus_rank=1).name() == "U(1)xZ2"
        assert GroupSignature(torus_rank=1, star=2).name() == "U(1)xZ2*"
        assert GroupSignature(star=4).name() == "Z4*"
        assert GroupSignature().name() == "trivial"

    def test_chain_validated(self):
        with pytest.raises(ValueError):
            GroupSignature((2, 3))
        with pytest.raises(ValueError):
            GroupSignature((1, 2))


class TestEnumeration:
    def test_order_sixteen_has_five_groups(self):
        assert len(abelian_groups_of_order(16)) == 5

    def test_up_to_eight_is_the_ten_groups(self):
        names = [g.name() for g in all_abelian_groups_up_to(8)]
        assert names == ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8",
                         "Z2xZ4", "Z2xZ2xZ2"]

    def test_up_to_sixteen_count(self):
        assert len(all_abelian_groups_up_to(16)) == 24


class TestAntiunitaryExtension:
    def test_standard_cp_of_trivial(self):
        assert extend_by_antiunitary(GroupSignature(), ()) == GroupSignature(star=2)

    def test_z2_split_and_twisted(self):
        z2 = GroupSignature((2,))
        assert extend_by_antiunitary(z2, (0,)).name() == "Z2xZ2*"
        assert extend_by_antiunitary(z2, (1,)).name() == "Z4*"

    def test_z3_gives_cyclic_six(self):
        z3 = GroupSignature((3,))
        assert extend_by_antiunitary(z3, (0,)).name() == "Z6*"
        assert extend_by_antiunitary(z3, (1,)).name() == "Z6*"
        assert extend_by_antiunitary(z3, (2,)).name() == "Z6*"

    def test_z4_split_and_twisted(self):
        z4 = GroupSignature((4,))
        assert extend_by_antiunitary(z4, (0,)).name() == "Z4xZ2*"
        assert extend_by_antiunitary(z4, (2,)).name() == "Z4xZ2*"
        assert extend_by_antiunitary(z4, (1,)).name() == "Z8*"
        assert extend_by_antiunitary(z4, (3,)).name() == "Z8*"

    def test_klein_four(self):
        assert extend_by_antiunitary(GroupSignature((2, 2)), (0, 0)).name() == "Z2xZ2xZ2*"

    def test_torus_passthrough(self):
        assert extend_by_antiunitary(GroupSignature(torus_rank=1), ()).name() == "U(1)xZ2*"

    def test_full_order_doubles(self):
        rng = random.Random(9)
        for _ in range(100):
            factors = canonicalize([rng.randint(2, 6) for _ in range(rng.randint(1, 3))])
            expts = tuple(rng.randrange(f) for f in factors.finite)
            ext = extend_by_antiunitary(factors, expts)
            assert ext.order() == 2 * factors.order()
            assert ext.star is not None
