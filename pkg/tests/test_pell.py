from math import isqrt

import pytest

from quadring import pell
from quadring.ring import RingContext, RingElement as E


class TestContinuedFraction:
    def test_d10(self, ctx10):
        cf = pell.cf_expand(ctx10)
        assert (cf.a0, cf.period, cf.period_length) == (3, (6,), 1)

    def test_d2(self):
        cf = pell.cf_expand(RingContext(2))
        assert (cf.a0, cf.period) == (1, (2,))

    def test_d58_odd_period(self):
        assert pell.cf_expand(RingContext(58)).period_length % 2 == 1

    @pytest.mark.parametrize("d", [2, 6, 10, 14, 22, 26, 34, 58, 106])
    def test_period_ends_at_2a0(self, d):
        cf = pell.cf_expand(RingContext(d))
        assert cf.period[-1] == 2 * cf.a0


class TestFundamentals:
    def test_unit_d10(self, ctx10):
        sol = pell.fundamental_unit(ctx10)
        assert sol.value == E(19, 6) and sol.target_norm == 1

    def test_unit_d2(self):
        assert pell.fundamental_unit(RingContext(2)).value == E(3, 2)

    def test_neg_d10(self, ctx10):
        assert pell.fundamental_neg(ctx10).value == E(3, 1)

    def test_neg_absent_d34(self):
        assert pell.fundamental_neg(RingContext(34)) is None

    def test_neg_d58(self):
        assert pell.fundamental_neg(RingContext(58)).value == E(99, 13)

    @pytest.mark.parametrize("d", [10, 58, 106])
    def test_neg_squares_to_unit(self, d):
        ctx = RingContext(d)
        neg = pell.fundamental_neg(ctx)
        assert ctx.square(neg.value) == pell.fundamental_unit(ctx).value

    @pytest.mark.parametrize("d", [10, 58, 106, 202])
    def test_unit_minimality(self, d):
        ctx = RingContext(d)
        x1, y1 = pell.fundamental_unit(ctx).value.x, pell.fundamental_unit(ctx).value.y
        assert x1 * x1 - d * y1 * y1 == 1
        for y in range(1, y1):
            t = 1 + d * y * y
            x = isqrt(t)
            assert x * x != t, f"smaller unit ({x},{y}) for d={d}"


class TestNorm6:
    def test_d10_plus(self, ctx10):
        values = [s.value for s in pell.solve_norm6(ctx10, 6)]
        assert E(4, 1) in values and E(4, -1) in values
        assert all(ctx10.norm(v) == 6 for v in values)

    def test_d10_minus(self, ctx10):
        values = [s.value for s in pell.solve_norm6(ctx10, -6)]
        assert E(2, 1) in values
        assert all(ctx10.norm(v) == -6 for v in values)

    def test_d6(self):
        ctx = RingContext(6)
        assert pell.solve_norm6(ctx, 6) == []
        assert [s.value for s in pell.solve_norm6(ctx, -6)] == [E(0, 1), E(0, -1)]

    def test_completeness_desk_scale(self, ctx10):
        # every solution with |y| <= 10^4 must lie in the orbit closure of the
        # returned representatives, and conversely
        for target in (6, -6):
            brute = set()
            for y in range(10**4 + 1):
                t = target + 10 * y * y
                if t < 0:
                    continue
                x = isqrt(t)
                if x * x == t:
                    for u in {E(x, y), E(x, -y), E(-x, y), E(-x, -y)}:
                        brute.add(u)
            reps = [s.value for s in pell.solve_norm6(ctx10, target)]
            eps = pell.fundamental_unit(ctx10).value
            orbit = set()
            for rep in reps:
                for base in (rep, ctx10.conj(rep)):
                    e = base
                    while abs(e.y) <= 10**4:
                        orbit.update({e, -e, ctx10.conj(e), -ctx10.conj(e)})
                        e = ctx10.mul(e, eps)
            orbit = {u for u in orbit if abs(u.y) <= 10**4}
            assert brute == orbit


class TestEnumerate:
    def test_norm1_contains_unit_powers(self, ctx10):
        elements = pell.norm_class_elements(ctx10, 1, 12)
        for expected in (E(1, 0), E(19, 6), E(721, 228)):
            assert expected in elements

    def test_norm_neg1(self, ctx10):
        elements = pell.norm_class_elements(ctx10, -1, 12)
        for expected in (E(3, 1), E(117, 37)):
            assert expected in elements

    def test_norm6_products(self, ctx10):
        elements = pell.norm_class_elements(ctx10, 6, 12)
        assert E(4, 1) in elements
        assert ctx10.mul(E(4, 1), E(19, 6)) in elements  # (136, 43)
        assert all(ctx10.norm(e) == 6 for e in elements)

    def test_deterministic_and_ordered(self, ctx10):
        a = pell.norm_class_elements(ctx10, 6, 20)
        b = pell.norm_class_elements(ctx10, 6, 20)
        assert a == b
        keys = [(abs(e.y), abs(e.x)) for e in a]
        assert keys == sorted(keys)

    def test_empty_class(self, ctx10):
        with pytest.raises(pell.EmptyClassError):
            pell.norm_class_elements(RingContext(34), -1, 3)


class TestClassifyForm:
    @pytest.mark.parametrize(
        "u,form",
        [
            (E(19, 6), pell.NormForm.UNIT),
            (E(3, 1), pell.NormForm.UNIT_NEG),
            (E(4, 1), pell.NormForm.NORM6),
            (E(2, 1), pell.NormForm.NORM6_NEG),
            (E(-19, -6), pell.NormForm.UNIT),
        ],
    )
    def test_examples(self, ctx10, u, form):
        assert pell.classify_form(ctx10, u) is form

    def test_other_norms_absent(self, ctx10):
        assert pell.classify_form(ctx10, E(7, 2)) is None  # norm 9

    def test_violation_outside_admissible_d(self):
        # d=2 is inadmissible, so the residue guarantees do not hold there
        ctx = RingContext(2)
        with pytest.raises(pell.FormViolation):
            pell.classify_form(ctx, E(1, 1))  # norm -1, wrong pattern


class TestAdmissibleScan:
    def test_limit_10(self):
        assert pell.admissible_d_scan(10) == [10]

    def test_contains_58(self):
        assert 58 in pell.admissible_d_scan(58)

    def test_below_10_empty(self):
        assert pell.admissible_d_scan(9) == []

    def test_mod48(self):
        for d in pell.admissible_d_scan(2000):
            assert d % 48 == 10
