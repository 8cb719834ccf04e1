"""Acceptance suite: every criterion runs at its stated tolerance and prints
one pass line.  Derived golden values were frozen after re-deriving them with
the independent oracle."""

import random
import time

import pytest

from quadring import builder, oracle, pell
from quadring.builder import (
    SearchBounds,
    SupportTag,
    THM12_CASE4_TABLE,
    THM13_CASE1_M0_TABLE,
    THM13_CASE4_M1_TABLE,
    assemble,
    classify_support,
    construct_d10,
    construct_thm12,
    construct_thm13,
    lemma21_search,
    scale,
)
from quadring.ring import RingContext, RingElement as E, canonical_sign

SEED = 20260810


def _report(name: str, elapsed: float) -> None:
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s)")


@pytest.fixture(scope="module")
def ctx():
    return RingContext(10)


def test_criterion_01_pell_fundamentals(ctx):
    t0 = time.perf_counter()
    assert pell.fundamental_unit(ctx).value == E(19, 6)
    assert pell.fundamental_neg(ctx).value == E(3, 1)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _report("01 pell fundamentals d=10", elapsed)


def test_criterion_02_norm_form_conformance():
    t0 = time.perf_counter()
    checked = 0
    for d in pell.admissible_d_scan(2000):
        ctx = RingContext(d)
        for target in (1, -1, 6, -6):
            for u in pell.norm_class_elements(ctx, target, 50):
                form = pell.classify_form(ctx, u)  # raises FormViolation on mismatch
                assert form is not None
                checked += 1
    assert checked >= 4 * 50  # at least d=10 fully enumerated
    _report(
        f"02 norm-form conformance ({checked} elements, 0 violations)",
        time.perf_counter() - t0,
    )


def test_criterion_03_admissibility_congruence():
    t0 = time.perf_counter()
    ds = pell.admissible_d_scan(5000)
    assert 10 in ds and 58 in ds
    for d in ds:
        assert d % 48 == 10
    _report(f"03 admissible scan to 5000 ({len(ds)} values)", time.perf_counter() - t0)


def test_criterion_04_thm12_sweep(ctx):
    t0 = time.perf_counter()
    built = 0
    for m in range(-12, 13):
        for k in range(-12, 13):
            if (m, k) == (0, 0):
                continue  # n = 0 has no class (classify_support precondition)
            if m % 6 == 5 and k % 6 == 3:
                continue  # stated exclusion
            n = E(4 * m, 4 * k)
            status = classify_support(n, ctx)
            if status.tag is SupportTag.DELEGATED_PRIOR_WORK:
                continue  # delegated case II sub-branch
            cert = construct_thm12(ctx, n)
            assert oracle.verify_quadruple(cert.elements, cert.n, ctx).ok, (m, k)
            built += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(f"04 thm12 sweep ({built} cells verified)", elapsed)


def test_criterion_05_thm13_sweep(ctx):
    t0 = time.perf_counter()
    built = excluded = 0
    for m in range(-12, 13):
        for k in range(-12, 13):
            n = E(4 * m + 2, 4 * k)
            status = classify_support(n, ctx)
            if (m % 12, k % 6) in ((9, 3), (0, 0)):
                assert status.tag is SupportTag.EXCLUDED_RESIDUE, (m, k)
                excluded += 1
                continue
            cert = construct_thm13(ctx, n)
            assert oracle.verify_quadruple(cert.elements, cert.n, ctx).ok, (m, k)
            built += 1
    _report(
        f"05 thm13 sweep ({built} cells verified, {excluded} excluded)",
        time.perf_counter() - t0,
    )


GOLDEN = [
    (
        "thm12 n=(8,0)",
        lambda ctx: construct_thm12(ctx, E(8, 0)),
        (E(19, 6), E(-31, 12), E(-26, 12), E(-133, 42)),
        (E(7, 3), E(12, 3), E(1, 0), E(38, -9), E(69, -21), E(64, -21)),
    ),
    (
        "thm13 n=(10,0)",
        lambda ctx: construct_thm13(ctx, E(10, 0)),
        (E(4, 0), E(4, 2), E(16, 4), E(36, 12)),
        (E(4, 1), E(8, 1), E(8, 3), E(8, 3), E(12, 5), E(24, 7)),
    ),
    (
        "thm12 n=(-12,0)",
        lambda ctx: construct_thm12(ctx, E(-12, 0)),
        (E(2, 0), E(56, 0), E(38, 0), E(186, 0)),
        (E(10, 0), E(8, 0), E(0, 6), E(46, 0), E(102, 0), E(84, 0)),
    ),
    (
        "ex3 n=(116,12) t=1",
        lambda ctx: construct_d10(ctx, E(116, 12), 1),
        (E(60, 19), E(-216, 77), E(-108, 118), E(-708, 371)),
        (E(24, 11), E(84, 30), E(126, 35), E(192, -88), E(408, -165), E(300, -206)),
    ),
    (
        "ex4 n=(86,12) t=0",
        lambda ctx: construct_d10(ctx, E(86, 12), 0),
        (E(10, 3), E(1750, -555), E(1808, -564), E(7106, -2241)),
        (E(24, -6), E(34, -3), E(54, -10), E(1774, -561), E(3524, -1116), E(3582, -1125)),
    ),
]


def test_criterion_06_golden_certificates(ctx):
    t0 = time.perf_counter()
    for name, build, elements, witnesses in GOLDEN:
        cert = build(ctx)
        assert cert.elements == elements, name
        assert cert.witnesses == witnesses, name
        outcome = oracle.verify_quadruple(cert.elements, cert.n, ctx)
        assert outcome.ok and outcome.certificate.witnesses == witnesses, name
    _report("06 golden certificates (exact, incl. witnesses)", time.perf_counter() - t0)


def test_criterion_07_degenerate_known_cases(ctx):
    t0 = time.perf_counter()
    one = construct_thm12(ctx, E(1, 0))
    assert one.elements == (E(1, 0), E(3, 0), E(8, 0), E(120, 0))
    assert oracle.verify_quadruple(one.elements, E(1, 0), ctx).ok
    six = construct_thm12(ctx, E(36, 0))
    assert six.elements == (E(6, 0), E(18, 0), E(48, 0), E(720, 0))
    assert six.provenance == "scaled"
    assert oracle.verify_quadruple(six.elements, E(36, 0), ctx).ok
    _report("07 degenerate known cases n=1, n=36", time.perf_counter() - t0)


def test_criterion_08_oracle_cross_check(ctx):
    oracle.brute_force_search(ctx, E(3, 0), 3, limit=1)  # warm the compiled kernels
    t0 = time.perf_counter()
    found = {
        frozenset(c.elements) for c in oracle.brute_force_search(ctx, E(1, 0), 130)
    }
    elapsed_1 = time.perf_counter() - t0
    assert frozenset({E(1, 0), E(3, 0), E(8, 0), E(120, 0)}) in found
    assert elapsed_1 < 120.0
    t0 = time.perf_counter()
    found = {
        frozenset(c.elements) for c in oracle.brute_force_search(ctx, E(-12, 0), 200)
    }
    elapsed_2 = time.perf_counter() - t0
    assert frozenset({E(2, 0), E(38, 0), E(56, 0), E(186, 0)}) in found
    assert elapsed_2 < 120.0
    _report(
        f"08 brute-force cross-check (B=130 {elapsed_1:.1f}s, B=200 {elapsed_2:.1f}s)",
        elapsed_1 + elapsed_2,
    )


def test_criterion_09_counterexample_class(ctx):
    t0 = time.perf_counter()
    cert = lemma21_search(ctx, E(26, 6))
    if cert is None:
        # raise the bounds once; a second failure is recorded, never silent
        widened = SearchBounds(
            factor_norm_bound=72, a_norm_bound=72, unit_power_bound=5, max_attempts=200000
        )
        cert = lemma21_search(ctx, E(26, 6), widened)
        assert cert is not None, (
            "bound exhaustion for n=(26,6): default and widened bounds both failed"
        )
    assert oracle.verify_quadruple(cert.elements, E(26, 6), ctx).ok
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _report("09 counterexample class n=(26,6) via search", elapsed)


def test_criterion_10_residue_table_audit():
    t0 = time.perf_counter()
    thm12_union = frozenset().union(*(e.classes for e in THM12_CASE4_TABLE))
    all_63 = {(a, b) for a in range(6) for b in range(3)}
    assert all_63 - thm12_union == {(2, 1), (5, 1)}
    all_33 = {(a, b) for a in range(3) for b in range(3)}
    case1_union = frozenset().union(*(e.classes for e in THM13_CASE1_M0_TABLE))
    assert all_33 - case1_union == {(0, 0)}
    case4_union = frozenset().union(*(e.classes for e in THM13_CASE4_M1_TABLE))
    assert all_33 - case4_union == {(2, 1)}
    _report("10 residue-table audit", time.perf_counter() - t0)


class TestCriterion11PropertySuites:
    N_CASES = 1000

    def _element(self, rng, bound=10**6):
        return E(rng.randint(-bound, bound), rng.randint(-bound, bound))

    def test_norm_multiplicativity(self, ctx):
        t0 = time.perf_counter()
        rng = random.Random(SEED)
        for _ in range(self.N_CASES):
            u, v = self._element(rng), self._element(rng)
            assert ctx.norm(ctx.mul(u, v)) == ctx.norm(u) * ctx.norm(v)
        _report("11a norm multiplicativity x1000", time.perf_counter() - t0)

    def test_is_square_roundtrip(self, ctx):
        t0 = time.perf_counter()
        rng = random.Random(SEED + 1)
        for _ in range(self.N_CASES):
            s = self._element(rng, bound=3000)
            root = ctx.is_square(ctx.square(s))
            assert root == canonical_sign(s)
        _report("11b is_square round-trip x1000", time.perf_counter() - t0)

    def test_exact_div_roundtrip(self, ctx):
        t0 = time.perf_counter()
        rng = random.Random(SEED + 2)
        for _ in range(self.N_CASES):
            u = self._element(rng)
            v = self._element(rng)
            if not v:
                v = E(1, 1)
            assert ctx.exact_div(ctx.mul(u, v), v) == u
        _report("11c exact_div round-trip x1000", time.perf_counter() - t0)

    def test_scale_correctness(self, ctx):
        t0 = time.perf_counter()
        rng = random.Random(SEED + 3)
        pool = [
            construct_thm12(ctx, E(4 * m, 4 * k))
            for m, k in [(2, 0), (2, 2), (-2, 2), (3, 0), (1, 1), (0, 1), (4, 2)]
        ] + [
            construct_thm13(ctx, E(4 * m + 2, 4 * k))
            for m, k in [(2, 0), (1, 0), (0, 1), (3, 1), (2, 2)]
        ]
        for _ in range(self.N_CASES):
            cert = pool[rng.randrange(len(pool))]
            w = E(rng.randint(-3, 3), rng.randint(-3, 3))
            if not w:
                w = E(2, 1)
            scaled = scale(ctx, w, cert)
            assert scaled.n == ctx.mul(ctx.square(w), cert.n)
            assert oracle.verify_quadruple(scaled.elements, scaled.n, ctx).ok
        _report("11d scale correctness x1000", time.perf_counter() - t0)

    def test_closed_form_r_agreement(self, ctx):
        # generic r = ((alpha1+alpha2)/2 - a)/2 against the expanded formula
        # for the (4m+2, 4k) case with m = 2 (mod 4), k even
        t0 = time.perf_counter()
        rng = random.Random(SEED + 4)
        d = ctx.d
        for _ in range(self.N_CASES):
            m = 4 * rng.randint(-50, 50) + 2
            k = 2 * rng.randint(-50, 50)
            M, N = rng.randint(-20, 20), rng.randint(-20, 20)
            a1, b1 = rng.randint(-20, 20), rng.randint(-20, 20)
            alpha1 = E(12 * M + 4, -6 * N - 1)
            alpha2 = ctx.mul(ctx.conj(alpha1), E(2 * m + 1, 2 * k))
            total = alpha1 + alpha2
            assert total.x % 2 == 0 and total.y % 2 == 0
            s = E(total.x // 2, total.y // 2)
            a = 4 * E(6 * a1 + 1, 6 * b1)
            diff = s - a
            assert diff.x % 2 == 0 and diff.y % 2 == 0
            r = E(diff.x // 2, diff.y // 2)
            expected = E(
                6 * M * m + 6 * M + 2 * m + (d // 2) * (6 * N * k + k) - 12 * a1,
                6 * M * k + 2 * k + 3 * N * m + m // 2 - 12 * b1,
            )
            assert r == expected
        _report("11e closed-form r agreement x1000", time.perf_counter() - t0)


def test_criterion_12_erratum_regression(ctx):
    """Quarantined: the printed recipe for n = -12 (a = 4u, r = -2u) always
    collapses a+b+2r onto b, so it builds a triple, not a quadruple.  The
    shipped path uses the replacement checked in criterion 6."""
    t0 = time.perf_counter()
    n = E(-12, 0)
    for a1, b1 in [(0, 0), (3, 1), (-3, -1), (120, 38)]:
        u = E(6 * a1 + 1, 6 * b1)
        if ctx.norm(u) != 1:
            continue
        a = 4 * u
        r = E(-2 - 12 * a1, -12 * b1)
        assert a + 2 * r == E(0, 0)
        b = ctx.exact_div(ctx.square(r) - n, a)
        assert b is not None
        # the paper's closed form for b agrees...
        assert b == ctx.mul(ctx.square(u) + E(3, 0), ctx.conj(u))
        # ...and the third element collapses onto the second
        assert a + b + 2 * r == b
        assert assemble(ctx, a, r, n) is None
    _report("12 erratum regression (printed n=-12 recipe degenerates)",
            time.perf_counter() - t0)
