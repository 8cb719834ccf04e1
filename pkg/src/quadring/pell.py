"""Continued fractions for sqrt(d), Pell fundamentals, and norm-form machinery.

Everything is exact integer arithmetic; no floats anywhere.  Results that
depend only on d are cached by d.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional

from .ring import (
    ONE,
    QuadringError,
    RingContext,
    RingElement,
    is_squarefree,
    order_key,
)


class EmptyClassError(QuadringError):
    """Requested a norm class that has no elements for this d."""


class FormViolation(QuadringError):
    """An element of norm +-1/+-6 failed its guaranteed residue pattern.

    For admissible d this cannot happen; a raise here must abort the caller.
    """


@dataclass(frozen=True)
class PellSolution:
    value: RingElement
    target_norm: int


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)


@lru_cache(maxsize=None)
def _cf(d: int) -> CFExpansion:
    a0 = isqrt(d)
    period = []
    m, q, a = 0, 1, a0
    while True:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
        if a == 2 * a0:
            return CFExpansion(a0, tuple(period))


def cf_expand(ctx: RingContext) -> CFExpansion:
    return _cf(ctx.d)


@lru_cache(maxsize=None)
def _fundamental_pair(d: int) -> tuple[int, int, int]:
    """Minimal (x, y) with x^2 - d y^2 = +-1, plus that sign."""
    cf = _cf(d)
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    for a in cf.period[: cf.period_length - 1]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k, (-1 if cf.period_length % 2 else 1)


def fundamental_unit(ctx: RingContext) -> PellSolution:
    """Minimal x, y > 0 with x^2 - d y^2 = 1."""
    x, y, sign = _fundamental_pair(ctx.d)
    if sign == -1:
        x, y = x * x + ctx.d * y * y, 2 * x * y
    return PellSolution(RingElement(x, y), 1)


def fundamental_neg(ctx: RingContext) -> Optional[PellSolution]:
    """Minimal positive solution of x^2 - d y^2 = -1, present iff the CF period is odd."""
    x, y, sign = _fundamental_pair(ctx.d)
    if sign == -1:
        return PellSolution(RingElement(x, y), -1)
    return None


# Above this many scan steps, representative search switches to the
# continued-fraction route (complete for |N| < sqrt(d)).
_SCAN_LIMIT = 2_000_000


def _convergent_solutions(d: int, targets: frozenset[int]) -> list[tuple[int, int]]:
    """(h, k) over two CF periods with h^2 - d k^2 in targets."""
    cf = _cf(d)
    out = []
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    if h * h - d in targets:
        out.append((h, 1))
    for i in range(2 * cf.period_length):
        a = cf.period[i % cf.period_length]
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        if h * h - d * k * k in targets:
            out.append((h, k))
    return out


@lru_cache(maxsize=None)
def _norm_reps(d: int, target: int) -> tuple[RingElement, ...]:
    """All x >= 0 solutions of x^2 - d y^2 = target with |y| within the
    classical representative bound derived from the fundamental unit."""
    if target == 0:
        raise ValueError("norm 0 has only the zero element")
    if target == 1:
        return (ONE,)
    if target == -1:
        x, y, sign = _fundamental_pair(d)
        if sign != -1:
            return ()
        return (RingElement(x, y),)
    x1 = fundamental_unit(RingContext(d)).value.x
    bound = isqrt((abs(target) * (x1 + 1)) // (2 * d)) + 1
    sols: list[RingElement] = []
    if bound <= _SCAN_LIMIT:
        for y in range(bound + 1):
            t = target + d * y * y
            if t < 0:
                continue
            x = isqrt(t)
            if x * x == t:
                sols.append(RingElement(x, y))
                if y:
                    sols.append(RingElement(x, -y))
    else:
        # Huge fundamental unit: all primitive solutions with |N| < sqrt(d)
        # are convergents, and (gcd of a +-6 solution)^2 divides 6, so every
        # solution is primitive.  Two periods cover every solution class.
        if target * target >= d:
            raise QuadringError(
                f"norm {target} search bound {bound} too large for d={d}"
            )
        for h, k in _convergent_solutions(d, frozenset({target})):
            sols.append(RingElement(h, k))
            sols.append(RingElement(h, -k))
    uniq = sorted(set(sols), key=order_key)
    return tuple(uniq)


def norm_representatives(ctx: RingContext, target: int) -> tuple[RingElement, ...]:
    """Fundamental-domain representatives of x^2 - d y^2 = target (|target| small)."""
    return _norm_reps(ctx.d, target)


def solve_norm6(ctx: RingContext, sign: int) -> list[PellSolution]:
    """Fundamental-domain representatives of x^2 - d y^2 = +6 or -6."""
    target = 6 if sign > 0 else -6
    return [PellSolution(e, target) for e in _norm_reps(ctx.d, target)]


def norm_class_elements(ctx: RingContext, target: int, count: int) -> list[RingElement]:
    """First `count` elements of the given norm class, ordered by |y| then |x|.

    Generated as representative * unit^k together with conjugates and sign
    flips, deduplicated.
    """
    reps = _norm_reps(ctx.d, target)
    if not reps:
        raise EmptyClassError(f"x^2 - {ctx.d}y^2 = {target} has no solutions")
    eps = fundamental_unit(ctx).value
    pool: set[RingElement] = set()
    power = ONE
    for _ in range(count + 2):
        for rep in reps:
            e = ctx.mul(rep, power)
            pool.update((e, -e, ctx.conj(e), -ctx.conj(e)))
        power = ctx.mul(power, eps)
    ordered = sorted(pool, key=order_key)
    return ordered[:count]


enumerate_norm_class = norm_class_elements


class NormForm(enum.Enum):
    """Guaranteed residue patterns for elements of norm 1, -1, 6, -6."""

    UNIT = "I"          # norm  1: (6a1 +- 1, 6b1)
    UNIT_NEG = "II"     # norm -1: (6a1 +- 3, 6b1 +- 1)
    NORM6 = "IV"        # norm  6: (12M +- 4, 6N +- 1)
    NORM6_NEG = "V"     # norm -6: (12M +- 2, 6N +- 1)


def classify_form(ctx: RingContext, u: RingElement) -> Optional[NormForm]:
    nm = ctx.norm(u)
    if nm == 1:
        ok, form = u.x % 6 in (1, 5) and u.y % 6 == 0, NormForm.UNIT
    elif nm == -1:
        ok, form = u.x % 6 == 3 and u.y % 6 in (1, 5), NormForm.UNIT_NEG
    elif nm == 6:
        ok, form = u.x % 12 in (4, 8) and u.y % 6 in (1, 5), NormForm.NORM6
    elif nm == -6:
        ok, form = u.x % 12 in (2, 10) and u.y % 6 in (1, 5), NormForm.NORM6_NEG
    else:
        return None
    if not ok:
        raise FormViolation(
            f"element {u!r} of norm {nm} violates its residue pattern for d={ctx.d}"
        )
    return form


def _norm6_solvable(d: int) -> bool:
    if d > 36:
        cf = _cf(d)
        # h^2 - d k^2 over two periods realises every small represented norm
        return bool(_convergent_solutions(d, frozenset({6})))
    return bool(_norm_reps(d, 6))


@lru_cache(maxsize=None)
def is_admissible(d: int) -> bool:
    """Both x^2 - d y^2 = -1 and = 6 solvable (d square-free, 2 mod 4)."""
    if d <= 0 or d % 4 != 2 or not is_squarefree(d):
        return False
    if _cf(d).period_length % 2 == 0:
        return False
    return _norm6_solvable(d)


def admissible_d_scan(limit: int) -> list[int]:
    """All admissible d <= limit, by direct test of both Pell conditions."""
    return [d for d in range(2, limit + 1, 4) if is_admissible(d)]
