"""Exact arithmetic in Z[sqrt(d)] for square-free positive d = 2 (mod 4).

Elements are plain (x, y) pairs meaning x + y*sqrt(d); the ambient d lives in a
RingContext so elements from different rings cannot be silently mixed.  All
operations are pure and use Python's arbitrary-precision integers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt
from typing import Optional


class QuadringError(Exception):
    """Base class for errors raised by this package."""


class InvalidRing(QuadringError):
    """d is unusable: not positive, wrong residue mod 4, or not square-free."""


@dataclass(frozen=True)
class RingElement:
    """x + y*sqrt(d).  Equality and hashing are componentwise."""

    x: int
    y: int

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "RingElement":
        return RingElement(-self.x, -self.y)

    def __rmul__(self, k: int) -> "RingElement":
        # k*(x, y) = (k*x, k*y); ring products need the context, see RingContext.mul
        if not isinstance(k, int):
            return NotImplemented
        return RingElement(k * self.x, k * self.y)

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def as_pair(self) -> tuple[str, str]:
        return (str(self.x), str(self.y))

    def __repr__(self) -> str:
        return f"({self.x},{self.y})"


ZERO = RingElement(0, 0)
ONE = RingElement(1, 0)


def element_from_pair(pair) -> RingElement:
    x, y = pair
    return RingElement(int(x), int(y))


def order_key(u: RingElement) -> tuple[int, int, int, int]:
    """Canonical enumeration order: |y|, then |x|, non-negative components first."""
    return (abs(u.y), abs(u.x), 0 if u.y >= 0 else 1, 0 if u.x >= 0 else 1)


def canonical_sign(u: RingElement) -> RingElement:
    """Of u and -u, the one with x > 0, or x = 0 and y >= 0."""
    if u.x > 0 or (u.x == 0 and u.y >= 0):
        return u
    return -u


@dataclass(frozen=True)
class ResidueClass:
    """Componentwise congruence: x = a (mod c) and y = b (mod e)."""

    a: int
    c: int
    b: int
    e: int

    def __post_init__(self):
        if self.c <= 0 or self.e <= 0:
            raise ValueError("moduli must be positive")
        object.__setattr__(self, "a", self.a % self.c)
        object.__setattr__(self, "b", self.b % self.e)


class STClass(enum.Enum):
    S = "S"
    T = "T"


# The nine (x mod 4, y mod 4) patterns with no D(n)-quadruple; the other seven
# form the complementary T set.
_S_PATTERNS = frozenset(
    {(0, 1), (0, 2), (0, 3), (1, 1), (1, 3), (2, 1), (2, 3), (3, 1), (3, 3)}
)
T_PATTERNS = frozenset(
    (i, j) for i in range(4) for j in range(4) if (i, j) not in _S_PATTERNS
)
S_PATTERNS = _S_PATTERNS


def _positive_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


class RingContext:
    """Carrier of d plus every operation that needs it."""

    def __init__(self, d: int):
        if d <= 0 or d % 4 != 2:
            raise InvalidRing(f"d={d}: need positive d = 2 (mod 4)")
        if not is_squarefree(d):
            raise InvalidRing(f"d={d} is not square-free")
        self.d = d

    def __repr__(self) -> str:
        return f"RingContext(d={self.d})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("RingContext", self.d))

    def el(self, x: int, y: int = 0) -> RingElement:
        return RingElement(x, y)

    # -- arithmetic ---------------------------------------------------------

    def mul(self, u: RingElement, v: RingElement) -> RingElement:
        return RingElement(
            u.x * v.x + self.d * u.y * v.y,
            u.x * v.y + u.y * v.x,
        )

    def square(self, u: RingElement) -> RingElement:
        return self.mul(u, u)

    def pow(self, u: RingElement, e: int) -> RingElement:
        if e < 0:
            raise ValueError("negative exponent")
        acc = ONE
        base = u
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    @staticmethod
    def conj(u: RingElement) -> RingElement:
        return RingElement(u.x, -u.y)

    def norm(self, u: RingElement) -> int:
        return u.x * u.x - self.d * u.y * u.y

    def exact_div(self, u: RingElement, v: RingElement) -> Optional[RingElement]:
        """u / v when exact, else None.  v must be non-zero."""
        if not v:
            raise ZeroDivisionError("division by zero ring element")
        nv = self.norm(v)  # non-zero: d is not a square
        w = self.mul(u, self.conj(v))
        if w.x % nv or w.y % nv:
            return None
        q = RingElement(w.x // nv, w.y // nv)
        if self.mul(q, v) != u:  # belt and braces; the algebra guarantees it
            return None
        return q

    # -- congruences and classification --------------------------------------

    @staticmethod
    def congruent(u: RingElement, cls: ResidueClass) -> bool:
        return (u.x - cls.a) % cls.c == 0 and (u.y - cls.b) % cls.e == 0

    @staticmethod
    def classify_st(n: RingElement) -> STClass:
        if not n:
            raise ValueError("zero element has no S/T class")
        return STClass.S if (n.x % 4, n.y % 4) in _S_PATTERNS else STClass.T

    # -- perfect squares ------------------------------------------------------

    def is_square(self, z: RingElement) -> Optional[RingElement]:
        """Canonical square root of z, or None.

        Root (p, q) satisfies p > 0, or p = 0 and q >= 0.  Necessary filter:
        norm(z) must be a non-negative perfect square.
        """
        if not z:
            return ZERO
        nm = z.x * z.x - self.d * z.y * z.y
        if nm < 0:
            return None
        r = isqrt(nm)
        if r * r != nm:
            return None
        if z.y == 0:
            if z.x < 0:
                return None
            p = isqrt(z.x)
            if p * p == z.x:
                return RingElement(p, 0)
            q2, rem = divmod(z.x, self.d)
            if rem == 0:
                q = isqrt(q2)
                if q * q == q2:
                    return RingElement(0, q)
            return None
        if z.y % 2:
            return None
        h = z.y // 2
        for p in _positive_divisors(h):
            q = h // p
            if p * p + self.d * q * q == z.x:
                return RingElement(p, q)
        return None

    # -- formatting -----------------------------------------------------------

    def render(self, u: RingElement) -> str:
        sign = "+" if u.y >= 0 else "-"
        return f"{u.x}{sign}{abs(u.y)}*sqrt({self.d})"
