"""Brute-force oracle: independent verification and exhaustive box search.

verify_quadruple re-checks a candidate quadruple using only ring arithmetic,
so it never shares logic with the construction engine.  brute_force_search
builds the full pair graph over a coordinate box (edge iff the pairwise
product plus n is a ring square) and enumerates 4-cliques exhaustively.

The all-pairs edge scan is O(box^2); it runs as a compiled numba kernel with
a square-residue prefilter, then every emitted clique is re-verified with
exact big-integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional, Sequence

import numpy as np
from numba import njit, prange

from .builder import PAIR_INDEX, QuadrupleCertificate
from .ring import RingContext, RingElement, order_key


@dataclass(frozen=True)
class VerifyOutcome:
    certificate: Optional[QuadrupleCertificate]
    failing_pair: Optional[tuple[int, int]]  # 1-based element indices
    reason: Optional[str]

    @property
    def ok(self) -> bool:
        return self.certificate is not None


def verify_quadruple(
    elements: Sequence[RingElement], n: RingElement, ctx: RingContext
) -> VerifyOutcome:
    """Ground-truth check: non-zero, distinct, all six products witness squares."""
    els = tuple(elements)
    if len(els) != 4:
        return VerifyOutcome(None, None, "need exactly four elements")
    for idx, e in enumerate(els, start=1):
        if not e:
            return VerifyOutcome(None, None, f"element {idx} is zero")
    if len(set(els)) != 4:
        return VerifyOutcome(None, None, "elements are not distinct")
    roots = []
    for i, j in PAIR_INDEX:
        w = ctx.is_square(ctx.mul(els[i], els[j]) + n)
        if w is None:
            return VerifyOutcome(
                None, (i + 1, j + 1), f"pair ({i+1},{j+1}) product plus n is not a square"
            )
        roots.append(w)
    cert = QuadrupleCertificate(ctx.d, n, els, tuple(roots), "verified", {})
    return VerifyOutcome(cert, None, None)


# ---------------------------------------------------------------------------
# square tables and the compiled pair scan
# ---------------------------------------------------------------------------


def _square_codes(d: int, nx: int, ny: int, xmax: int, ymax: int) -> np.ndarray:
    """Sorted encodings of all ring squares (p^2+d q^2, 2pq) within the box range."""
    codes = []
    stride = 2 * ymax + 1
    pmax = isqrt(xmax)
    for p in range(pmax + 1):
        rem = xmax - p * p
        qmax = isqrt(rem // d)
        if p:
            qmax = min(qmax, ymax // (2 * p))
            qs = range(-qmax, qmax + 1)
        else:
            qs = range(qmax + 1)
        for q in qs:
            codes.append((p * p + d * q * q) * stride + (2 * p * q + ymax))
    return np.unique(np.asarray(codes, dtype=np.int64))


def _residue_mask(d: int, mod: int) -> np.ndarray:
    mask = np.zeros(mod * mod, dtype=np.uint8)
    for p in range(mod):
        for q in range(mod):
            mask[((p * p + d * q * q) % mod) * mod + (2 * p * q) % mod] = 1
    return mask


@njit(cache=True, parallel=True)
def _edge_counts(xs, ys, d, nx, ny, ymax, mask64, mask63, squares, stride):
    v = xs.shape[0]
    counts = np.zeros(v, dtype=np.int64)
    nsq = squares.shape[0]
    for i in prange(v):
        xi = xs[i]
        yi = ys[i]
        dyi = d * yi
        c = 0
        for j in range(i + 1, v):
            zx = xi * xs[j] + dyi * ys[j] + nx
            if zx < 0:
                continue
            zy = xi * ys[j] + yi * xs[j] + ny
            if zy > ymax or zy < -ymax:
                continue
            if not mask64[(zx & 63) * 64 + (zy & 63)]:
                continue
            if not mask63[(zx % 63) * 63 + (zy % 63)]:
                continue
            code = zx * stride + zy + ymax
            lo = 0
            hi = nsq
            while lo < hi:
                mid = (lo + hi) >> 1
                if squares[mid] < code:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < nsq and squares[lo] == code:
                c += 1
        counts[i] = c
    return counts


@njit(cache=True, parallel=True)
def _edge_fill(xs, ys, d, nx, ny, ymax, mask64, mask63, squares, stride, offsets, dst):
    v = xs.shape[0]
    nsq = squares.shape[0]
    for i in prange(v):
        xi = xs[i]
        yi = ys[i]
        dyi = d * yi
        pos = offsets[i]
        for j in range(i + 1, v):
            zx = xi * xs[j] + dyi * ys[j] + nx
            if zx < 0:
                continue
            zy = xi * ys[j] + yi * xs[j] + ny
            if zy > ymax or zy < -ymax:
                continue
            if not mask64[(zx & 63) * 64 + (zy & 63)]:
                continue
            if not mask63[(zx % 63) * 63 + (zy % 63)]:
                continue
            code = zx * stride + zy + ymax
            lo = 0
            hi = nsq
            while lo < hi:
                mid = (lo + hi) >> 1
                if squares[mid] < code:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < nsq and squares[lo] == code:
                dst[pos] = j
                pos += 1


class PairGraph:
    """Vertices: non-zero elements with |x|, |y| <= bound, in canonical order.

    Edge (u, v) present iff u*v + n is a square; labels are the canonical
    roots, computed exactly on demand.
    """

    def __init__(self, ctx: RingContext, n: RingElement, bound: int):
        if bound < 1:
            raise ValueError("bound must be >= 1")
        self.ctx = ctx
        self.n = n
        self.bound = bound
        self.vertices: list[RingElement] = sorted(
            (
                RingElement(x, y)
                for x in range(-bound, bound + 1)
                for y in range(-bound, bound + 1)
                if x or y
            ),
            key=order_key,
        )
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.adjacency: dict[int, np.ndarray] = {}
        self._build()

    def _build(self) -> None:
        d, n, b = self.ctx.d, self.n, self.bound
        xs = np.asarray([v.x for v in self.vertices], dtype=np.int64)
        ys = np.asarray([v.y for v in self.vertices], dtype=np.int64)
        xmax = b * b * (1 + d) + abs(n.x)
        ymax = 2 * b * b + abs(n.y)
        squares = _square_codes(d, n.x, n.y, xmax, ymax)
        stride = 2 * ymax + 1
        mask64 = _residue_mask(d, 64)
        mask63 = _residue_mask(d, 63)
        counts = _edge_counts(xs, ys, d, n.x, n.y, ymax, mask64, mask63, squares, stride)
        offsets = np.zeros(len(xs) + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        dst = np.empty(int(offsets[-1]), dtype=np.int64)
        _edge_fill(
            xs, ys, d, n.x, n.y, ymax, mask64, mask63, squares, stride, offsets[:-1], dst
        )
        # forward adjacency (j > i) from the scan, then symmetrize
        fwd = {
            i: dst[offsets[i]: offsets[i + 1]]
            for i in range(len(xs))
            if offsets[i + 1] > offsets[i]
        }
        back: dict[int, list[int]] = {}
        for i, js in fwd.items():
            for j in js:
                back.setdefault(int(j), []).append(i)
        adjacency: dict[int, np.ndarray] = {}
        keys = set(fwd) | set(back)
        for i in keys:
            parts = []
            if i in back:
                parts.append(np.asarray(sorted(back[i]), dtype=np.int64))
            if i in fwd:
                parts.append(fwd[i])
            adjacency[i] = np.concatenate(parts) if len(parts) > 1 else parts[0]
        self.adjacency = adjacency

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return i in self.adjacency and bool(np.isin(j, self.adjacency[i]))

    def edge_label(self, i: int, j: int) -> RingElement:
        """Canonical root of vertices[i]*vertices[j] + n (edge must exist)."""
        u, v = self.vertices[i], self.vertices[j]
        root = self.ctx.is_square(self.ctx.mul(u, v) + self.n)
        if root is None:
            raise KeyError(f"({i}, {j}) is not an edge")
        return root

    def remove_edge(self, i: int, j: int) -> None:
        for a, b in ((i, j), (j, i)):
            if a in self.adjacency:
                arr = self.adjacency[a]
                self.adjacency[a] = arr[arr != b]

    def four_cliques(self, limit: Optional[int] = None) -> Iterator[tuple[int, int, int, int]]:
        """All 4-cliques in lexicographic vertex order."""
        adj = self.adjacency
        emitted = 0
        for i in sorted(adj):
            ni = adj[i]
            ni = ni[ni > i]
            for j in ni:
                j = int(j)
                nij = np.intersect1d(ni, adj[j], assume_unique=True)
                nij = nij[nij > j]
                for k in nij:
                    k = int(k)
                    nijk = np.intersect1d(nij, adj[k], assume_unique=True)
                    for l in nijk[nijk > k]:
                        yield (i, j, k, int(l))
                        emitted += 1
                        if limit is not None and emitted >= limit:
                            return


def build_pair_graph(ctx: RingContext, n: RingElement, bound: int) -> PairGraph:
    return PairGraph(ctx, n, bound)


def brute_force_search(
    ctx: RingContext,
    n: RingElement,
    bound: int,
    limit: Optional[int] = None,
) -> list[QuadrupleCertificate]:
    """Exhaustive D(n)-quadruple search over the box |x|, |y| <= bound.

    Emits up to `limit` certificates in deterministic clique order; every
    result is re-verified with exact arithmetic before being returned.
    """
    graph = PairGraph(ctx, n, bound)
    out: list[QuadrupleCertificate] = []
    for quad in graph.four_cliques(limit):
        els = tuple(graph.vertices[i] for i in quad)
        outcome = verify_quadruple(els, n, ctx)
        if not outcome.ok:
            raise AssertionError(
                f"pair scan produced a non-verifying clique {els}: {outcome.reason}"
            )
        cert = QuadrupleCertificate(
            ctx.d, n, els, outcome.certificate.witnesses, "bruteforce", {"bound": bound}
        )
        out.append(cert)
        if limit is not None and len(out) >= limit:
            break
    return out
