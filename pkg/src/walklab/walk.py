"""Deterministic random walk engines for quadratic angles.

The walk is S_n = sum_{j<=n} (-1)^floor(j*theta). Two engines compute it:

* a brute engine that evaluates every step, using a certified fixed-point
  accumulator with an exact integer-square-root fallback whenever the
  approximation could straddle a parity boundary, and
* a rules engine that recurses on three identities tied to the convergent
  denominators of the rotation theta/2, valid when that rotation is a BR
  number (all odd-indexed partial quotients even).

The brute engine is the oracle: everything the rules engine, the digit
automata, and the recurrence generators claim is cross-checked against it.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qarith import ContinuedFraction, QuadraticSurd, cf_expand, floor_scaled, is_br


class NotBrNumber(ValueError):
    """The rules engine needs a BR rotation; this one is not."""


class CheckFailed(AssertionError):
    """A verified identity failed; carries the first counterexample."""


_SCALE = 62  # fixed-point bits for the certified step accumulator
_CHUNK = 1 << 21


@dataclass(frozen=True)
class WalkSpec:
    """A walk angle theta together with its halved rotation and its CF."""

    theta: QuadraticSurd
    rotation: QuadraticSurd
    cf: ContinuedFraction
    br: bool


def walk_spec(theta: QuadraticSurd) -> WalkSpec:
    """Derive the rotation {theta/2} and its BR status for a positive angle."""
    if theta.sign() <= 0:
        raise ValueError("walk angle must be positive")
    rotation = (theta / 2).fractional()
    cf = cf_expand(rotation)
    return WalkSpec(theta=theta, rotation=rotation, cf=cf, br=is_br(cf))


@dataclass(frozen=True)
class WalkTrace:
    n: int
    sums: np.ndarray  # int64, S_1..S_n
    signs: np.ndarray  # int8, the +-1 steps


@dataclass(frozen=True)
class AbSequences:
    """Indices of forward (a) and backward (b) steps; they partition 1..n."""

    a: np.ndarray
    b: np.ndarray


# --- step generation ----------------------------------------------------


def _sign_chunks(theta: QuadraticSurd, n: int, scale: int = _SCALE, chunk: int = _CHUNK):
    """Yield (start_j, int8 signs) covering j = 1..n.

    Parity of floor(j*theta) is read from bit `scale` of j*T mod 2^(scale+1)
    where T = floor(theta * 2^scale). The accumulated error is below j, so
    any j whose low bits come within j of wrapping is recomputed exactly.
    """
    if n >= 1 << 30:
        raise ValueError("walk length beyond engine range")
    t_mod = floor_scaled(1 << scale, theta) % (1 << (scale + 1))
    t_lo = np.uint64(t_mod & 0x7FFFFFFF)
    t_hi = np.uint64(t_mod >> 31)
    mask_word = np.uint64((1 << (scale + 1)) - 1)
    mask_frac = np.uint64((1 << scale) - 1)
    mask32 = np.uint64(0xFFFFFFFF)
    top = np.uint64(1 << scale)
    for start in range(1, n + 1, chunk):
        j = np.arange(start, min(start + chunk, n + 1), dtype=np.uint64)
        y = (j * t_lo + ((j * t_hi & mask32) << np.uint64(31))) & mask_word
        parity = (y >> np.uint64(scale)).astype(np.int8)
        frac = y & mask_frac
        for i in np.nonzero(frac >= top - j)[0]:
            parity[i] = floor_scaled(int(j[i]), theta) & 1
        yield start, 1 - 2 * parity


def _signs(theta: QuadraticSurd, n: int, scale: int = _SCALE) -> np.ndarray:
    out = np.empty(n, dtype=np.int8)
    for start, block in _sign_chunks(theta, n, scale=scale):
        out[start - 1 : start - 1 + len(block)] = block
    return out


def _signs_exact(theta: QuadraticSurd, n: int) -> np.ndarray:
    """Reference path: one exact integer square root per step."""
    return np.fromiter(
        (1 - 2 * (floor_scaled(j, theta) & 1) for j in range(1, n + 1)),
        dtype=np.int8,
        count=n,
    )


def brute_walk(spec: WalkSpec, n: int, exact: bool = False) -> WalkTrace:
    """Partial sums S_1..S_n by direct evaluation of every step."""
    if n < 1:
        raise ValueError("walk length must be >= 1")
    signs = _signs_exact(spec.theta, n) if exact else _signs(spec.theta, n)
    return WalkTrace(n=n, sums=np.cumsum(signs, dtype=np.int64), signs=signs)


def half_indicator(xi: QuadraticSurd, j: int) -> int:
    """1 if the fractional part of j*xi lies in [0, 1/2), else 0 (exact)."""
    if j == 0:
        return 1
    return 1 if floor_scaled(2 * j, xi) == 2 * floor_scaled(j, xi) else 0


# --- rules engine -------------------------------------------------------


class RuleEngine:
    """Walk values from the convergent-denominator recursion (BR only).

    Rule A pins S at a denominator q to its parity; Rules B and C fold any
    other index into strictly smaller ones, so a single value costs a number
    of steps proportional to the CF index of the largest q below it.
    """

    def __init__(self, spec: WalkSpec):
        if not spec.br:
            raise NotBrNumber(f"rotation {spec.rotation} is not a BR number")
        self.spec = spec
        self._dens = [spec.cf.denominator(0)]
        self._memo: dict[int, int] = {}

    def _dens_through(self, n: int) -> list[int]:
        while self._dens[-1] <= n:
            self._dens.append(self.spec.cf.denominator(len(self._dens)))
        return self._dens

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be >= 0")
        if n == 0:
            return 0
        memo = self._memo
        got = memo.get(n)
        if got is not None:
            return got
        dens = self._dens_through(n)
        i = bisect_right(dens, n) - 1
        if dens[i] == n:
            return n & 1  # Rule A
        q, qp = dens[i + 1], dens[i]
        if 2 * n < q:
            val = (qp & 1) + self.value(n - qp)  # Rule C
        else:
            val = (qp & 1) + self.value(q - n - 1)  # Rule B
        memo[n] = val
        return val


def fast_s(spec: WalkSpec, n: int) -> int:
    """Single walk value via the rules engine; use RuleEngine for sweeps."""
    return RuleEngine(spec).value(n)


# --- derived sequences ----------------------------------------------------


def _trace_for(x: WalkTrace | WalkSpec, n: int) -> WalkTrace:
    if isinstance(x, WalkTrace):
        if x.n < n:
            raise ValueError(f"trace has {x.n} steps, {n} requested")
        return x
    return brute_walk(x, n)


def records(x: WalkTrace | WalkSpec, n: int) -> list[int]:
    """Indices whose value no earlier partial sum (nor S_0 = 0) attained.

    Index 0 counts as the first record. Steps are +-1, so the set of values
    seen so far is an integer interval and a record is exactly a new running
    maximum or minimum.
    """
    if n == 0:
        return [0]
    t = _trace_for(x, n)
    s = np.concatenate([np.zeros(1, dtype=np.int64), t.sums[:n]])
    cmax = np.maximum.accumulate(s)
    cmin = np.minimum.accumulate(s)
    new = (s[1:] > cmax[:-1]) | (s[1:] < cmin[:-1])
    return [0] + (np.nonzero(new)[0] + 1).tolist()


def zeros(x: WalkTrace | WalkSpec, n: int) -> list[int]:
    """Ascending indices m <= n with S_m = 0, starting with 0."""
    if n == 0:
        return [0]
    t = _trace_for(x, n)
    return [0] + (np.nonzero(t.sums[:n] == 0)[0] + 1).tolist()


def ab_sequences(x: WalkTrace | WalkSpec, n: int) -> AbSequences:
    t = _trace_for(x, n)
    signs = t.signs[:n]
    return AbSequences(
        a=np.nonzero(signs > 0)[0] + 1,
        b=np.nonzero(signs < 0)[0] + 1,
    )


def ab_terms(spec: WalkSpec, count: int) -> AbSequences:
    """First `count` terms of both a and b (walks as far as needed).

    Unlike ab_sequences, which partitions a fixed number of steps, this
    extends the walk until both sequences have `count` entries.
    """
    steps = 2 * count + 64
    while True:
        seqs = ab_sequences(spec, steps)
        if len(seqs.a) >= count and len(seqs.b) >= count:
            return AbSequences(a=seqs.a[:count], b=seqs.b[:count])
        steps *= 2


def diff_hits(spec: WalkSpec, k: int, bound: int) -> list[int]:
    """All n <= bound with b(n) - a(n) = k, ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    seqs = ab_terms(spec, bound)
    return (np.nonzero(seqs.b - seqs.a == k)[0] + 1).tolist()


# --- discrepancy ----------------------------------------------------------


def _indicator_exact(j: int, xi: QuadraticSurd, h: int, k: int) -> int:
    # {j xi} < h/k  <=>  floor(k j xi) - k floor(j xi) < h
    return 1 if floor_scaled(k * j, xi) - k * floor_scaled(j, xi) < h else 0


def discrepancy(xi: QuadraticSurd, endpoint: Fraction, n: int, scale: int = _SCALE) -> np.ndarray:
    """k*D_m for m = 1..n, where D_m counts visits of {j*xi} to [0, h/k).

    D_m = #{j <= m : {j xi} < h/k} - (h/k) m; the returned values are the
    exact integers k*D_m.
    """
    endpoint = Fraction(endpoint)
    h, k = endpoint.numerator, endpoint.denominator
    if not 0 < endpoint < 1:
        raise ValueError("interval endpoint must be in (0,1)")
    if xi.sign() <= 0 or xi >= 1:
        raise ValueError("rotation must lie in (0,1)")
    x_mod = floor_scaled(1 << scale, xi)
    x_lo = np.uint64(x_mod & 0x7FFFFFFF)
    x_hi = np.uint64(x_mod >> 31)
    mask_frac = np.uint64((1 << scale) - 1)
    mask32 = np.uint64(0xFFFFFFFF)
    top = 1 << scale
    cut = np.uint64((h << scale) // k)
    ind = np.empty(n, dtype=np.int8)
    for start in range(1, n + 1, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, n + 1), dtype=np.uint64)
        r = (j * x_lo + ((j * x_hi & mask32) << np.uint64(31))) & mask_frac
        hi_end = r + j  # true fractional part scaled lies in [r, r + j)
        sure_in = hi_end <= cut
        sure_out = (r > cut) & (hi_end < np.uint64(top))
        block = sure_in.astype(np.int8)
        for i in np.nonzero(~(sure_in | sure_out))[0]:
            block[i] = _indicator_exact(int(j[i]), xi, h, k)
        ind[start - 1 : start - 1 + len(block)] = block
    counts = np.cumsum(ind, dtype=np.int64)
    return k * counts - h * np.arange(1, n + 1, dtype=np.int64)


# --- identity checks -------------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    even_denominators: list[int]
    identities_checked: int


def lemma_checks(spec: WalkSpec, depth: int) -> LemmaReport:
    """Verify the reflection, shift and surplus identities of the walk.

    For each of the first `depth` even denominators q of the rotation:
      * S_{q/2+k} = S_{q/2} - S_k for 0 <= k <= q/2,
      * a(q/2+j) = q + a(j) and b(q/2+j) = q + b(j) for 1 <= j <= q/2,
      * b((q+2m)/4) - a((q+2m)/4) = a(m) for the m-th even denominator, m > 1.

    Raises CheckFailed at the first counterexample.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    evens = []
    for i in range(8 * depth + 64):
        if len(evens) == depth:
            break
        q = spec.cf.denominator(i)
        if q % 2 == 0:
            evens.append(q)
    if len(evens) < depth:
        raise ValueError(
            f"only {len(evens)} even denominators found; rotation {spec.rotation} "
            "does not have the even/odd alternation these identities need"
        )

    q_max = evens[-1]
    trace = brute_walk(spec, q_max + 1)
    s = np.concatenate([np.zeros(1, dtype=np.int64), trace.sums])
    seqs = ab_terms(spec, q_max)
    a, b = seqs.a, seqs.b
    checked = 0

    for q in evens:
        half = q // 2
        lhs = s[half : q + 1]
        rhs = s[half] - s[: half + 1]
        if not np.array_equal(lhs, rhs):
            k = int(np.nonzero(lhs != rhs)[0][0])
            raise CheckFailed(
                f"S_{{q/2+k}} = S_{{q/2}} - S_k fails at q={q}, k={k}: "
                f"{int(lhs[k])} != {int(rhs[k])}"
            )
        checked += half + 1
        for name, seq in (("a", a), ("b", b)):
            lhs = seq[half : q]
            rhs = q + seq[:half]
            if not np.array_equal(lhs, rhs):
                jj = int(np.nonzero(lhs != rhs)[0][0]) + 1
                raise CheckFailed(
                    f"{name}(q/2+j) = q + {name}(j) fails at q={q}, j={jj}"
                )
            checked += half

    for m in range(2, depth + 1):
        q = evens[m - 1]
        if (q + 2 * m) % 4:
            raise CheckFailed(f"(q+2m)/4 not an integer for m={m}, q={q}")
        idx = (q + 2 * m) // 4
        got = int(b[idx - 1] - a[idx - 1])
        want = int(a[m - 1])
        if got != want:
            raise CheckFailed(
                f"b({idx}) - a({idx}) = {got}, expected a({m}) = {want}"
            )
        checked += 1

    return LemmaReport(even_denominators=evens, identities_checked=checked)
