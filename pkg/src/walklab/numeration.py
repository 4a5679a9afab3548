"""Ostrowski numeration over continued-fraction bases.

Every integer N >= 0 has a unique expansion N = sum b_i * q_i over the
convergent denominators q_i of an irrational base, subject to the digit
conditions

    (a) 0 <= b_0 < a_1,
    (b) 0 <= b_i <= a_{i+1} for i >= 1,
    (c) b_{i-1} = 0 whenever b_i = a_{i+1}.

Digits are stored least-significant first; text I/O defaults to most
significant first, which is how digit words are usually printed.
Pell numeration is the base sqrt(2)-1 special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .qarith import ContinuedFraction


class InvalidDigits(ValueError):
    """Digit word violates the Ostrowski digit conditions."""


class Validation(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(digits: Sequence[int], base: ContinuedFraction) -> Validation:
    """Check digit conditions (a)-(c) on an lsd-first raw digit list.

    Returns a verdict carrying the first violation, never raises.
    """
    for i, b in enumerate(digits):
        if b < 0:
            return Validation(False, f"digit b_{i} = {b} is negative")
        cap = base.quotient(i + 1)
        if i == 0:
            if b >= cap:
                return Validation(False, f"b_0 = {b} not below a_1 = {cap}")
        elif b > cap:
            return Validation(False, f"b_{i} = {b} exceeds a_{i + 1} = {cap}")
        elif b == cap and digits[i - 1] != 0:
            return Validation(
                False, f"b_{i} = a_{i + 1} = {cap} but b_{i - 1} = {digits[i - 1]} != 0"
            )
    return Validation(True)


@dataclass(frozen=True)
class OstrowskiWord:
    """Canonical digit word (lsd-first, no most-significant zero)."""

    digits: tuple[int, ...]
    base: ContinuedFraction

    def __post_init__(self):
        verdict = validate(self.digits, self.base)
        if not verdict:
            raise InvalidDigits(verdict.reason)
        if self.digits and self.digits[-1] == 0:
            raise InvalidDigits("most-significant digit is zero (non-canonical)")

    def __len__(self) -> int:
        return len(self.digits)

    def msd(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))

    def __str__(self) -> str:
        return format_digits(self.digits, msd=True, alphabet=alphabet_size(self.base))


def encode(n: int, base: ContinuedFraction) -> OstrowskiWord:
    """Greedy most-significant-first expansion of n >= 0."""
    if n < 0:
        raise ValueError("cannot encode a negative integer")
    if n == 0:
        return OstrowskiWord((), base)
    dens = base.denominators_up_to(n)
    digits = [0] * len(dens)
    rem = n
    for i in range(len(dens) - 1, -1, -1):
        b = rem // dens[i]
        if i > 0:
            b = min(b, base.quotient(i + 1))
        digits[i] = b
        rem -= b * dens[i]
    assert rem == 0, "greedy expansion left a remainder"
    return OstrowskiWord(tuple(digits), base)


def decode(word: OstrowskiWord | Sequence[int], base: ContinuedFraction | None = None) -> int:
    """Value sum b_i * q_i of a digit word; validates raw digit lists."""
    if isinstance(word, OstrowskiWord):
        digits = word.digits
        base = word.base
    else:
        if base is None:
            raise TypeError("raw digit lists need an explicit base")
        verdict = validate(word, base)
        if not verdict:
            raise InvalidDigits(verdict.reason)
        digits = tuple(word)
    total = 0
    for i, b in enumerate(digits):
        if b:
            total += b * base.denominator(i)
    return total


def pell_number(n: int) -> int:
    """P_0 = 0, P_1 = 1, P_{n+1} = 2 P_n + P_{n-1}.

    Indexing note: P_n = q_{n-1} for the convergent denominators of
    sqrt(2)-1, so statements quoted against P-indexing shift by one.
    """
    a, b = 0, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


# --- digit word text format ---------------------------------------------


def alphabet_size(base: ContinuedFraction) -> int:
    """Largest digit + 1 over the base (a full period of quotient caps)."""
    horizon = len(base.preperiod) + 2 * len(base.period) + 1
    return max(base.quotient(i) for i in range(1, horizon + 1)) + 1


def format_digits(digits: Sequence[int], msd: bool = True, alphabet: int | None = None) -> str:
    """Digits concatenated for alphabets within 0..9, comma-separated beyond.

    Without an explicit alphabet the choice is inferred from the digits
    themselves; pass the base's alphabet to keep single-digit wide words
    unambiguous.
    """
    seq = list(reversed(digits)) if msd else list(digits)
    wide = alphabet > 10 if alphabet is not None else any(b > 9 for b in seq)
    if wide:
        return ",".join(str(b) for b in seq)
    return "".join(str(b) for b in seq)


def parse_digits(text: str, msd: bool = True, alphabet: int | None = None) -> tuple[int, ...]:
    """Inverse of format_digits; returns lsd-first digits."""
    text = text.strip()
    if not text:
        return ()
    wide = alphabet > 10 if alphabet is not None else "," in text
    if wide:
        seq = [int(p) for p in text.split(",")]
    else:
        seq = [int(ch) for ch in text]
    if msd:
        seq.reverse()
    return tuple(seq)
