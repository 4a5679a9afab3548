"""Finite automata over Ostrowski digit alphabets.

Machines read one digit per step and classify integers by their digit
expansions. Builders produce least-significant-digit-first automata for the
zero set and the record set of a BR walk; both fold digit validity into the
machine, so an input that is not a well-formed expansion lands in the
explicit dead state and is reported as `invalid` rather than `reject`.

State layout is deterministic (breadth-first discovery order), which keeps
DOT exports byte-stable for golden tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .numeration import OstrowskiWord, encode
from .qarith import ContinuedFraction, is_br
from .walk import NotBrNumber

ACCEPT = "accept"
REJECT = "reject"
INVALID = "invalid"

LSD = "lsd"
MSD = "msd"


class AlphabetMismatch(ValueError):
    """Input digit outside the machine's alphabet."""


class UnknownFixture(KeyError):
    pass


@dataclass(frozen=True)
class DigitDfa:
    """Total deterministic automaton over digits 0..alphabet-1."""

    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    dead: int
    alphabet: int
    direction: str = LSD
    start: int = 0

    def __post_init__(self):
        n = len(self.transitions)
        if self.direction not in (LSD, MSD):
            raise ValueError(f"direction must be lsd or msd, got {self.direction!r}")
        if not 0 <= self.start < n or not 0 <= self.dead < n:
            raise ValueError("start/dead state out of range")
        for state, row in enumerate(self.transitions):
            if len(row) != self.alphabet:
                raise ValueError(f"state {state} is not total over the alphabet")
            if any(not 0 <= t < n for t in row):
                raise ValueError(f"state {state} has a target out of range")
        if any(t != self.dead for t in self.transitions[self.dead]):
            raise ValueError("dead state must absorb every digit")
        if self.dead in self.accepting:
            raise ValueError("dead state cannot accept")

    @property
    def n_states(self) -> int:
        return len(self.transitions)


def run(dfa: DigitDfa, word: OstrowskiWord | Sequence[int], direction: str | None = None) -> str:
    """Feed a digit word to the machine; verdict accept / reject / invalid.

    `direction` names the order of the digits handed in (OstrowskiWord is
    lsd-first internally; raw sequences default to msd, the print order).
    Words in the opposite order of the machine are reversed first.
    """
    if isinstance(word, OstrowskiWord):
        digits: Sequence[int] = word.digits
        direction = LSD
    else:
        digits = list(word)
        direction = direction or MSD
    if direction != dfa.direction:
        digits = list(reversed(digits))
    state = dfa.start
    table = dfa.transitions
    for g in digits:
        if not 0 <= g < dfa.alphabet:
            raise AlphabetMismatch(f"digit {g} outside alphabet 0..{dfa.alphabet - 1}")
        state = table[state][g]
    if state == dfa.dead:
        return INVALID
    return ACCEPT if state in dfa.accepting else REJECT


# --- builders -------------------------------------------------------------


def _digit_stream(cf: ContinuedFraction) -> tuple[list[int], int]:
    """Quotient caps a_{i+1} per digit position, unrolled so that looping the
    tail keeps both the cap and the position parity consistent.

    Position 0 is special (its digit is capped strictly below a_1), so the
    loop target is at least 1. The loop length is doubled for odd periods to
    keep position parity well defined across the wrap.

    Returns (caps for positions 0..P-1, loop target position).
    """
    unroll = max(len(cf.preperiod) - 1, 1)
    loop_len = len(cf.period)
    if loop_len % 2:
        loop_len *= 2
    caps = [cf.quotient(p + 1) for p in range(unroll + loop_len)]
    return caps, unroll


class _Builder:
    """Shared BFS construction over (position, prev-digit-zero, tracker)."""

    DEAD = "dead"

    def __init__(self, cf: ContinuedFraction):
        self.cf = cf
        self.caps, self.loop_to = _digit_stream(cf)
        self.alphabet = max(self.caps) + 1

    def next_pos(self, pos: int) -> int:
        return pos + 1 if pos + 1 < len(self.caps) else self.loop_to

    def valid_step(self, pos: int, prev_zero: bool, g: int) -> bool:
        cap = self.caps[pos]
        if g > cap:
            return False
        if g == cap and (pos == 0 or not prev_zero):
            return False
        return True

    def build(self, start_track, track_step, track_accepts, direction=LSD) -> DigitDfa:
        start = (0, True, start_track)
        ids: dict = {start: 0}
        order = [start]
        rows: list[list] = []
        queue = deque([start])
        while queue:
            key = queue.popleft()
            pos, pz, track = key
            row = []
            for g in range(self.alphabet):
                if not self.valid_step(pos, pz, g):
                    row.append(self.DEAD)
                    continue
                nxt = (self.next_pos(pos), g == 0, track_step(pos, track, g))
                if nxt not in ids:
                    ids[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                row.append(nxt)
            rows.append(row)
        dead = len(order)
        table = tuple(
            tuple(dead if t is self.DEAD else ids[t] for t in row) for row in rows
        ) + ((dead,) * self.alphabet,)
        accepting = frozenset(i for i, key in enumerate(order) if track_accepts(key[2]))
        return DigitDfa(
            transitions=table,
            accepting=accepting,
            dead=dead,
            alphabet=self.alphabet,
            direction=direction,
        )


def build_zero_dfa(cf: ContinuedFraction) -> DigitDfa:
    """lsd machine for the zero set of the doubled walk over a BR base.

    Accepts exactly the well-formed expansions whose even-position digits are
    all zero; the walk value at such an index is zero and conversely.
    """
    if not is_br(cf):
        raise NotBrNumber("zero automaton requires a BR base")
    builder = _Builder(cf)

    def step(pos: int, in_set: bool, g: int) -> bool:
        return in_set and (g == 0 or pos % 2 == 1)

    return builder.build(True, step, lambda in_set: in_set)


# record tracker values
_EXACT, _SLACK, _OUT = 0, 1, 2


def build_record_dfa(cf: ContinuedFraction) -> DigitDfa:
    """lsd machine for the record set of the doubled walk over a BR base.

    A record index has zero digits at odd positions and digit a_{i+1}/2 at
    even positions, except that the most significant digit (even position)
    may drop to any smaller positive value. Reading lsd-first this means:
    stay exact while even digits equal half the cap, then one strict drop
    (the leading digit) forces every later digit to zero.
    """
    if not is_br(cf):
        raise NotBrNumber("record automaton requires a BR base")
    builder = _Builder(cf)
    caps = builder.caps

    def step(pos: int, track: int, g: int) -> int:
        if track == _OUT:
            return _OUT
        if track == _SLACK:
            return _SLACK if g == 0 else _OUT
        if pos % 2 == 1:
            return _EXACT if g == 0 else _OUT
        half = caps[pos] // 2
        if g == half:
            return _EXACT
        return _SLACK if g < half else _OUT

    return builder.build(_EXACT, step, lambda track: track != _OUT)


# --- hand-written fixtures -------------------------------------------------


def _fixture(rows, accepting, alphabet=3) -> DigitDfa:
    dead = len(rows)
    table = tuple(tuple(row) for row in rows) + ((dead,) * alphabet,)
    return DigitDfa(
        transitions=table,
        accepting=frozenset(accepting),
        dead=dead,
        alphabet=alphabet,
        direction=MSD,
    )


def hardcoded_fixture(name: str) -> DigitDfa:
    """Small msd machines pinning the printed digit languages.

    records_sqrt2   : 1*            (all-ones words, plus the empty word)
    records_2sqrt2  : (10)*1        (plus the empty word)
    zeros_2sqrt2    : (10|20)(00|10|20)*  (plus the empty word)

    Unlike the built machines these do not track expansion validity; any
    word outside the language is simply rejected.
    """
    if name == "records_sqrt2":
        # 0: seen only 1s (accept); 1: sink
        return _fixture([(1, 0, 1), (1, 1, 1)], {0})
    if name == "records_2sqrt2":
        # 0: start/empty, 1: just read 1 (accept), 2: just read 0, 3: sink
        return _fixture([(3, 1, 3), (2, 3, 3), (3, 1, 3), (3, 3, 3)], {0, 1})
    if name == "zeros_2sqrt2":
        # 0: start/empty, 1: mid-pair, 2: pair complete (accept), 3: sink
        return _fixture([(3, 1, 1), (2, 3, 3), (1, 1, 1), (3, 3, 3)], {0, 2})
    raise UnknownFixture(name)


# --- oracle equivalence -----------------------------------------------------


class Mismatch(NamedTuple):
    n: int
    expected: bool
    verdict: str


def equiv_oracle(
    dfa: DigitDfa,
    predicate: Callable[[int], bool],
    base: ContinuedFraction,
    bound: int,
) -> Mismatch | None:
    """First n <= bound where the machine disagrees with the predicate.

    Every n is encoded canonically; a canonical word must never be ruled
    invalid, so an `invalid` verdict counts as a mismatch too.
    """
    for n in range(bound + 1):
        verdict = run(dfa, encode(n, base))
        expected = bool(predicate(n))
        if (verdict == ACCEPT) != expected or verdict == INVALID:
            return Mismatch(n=n, expected=expected, verdict=verdict)
    return None


# --- rendering ---------------------------------------------------------------


def to_dot(dfa: DigitDfa, include_dead: bool = False) -> str:
    """Graphviz source; accepting states double-circled, dead state omitted
    unless asked for. Output is stable for a fixed machine."""
    lines = [
        "digraph dfa {",
        "  rankdir=LR;",
        f"  // {dfa.direction} input, alphabet 0..{dfa.alphabet - 1}",
        '  start [shape=point, label=""];',
        f"  start -> s{dfa.start};",
    ]
    for state in range(dfa.n_states):
        if state == dfa.dead and not include_dead:
            continue
        shape = "doublecircle" if state in dfa.accepting else "circle"
        lines.append(f"  s{state} [shape={shape}, label=\"{state}\"];")
    for state in range(dfa.n_states):
        if state == dfa.dead and not include_dead:
            continue
        grouped: dict[int, list[int]] = {}
        for g, target in enumerate(dfa.transitions[state]):
            grouped.setdefault(target, []).append(g)
        for target in sorted(grouped):
            if target == dfa.dead and not include_dead:
                continue
            label = ",".join(map(str, grouped[target]))
            lines.append(f"  s{state} -> s{target} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
