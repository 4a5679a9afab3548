import re

import pytest

from walklab.automata import (
    ACCEPT,
    INVALID,
    REJECT,
    AlphabetMismatch,
    DigitDfa,
    UnknownFixture,
    build_record_dfa,
    build_zero_dfa,
    equiv_oracle,
    hardcoded_fixture,
    run,
    to_dot,
)
from walklab.numeration import decode, encode, parse_digits
from walklab.qarith import cf_expand, parse_surd
from walklab.walk import NotBrNumber, records, walk_spec, zeros

PELL = cf_expand(parse_surd("sqrt2m1"))
HALF = cf_expand(parse_surd("sqrt2m1over2"))

SPEC_2SQRT2 = walk_spec(parse_surd("2sqrt2"))
SPEC_SQRT2M1 = walk_spec(parse_surd("sqrt2m1"))


@pytest.fixture(scope="module")
def zero_dfa():
    return build_zero_dfa(PELL)


@pytest.fixture(scope="module")
def record_dfa():
    return build_record_dfa(PELL)


def test_zero_dfa_examples(zero_dfa):
    assert run(zero_dfa, [1, 0]) == ACCEPT  # n = 2
    assert run(zero_dfa, [1]) == REJECT  # n = 1, S_1 = 1
    assert run(zero_dfa, []) == ACCEPT  # n = 0


def test_record_dfa_examples(record_dfa):
    assert run(record_dfa, [1, 0, 1, 0, 1]) == ACCEPT  # n = 35
    assert run(record_dfa, [1, 1]) == REJECT
    assert run(record_dfa, [2]) == INVALID  # not a valid expansion


def test_zero_dfa_language_prefix(zero_dfa):
    accepted = [n for n in range(100) if run(zero_dfa, encode(n, PELL)) == ACCEPT]
    assert accepted == [0, 2, 4, 12, 14, 16, 24, 26, 28, 70, 72, 74, 82, 84, 86, 94, 96, 98]


def test_record_dfa_first_values(record_dfa):
    accepted = [n for n in range(300) if run(record_dfa, encode(n, PELL)) == ACCEPT]
    assert accepted == [0, 1, 6, 35, 204]


def test_record_dfa_half_base_first_record():
    dfa = build_record_dfa(HALF)
    accepted = [n for n in range(50) if run(dfa, encode(n, HALF)) == ACCEPT]
    # a_1 = 4, so the single-digit records are 1 and 2 = a_1/2
    assert accepted[:3] == [0, 1, 2]


def test_zero_language_regular_expression(zero_dfa):
    language = re.compile(r"^((10|20)(00|10|20)*)?$")
    for n in range(3000):
        word = "".join(map(str, encode(n, PELL).msd()))
        verdict = run(zero_dfa, encode(n, PELL))
        assert (verdict == ACCEPT) == bool(language.match(word)), (n, word)


def test_equiv_oracle_success(zero_dfa, record_dfa):
    bound = 5000
    zs = set(zeros(SPEC_2SQRT2, bound))
    rs = set(records(SPEC_2SQRT2, bound))
    assert equiv_oracle(zero_dfa, lambda n: n in zs, PELL, bound) is None
    assert equiv_oracle(record_dfa, lambda n: n in rs, PELL, bound) is None


def test_equiv_oracle_half_base():
    bound = 4000
    zs = set(zeros(SPEC_SQRT2M1, bound))
    rs = set(records(SPEC_SQRT2M1, bound))
    assert equiv_oracle(build_zero_dfa(HALF), lambda n: n in zs, HALF, bound) is None
    assert equiv_oracle(build_record_dfa(HALF), lambda n: n in rs, HALF, bound) is None


def test_equiv_oracle_detects_corruption(zero_dfa):
    zs = set(zeros(SPEC_2SQRT2, 200))
    # swap the accepting set: every nonzero word flips verdict
    corrupted = DigitDfa(
        transitions=zero_dfa.transitions,
        accepting=frozenset(
            s for s in range(zero_dfa.n_states) if s not in zero_dfa.accepting
        )
        - {zero_dfa.dead},
        dead=zero_dfa.dead,
        alphabet=zero_dfa.alphabet,
        direction=zero_dfa.direction,
    )
    mismatch = equiv_oracle(corrupted, lambda n: n in zs, PELL, 200)
    assert mismatch is not None and mismatch.n == 0


def test_direction_duality(zero_dfa):
    for n in (0, 2, 5, 14, 69, 70, 86, 100):
        word = encode(n, PELL)
        msd_digits = list(word.msd())
        assert run(zero_dfa, msd_digits, direction="msd") == run(zero_dfa, word)
        assert run(zero_dfa, list(word.digits), direction="lsd") == run(zero_dfa, word)


def test_alphabet_mismatch(zero_dfa):
    with pytest.raises(AlphabetMismatch):
        run(zero_dfa, [3])


def test_builders_require_br():
    sqrt3half = cf_expand(parse_surd("sqrt3over2"))
    with pytest.raises(NotBrNumber):
        build_zero_dfa(sqrt3half)
    with pytest.raises(NotBrNumber):
        build_record_dfa(sqrt3half)


def test_totality_and_determinism(zero_dfa, record_dfa):
    for dfa in (zero_dfa, record_dfa):
        assert len(dfa.transitions) == dfa.n_states
        for row in dfa.transitions:
            assert len(row) == dfa.alphabet
            assert all(0 <= t < dfa.n_states for t in row)
        assert all(t == dfa.dead for t in dfa.transitions[dfa.dead])
        assert dfa.dead not in dfa.accepting


def test_dfa_invariant_enforcement():
    with pytest.raises(ValueError):
        DigitDfa(transitions=((0, 1), (1, 1)), accepting=frozenset({1}), dead=1,
                 alphabet=2)  # accepting dead state
    with pytest.raises(ValueError):
        DigitDfa(transitions=((0, 1), (0, 1)), accepting=frozenset(), dead=1,
                 alphabet=2)  # dead state does not absorb


# --- hand-written fixtures ---------------------------------------------------


def test_fixture_records_sqrt2():
    dfa = hardcoded_fixture("records_sqrt2")
    assert run(dfa, parse_digits("1"), direction="lsd") == ACCEPT
    for text, value in (("1", 1), ("11", 3), ("111", 8)):
        digits = [int(c) for c in text]
        assert run(dfa, digits) == ACCEPT
        assert decode(parse_digits(text), PELL) == value
    assert run(dfa, [1, 0, 1]) == REJECT


def test_fixture_records_sqrt2_matches_walk():
    spec = walk_spec(parse_surd("sqrt2"))
    rs = set(records(spec, 3000))
    dfa = hardcoded_fixture("records_sqrt2")
    assert equiv_oracle(dfa, lambda n: n in rs, PELL, 3000) is None


def test_fixture_records_2sqrt2():
    dfa = hardcoded_fixture("records_2sqrt2")
    assert run(dfa, [1, 1]) == REJECT
    assert run(dfa, [1, 0, 1]) == ACCEPT
    rs = set(records(SPEC_2SQRT2, 3000))
    assert equiv_oracle(dfa, lambda n: n in rs, PELL, 3000) is None


def test_fixture_zeros_2sqrt2():
    dfa = hardcoded_fixture("zeros_2sqrt2")
    assert run(dfa, [2, 0, 2, 0]) == ACCEPT
    assert decode(parse_digits("2020"), PELL) == 28
    zs = set(zeros(SPEC_2SQRT2, 3000))
    assert equiv_oracle(dfa, lambda n: n in zs, PELL, 3000) is None


def test_fixture_unknown_name():
    with pytest.raises(UnknownFixture):
        hardcoded_fixture("records_sqrt17")


# --- DOT export ----------------------------------------------------------------


DOT_NODE = re.compile(r'^\s*s(\d+) \[shape=(doublecircle|circle), label="\d+"\];$')
DOT_EDGE = re.compile(r'^\s*s(\d+) -> s(\d+) \[label="[\d,]+"\];$')


def parse_dot(text):
    """Minimal structural DOT reader: returns (nodes, edges)."""
    lines = text.strip().splitlines()
    assert lines[0] == "digraph dfa {" and lines[-1] == "}"
    nodes, edges = {}, []
    for line in lines[1:-1]:
        m = DOT_NODE.match(line)
        if m:
            nodes[int(m.group(1))] = m.group(2)
        m = DOT_EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
    return nodes, edges


def test_to_dot_structure(record_dfa):
    nodes, edges = parse_dot(to_dot(record_dfa))
    assert len(nodes) == record_dfa.n_states - 1  # dead omitted
    accepting = {s for s, shape in nodes.items() if shape == "doublecircle"}
    assert accepting == set(record_dfa.accepting)
    for src, dst in edges:
        assert src in nodes and dst in nodes


def test_to_dot_fixture_two_live_accepting_states():
    dfa = hardcoded_fixture("records_2sqrt2")
    nodes, _ = parse_dot(to_dot(dfa))
    assert sum(1 for shape in nodes.values() if shape == "doublecircle") == 2


def test_to_dot_empty_language():
    dfa = DigitDfa(
        transitions=((1, 1), (1, 1)),
        accepting=frozenset(),
        dead=1,
        alphabet=2,
    )
    nodes, _ = parse_dot(to_dot(dfa))
    assert all(shape == "circle" for shape in nodes.values())


def test_to_dot_stable(zero_dfa):
    assert to_dot(zero_dfa) == to_dot(build_zero_dfa(PELL))


def test_to_dot_include_dead(zero_dfa):
    nodes, _ = parse_dot(to_dot(zero_dfa, include_dead=True))
    assert len(nodes) == zero_dfa.n_states


GOLDEN_RECORDS_2SQRT2_DOT = """\
digraph dfa {
  rankdir=LR;
  // msd input, alphabet 0..2
  start [shape=point, label=""];
  start -> s0;
  s0 [shape=doublecircle, label="0"];
  s1 [shape=doublecircle, label="1"];
  s2 [shape=circle, label="2"];
  s3 [shape=circle, label="3"];
  s0 -> s1 [label="1"];
  s0 -> s3 [label="0,2"];
  s1 -> s2 [label="0"];
  s1 -> s3 [label="1,2"];
  s2 -> s1 [label="1"];
  s2 -> s3 [label="0,2"];
  s3 -> s3 [label="0,1,2"];
}
"""


def test_to_dot_golden_text():
    # byte-exact under the fixed state numbering
    assert to_dot(hardcoded_fixture("records_2sqrt2")) == GOLDEN_RECORDS_2SQRT2_DOT
