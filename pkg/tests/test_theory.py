import random

import pytest
from hypothesis import given, settings, strategies as st

from defaultga.formula import TRUE, Atom, Not, Or
from defaultga.problems import random_theory
from defaultga.theory import (
    Default, DefaultTheory, TheorySyntaxError, format_theory, is_self_blocking,
    parse_theory, preprocess,
)

from conftest import EX1_W1D1, random_corpus


class TestParseTheory:
    def test_example_one(self):
        t = parse_theory(EX1_W1D1)
        assert t.facts == (Atom("a"), Or(Atom("b"), Atom("c")))
        assert len(t.defaults) == 3
        d = t.defaults[0]
        assert (d.prereq, d.justifs, d.conseq) == (Atom("a"), (Not(Atom("b")),), Atom("d"))

    def test_prerequisite_free_self_blocking(self):
        t = parse_theory("W:\nD: : b / ~b.")
        assert t.facts == ()
        (d,) = t.defaults
        assert d.prereq == TRUE
        assert is_self_blocking(d)

    def test_several_justifications_and_none(self):
        t = parse_theory("D: a : b, ~c / d. a : / e.")
        assert t.defaults[0].justifs == (Atom("b"), Not(Atom("c")))
        assert t.defaults[1].justifs == ()

    def test_comments_and_layout(self):
        t = parse_theory("# header\nW: a.  # trailing\n   b.\nD:\n  a : b / c.  # done\n")
        assert t.facts == (Atom("a"), Atom("b"))
        assert len(t.defaults) == 1

    def test_ids_are_positions(self):
        t = parse_theory(EX1_W1D1)
        assert [d.id for d in t.defaults] == [0, 1, 2]
        with pytest.raises(ValueError):
            DefaultTheory((), (Default(3, TRUE, (), Atom("a")),))

    def test_default_str(self):
        t = parse_theory("D: a : b, c / d. : b / ~b. a : / c.")
        assert [str(d) for d in t.defaults] == ["a : b, c / d", ": b / ~b", "a : / c"]

    @pytest.mark.parametrize("text, line, col", [
        ("W: a & .", 1, 8),
        ("W: a\nD: a : b / c.", 1, 4),
        ("W: a.\nD: a b / c.", 2, 4),
        ("W: a.\nD: a : b / .", 2, 11),
        ("W: a.\nW: b.", 2, 1),
        ("hello W: a.", 1, 1),
        ("W: a.\nD: a : b,, c / d.", 2, 10),
    ])
    def test_syntax_errors(self, text, line, col):
        with pytest.raises(TheorySyntaxError) as err:
            parse_theory(text)
        assert (err.value.line, err.value.col) == (line, col)


@given(st.integers(0, 10**9))
@settings(max_examples=150, deadline=None)
def test_format_parse_roundtrip(seed):
    t = random_theory(random.Random(seed), n_atoms=4, n_defaults=5, n_facts=3)
    assert parse_theory(format_theory(t)) == t


class TestSelfBlocking:
    def test_plain(self):
        assert is_self_blocking(parse_theory("D: a : b / ~b.").defaults[0])

    def test_double_negation(self):
        assert is_self_blocking(parse_theory("D: a : ~b / b.").defaults[0])
        assert is_self_blocking(parse_theory("D: a : ~b / ~~b.").defaults[0])
        assert is_self_blocking(parse_theory("D: a : b / ~~~b.").defaults[0])
        assert is_self_blocking(parse_theory("D: a : ~~b / ~b.").defaults[0])
        assert not is_self_blocking(parse_theory("D: a : ~b / ~~~b.").defaults[0])

    def test_syntactic_only(self):
        # ~b | ~c is equivalent to ~(b & c) but is not matched
        d = parse_theory("D: a : b & c / ~b | ~c.").defaults[0]
        assert not is_self_blocking(d)

    def test_needs_single_justification(self):
        assert not is_self_blocking(parse_theory("D: a : b, c / ~b.").defaults[0])


class TestPreprocess:
    def test_example_one_forced_bits(self):
        p = preprocess(parse_theory(EX1_W1D1))
        assert len(p.encoded) == 3 and p.constraints == ()
        # W1 proves only a: default 0's prerequisite bit is forced
        assert p.force_prereq == (True, False, False)
        assert p.force_justif == (False, False, False)
        assert p.forced == {0: "1"}
        assert p.apply_forced("000000") == "100000"

    def test_constraint_split(self):
        p = preprocess(parse_theory("W: a.\nD: a : b / ~b. a : c / c."))
        assert [d.id for d in p.constraints] == [0]
        assert [d.id for d in p.encoded] == [1]
        assert p.length == 2

    def test_refuted_justification_forced(self):
        p = preprocess(parse_theory("W: ~b.\nD: a : b / c."))
        assert p.forced == {1: "1"}

    def test_one_bit_has_no_forced_bits(self):
        p = preprocess(parse_theory(EX1_W1D1), one_bit=True)
        assert p.length == 3 and p.forced == {}


def test_preprocessing_partitions_defaults():
    for t in random_corpus(40, seed=7, max_defaults=8):
        p = preprocess(t)
        assert p.base == t
        assert sorted(d.id for d in p.encoded + p.constraints) == list(range(len(t.defaults)))
        assert all(is_self_blocking(d) for d in p.constraints)
        assert not any(is_self_blocking(d) for d in p.encoded)
