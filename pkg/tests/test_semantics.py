import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from defaultga.formula import Atom, Not, Prover, entails, parse_formula
from defaultga.oracle import all_extensions
from defaultga.semantics import (
    candidate_extension, check_chromosome, interpret, is_grounded, verify_extension,
)
from defaultga.theory import parse_theory, preprocess

from conftest import random_corpus


def chromosome_for(cgd, p):
    """A chromosome applying exactly ``cgd`` (``None`` if forced bits forbid it)."""
    bits = []
    for i, d in enumerate(p.encoded):
        pair = "10" if d.id in cgd else "01"
        bits.append(pair)
    g = p.apply_forced("".join(bits))
    return g if interpret(g, p) == frozenset(cgd) else None


class TestInterpret:
    def test_representation_example(self, representation):
        p = preprocess(representation)
        assert interpret("100011", p) == {0}
        assert interpret("101011", p) == {0, 1}

    def test_candidate_extension_of_representation_example(self, representation):
        p = preprocess(representation)
        ce = candidate_extension(interpret("100011", p), p)
        assert ce.entails(Atom("a")) and ce.entails(Atom("c"))
        assert not ce.entails(Not(Atom("b")))
        ce2 = candidate_extension(interpret("101011", p), p)
        assert ce2.entails(Not(Atom("b")))

    def test_empty_cgd_gives_w(self):
        p = preprocess(parse_theory("W: a.\nD: b : c / d."))
        ce = candidate_extension(interpret("00", p), p)
        assert ce.entails(Atom("a")) and not ce.entails(Atom("d"))

    def test_all_zero_applies_nothing(self, t1):
        assert interpret("000000", preprocess(t1)) == frozenset()

    def test_bad_chromosomes(self, t1):
        p = preprocess(t1)
        with pytest.raises(ValueError):
            check_chromosome("10", p)
        with pytest.raises(ValueError):
            interpret("10x011", p)

    def test_one_bit_representation(self, t1):
        p = preprocess(t1, one_bit=True)
        assert interpret("101", p) == {0, 2}


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_interpretation_is_local(seed):
    rng = random.Random(seed)
    t = random_corpus(1, seed=seed, max_defaults=5)[0]
    p = preprocess(t)
    g = "".join(rng.choice("01") for _ in range(p.length))
    base = interpret(g, p)
    for k in range(p.length):
        flipped = g[:k] + ("1" if g[k] == "0" else "0") + g[k + 1:]
        changed = base ^ interpret(flipped, p)
        assert changed <= {p.encoded[k // 2].id}


class TestGroundedness:
    def test_empty_is_grounded(self, t1):
        w = is_grounded(frozenset(), preprocess(t1))
        assert w.grounded and w.ordering == ()

    def test_example_one(self, t1):
        w = is_grounded(frozenset({0, 2}), preprocess(t1))
        assert w.grounded and w.ordering == (0, 2)

    def test_counter_example_is_ungrounded(self, counter_example):
        w = is_grounded(frozenset({0, 1}), preprocess(counter_example))
        assert not w and w.residue == {0, 1}

    def test_order_does_not_matter(self):
        for t in random_corpus(30, seed=3):
            p = preprocess(t)
            ids = range(len(t.defaults))
            for r in range(len(t.defaults) + 1):
                for cgd in itertools.combinations(ids, r):
                    plain = is_grounded(frozenset(cgd), p).grounded
                    for s in range(3):
                        assert is_grounded(frozenset(cgd), p, rng=random.Random(s)).grounded == plain


class TestVerify:
    def test_example_one_extension(self, t1):
        v = verify_extension("100010", preprocess(t1))
        assert v.certified and v.generating_ids == {0, 2}
        assert entails(v.generators, Atom("g"))

    def test_representation_extension(self, representation):
        p = preprocess(representation)
        assert verify_extension("100011", p).certified
        v = verify_extension("101011", p)
        assert not v and v.reason == "penalty"

    def test_counter_example(self, counter_example):
        v = verify_extension("1010", preprocess(counter_example))
        assert not v and v.reason == "ungrounded"

    def test_constraint_blocks(self, t3):
        p = preprocess(t3)
        assert p.length == 0
        v = verify_extension("", p)
        assert not v and v.reason == "constraint"


def _check_against_oracle(t):
    prover = Prover()
    p = preprocess(t, prover)
    truth = {r.generating_ids for r in all_extensions(t, prover)}
    certified = set()
    ids = [d.id for d in p.encoded]
    for r in range(len(ids) + 1):
        for cgd in itertools.combinations(ids, r):
            g = chromosome_for(cgd, p)
            if g is not None and verify_extension(g, p, prover):
                certified.add(frozenset(cgd))
    assert certified == truth


def test_certification_matches_oracle_on_fixtures(t1, t2, t3, representation, counter_example):
    for t in (t1, t2, t3, representation, counter_example):
        _check_against_oracle(t)


def test_certification_matches_oracle_on_random_theories():
    # soundness and completeness of the certificate against brute force,
    # including theories with self-blocking defaults and inconsistent W
    for t in random_corpus(120, seed=11, max_defaults=6):
        _check_against_oracle(t)


def test_every_chromosome_of_small_theories():
    # exhaustive over all bitstrings, not just canonical ones
    for t in random_corpus(25, seed=19, max_defaults=4):
        p = preprocess(t)
        truth = {r.generating_ids for r in all_extensions(t)}
        for bits in itertools.product("01", repeat=p.length):
            g = p.apply_forced("".join(bits))
            v = verify_extension(g, p)
            assert bool(v) == (v.generating_ids in truth)
