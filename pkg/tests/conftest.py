import itertools
import random

import pytest

from defaultga.formula import And, Atom, Const, Implies, Not, Or
from defaultga.problems import random_theory
from defaultga.theory import parse_theory


# --- truth-table oracle, deliberately independent of the prover -------------

def tt_eval(f, env):
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Not):
        return not tt_eval(f.arg, env)
    if isinstance(f, And):
        return tt_eval(f.left, env) and tt_eval(f.right, env)
    if isinstance(f, Or):
        return tt_eval(f.left, env) or tt_eval(f.right, env)
    if isinstance(f, Implies):
        return (not tt_eval(f.left, env)) or tt_eval(f.right, env)
    raise TypeError(f)


def tt_atoms(*formulas):
    names = set()

    def walk(f):
        if isinstance(f, Atom):
            names.add(f.name)
        elif isinstance(f, Not):
            walk(f.arg)
        elif isinstance(f, (And, Or, Implies)):
            walk(f.left)
            walk(f.right)

    for f in formulas:
        walk(f)
    return sorted(names)


def tt_entails(base, goal):
    base = list(base)
    names = tt_atoms(goal, *base)
    for values in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, values))
        if all(tt_eval(b, env) for b in base) and not tt_eval(goal, env):
            return False
    return True


def tt_consistent(base):
    return not tt_entails(base, Const(False))


# --- example theories ------------------------------------------------------

EX1_W1D1 = "W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g."
EX1_W2D2 = "W: a. b|c.\nD: a : ~b / ~b. a : ~c / ~c."
EX1_W3D3 = "W: a.\nD: a : b / ~b."
REPRESENTATION = "W: a.\nD: a : b / c. a : ~c / ~b. d : e / f."
COUNTER_EXAMPLE = "W:\nD: a : c / b. b : c / a."


@pytest.fixture
def t1():
    return parse_theory(EX1_W1D1)


@pytest.fixture
def t2():
    return parse_theory(EX1_W2D2)


@pytest.fixture
def t3():
    return parse_theory(EX1_W3D3)


@pytest.fixture
def representation():
    return parse_theory(REPRESENTATION)


@pytest.fixture
def counter_example():
    return parse_theory(COUNTER_EXAMPLE)


def random_corpus(n, seed=2024, max_defaults=6, max_atoms=8):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        out.append(random_theory(rng, n_atoms=rng.randint(2, max_atoms),
                                 n_defaults=rng.randint(1, max_defaults),
                                 n_facts=rng.randint(0, 3)))
    return out
