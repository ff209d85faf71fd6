"""Built-in problem generators: the taxonomic ``people`` family, Hamiltonian
cycles and small random theories."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .formula import (
    FALSE, TRUE, And, Atom, Formula, Implies, Not, Or, conjoin, disjoin,
)
from .theory import Default, DefaultTheory, parse_theory

PEOPLE_BASE = """\
W:
  ~boy | ~girl.           ~boy | kid.                 ~girl | kid.
  ~human | male | female.
  ~kid | human.           ~student | human.
  ~adult | human.         ~adult | ~kid.
  ~adult | ~male | man.   ~adult | ~female | woman.
  ~academic | adult.      ~academic | diploma.
  ~doctor | academic.     ~priest | academic.
  ~prof | academic.       ~bishop | priest.
  ~cardinal | bishop.     ~redsuit | suit.
  ~whitesuit | suit.      ~blacksuit | suit.
  ~redsuit | ~whitesuit.  ~whitesuit | ~blacksuit.
  ~redsuit | ~blacksuit.
D:
  human : name / name.
  kid : toys / toys.
  student : adult / adult.
  student : ~employed / ~employed.
  student : ~married / ~married.
  student : sports / sports.
  adult : ~student / employed.
  adult : ~student, ~priest / married.
  adult : car / car.
  adult : ~academic / ~toys.
  man : ~prof / beer.
  man : ~vegetarian / steak.
  man : coffee / coffee.
  man | woman : wine / wine.
  woman : tea / tea.
  academic : ~prof / ~employed.
  academic : ~priest / toys.
  academic : books / books.
  academic : glasses / glasses.
  academic : ~priest / late.
  doctor : medicine / medicine.
  doctor : whitesuit / whitesuit.
  prof : employed / employed.
  prof : grey / grey.
  prof : tie / tie.
  prof : water / water.
  prof : conservative / conservative.
  priest : male / male.
  priest : conservative / conservative.
  priest : ~cardinal / blacksuit.
  cardinal : redsuit / redsuit.
  car : mobile / mobile.
  tie : suit / suit.
  wine & steak & coffee : ~sports / heartdisease.
  sports : man / football | rugby | tennis.
  sports : woman / swim | jogging | tennis.
  toys & (football | rugby) : ball / ball.
  toys : boy / weapon.
  toys : girl / doll.
"""

PEOPLE_VARIANTS = {
    "boy": ("boy",),
    "girl": ("girl",),
    "man": ("man",),
    "woman": ("woman",),
    "man&student": ("man", "student"),
    "woman&student": ("woman", "student"),
}

_ALIASES = {"man_student": "man&student", "man∧student": "man&student",
            "man+student": "man&student", "woman_student": "woman&student",
            "woman∧student": "woman&student", "woman+student": "woman&student"}


def people_variant(name: str) -> str:
    """Canonical variant name, accepting ``_``, ``+`` and ``∧`` spellings."""
    key = name.strip().replace(" ", "")
    key = _ALIASES.get(key, key)
    if key not in PEOPLE_VARIANTS:
        raise ValueError(f"unknown people variant {name!r}; choose from {sorted(PEOPLE_VARIANTS)}")
    return key


def generate_people(variant: Optional[str] = None) -> DefaultTheory:
    """The ``people`` theory (23 facts, 39 defaults) plus the variant's extra facts."""
    t = parse_theory(PEOPLE_BASE)
    if variant is None:
        return t
    return t.with_facts(tuple(Atom(a) for a in PEOPLE_VARIANTS[people_variant(variant)]))


# ---------------------------------------------------------------------------
# Hamiltonian cycles
#
# Vertices 0..n-1, the tour starts at 0.  Atoms:
#   at_v_k    vertex v is the k-th stop (k = 0..n)
#   use_v_w   the tour leaves v along edge v->w
#   ok_v      guard atom of vertex v's revisit constraint
#
# W = {at_0_0} plus "at most one outgoing edge" clauses ~use_v_w | ~use_v_x.
# Edge default for v->w at step k:   at_v_k : use_v_w / at_w_{k+1} & use_v_w
#   generated only for steps where the edge can be part of a tour: leaving 0
#   only at k = 0, entering 0 only at k = n-1, other vertices at 1..n-1.
# Revisit constraint of v:  OR_{j<k} (at_v_j & at_v_k) : ok_v / ~ok_v
#   (the pair (0, n) is the tour closing and is exempt).
# Closure constraint:       : ~at_0_n / at_0_n   (keeps only closed tours).
#
# Every extension applies one chain of edge defaults from at_0_0 that visits
# each vertex once and returns to 0 at step n; the used edges are the cycle.


def _at(v: int, k: int) -> Atom:
    return Atom(f"at_{v}_{k}")


def _use(v: int, w: int) -> Atom:
    return Atom(f"use_{v}_{w}")


def parse_edges(text: str) -> list:
    """``"0-1,1-2,2-0"`` -> ``[(0, 1), (1, 2), (2, 0)]``."""
    edges = []
    for part in text.replace(";", ",").split(","):
        part = part.strip()
        if not part:
            continue
        a, sep, b = part.partition("-")
        if not sep:
            a, sep, b = part.partition(">")
        try:
            edges.append((int(a), int(b.lstrip(">"))))
        except ValueError:
            raise ValueError(f"bad edge {part!r}; expected 'u-v'") from None
    return edges


def generate_hamilton(n: int, edges: Iterable[Sequence[int]]) -> DefaultTheory:
    edges = sorted({(int(v), int(w)) for v, w in edges})
    for v, w in edges:
        if not (0 <= v < n and 0 <= w < n) or v == w:
            raise ValueError(f"edge {v}->{w} is not a simple edge on {n} vertices")
    if n < 2:
        raise ValueError("need at least two vertices")

    facts: list = [_at(0, 0)]
    succ: dict = {}
    for v, w in edges:
        succ.setdefault(v, []).append(w)
    for v in sorted(succ):
        for w, x in combinations(succ[v], 2):
            facts.append(Or(Not(_use(v, w)), Not(_use(v, x))))

    triples = []
    for v, w in edges:
        if v == 0:
            steps = [0]
        else:
            steps = range(1, n)
        for k in steps:
            if (w == 0) != (k == n - 1):
                continue
            triples.append((_at(v, k), (_use(v, w),), And(_at(w, k + 1), _use(v, w))))

    for v in range(n):
        pairs = [And(_at(v, j), _at(v, k))
                 for j, k in combinations(range(n + 1), 2) if (v, j, k) != (0, 0, n)]
        if pairs:
            ok = Atom(f"ok_{v}")
            triples.append((disjoin(pairs), (ok,), Not(ok)))
    closed = _at(0, n)
    triples.append((TRUE, (Not(closed),), closed))

    return DefaultTheory.build(facts, triples)


def decode_cycle(generators: Iterable[Formula]) -> list:
    """Edges ``(v, w)`` named by ``use_v_w`` atoms in the generators, in tour order."""
    used = {}
    for f in generators:
        for g in _conjuncts(f):
            if isinstance(g, Atom) and g.name.startswith("use_"):
                _, v, w = g.name.split("_")
                used[int(v)] = int(w)
    tour = []
    v = 0
    while v in used and len(tour) < len(used):
        tour.append((v, used[v]))
        v = used[v]
        if v == 0:
            break
    return tour


def is_hamiltonian_cycle(n: int, edges: Sequence[Sequence[int]], tour: Sequence) -> bool:
    """Does ``tour`` (a list of edges) visit all ``n`` vertices once and close?"""
    if len(tour) != n:
        return False
    allowed = {tuple(e) for e in edges}
    seen = []
    v = tour[0][0]
    for a, b in tour:
        if a != v or (a, b) not in allowed:
            return False
        seen.append(a)
        v = b
    return v == tour[0][0] and sorted(seen) == list(range(n))


def _conjuncts(f: Formula) -> list:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


# ---------------------------------------------------------------------------
# Random theories


def random_formula(rng: random.Random, atoms: Sequence[str], depth: int = 2) -> Formula:
    if depth <= 0 or rng.random() < 0.35:
        a = Atom(rng.choice(atoms))
        return Not(a) if rng.random() < 0.4 else a
    r = rng.random()
    if r < 0.15:
        return Not(random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    if r < 0.5:
        return And(left, right)
    if r < 0.85:
        return Or(left, right)
    return Implies(left, right)


def random_theory(rng: random.Random, n_atoms: int = 5, n_defaults: int = 4,
                  n_facts: int = 2) -> DefaultTheory:
    """A small random theory: shallow formulas, 0-2 justifications per default,
    occasional missing prerequisites and self-blocking defaults."""
    atoms = [f"p{i}" for i in range(n_atoms)]
    facts = [random_formula(rng, atoms, 1) for _ in range(rng.randint(0, n_facts))]
    defaults = []
    for _ in range(n_defaults):
        prereq = TRUE if rng.random() < 0.25 else random_formula(rng, atoms, 1)
        if rng.random() < 0.15:
            beta = random_formula(rng, atoms, 1)
            defaults.append((prereq, (beta,), Not(beta)))
            continue
        k = rng.choice((0, 1, 1, 1, 2))
        justifs = tuple(random_formula(rng, atoms, 1) for _ in range(k))
        conseq = justifs[0] if k and rng.random() < 0.5 else random_formula(rng, atoms, 1)
        defaults.append((prereq, justifs, conseq))
    return DefaultTheory.build(facts, defaults)
