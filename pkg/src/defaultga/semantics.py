"""What a chromosome means: its candidate generating set and candidate extension.

Bits are held as a ``str`` of ``'0'``/``'1'``.  In the two-bit scheme encoded
default ``i`` (0-based) owns bits ``2i`` (its prerequisite is assumed proved)
and ``2i+1`` (some justification is assumed refuted); the default is taken as
applied exactly on the pattern ``10``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .formula import Closure, Formula, Prover
from .theory import PreprocessedTheory

Chromosome = str


def check_chromosome(g: Chromosome, t: PreprocessedTheory) -> None:
    if len(g) != t.length:
        raise ValueError(f"chromosome has {len(g)} bits, theory needs {t.length}")
    if g.strip("01"):
        raise ValueError(f"chromosome {g!r} is not a bitstring")


def interpret(g: Chromosome, t: PreprocessedTheory) -> frozenset:
    """Ids (in the base theory) of the defaults ``g`` marks as applied."""
    check_chromosome(g, t)
    if t.one_bit:
        return frozenset(d.id for d, b in zip(t.encoded, g) if b == "1")
    return frozenset(d.id for i, d in enumerate(t.encoded)
                     if g[2 * i] == "1" and g[2 * i + 1] == "0")


def generators(cgd, t: PreprocessedTheory) -> frozenset:
    """W together with the consequents of the defaults in ``cgd``."""
    defaults = t.base.defaults
    return frozenset(t.facts) | frozenset(defaults[i].conseq for i in cgd)


def candidate_extension(cgd, t: PreprocessedTheory,
                        prover: Optional[Prover] = None) -> Closure:
    gens = generators(cgd, t)
    return prover.closure(gens) if prover is not None else Closure(gens)


@dataclass(frozen=True)
class Groundedness:
    ordering: tuple
    residue: frozenset = frozenset()

    @property
    def grounded(self) -> bool:
        return not self.residue

    def __bool__(self) -> bool:
        return self.grounded


def is_grounded(cgd, t: PreprocessedTheory, prover: Optional[Prover] = None,
                rng: Optional[random.Random] = None) -> Groundedness:
    """Order ``cgd`` so each prerequisite follows from W and earlier consequents.

    Greedy saturation suffices: applicability only grows as consequents are
    added.  ``rng`` shuffles the pick order (the outcome does not depend on it).
    """
    prover = prover or Prover()
    defaults = t.base.defaults
    known = set(t.facts)
    remaining = sorted(cgd)
    ordering = []
    while remaining:
        if rng is not None:
            rng.shuffle(remaining)
        picked = None
        for i in remaining:
            if prover.entails(frozenset(known), defaults[i].prereq):
                picked = i
                break
        if picked is None:
            return Groundedness(tuple(ordering), frozenset(remaining))
        remaining.remove(picked)
        ordering.append(picked)
        known.add(defaults[picked].conseq)
    return Groundedness(tuple(ordering))


@dataclass(frozen=True)
class Verdict:
    """Outcome of certifying a chromosome.

    ``reason`` is ``None`` when certified, otherwise one of ``"penalty"``
    (some encoded default disagrees with the candidate extension),
    ``"constraint"`` (a self-blocking default would fire) or ``"ungrounded"``.
    """

    certified: bool
    reason: Optional[str]
    generating_ids: frozenset
    generators: frozenset
    ordering: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.certified


def verify_extension(g: Chromosome, t: PreprocessedTheory,
                     prover: Optional[Prover] = None, evaluator=None) -> Verdict:
    """Certify that ``g`` denotes an extension of ``t.base``.

    Requires a zero penalty, no violated self-blocking default and a grounded
    candidate generating set.
    """
    from .ga.fitness import Evaluator

    if evaluator is None:
        evaluator = Evaluator(t, prover or Prover())
    prover = evaluator.prover
    cgd = interpret(g, t)
    gens = generators(cgd, t)
    defaults_penalty, violated = evaluator.breakdown(cgd)
    if defaults_penalty:
        return Verdict(False, "penalty", cgd, gens,
                       detail=f"{defaults_penalty} encoded default(s) penalized")
    if violated:
        names = "; ".join(str(t.base.defaults[i]) for i in violated)
        return Verdict(False, "constraint", cgd, gens, detail=f"violated: {names}")
    witness = is_grounded(cgd, t, prover)
    if not witness:
        return Verdict(False, "ungrounded", cgd, gens, witness.ordering,
                       detail=f"unreachable defaults {sorted(witness.residue)}")
    return Verdict(True, None, cgd, gens, witness.ordering)
