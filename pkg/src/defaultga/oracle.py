"""Brute-force extension enumeration, used as ground truth on small theories.

A subset of defaults is accepted when the iterative construction started from
W, with justifications tested against the extension the subset generates,
applies exactly that subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .formula import Not, Prover
from .theory import DefaultTheory

DEFAULT_BOUND = 16


class OracleBoundError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionRecord:
    generating_ids: frozenset
    generators: frozenset


def _generators(ids: Iterable[int], t: DefaultTheory) -> frozenset:
    return frozenset(t.facts) | frozenset(t.defaults[i].conseq for i in ids)


def check_extension(candidate_ids, t: DefaultTheory, prover: Optional[Prover] = None,
                    prefilter: bool = True) -> bool:
    """Is ``Th(W + consequents of candidate_ids)`` an extension generated by exactly those defaults?

    ``prefilter`` enables a quick rejection test that never changes the answer.
    """
    prover = prover or Prover()
    candidate = frozenset(candidate_ids)
    e = _generators(candidate, t)
    ce = prover.closure(e)

    def justified(d) -> bool:
        return not any(ce.entails(Not(j)) for j in d.justifs)

    # Cheap necessary condition: the defaults E itself would generate must be
    # the candidate.
    for d in t.defaults if prefilter else ():
        if ce.entails(d.prereq) and justified(d):
            if d.id not in candidate:
                return False
        elif d.id in candidate:
            return False

    usable = [d for d in t.defaults if justified(d)]
    applied: set = set()
    while True:
        known = prover.closure(_generators(applied, t))
        step = {d.id for d in usable if d.id not in applied and known.entails(d.prereq)}
        if not step:
            break
        applied |= step
        if not applied <= candidate:
            return False
    if applied != candidate:
        return False
    fixpoint = _generators(applied, t)
    if fixpoint == e:
        return True
    fp = prover.closure(fixpoint)
    return all(fp.entails(f) for f in e) and all(ce.entails(f) for f in fixpoint)


def all_extensions(t: DefaultTheory, prover: Optional[Prover] = None,
                   bound: int = DEFAULT_BOUND, prefilter: bool = True) -> list:
    """Every extension of ``t``, by testing all 2^|D| subsets.

    Records come in order of subset bitmask.  Subsets generating the same
    theory (mutual entailment of generators) are reported once.
    """
    n = len(t.defaults)
    if n > bound:
        raise OracleBoundError(f"{n} defaults exceed the oracle bound of {bound}")
    prover = prover or Prover()
    records: list = []
    for mask in range(1 << n):
        ids = frozenset(i for i in range(n) if mask >> i & 1)
        if not check_extension(ids, t, prover, prefilter):
            continue
        gens = _generators(ids, t)
        if any(_same_theory(gens, r.generators, prover) for r in records):
            continue
        records.append(ExtensionRecord(ids, gens))
    return records


def _same_theory(a: frozenset, b: frozenset, prover: Prover) -> bool:
    ca, cb = prover.closure(a), prover.closure(b)
    return all(ca.entails(f) for f in b) and all(cb.entails(f) for f in a)
