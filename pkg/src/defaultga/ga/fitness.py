"""Chromosome evaluation.

Each encoded default falls in one of sixteen cases, given by its two bits and
by whether the candidate extension proves the prerequisite and refutes some
justification::

    case  bits  proves  refutes  penalized
     1     10     yes     no
     2     10     yes     yes       *
     3     10     no      yes       *
     4     10     no      no        *
     5     11     yes     no        *
     6     11     yes     yes
     7     11     no      yes
     8     11     no      no
     9     01     yes     no        *
    10     01     yes     yes
    11     01     no      yes
    12     01     no      no
    13     00     yes     no        *
    14     00     yes     yes
    15     00     no      yes
    16     00     no      no

Cases 2-4 apply a default that should not fire, cases 5, 9 and 13 skip one
that should.  Every penalized case and every self-blocking default that would
fire costs 1.
"""

from __future__ import annotations

import threading
from typing import NamedTuple, Optional

from ..formula import Not, Prover
from ..semantics import Chromosome, candidate_extension, check_chromosome, interpret
from ..theory import PreprocessedTheory

PENALIZED_CASES = frozenset({2, 3, 4, 5, 9, 13})

_BLOCK_START = {"10": 1, "11": 5, "01": 9, "00": 13}


class Fitness(NamedTuple):
    """Lexicographically ordered: penalty first, then |CGD|."""

    penalty: int
    cardinality: int


def table_case(bits: str, proves_prereq: bool, refutes_justif: bool) -> int:
    """Case number 1..16 for one default's bit pair and its two entailment facts."""
    offset = {(True, False): 0, (True, True): 1, (False, True): 2, (False, False): 3}
    return _BLOCK_START[bits] + offset[(proves_prereq, refutes_justif)]


class Evaluator:
    """Evaluates chromosomes of one preprocessed theory, caching by CGD.

    A chromosome's penalty depends on its bits only through the set of
    defaults it applies, so results are memoized per candidate generating
    set.  Safe to call from several threads.
    """

    def __init__(self, t: PreprocessedTheory, prover: Optional[Prover] = None):
        self.theory = t
        self.prover = prover or Prover()
        self._cache: dict = {}
        self._lock = threading.Lock()
        self._negated = {d.id: tuple(Not(j) for j in d.justifs)
                         for d in t.encoded + t.constraints}

    def _tally(self, n: int) -> None:
        with self.prover._lock:
            self.prover.queries += n

    def _refutes(self, ce, d) -> tuple:
        """(some justification refuted, queries asked)"""
        asked = 0
        for nj in self._negated[d.id]:
            asked += 1
            if ce.entails(nj):
                return True, asked
        return False, asked

    def breakdown(self, cgd: frozenset) -> tuple:
        """``(penalty from encoded defaults, ids of violated self-blocking defaults)``."""
        hit = self._cache.get(cgd)
        if hit is not None:
            return hit
        t = self.theory
        ce = candidate_extension(cgd, t, self.prover)
        penalty = 0
        asked = 0
        for d in t.encoded:
            # penalized iff "applied" disagrees with "prerequisite proved and
            # no justification refuted"
            asked += 1
            should = ce.entails(d.prereq)
            if should:
                refuted, n = self._refutes(ce, d)
                asked += n
                should = not refuted
            if should != (d.id in cgd):
                penalty += 1
        violated = []
        for d in t.constraints:
            asked += 1
            if ce.entails(d.prereq):
                asked += 1
                if not ce.entails(d.conseq):
                    violated.append(d.id)
        result = (penalty, tuple(violated))
        self._tally(asked)
        with self._lock:
            self._cache[cgd] = result
        return result

    def fitness_of(self, cgd: frozenset) -> Fitness:
        penalty, violated = self.breakdown(cgd)
        return Fitness(penalty + len(violated), len(cgd))

    def __call__(self, g: Chromosome) -> Fitness:
        return self.fitness_of(interpret(g, self.theory))

    def case_of(self, g: Chromosome, i: int) -> int:
        """Table case of the ``i``-th encoded default (0-based) under ``g``."""
        t = self.theory
        check_chromosome(g, t)
        if t.one_bit:
            raise ValueError("table cases are defined for the two-bit representation")
        d = t.encoded[i]
        ce = candidate_extension(interpret(g, t), t, self.prover)
        proves = ce.entails(d.prereq)
        refuted, asked = self._refutes(ce, d)
        self._tally(1 + asked)
        return table_case(g[2 * i:2 * i + 2], proves, refuted)


def evaluate(g: Chromosome, t: PreprocessedTheory, prover: Optional[Prover] = None) -> Fitness:
    return Evaluator(t, prover)(g)


def row_of(g: Chromosome, i: int, t: PreprocessedTheory, prover: Optional[Prover] = None) -> int:
    """Debug helper: the table case (1..16) of encoded default ``i`` (0-based)."""
    return Evaluator(t, prover).case_of(g, i)
