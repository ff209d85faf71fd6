"""The generational search loop."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, asdict
from typing import Optional

from ..formula import Prover
from ..semantics import Verdict, interpret, verify_extension
from ..theory import PreprocessedTheory
from .fitness import Evaluator, Fitness
from .operators import crossover, mutate, rank_key, select


@dataclass(frozen=True)
class GAParams:
    p_size: int = 325
    p_c: float = 0.8
    p_m: float = 0.1
    max_generations: int = 1000
    rng_seed: int = 0
    rank_levels: Optional[int] = None   # None: derived from p_size (see select)
    # cut only between two-bit genes; False allows any cut in 1..n-1
    aligned_crossover: bool = True

    def __post_init__(self):
        if self.p_size < 2:
            raise ValueError("p_size must be at least 2")
        if not 0.0 <= self.p_c <= 1.0 or not 0.0 <= self.p_m <= 1.0:
            raise ValueError("p_c and p_m must lie in [0, 1]")
        if self.max_generations < 1 or (self.rank_levels is not None and self.rank_levels < 1):
            raise ValueError("max_generations and rank_levels must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchReport:
    outcome: str                      # "found" or "exhausted"
    generations: int                  # populations evaluated, the initial one included
    fitness_trace: list = field(default_factory=list)   # best Fitness per generation
    queries: int = 0
    chromosome: Optional[str] = None
    verdict: Optional[Verdict] = None

    @property
    def found(self) -> bool:
        return self.outcome == "found"


def random_population(t: PreprocessedTheory, size: int, rng: random.Random) -> list:
    n = t.length
    if n == 0:
        return [""] * size
    return [t.apply_forced(format(rng.getrandbits(n), f"0{n}b")) for _ in range(size)]


def search(t: PreprocessedTheory, params: GAParams, prover: Optional[Prover] = None,
           executor=None) -> SearchReport:
    """Evolve chromosomes until one is certified or the generation budget runs out.

    ``executor`` (anything with an ordered ``map``) may be supplied to evaluate
    a population concurrently; results are identical either way since all
    randomness is drawn sequentially from one seeded stream.
    """
    prover = prover or Prover()
    evaluator = Evaluator(t, prover)
    start_queries = prover.queries
    rng = random.Random(params.rng_seed)
    forced = t.forced
    decoded: dict = {}
    verdicts: dict = {}
    trace = []

    population = random_population(t, params.p_size, rng)
    for generation in range(1, params.max_generations + 1):
        cgds = []
        for g in population:
            cgd = decoded.get(g)
            if cgd is None:
                if len(decoded) > 200_000:
                    decoded.clear()
                cgd = decoded[g] = interpret(g, t)
            cgds.append(cgd)
        mapper = executor.map if executor is not None else map
        fitnesses = list(mapper(evaluator.fitness_of, cgds))
        trace.append(min(fitnesses))

        if trace[-1].penalty == 0:
            zero = {g: f for g, f in zip(population, fitnesses) if f.penalty == 0}
            for g in sorted(zero, key=lambda g: rank_key(g, zero[g])):
                cgd = decoded[g]
                verdict = verdicts.get(cgd)
                if verdict is None:
                    verdict = verdicts[cgd] = verify_extension(g, t, evaluator=evaluator)
                if verdict.certified:
                    return SearchReport("found", generation, trace,
                                        prover.queries - start_queries, g, verdict)

        if generation == params.max_generations:
            break
        selected = select(population, fitnesses, params.p_size, params.rank_levels)
        rng.shuffle(selected)
        offspring = []
        for k in range(0, len(selected) - 1, 2):
            offspring.extend(crossover(selected[k], selected[k + 1], rng, params.p_c,
                                       params.aligned_crossover, forced))
        if len(selected) % 2:
            offspring.append(selected[-1])
        population = [mutate(g, rng, params.p_m, forced) for g in offspring]

    return SearchReport("exhausted", params.max_generations, trace,
                        prover.queries - start_queries)
