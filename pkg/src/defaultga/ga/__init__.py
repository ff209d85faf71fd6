from .fitness import PENALIZED_CASES, Evaluator, Fitness, evaluate, row_of, table_case
from .operators import apportion, crossover, crossover_at, mutate, rank_key, select
from .search import GAParams, SearchReport, random_population, search

__all__ = [
    "PENALIZED_CASES", "Evaluator", "Fitness", "evaluate", "row_of", "table_case",
    "apportion", "crossover", "crossover_at", "mutate", "rank_key", "select",
    "GAParams", "SearchReport", "random_population", "search",
]
