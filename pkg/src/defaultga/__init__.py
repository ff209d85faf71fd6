"""Extensions of propositional default theories, found by genetic search.

Typical use::

    from defaultga import parse_theory, preprocess, search, GAParams

    t = preprocess(parse_theory("W: a. b | c.\nD: a : ~b / d. d : f / g."))
    report = search(t, GAParams(p_size=20, max_generations=100))
    if report.found:
        print(sorted(report.verdict.generating_ids))
"""

from .formula import (
    FALSE, TRUE, And, Atom, Formula, FormulaSyntaxError, Implies, Not, Or, Prover,
    entails, format_formula, is_consistent, parse_formula, to_cnf,
)
from .ga import Evaluator, Fitness, GAParams, SearchReport, evaluate, search
from .oracle import all_extensions, check_extension
from .problems import generate_hamilton, generate_people
from .semantics import candidate_extension, interpret, is_grounded, verify_extension
from .theory import (
    Default, DefaultTheory, PreprocessedTheory, TheorySyntaxError, format_theory,
    parse_theory, preprocess,
)

__version__ = "0.1.0"
