"""Command-line front end: load or generate a theory, then search, enumerate or verify.

Examples::

    defaultga solve theory.dl
    defaultga solve --people woman --trials 20 --json
    defaultga solve --hamilton 3 --edges 0-1,1-2,2-0 --pop-size 465
    defaultga solve theory.dl --oracle
    defaultga solve theory.dl --verify 100010
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import statistics
import sys
import time
from dataclasses import dataclass, field, replace
from typing import Optional

from .formula import Prover, format_formula
from .ga import GAParams, search
from .oracle import OracleBoundError, all_extensions
from .problems import generate_hamilton, generate_people, parse_edges, people_variant
from .semantics import verify_extension
from .theory import DefaultTheory, TheorySyntaxError, parse_theory, preprocess

log = logging.getLogger("defaultga")

EXIT_FOUND = 0
EXIT_ERROR = 1
EXIT_EXHAUSTED = 2
EXIT_NO_EXTENSION = 3


@dataclass(frozen=True)
class ProblemSpec:
    kind: str                       # "file", "people" or "hamilton"
    path: Optional[str] = None
    variant: Optional[str] = None
    n: int = 0
    edges: tuple = ()

    def label(self) -> str:
        if self.kind == "people":
            return f"people:{self.variant}"
        if self.kind == "hamilton":
            return f"hamilton:{self.n}:" + ",".join(f"{v}-{w}" for v, w in self.edges)
        return f"file:{self.path}"

    def load(self) -> DefaultTheory:
        if self.kind == "people":
            return generate_people(self.variant)
        if self.kind == "hamilton":
            return generate_hamilton(self.n, self.edges)
        with open(self.path, encoding="utf-8") as fh:
            return parse_theory(fh.read())


@dataclass
class TrialAggregate:
    problem: str
    params: dict
    trials: int = 0
    successes: int = 0
    ng_mean: Optional[float] = None
    per_trial: list = field(default_factory=list)
    extension: Optional[dict] = None
    inconsistent_facts: bool = False
    wall_time_mean: Optional[float] = None   # informational, not reproducible

    def report(self, include_wall_time: bool = True) -> dict:
        out = {
            "problem": self.problem,
            "params": self.params,
            "trials": self.trials,
            "successes": self.successes,
            "ng_mean": self.ng_mean,
            "per_trial": self.per_trial,
            "extension": self.extension,
            "inconsistent_facts": self.inconsistent_facts,
        }
        if include_wall_time:
            out["wall_time_mean"] = self.wall_time_mean
        return out


def trial_seed(seed: int, i: int) -> int:
    """64-bit seed of trial ``i``, a hash of the run seed and the trial index."""
    digest = hashlib.blake2b(f"{seed}:{i}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def describe_extension(t: DefaultTheory, ids) -> dict:
    ids = sorted(ids)
    return {
        "generating_default_ids": ids,
        "consequent_formulas": [format_formula(t.defaults[i].conseq) for i in ids],
    }


def run(spec: ProblemSpec, params: GAParams, trials: int,
        theory: Optional[DefaultTheory] = None) -> TrialAggregate:
    """Run ``trials`` independent searches and aggregate them."""
    t = theory if theory is not None else spec.load()
    agg = TrialAggregate(spec.label(), params.to_dict(), trials)
    if trials <= 0:
        return agg
    prover = Prover()
    if not prover.is_consistent(t.facts):
        # Th(W) is the only extension and no default contributes to it
        agg.inconsistent_facts = True
        agg.successes = trials
        agg.ng_mean = 0
        agg.wall_time_mean = 0.0
        agg.per_trial = [{"seed": trial_seed(params.rng_seed, i), "outcome": "found",
                          "generations": 0, "penalty_trace_len": 0} for i in range(trials)]
        agg.extension = describe_extension(t, ())
        return agg

    p = preprocess(t, prover)
    times, ngs = [], []
    for i in range(trials):
        seed = trial_seed(params.rng_seed, i)
        started = time.perf_counter()
        rep = search(p, replace(params, rng_seed=seed), prover)
        times.append(time.perf_counter() - started)
        agg.per_trial.append({"seed": seed, "outcome": rep.outcome,
                              "generations": rep.generations,
                              "penalty_trace_len": len(rep.fitness_trace)})
        log.info("trial %d/%d: %s after %d generations", i + 1, trials,
                 rep.outcome, rep.generations)
        if rep.found:
            ngs.append(rep.generations)
            if agg.extension is None:
                agg.extension = describe_extension(t, rep.verdict.generating_ids)
    agg.successes = len(ngs)
    agg.ng_mean = statistics.mean(ngs) if ngs else None
    agg.wall_time_mean = statistics.mean(times)
    return agg


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defaultga",
        description="Search for extensions of propositional default theories with a genetic algorithm.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find an extension (or enumerate/verify)")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?", help="theory file")
    src.add_argument("--people", metavar="VARIANT",
                     help="built-in people theory: boy, girl, man, woman, man&student, woman&student")
    src.add_argument("--hamilton", type=int, metavar="N", help="Hamiltonian cycle problem on N vertices")
    s.add_argument("--edges", help="directed edges for --hamilton, e.g. 0-1,1-2,2-0")

    s.add_argument("--pc", type=float, default=GAParams.p_c, help="crossover probability")
    s.add_argument("--pm", type=float, default=GAParams.p_m, help="per-bit mutation probability")
    s.add_argument("--pop-size", type=int, default=GAParams.p_size)
    s.add_argument("--max-gens", type=int, default=GAParams.max_generations)
    s.add_argument("--seed", type=int, default=0, help="run seed (unsigned 64-bit)")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--rank-levels", type=int, default=None,
                   help="number of ranks that receive copies (default: derived from --pop-size)")
    s.add_argument("--paper-literal-crossover", action="store_true",
                   help="allow crossover cuts inside a default's two-bit gene")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true", help="enumerate all extensions exhaustively")
    mode.add_argument("--verify", metavar="CHROMO", help="certify one chromosome")
    s.add_argument("--json", action="store_true", help="print a JSON report")
    return parser


def _spec_from_args(args, parser) -> ProblemSpec:
    if args.people is not None:
        return ProblemSpec("people", variant=people_variant(args.people))
    if args.hamilton is not None:
        if not args.edges:
            parser.error("--hamilton needs --edges")
        return ProblemSpec("hamilton", n=args.hamilton, edges=tuple(parse_edges(args.edges)))
    if args.edges:
        parser.error("--edges only applies to --hamilton")
    return ProblemSpec("file", path=args.file)


def _emit(obj: dict, as_json: bool, lines: list) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _cmd_oracle(spec, t, as_json) -> int:
    records = all_extensions(t)
    exts = [describe_extension(t, r.generating_ids) for r in records]
    lines = [f"{spec.label()}: {len(exts)} extension(s)"]
    for e in exts:
        lines.append("  defaults %s -> %s" % (e["generating_default_ids"],
                                              ", ".join(e["consequent_formulas"]) or "(W only)"))
    _emit({"problem": spec.label(), "mode": "oracle", "extensions": exts}, as_json, lines)
    return EXIT_FOUND if exts else EXIT_NO_EXTENSION


def _cmd_verify(spec, t, chromo, as_json) -> int:
    v = verify_extension(chromo, preprocess(t))
    obj = {"problem": spec.label(), "mode": "verify", "chromosome": chromo,
           "certified": v.certified, "reason": v.reason, "detail": v.detail,
           "extension": describe_extension(t, v.generating_ids)}
    status = "certified" if v.certified else f"rejected ({v.reason}: {v.detail})"
    _emit(obj, as_json, [f"{chromo}: {status}"])
    return EXIT_FOUND if v.certified else EXIT_EXHAUSTED


def _cmd_search(spec, t, params, trials, as_json) -> int:
    agg = run(spec, params, trials, theory=t)
    lines = [f"{agg.problem}: {agg.successes}/{agg.trials} trials found an extension"]
    if agg.inconsistent_facts:
        lines.append("  W is inconsistent: its closure is the only extension")
    if agg.ng_mean is not None:
        lines.append(f"  mean generations: {agg.ng_mean:.2f}")
    if agg.extension is not None:
        e = agg.extension
        lines.append("  generating defaults: %s" % e["generating_default_ids"])
        lines.append("  consequents: %s" % (", ".join(e["consequent_formulas"]) or "(none)"))
    _emit(agg.report(), as_json, lines)
    if trials > 0 and agg.successes == 0:
        return EXIT_EXHAUSTED
    return EXIT_FOUND


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        spec = _spec_from_args(args, parser)
        t = spec.load()
        if args.oracle:
            return _cmd_oracle(spec, t, args.json)
        if args.verify is not None:
            return _cmd_verify(spec, t, args.verify, args.json)
        if not 0 <= args.seed < 2 ** 64:
            raise ValueError("--seed must be an unsigned 64-bit integer")
        params = GAParams(p_size=args.pop_size, p_c=args.pc, p_m=args.pm,
                          max_generations=args.max_gens, rng_seed=args.seed,
                          rank_levels=args.rank_levels,
                          aligned_crossover=not args.paper_literal_crossover)
        return _cmd_search(spec, t, params, args.trials, args.json)
    except (OSError, ValueError, OracleBoundError, TheorySyntaxError) as e:
        print(f"defaultga: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
