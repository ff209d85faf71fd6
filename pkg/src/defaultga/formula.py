"""Propositional formulas: AST, parser, printer, clausal form and a DPLL prover.

Entailment is decided by refutation: ``base |= goal`` iff ``base + {~goal}``
has no model.  Clausal form uses definitional (Tseitin-style) auxiliary
variables, so clause sets are equisatisfiable with their source formulas
rather than equivalent; since every question is asked as a satisfiability
question the auxiliaries never leak into answers.
"""

from __future__ import annotations

import re
import threading
from collections import OrderedDict
from functools import lru_cache
from typing import Iterable, Optional

__all__ = [
    "Formula", "Const", "Atom", "Not", "And", "Or", "Implies", "TRUE", "FALSE",
    "FormulaSyntaxError", "parse_formula", "format_formula", "atoms_of",
    "strip_double_negation", "conjoin", "disjoin", "atom_id",
    "ClauseSet", "to_cnf", "solve", "is_satisfiable", "holds",
    "Closure", "Prover", "entails", "is_consistent",
]


# ---------------------------------------------------------------------------
# AST


class Formula:
    """Immutable formula node with a precomputed hash."""

    __slots__ = ("_hash",)
    _fields: tuple = ()

    def _init(self, *values):
        for name, value in zip(self._fields, values):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "_hash", hash((type(self).__name__, *values)))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return all(getattr(self, f) == getattr(other, f) for f in self._fields)

    def __ne__(self, other) -> bool:
        return not self == other

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __repr__(self) -> str:
        args = ", ".join(repr(getattr(self, f)) for f in self._fields)
        return f"{type(self).__name__}({args})"

    def __invert__(self) -> "Formula":
        return Not(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __str__(self) -> str:
        return format_formula(self)


class Const(Formula):
    __slots__ = ("value",)
    _fields = ("value",)

    def __init__(self, value: bool):
        self._init(bool(value))

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


class Atom(Formula):
    __slots__ = ("name",)
    _fields = ("name",)

    def __init__(self, name: str):
        if not _IDENT.fullmatch(name) or name in _KEYWORDS:
            raise ValueError(f"invalid atom name {name!r}")
        self._init(name)

    @property
    def id(self) -> int:
        return atom_id(self.name)


class Not(Formula):
    __slots__ = ("arg",)
    _fields = ("arg",)

    def __init__(self, arg: Formula):
        self._init(arg)


class _Binary(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self._init(left, right)


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Implies(_Binary):
    __slots__ = ()


TRUE = Const(True)
FALSE = Const(False)

_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")
_KEYWORDS = frozenset({"true", "false"})


def conjoin(fs: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; ``TRUE`` for an empty sequence."""
    out = None
    for f in fs:
        out = f if out is None else And(out, f)
    return TRUE if out is None else out


def disjoin(fs: Iterable[Formula]) -> Formula:
    out = None
    for f in fs:
        out = f if out is None else Or(out, f)
    return FALSE if out is None else out


def atoms_of(f: Formula) -> frozenset:
    """Names of all atoms occurring in ``f``."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, (And, Or, Implies)):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def strip_double_negation(f: Formula) -> Formula:
    """Rewrite every ``~~g`` to ``g``, everywhere in the tree."""
    if isinstance(f, Not):
        if isinstance(f.arg, Not):
            return strip_double_negation(f.arg.arg)
        return Not(strip_double_negation(f.arg))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(strip_double_negation(f.left), strip_double_negation(f.right))
    return f


# ---------------------------------------------------------------------------
# Variable registry.  Atoms and definitional auxiliaries share one id space;
# an auxiliary is keyed by the (negation normal form) subformula it names, so
# the same subformula always gets the same variable and the same definition.

_registry_lock = threading.Lock()
_atom_ids: dict = {}
_aux_ids: dict = {}
_next_id = [1]


def atom_id(name: str) -> int:
    try:
        return _atom_ids[name]
    except KeyError:
        with _registry_lock:
            if name not in _atom_ids:
                _atom_ids[name] = _next_id[0]
                _next_id[0] += 1
            return _atom_ids[name]


def _aux_id(f: Formula) -> int:
    try:
        return _aux_ids[f]
    except KeyError:
        with _registry_lock:
            if f not in _aux_ids:
                _aux_ids[f] = _next_id[0]
                _next_id[0] += 1
            return _aux_ids[f]


# ---------------------------------------------------------------------------
# Parsing and printing


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(->)|([~&|()])|([a-zA-Z][a-zA-Z0-9_]*))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.tokens[self.i][1], self.text)

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.formula()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok and _IDENT.fullmatch(tok):
            self.take()
            return Atom(tok)
        self.fail("expected a formula" if tok else "unexpected end of input")


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula.

    Precedence from tightest: ``~``, ``&``, ``|``, ``->``.  Conjunction and
    disjunction associate to the left, implication to the right.
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "":
        p.fail(f"unexpected token {p.peek()!r}")
    return f


_PREC = {Implies: 1, Or: 2, And: 3}


def format_formula(f: Formula) -> str:
    """Print ``f`` so that ``parse_formula`` gives back the same tree."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        if isinstance(f.arg, (And, Or, Implies)):
            inner = f"({inner})"
        return "~" + inner
    prec = _PREC[type(f)]
    left, right = format_formula(f.left), format_formula(f.right)
    lp = _PREC.get(type(f.left), 4)
    rp = _PREC.get(type(f.right), 4)
    if isinstance(f, Implies):
        # right-associative
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
        return f"{left} -> {right}"
    if lp < prec:
        left = f"({left})"
    if rp <= prec:
        right = f"({right})"
    op = " & " if isinstance(f, And) else " | "
    return left + op + right


# ---------------------------------------------------------------------------
# Clausal form

ClauseSet = frozenset  # frozenset of frozenset of signed variable ids (DIMACS style)


def _nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form with constants folded away (unless the result is one)."""
    if isinstance(f, Const):
        return TRUE if f.value == positive else FALSE
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.arg, not positive)
    if isinstance(f, Implies):
        f = Or(Not(f.left), f.right)
    if isinstance(f, And) == positive:
        # conjunction
        a, b = _nnf(f.left, positive), _nnf(f.right, positive)
        if a == FALSE or b == FALSE:
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE:
            return a
        return And(a, b)
    a, b = _nnf(f.left, positive), _nnf(f.right, positive)
    if a == TRUE or b == TRUE:
        return TRUE
    if a == FALSE:
        return b
    if b == FALSE:
        return a
    return Or(a, b)


def _flatten(f: Formula, kind: type) -> list:
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, kind):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def _literal(f: Formula, defs: list, seen: set) -> int:
    if isinstance(f, Atom):
        return atom_id(f.name)
    if isinstance(f, Not):
        return -atom_id(f.arg.name)
    v = _aux_id(f)
    if v not in seen:
        seen.add(v)
        if isinstance(f, And):
            lits = [_literal(g, defs, seen) for g in _flatten(f, And)]
            for lit in lits:
                defs.append((-v, lit))
            defs.append((v, *(-lit for lit in lits)))
        else:
            lits = [_literal(g, defs, seen) for g in _flatten(f, Or)]
            defs.append((-v, *lits))
            for lit in lits:
                defs.append((v, -lit))
    return v


def _normalize(clauses: Iterable) -> ClauseSet:
    out = set()
    for c in clauses:
        c = frozenset(c)
        if any(-lit in c for lit in c):
            continue
        out.add(c)
    return frozenset(out)


@lru_cache(maxsize=65536)
def to_cnf(f: Formula) -> ClauseSet:
    """Equisatisfiable clause set for ``f``.

    Literals are signed ints (positive = the variable is true).  Tautological
    clauses are dropped.  ``TRUE`` gives the empty set, ``FALSE`` the set
    holding the empty clause.
    """
    g = _nnf(f)
    if g == TRUE:
        return frozenset()
    if g == FALSE:
        return frozenset([frozenset()])
    clauses: list = []
    seen: set = set()
    for conjunct in _flatten(g, And):
        clauses.append(tuple(_literal(d, clauses, seen) for d in _flatten(conjunct, Or)))
    return _normalize(clauses)


# ---------------------------------------------------------------------------
# DPLL with two watched literals and chronological backtracking


def solve(clauses: Iterable) -> Optional[dict]:
    """Return a satisfying assignment ``{var: bool}`` or ``None``.

    Branches on the negative phase first, so models tend to be sparse.
    """
    index: dict = {}
    dense = []
    for c in clauses:
        row = []
        for lit in c:
            v = lit if lit > 0 else -lit
            k = index.get(v)
            if k is None:
                k = index[v] = len(index) + 1
            row.append(k if lit > 0 else -k)
        if not row:
            return None
        dense.append(row)
    n = len(index)
    # lval[l] for l in [-n, n]; negative indices wrap into the upper half.
    lval = [0] * (2 * n + 1)
    watches = [[] for _ in range(2 * n + 1)]
    units = []
    occurrences = [0] * (n + 1)
    for row in dense:
        for lit in row:
            occurrences[lit if lit > 0 else -lit] += 1
        if len(row) == 1:
            units.append(row[0])
        else:
            watches[row[0]].append(row)
            watches[row[1]].append(row)
    order = sorted(range(1, n + 1), key=lambda v: -occurrences[v])
    trail: list = []

    for u in units:
        if lval[u] == -1:
            return None
        if lval[u] == 0:
            lval[u] = 1
            lval[-u] = -1
            trail.append(u)

    def propagate(qhead: int) -> bool:
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            ws = watches[false_lit]
            i = 0
            while i < len(ws):
                c = ws[i]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if lval[first] == 1:
                    i += 1
                    continue
                for k in range(2, len(c)):
                    if lval[c[k]] != -1:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(c)
                        ws[i] = ws[-1]
                        ws.pop()
                        break
                else:
                    if lval[first] == -1:
                        return False
                    lval[first] = 1
                    lval[-first] = -1
                    trail.append(first)
                    i += 1
        return True

    decisions: list = []
    qhead = 0
    while True:
        if not propagate(qhead):
            while decisions:
                mark, lit, flipped = decisions.pop()
                for undo in trail[mark:]:
                    lval[undo] = 0
                    lval[-undo] = 0
                del trail[mark:]
                if not flipped:
                    decisions.append((mark, -lit, True))
                    lval[-lit] = 1
                    lval[lit] = -1
                    trail.append(-lit)
                    qhead = mark
                    break
            else:
                return None
            continue
        qhead = len(trail)
        for v in order:
            if lval[v] == 0:
                break
        else:
            return {orig: lval[k] == 1 for orig, k in index.items()}
        decisions.append((len(trail), -v, False))
        lval[-v] = 1
        lval[v] = -1
        trail.append(-v)


def is_satisfiable(cs: Iterable) -> bool:
    return solve(cs) is not None


def holds(f: Formula, model: dict) -> bool:
    """Truth value of ``f`` where ``model`` maps atom ids to booleans (missing = false)."""
    if isinstance(f, Atom):
        return model.get(atom_id(f.name), False)
    if isinstance(f, Not):
        return not holds(f.arg, model)
    if isinstance(f, And):
        return holds(f.left, model) and holds(f.right, model)
    if isinstance(f, Or):
        return holds(f.left, model) or holds(f.right, model)
    if isinstance(f, Implies):
        return (not holds(f.left, model)) or holds(f.right, model)
    return f.value


# ---------------------------------------------------------------------------
# Entailment


@lru_cache(maxsize=65536)
def _goal_clauses(goal: Formula):
    """Clauses over plain atoms equivalent to ``goal``, or ``None`` if the
    goal is not already in conjunctive shape."""
    g = _nnf(goal)
    if g == TRUE:
        return ()
    if g == FALSE:
        return ((),)
    out = []
    for conjunct in _flatten(g, And):
        clause = []
        for d in _flatten(conjunct, Or):
            if isinstance(d, Atom):
                clause.append(atom_id(d.name))
            elif isinstance(d, Not):
                clause.append(-atom_id(d.arg.name))
            else:
                return None
        out.append(tuple(clause))
    return tuple(out)


class Closure:
    """The deductive closure Th(S) of a finite formula set, never materialized.

    Membership is decided by refutation.  Unit propagation settles most
    entailed goals; every model found along the way is kept and used to
    reject later goals it falsifies, which settles most of the rest.  Full
    DPLL search runs only when both shortcuts are inconclusive.
    """

    MAX_MODELS = 24

    def __init__(self, generators: Iterable[Formula]):
        self.generators = frozenset(generators)
        clauses = set()
        for g in self.generators:
            clauses |= to_cnf(g)
        self._clauses = [tuple(c) for c in clauses]
        self._models: list = []
        self._answers: dict = {}
        self._consistent: Optional[bool] = None
        self._occ: Optional[dict] = None
        self._implied: Optional[set] = None
        self._lock = threading.Lock()

    def _propagate(self, assigned: set, queue: list) -> bool:
        """Extend ``assigned`` by unit propagation; True on conflict."""
        occ = self._occ
        while queue:
            lit = queue.pop()
            for c in occ.get(-lit, ()):
                unit = 0
                for lit2 in c:
                    if lit2 in assigned:
                        break
                    if -lit2 not in assigned:
                        if unit:
                            break
                        unit = lit2
                else:
                    if not unit:
                        return True
                    assigned.add(unit)
                    queue.append(unit)
        return False

    def _prepare(self) -> None:
        occ: dict = {}
        units = set()
        for c in self._clauses:
            if len(c) == 1:
                units.add(c[0])
            for lit in c:
                occ.setdefault(lit, []).append(c)
        self._occ = occ
        implied = set(units)
        if any(-u in units for u in units) or () in self._clauses \
                or self._propagate(implied, list(units)):
            self._consistent = False
            return
        self._implied = implied
        model = self._greedy_model(set(implied)) or solve(self._clauses)
        self._consistent = model is not None
        if model is not None:
            self._models.append(model)

    def _greedy_model(self, assigned: set) -> Optional[dict]:
        """Try to complete a propagated partial assignment without backtracking.

        Unsatisfied clauses are fixed by their first unassigned negative
        literal (else their first unassigned one).  Returns ``None`` on any
        conflict; the caller then falls back to full search.
        """
        for c in self._clauses:
            pick = 0
            for lit in c:
                if lit in assigned:
                    break
                if -lit not in assigned and (not pick or (lit < 0 < pick)):
                    pick = lit
            else:
                if not pick:
                    return None
                assigned.add(pick)
                if self._propagate(assigned, [pick]):
                    return None
        return {abs(lit): lit > 0 for lit in assigned}

    @property
    def consistent(self) -> bool:
        if self._consistent is None:
            with self._lock:
                if self._consistent is None:
                    self._prepare()
        return self._consistent

    def _remember(self, model: dict) -> None:
        with self._lock:
            if len(self._models) >= self.MAX_MODELS:
                self._models.pop(1)
            self._models.append(model)

    def _entails_clause(self, clause: tuple) -> bool:
        implied = self._implied
        if any(lit in implied for lit in clause):
            return True
        negated = [-lit for lit in clause]
        if any(-lit in implied for lit in negated):
            assigned = set(implied)
        else:
            assigned = set(implied)
            assigned.update(negated)
            if any(-lit in assigned for lit in negated) or self._propagate(assigned, negated):
                return True
        model = self._greedy_model(assigned) or solve(self._clauses + [(lit,) for lit in negated])
        if model is None:
            return True
        self._remember(model)
        return False

    def entails(self, goal: Formula) -> bool:
        answer = self._answers.get(goal)
        if answer is not None:
            return answer
        if not self.consistent:
            answer = True
        elif any(not holds(goal, m) for m in self._models):
            answer = False
        else:
            clauses = _goal_clauses(goal)
            if clauses is not None:
                answer = all(self._entails_clause(c) for c in clauses)
            else:
                model = solve(self._clauses + list(to_cnf(Not(goal))))
                answer = model is None
                if model is not None:
                    self._remember(model)
        self._answers[goal] = answer
        return answer

    def __contains__(self, goal: Formula) -> bool:
        return self.entails(goal)


class Prover:
    """Entailment front end with a bounded, thread-safe cache of closures.

    ``queries`` counts every entailment question put to the prover, cached
    or not.
    """

    def __init__(self, max_closures: int = 4096):
        self.max_closures = max_closures
        self._closures: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.queries = 0

    def closure(self, base: Iterable[Formula]) -> Closure:
        key = base if isinstance(base, frozenset) else frozenset(base)
        with self._lock:
            c = self._closures.get(key)
            if c is not None:
                self._closures.move_to_end(key)
                return c
        c = Closure(key)
        with self._lock:
            c = self._closures.setdefault(key, c)
            if len(self._closures) > self.max_closures:
                self._closures.popitem(last=False)
        return c

    def entails(self, base: Iterable[Formula], goal: Formula) -> bool:
        with self._lock:
            self.queries += 1
        return self.closure(base).entails(goal)

    def is_consistent(self, base: Iterable[Formula]) -> bool:
        with self._lock:
            self.queries += 1
        return self.closure(base).consistent


def entails(base: Iterable[Formula], goal: Formula) -> bool:
    """True iff every model of ``base`` satisfies ``goal``."""
    return Closure(base).entails(goal)


def is_consistent(base: Iterable[Formula]) -> bool:
    return Closure(base).consistent
