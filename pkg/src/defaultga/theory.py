"""Default theories: data model, text format and preprocessing.

File format::

    # comment
    W: a. b | c.
    D: a : ~b / d.
       c : e / e.
       : b / ~b.          # no prerequisite means ``true``
       a : / c.           # no justifications

Section headers (``W:`` and ``D:``) must start a line.  Every fact and every
default is terminated by ``.``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .formula import (
    TRUE, Formula, FormulaSyntaxError, Not, Prover, format_formula, parse_formula,
    strip_double_negation,
)


@dataclass(frozen=True)
class Default:
    id: int
    prereq: Formula
    justifs: tuple
    conseq: Formula

    def __str__(self) -> str:
        parts = [] if self.prereq == TRUE else [format_formula(self.prereq)]
        parts.append(":")
        if self.justifs:
            parts.append(", ".join(format_formula(j) for j in self.justifs))
        parts += ["/", format_formula(self.conseq)]
        return " ".join(parts)


@dataclass(frozen=True)
class DefaultTheory:
    facts: tuple = ()
    defaults: tuple = ()

    def __post_init__(self):
        for i, d in enumerate(self.defaults):
            if d.id != i:
                raise ValueError(f"default at position {i} has id {d.id}")

    @classmethod
    def build(cls, facts: Sequence, defaults: Sequence) -> "DefaultTheory":
        """Build from formulas/strings and ``(prereq, justifs, conseq)`` triples."""
        def f(x):
            return parse_formula(x) if isinstance(x, str) else x
        ds = []
        for i, (pre, justifs, conseq) in enumerate(defaults):
            ds.append(Default(i, TRUE if pre is None else f(pre),
                              tuple(f(j) for j in justifs), f(conseq)))
        return cls(tuple(f(x) for x in facts), tuple(ds))

    def with_facts(self, extra: Sequence[Formula]) -> "DefaultTheory":
        return DefaultTheory(self.facts + tuple(extra), self.defaults)


class TheorySyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_HEADER = re.compile(r"^[ \t]*([WD])[ \t]*:", re.MULTILINE)


def _line_col(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _parse_piece(text: str, source: str, start: int) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as e:
        raise TheorySyntaxError(str(e).rsplit(" at position", 1)[0],
                                *_line_col(source, start + e.pos)) from None


def _statements(source: str, start: int, end: int):
    """Yield ``(offset, text)`` for each ``.``-terminated statement in a section."""
    body = source[start:end]
    pos = 0
    while True:
        dot = body.find(".", pos)
        if dot < 0:
            rest = body[pos:]
            if rest.strip():
                off = start + pos + (len(rest) - len(rest.lstrip()))
                raise TheorySyntaxError("missing '.' terminator", *_line_col(source, off))
            return
        yield start + pos, body[pos:dot]
        pos = dot + 1


def parse_theory(text: str) -> DefaultTheory:
    """Parse the theory format described in the module docstring."""
    # blank out comments, keeping offsets intact for error positions
    source = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    headers = list(_HEADER.finditer(source))
    if headers:
        lead = source[:headers[0].start()]
    else:
        lead = source
    if lead.strip():
        off = len(lead) - len(lead.lstrip())
        raise TheorySyntaxError("expected 'W:' or 'D:' section header", *_line_col(source, off))
    sections: dict = {}
    for k, m in enumerate(headers):
        name = m.group(1)
        if name in sections:
            raise TheorySyntaxError(f"duplicate section {name!r}", *_line_col(source, m.start(1)))
        end = headers[k + 1].start() if k + 1 < len(headers) else len(source)
        sections[name] = (m.end(), end)

    facts = []
    if "W" in sections:
        for off, stmt in _statements(source, *sections["W"]):
            if not stmt.strip():
                raise TheorySyntaxError("empty fact", *_line_col(source, off))
            facts.append(_parse_piece(stmt, source, off))

    defaults = []
    if "D" in sections:
        for off, stmt in _statements(source, *sections["D"]):
            defaults.append(_parse_default(stmt, source, off, len(defaults)))
    return DefaultTheory(tuple(facts), tuple(defaults))


def _parse_default(stmt: str, source: str, off: int, ident: int) -> Default:
    colon = stmt.find(":")
    slash = stmt.find("/", colon + 1)
    if colon < 0 or slash < 0:
        raise TheorySyntaxError("default must look like 'prereq : justif, ... / conseq'",
                                *_line_col(source, off + len(stmt) - len(stmt.lstrip())))
    pre_text = stmt[:colon]
    prereq = TRUE if not pre_text.strip() else _parse_piece(pre_text, source, off)
    justifs = []
    jtext = stmt[colon + 1:slash]
    if jtext.strip():
        jpos = off + colon + 1
        for part in jtext.split(","):
            if not part.strip():
                raise TheorySyntaxError("empty justification", *_line_col(source, jpos))
            justifs.append(_parse_piece(part, source, jpos))
            jpos += len(part) + 1
    ctext = stmt[slash + 1:]
    if not ctext.strip():
        raise TheorySyntaxError("missing consequent", *_line_col(source, off + slash + 1))
    conseq = _parse_piece(ctext, source, off + slash + 1)
    return Default(ident, prereq, tuple(justifs), conseq)


def format_theory(t: DefaultTheory) -> str:
    lines = ["W:"]
    lines += [f"  {format_formula(f)}." for f in t.facts]
    lines.append("D:")
    lines += [f"  {d}." for d in t.defaults]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Preprocessing


def is_self_blocking(d: Default) -> bool:
    """``alpha : beta / ~beta``, matched syntactically modulo double negation."""
    if len(d.justifs) != 1:
        return False
    return strip_double_negation(d.conseq) == strip_double_negation(Not(d.justifs[0]))


@dataclass(frozen=True)
class PreprocessedTheory:
    base: DefaultTheory
    encoded: tuple
    constraints: tuple
    force_prereq: tuple
    force_justif: tuple
    one_bit: bool = False

    @property
    def facts(self) -> tuple:
        return self.base.facts

    @property
    def length(self) -> int:
        """Chromosome length."""
        return len(self.encoded) * (1 if self.one_bit else 2)

    @property
    def forced(self) -> dict:
        """Map from 0-based bit position to its forced value."""
        out = {}
        if self.one_bit:
            return out
        for i in range(len(self.encoded)):
            if self.force_prereq[i]:
                out[2 * i] = "1"
            if self.force_justif[i]:
                out[2 * i + 1] = "1"
        return out

    def apply_forced(self, bits: str) -> str:
        forced = self.forced
        if not forced:
            return bits
        chars = list(bits)
        for k, v in forced.items():
            chars[k] = v
        return "".join(chars)


def preprocess(t: DefaultTheory, prover: Optional[Prover] = None,
               one_bit: bool = False) -> PreprocessedTheory:
    """Split off self-blocking defaults and compute forced chromosome bits.

    ``one_bit`` selects the one-bit-per-default representation (applied or
    not); it carries no forced bits.
    """
    prover = prover or Prover()
    encoded, constraints = [], []
    for d in t.defaults:
        (constraints if is_self_blocking(d) else encoded).append(d)
    w = frozenset(t.facts)
    force_prereq = tuple(prover.entails(w, d.prereq) for d in encoded)
    force_justif = tuple(any(prover.entails(w, Not(j)) for j in d.justifs) for d in encoded)
    return PreprocessedTheory(t, tuple(encoded), tuple(constraints),
                              force_prereq, force_justif, one_bit)
