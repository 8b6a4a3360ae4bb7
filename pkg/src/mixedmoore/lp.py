"""LP-format export of :class:`~mixedmoore.model.IpModel` and solution import.

The dialect is the plain CPLEX LP subset that every major solver reads:
``Minimize`` / ``Subject To`` / ``Bounds`` / ``Binary`` / ``End``.  The
objective constant is carried by a variable ``const_one`` fixed to 1.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

from .errors import FixingViolated, NonBinaryValue, ParseError, UnknownVariable
from .model import IpModel, x, y

CONST_VAR = "const_one"
MAX_LINE = 255
BINARY_TOL = 1e-6

SECTIONS = ("minimize", "maximize", "subject to", "bounds", "binary", "end")


def _term(coef: int, name: str, first: bool) -> str:
    mag = abs(coef)
    body = name if mag == 1 else f"{mag} {name}"
    if first:
        return body if coef >= 0 else f"-{body}"
    return f"{'+' if coef > 0 else '-'} {body}"


def _wrap(head: str, tokens) -> str:
    lines = []
    line = head
    for tok in tokens:
        if len(line) + 1 + len(tok) > MAX_LINE:
            lines.append(line)
            line = " " + tok
        else:
            line = f"{line} {tok}"
    lines.append(line)
    return "\n".join(lines) + "\n"


def format_row(name: str, terms, sense: str, rhs: int) -> str:
    tokens = [_term(cf, nm, i == 0) for i, (nm, cf) in enumerate(terms)]
    if not tokens:
        tokens = ["0", CONST_VAR]
    tokens.append(f"{sense} {rhs}")
    return _wrap(f" {name}:", tokens)


def _sections(comments, sense, obj_name, obj_terms, rows, bounds, binaries):
    yield "".join(f"\\ {c}\n" for c in comments)
    yield "Minimize\n" if sense == "minimize" else "Maximize\n"
    yield _wrap(f" {obj_name}:", [_term(cf, nm, i == 0) for i, (nm, cf) in enumerate(obj_terms)])
    yield "Subject To\n"
    for name, terms, rsense, rhs in rows:
        yield format_row(name, terms, rsense, rhs)
    yield "Bounds\n"
    for name, val in bounds:
        yield f" {name} = {val}\n"
    yield "Binary\n"
    for name in binaries:
        yield f" {name}\n"
    yield "End\n"


def _model_parts(model: IpModel):
    obj = model.objective
    obj_terms = ((CONST_VAR, obj.constant),) + obj.terms
    counters = {}

    def rows():
        for row in model.constraints():
            counters[row.family] = counters.get(row.family, 0) + 1
            yield f"R{row.family}{counters[row.family]}", row.terms, row.sense, row.rhs

    bounds = sorted(list(model.fixings.items()) + [(CONST_VAR, 1)])
    binaries = sorted(list(model.variables()) + [CONST_VAR])
    comments = [f"minimum-status radial Moore graph model r={model.r} z={model.z} n={model.n}"]
    return comments, obj.sense, "obj", obj_terms, rows(), bounds, binaries


def write_lp(model: IpModel, fh=None):
    """Serialise ``model``; returns the text when no file handle is given."""
    out = fh if fh is not None else io.StringIO()
    for chunk in _sections(*_model_parts(model)):
        out.write(chunk)
    if fh is None:
        return out.getvalue()
    return None


@dataclass
class LpProblem:
    """Parsed LP document, kept only for round-trip checks."""

    comments: list = field(default_factory=list)
    sense: str = "minimize"
    obj_name: str = "obj"
    obj_terms: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    bounds: list = field(default_factory=list)
    binaries: list = field(default_factory=list)

    def render(self) -> str:
        return "".join(_sections(self.comments, self.sense, self.obj_name, self.obj_terms,
                                 self.rows, self.bounds, self.binaries))

    @property
    def variables(self) -> set:
        return set(self.binaries)


def _parse_expr(tokens, where):
    terms = []
    sign, coef = 1, None
    for tok in tokens:
        if tok in ("+", "-"):
            sign = 1 if tok == "+" else -1
            continue
        try:
            coef = int(tok)
            continue
        except ValueError:
            pass
        neg = tok.startswith("-")
        name = tok[1:] if neg else tok
        terms.append((name, sign * (1 if coef is None else coef) * (-1 if neg else 1)))
        sign, coef = 1, None
    if coef is not None:
        raise ParseError(f"{where}: dangling coefficient")
    return terms


def _statements(lines):
    """Group continuation lines (leading whitespace, no label) with their head."""
    current = None
    for line in lines:
        head = line.split(None, 1)[0] if line.strip() else ""
        if current is not None and not head.endswith(":"):
            current.append(line)
        else:
            if current is not None:
                yield " ".join(current)
            current = [line]
    if current is not None:
        yield " ".join(current)


def parse_lp(text: str) -> LpProblem:
    prob = LpProblem()
    section = None
    buckets = {s: [] for s in SECTIONS}
    for raw in text.split("\n"):
        if raw.startswith("\\"):
            prob.comments.append(raw[2:] if raw.startswith("\\ ") else raw[1:])
            continue
        key = raw.strip().lower()
        if key in SECTIONS:
            section = key
            if key in ("minimize", "maximize"):
                prob.sense = key
            continue
        if not raw.strip():
            continue
        if section is None:
            raise ParseError(f"content before any section: {raw!r}")
        buckets[section].append(raw)
    obj = list(_statements(buckets[prob.sense]))
    if len(obj) != 1:
        raise ParseError("expected exactly one objective statement")
    label, rest = obj[0].split(":", 1)
    prob.obj_name = label.strip()
    prob.obj_terms = _parse_expr(rest.split(), "objective")
    for stmt in _statements(buckets["subject to"]):
        label, rest = stmt.split(":", 1)
        toks = rest.split()
        if len(toks) < 2 or toks[-2] not in ("<=", ">=", "="):
            raise ParseError(f"row {label.strip()}: missing comparator")
        terms = _parse_expr(toks[:-2], label.strip())
        if terms == [(CONST_VAR, 0)]:
            terms = []
        prob.rows.append((label.strip(), tuple(terms), toks[-2], int(toks[-1])))
    for line in buckets["bounds"]:
        name, eq, val = line.split()
        if eq != "=":
            raise ParseError(f"unsupported bound {line!r}")
        prob.bounds.append((name, int(val)))
    for line in buckets["binary"]:
        prob.binaries.extend(line.split())
    return prob


def parse_solution(text: str, model: IpModel) -> dict:
    """Read ``name value`` lines into a 0/1 assignment checked against ``model``."""
    assignment = {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'name value', got {raw!r}")
        name, sval = parts
        if name != CONST_VAR and not model.is_variable(name):
            raise UnknownVariable(f"line {lineno}: unknown variable {name!r}")
        try:
            val = float(sval)
        except ValueError:
            raise ParseError(f"line {lineno}: bad value {sval!r}") from None
        if not math.isfinite(val) or abs(val - round(val)) > BINARY_TOL or round(val) not in (0, 1):
            raise NonBinaryValue(f"line {lineno}: {name} = {sval} is not binary")
        assignment[name] = int(round(val))
    if assignment.pop(CONST_VAR, 1) != 1:
        raise FixingViolated(f"{CONST_VAR} must be 1")
    n = model.n
    missing = [v for i in range(n) for j in range(n) for v in (x(i, j), y(i, j)) if v not in assignment]
    if missing:
        raise ParseError(f"{len(missing)} edge/arc variables missing, e.g. {missing[0]}")
    for name, val in model.fixings.items():
        if name in assignment and assignment[name] != val:
            raise FixingViolated(f"{name} = {assignment[name]} but the model fixes it to {val}")
    return assignment


def format_solution(assignment: dict) -> str:
    return "".join(f"{name} {val}\n" for name, val in sorted(assignment.items()))
