"""0/1 linear models for the strong and doubly metric dimension, in LP format.

Variables are ``y_<i>`` (vertex i in the set) and ``x_<i>_<j>`` (both i and j
in the set), 1-indexed, ``i < j``. All coefficients are integers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .graph import DistanceMatrix
from .resolving import vertex_pairs

MAX_LINE = 255

Term = tuple[int, str]


class LpParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[Term, ...]
    sense: str  # ">=" or "<="
    rhs: int


@dataclass
class IlpModel:
    objective: list[Term]
    constraints: list[Constraint]
    binaries: list[str]

    def validate(self) -> None:
        if not self.constraints:
            raise ModelError("model has no constraints")
        known = set(self.binaries)
        if len(known) != len(self.binaries):
            raise ModelError("duplicate binary variable")
        names = set()
        for c in self.constraints:
            if c.name in names:
                raise ModelError(f"duplicate constraint name {c.name}")
            names.add(c.name)
            if c.sense not in (">=", "<="):
                raise ModelError(f"{c.name}: bad sense {c.sense!r}")
            if not c.terms:
                raise ModelError(f"{c.name}: empty constraint row")
            for _, var in c.terms:
                if var not in known:
                    raise ModelError(f"{c.name}: variable {var} is not declared binary")
        for _, var in self.objective:
            if var not in known:
                raise ModelError(f"objective variable {var} is not declared binary")

    def counts(self) -> tuple[int, int]:
        """``(variables, constraints)``."""
        return len(self.binaries), len(self.constraints)


def _y(i: int) -> str:
    return f"y_{i + 1}"


def _x(i: int, j: int) -> str:
    return f"x_{i + 1}_{j + 1}"


def build_strong_ilp(dm: DistanceMatrix) -> IlpModel:
    """min sum y_i subject to, for each pair u < v, a cover row over the
    vertices i with u on a shortest v-i path or v on a shortest u-i path."""
    dm.require_connected()
    n = dm.n
    if n < 2:
        raise ModelError("model needs at least two vertices")
    d = dm.rows()
    cons = []
    for u, v in vertex_pairs(n):
        duv = d[u][v]
        terms = tuple(
            (1, _y(i)) for i in range(n)
            if d[u][i] == duv + d[v][i] or d[v][i] == duv + d[u][i]
        )
        if not terms:
            raise ModelError(f"pair ({u + 1},{v + 1}) cannot be strongly resolved")
        cons.append(Constraint(f"c_{u + 1}_{v + 1}", terms, ">=", 1))
    ys = [_y(i) for i in range(n)]
    model = IlpModel([(1, y) for y in ys], cons, ys)
    model.validate()
    return model


def build_doubly_ilp(dm: DistanceMatrix) -> IlpModel:
    """min sum y_k subject to a cover row over x_ij per pair, and
    2 x_ij - y_i - y_j <= 0, x_ij - y_i - y_j >= -1 linking x to y."""
    dm.require_connected()
    n = dm.n
    if n < 2:
        raise ModelError("model needs at least two vertices")
    d = dm.rows()
    pairs = vertex_pairs(n)
    cons = []
    for u, v in pairs:
        diff = [d[u][i] - d[v][i] for i in range(n)]
        terms = tuple((1, _x(i, j)) for i, j in pairs if diff[i] != diff[j])
        if not terms:
            raise ModelError(f"pair ({u + 1},{v + 1}) cannot be doubly resolved")
        cons.append(Constraint(f"c_{u + 1}_{v + 1}", terms, ">=", 1))
    for i, j in pairs:
        x, yi, yj = _x(i, j), _y(i), _y(j)
        cons.append(Constraint(f"u_{i + 1}_{j + 1}", ((2, x), (-1, yi), (-1, yj)), "<=", 0))
        cons.append(Constraint(f"l_{i + 1}_{j + 1}", ((1, x), (-1, yi), (-1, yj)), ">=", -1))
    ys = [_y(i) for i in range(n)]
    xs = [_x(i, j) for i, j in pairs]
    model = IlpModel([(1, y) for y in ys], cons, ys + xs)
    model.validate()
    return model


# -- LP text -----------------------------------------------------------------


def _term_tokens(terms) -> list[str]:
    out = []
    for idx, (coef, var) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{mag} {var}"
        if idx == 0:
            out.append(body if sign == "+" else f"- {body}")
        else:
            out.append(f"{sign} {body}")
    return out


def _wrap(head: str, tokens: list[str]) -> list[str]:
    lines = []
    line = head
    for tok in tokens:
        candidate = f"{line} {tok}" if line.strip() else f"{line}{tok}"
        if len(candidate) > MAX_LINE and line.strip():
            lines.append(line)
            line = f" {tok}"
        else:
            line = candidate
    lines.append(line)
    return lines


def write_lp(model: IlpModel) -> str:
    model.validate()
    out = ["Minimize"]
    out += _wrap(" obj:", _term_tokens(model.objective))
    out.append("Subject To")
    for c in model.constraints:
        out += _wrap(f" {c.name}:", _term_tokens(c.terms) + [c.sense, str(c.rhs)])
    out.append("Binaries")
    out += _wrap(" ", model.binaries)
    out.append("End")
    return "\n".join(out) + "\n"


_VAR_RE = re.compile(r"^(y_[1-9]\d*|x_[1-9]\d*_[1-9]\d*)$")
_SECTIONS = {"minimize": "obj", "subject to": "st", "binaries": "bin", "end": "end"}


def _parse_terms(tokens: list[tuple[str, int]]) -> list[Term]:
    terms = []
    sign = 1
    coef: Optional[int] = None
    expecting_sign = False
    for tok, line in tokens:
        if tok in ("+", "-"):
            if coef is not None:
                raise LpParseError(f"dangling coefficient before {tok!r}", line)
            sign = -1 if tok == "-" else 1
            expecting_sign = False
            continue
        if expecting_sign:
            raise LpParseError(f"expected '+' or '-' before {tok!r}", line)
        if tok.isdigit():
            if coef is not None:
                raise LpParseError("two coefficients in a row", line)
            coef = int(tok)
            continue
        if not _VAR_RE.match(tok):
            raise LpParseError(f"bad variable name {tok!r}", line)
        if tok.startswith("x_"):
            i, j = (int(p) for p in tok[2:].split("_"))
            if i >= j:
                raise LpParseError(f"{tok}: pair variables need i < j", line)
        terms.append((sign * (1 if coef is None else coef), tok))
        sign, coef, expecting_sign = 1, None, True
    if coef is not None:
        raise LpParseError("coefficient without variable", tokens[-1][1])
    return terms


def _check_var(tok: str, line: int) -> None:
    if not _VAR_RE.match(tok):
        raise LpParseError(f"bad variable name {tok!r}", line)


def read_lp(text: str) -> IlpModel:
    """Parse the dialect written by :func:`write_lp`."""
    section = None
    seen = []
    obj_tokens: list[tuple[str, int]] = []
    rows: list[tuple[str, int, list[tuple[str, int]]]] = []
    binaries: list[tuple[str, int]] = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("\\"):
            continue
        key = stripped.lower()
        if key in _SECTIONS and not raw.startswith(" "):
            new = _SECTIONS[key]
            expected = ["obj", "st", "bin", "end"][len(seen)] if len(seen) < 4 else None
            if new != expected:
                raise LpParseError(f"unexpected section header {stripped!r}", lineno)
            seen.append(new)
            section = new
            if new == "end":
                ended = True
            continue
        if ended:
            raise LpParseError("content after End", lineno)
        if section is None:
            raise LpParseError("content before 'Minimize'", lineno)
        tokens = stripped.split()
        if section == "obj":
            if not obj_tokens:
                if tokens[0] != "obj:":
                    raise LpParseError("objective must be named 'obj:'", lineno)
                tokens = tokens[1:]
            elif tokens[0].endswith(":"):
                raise LpParseError(f"row {tokens[0][:-1]!r} outside 'Subject To'", lineno)
            obj_tokens += [(t, lineno) for t in tokens]
        elif section == "st":
            if tokens[0].endswith(":"):
                rows.append((tokens[0][:-1], lineno, []))
                tokens = tokens[1:]
            elif not rows:
                raise LpParseError("constraint without a name", lineno)
            rows[-1][2].extend((t, lineno) for t in tokens)
        elif section == "bin":
            for t in tokens:
                _check_var(t, lineno)
                binaries.append((t, lineno))
    if not ended:
        raise LpParseError("missing 'End' section")
    if "st" not in seen:
        raise LpParseError("missing 'Subject To' section")

    known: set[str] = set()
    for b, lineno in binaries:
        if b in known:
            raise LpParseError(f"duplicate binary {b}", lineno)
        known.add(b)
    bin_names = [b for b, _ in binaries]

    objective = _parse_terms(obj_tokens) if obj_tokens else []
    for _, var in objective:
        if var not in known:
            raise LpParseError(f"unknown variable {var} in objective", obj_tokens[0][1])

    constraints = []
    names = set()
    for name, lineno, toks in rows:
        if name in names:
            raise LpParseError(f"duplicate constraint name {name}", lineno)
        names.add(name)
        if len(toks) < 3 or toks[-2][0] not in (">=", "<="):
            raise LpParseError(f"{name}: expected '<terms> >=|<= <rhs>'", lineno)
        try:
            rhs = int(toks[-1][0])
        except ValueError:
            raise LpParseError(f"{name}: non-integer right-hand side", toks[-1][1]) from None
        terms = _parse_terms(toks[:-2])
        for _, var in terms:
            if var not in known:
                raise LpParseError(f"unknown variable {var}", lineno)
        constraints.append(Constraint(name, tuple(terms), toks[-2][0], rhs))
    return IlpModel(objective, constraints, bin_names)


# -- tiny exhaustive evaluator -------------------------------------------------


def solve_exhaustive(model: IlpModel, max_enumerated: int = 20) -> tuple[int, dict[str, int]]:
    """Optimal objective of a small 0/1 model.

    Every assignment of the objective variables is enumerated (at most
    ``max_enumerated`` of them); the remaining variables are fixed by unit
    propagation through the constraints and, if any stay free, enumerated as
    well. Returns ``(optimum, assignment)``; raises ``ModelError`` if the
    model is infeasible or too large.
    """
    model.validate()
    obj_vars = [v for _, v in model.objective]
    weight = dict((v, c) for c, v in model.objective)
    rest = [v for v in model.binaries if v not in weight]
    if len(obj_vars) > max_enumerated:
        raise ModelError(f"{len(obj_vars)} objective variables exceed the enumeration cap")

    best: Optional[tuple[int, dict[str, int]]] = None
    for bits in itertools.product((0, 1), repeat=len(obj_vars)):
        value = sum(weight[v] * b for v, b in zip(obj_vars, bits))
        if best is not None and value >= best[0]:
            continue
        fixed = dict(zip(obj_vars, bits))
        sol = _complete(model, fixed, rest, max_enumerated)
        if sol is not None:
            best = (value, sol)
    if best is None:
        raise ModelError("model is infeasible")
    return best


def _row_bounds(c: Constraint, fixed: dict[str, int]) -> tuple[int, list[Term]]:
    const = 0
    free = []
    for coef, var in c.terms:
        if var in fixed:
            const += coef * fixed[var]
        else:
            free.append((coef, var))
    return const, free


def _satisfied(c: Constraint, lhs: int) -> bool:
    return lhs >= c.rhs if c.sense == ">=" else lhs <= c.rhs


def _complete(model: IlpModel, fixed: dict[str, int], free_vars: list[str], cap: int):
    fixed = dict(fixed)
    changed = True
    while changed:
        changed = False
        for c in model.constraints:
            const, free = _row_bounds(c, fixed)
            if not free:
                if not _satisfied(c, const):
                    return None
                continue
            if len(free) == 1:
                coef, var = free[0]
                ok = [b for b in (0, 1) if _satisfied(c, const + coef * b)]
                if not ok:
                    return None
                if len(ok) == 1:
                    fixed[var] = ok[0]
                    changed = True
    left = [v for v in free_vars if v not in fixed]
    if len(left) > cap:
        raise ModelError(f"{len(left)} variables left free after propagation")
    for bits in itertools.product((0, 1), repeat=len(left)):
        trial = {**fixed, **dict(zip(left, bits))}
        if all(_satisfied(c, _row_bounds(c, trial)[0]) for c in model.constraints):
            return trial
    return None
