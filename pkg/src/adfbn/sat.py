"""Self-contained satisfiability engine.

Clauses are tuples of nonzero integers in the usual convention (positive
integer = variable true, negative = false).  The decision procedure is an
iterative DPLL with two-watched-literal unit propagation and chronological
backtracking; branching always picks the lowest-indexed unassigned
variable and tries true first, so runs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from . import formula as fm


class BudgetExceededError(Exception):
    """The configured decision budget ran out before an answer was reached."""


@dataclass
class Cnf:
    """Clause list plus variable count; tautological clauses are dropped and
    duplicate literals removed at insertion."""

    num_vars: int = 0
    clauses: list = field(default_factory=list)

    def add_clause(self, literals: Iterable[int]) -> None:
        seen = set()
        out = []
        for lit in literals:
            if lit == 0 or not isinstance(lit, int):
                raise ValueError(f"bad literal: {lit!r}")
            if -lit in seen:
                return  # tautological clause
            if lit not in seen:
                seen.add(lit)
                out.append(lit)
                if abs(lit) > self.num_vars:
                    self.num_vars = abs(lit)
        self.clauses.append(tuple(out))

    def add_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def copy(self) -> "Cnf":
        return Cnf(self.num_vars, list(self.clauses))


@dataclass(frozen=True)
class SatResult:
    """SAT with a total assignment (var -> bool), or UNSAT."""

    satisfiable: bool
    assignment: Optional[dict] = None


def _check_model(clauses, assignment) -> bool:
    for clause in clauses:
        if not any(assignment[abs(l)] == (l > 0) for l in clause):
            return False
    return True


def solve(
    cnf: Cnf,
    assumptions: Sequence[int] = (),
    budget: Optional[int] = None,
) -> SatResult:
    """Complete decision procedure; assumptions are literals forced before
    any branching.  Raises BudgetExceededError when the decision budget is
    exhausted (never silently reported as UNSAT)."""
    nvars = cnf.num_vars
    for lit in assumptions:
        if abs(lit) > nvars:
            nvars = abs(lit)

    val = [-1] * (nvars + 1)  # -1 undef, else 0/1
    trail = []
    qhead = 0

    def assign(lit: int) -> bool:
        var = lit if lit > 0 else -lit
        want = 1 if lit > 0 else 0
        if val[var] != -1:
            return val[var] == want
        val[var] = want
        trail.append(lit)
        return True

    # watch lists indexed by 2*var + (literal is negative)
    watches = [[] for _ in range(2 * (nvars + 1))]
    clauses = []
    for clause in cnf.clauses:
        if not clause:
            return SatResult(False)
        if len(clause) == 1:
            if not assign(clause[0]):
                return SatResult(False)
            continue
        ci = len(clauses)
        clauses.append(list(clause))
        for lit in clause[:2]:
            watches[2 * abs(lit) + (lit < 0)].append(ci)
    for lit in assumptions:
        if not assign(lit):
            return SatResult(False)

    def value(lit: int) -> int:
        v = val[lit if lit > 0 else -lit]
        if v == -1:
            return -1
        return v if lit > 0 else 1 - v

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            false_lit = -lit
            wl = watches[2 * abs(false_lit) + (false_lit < 0)]
            i = j = 0
            while i < len(wl):
                ci = wl[i]
                i += 1
                cl = clauses[ci]
                if cl[0] == false_lit:
                    cl[0], cl[1] = cl[1], cl[0]
                first = cl[0]
                if value(first) == 1:
                    wl[j] = ci
                    j += 1
                    continue
                for k in range(2, len(cl)):
                    if value(cl[k]) != 0:
                        cl[1], cl[k] = cl[k], cl[1]
                        watches[2 * abs(cl[1]) + (cl[1] < 0)].append(ci)
                        break
                else:
                    wl[j] = ci
                    j += 1
                    if value(first) == 0:
                        while i < len(wl):
                            wl[j] = wl[i]
                            j += 1
                            i += 1
                        del wl[j:]
                        return False
                    assign(first)
            del wl[j:]
        return True

    if not propagate():
        return SatResult(False)

    decisions = []  # (trail length before the decision, literal, already flipped)
    spent = 0
    next_var = 1
    while True:
        var = next_var
        while var <= nvars and val[var] != -1:
            var += 1
        if var > nvars:
            assignment = {v: val[v] == 1 for v in range(1, nvars + 1)}
            if not _check_model(cnf.clauses, assignment):
                raise RuntimeError("internal error: model fails a clause")
            return SatResult(True, assignment)
        if budget is not None:
            spent += 1
            if spent > budget:
                raise BudgetExceededError(f"decision budget of {budget} exhausted")
        decisions.append((len(trail), var, False))
        assign(var)
        next_var = var + 1
        while not propagate():
            while decisions and decisions[-1][2]:
                mark, lit, _ = decisions.pop()
                for l in trail[mark:]:
                    val[abs(l)] = -1
                del trail[mark:]
            if not decisions:
                return SatResult(False)
            mark, lit, _ = decisions.pop()
            for l in trail[mark:]:
                val[abs(l)] = -1
            del trail[mark:]
            qhead = len(trail)
            decisions.append((mark, -lit, True))
            assign(-lit)
            next_var = 1


def solve_all(
    cnf: Cnf,
    projection: Sequence[int],
    budget: Optional[int] = None,
) -> Iterator[dict]:
    """Enumerate the projections of all models onto the given variables,
    each exactly once, by blocking every found projection."""
    work = cnf.copy()
    projection = list(projection)
    for var in projection:
        if var > work.num_vars:
            work.num_vars = var
    while True:
        result = solve(work, budget=budget)
        if not result.satisfiable:
            return
        model = {v: result.assignment[v] for v in projection}
        yield model
        if not projection:
            return
        work.add_clause([-v if model[v] else v for v in projection])


# -- structural CNF transformation --------------------------------------------


def _fold_constants(phi: fm.Formula) -> fm.Formula:
    if isinstance(phi, (fm.Const, fm.Var)):
        return phi
    if isinstance(phi, fm.Not):
        child = _fold_constants(phi.child)
        if isinstance(child, fm.Const):
            return fm.Const(not child.value)
        return fm.Not(child)
    left = _fold_constants(phi.left)
    right = _fold_constants(phi.right)
    if isinstance(phi, fm.And):
        if isinstance(left, fm.Const):
            return right if left.value else fm.FALSE
        if isinstance(right, fm.Const):
            return left if right.value else fm.FALSE
        return fm.And(left, right)
    if isinstance(left, fm.Const):
        return fm.TRUE if left.value else right
    if isinstance(right, fm.Const):
        return fm.TRUE if right.value else left
    return fm.Or(left, right)


def to_cnf(phi: fm.Formula, ids: Optional[dict] = None) -> tuple:
    """Equisatisfiable CNF through fresh gate variables.

    Returns (cnf, ids) where ids maps each formula variable to its CNF
    variable.  Every model of the CNF projects onto the original
    variables to a model of phi, and every model of phi extends to a
    model of the CNF.
    """
    phi = _fold_constants(fm.desugar(phi))
    names = sorted(fm.variables(phi))
    if ids is None:
        ids = {name: i + 1 for i, name in enumerate(names)}
    else:
        missing = [n for n in names if n not in ids]
        if missing:
            raise ValueError(f"ids missing for variables: {missing}")
        if len(set(ids.values())) != len(ids):
            raise ValueError("ids must be distinct")
    cnf = Cnf(num_vars=max(ids.values(), default=0))

    if isinstance(phi, fm.Const):
        if not phi.value:
            cnf.clauses.append(())
        return cnf, ids

    def encode(node: fm.Formula) -> int:
        if isinstance(node, fm.Var):
            return ids[node.name]
        if isinstance(node, fm.Not):
            return -encode(node.child)
        left = encode(node.left)
        right = encode(node.right)
        g = cnf.add_var()
        if isinstance(node, fm.And):
            cnf.add_clause((-g, left))
            cnf.add_clause((-g, right))
            cnf.add_clause((g, -left, -right))
        else:
            cnf.add_clause((-g, left, right))
            cnf.add_clause((g, -left))
            cnf.add_clause((g, -right))
        return g

    cnf.add_clause((encode(phi),))
    return cnf, ids


# -- DIMACS (debugging aid) ----------------------------------------------------


def write_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf:
    cnf = Cnf()
    declared_vars = None
    lits = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            declared_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                cnf.add_clause(lits)
                lits = []
            else:
                lits.append(lit)
    if lits:
        cnf.add_clause(lits)
    if declared_vars is not None and declared_vars > cnf.num_vars:
        cnf.num_vars = declared_vars
    return cnf
