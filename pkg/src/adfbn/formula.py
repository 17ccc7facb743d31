"""Propositional formulas over argument names.

Provides evaluation on two-valued states, semantic variable dependence,
and subsumption-free disjunctive normal forms of a formula and of its
negation (the workhorse of the undecided-value shortcut and of the
clause encodings).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .core import EnumerationCapError, TwoValuedState

DEPENDENCE_SCAN_CAP = 2 ** 20


class Formula:
    """Base class of formula AST nodes; instances are immutable."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)


def conj(parts) -> Formula:
    """Left-nested conjunction; the empty conjunction is TRUE."""
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    """Left-nested disjunction; the empty disjunction is FALSE."""
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def evaluate_map(phi: Formula, assignment: Mapping[str, int]) -> int:
    """Evaluate under a name -> bit mapping; names missing from it default to 0."""
    if isinstance(phi, Const):
        return 1 if phi.value else 0
    if isinstance(phi, Var):
        return assignment.get(phi.name, 0)
    if isinstance(phi, Not):
        return 1 - evaluate_map(phi.child, assignment)
    if isinstance(phi, And):
        return evaluate_map(phi.left, assignment) & evaluate_map(phi.right, assignment)
    if isinstance(phi, Or):
        return evaluate_map(phi.left, assignment) | evaluate_map(phi.right, assignment)
    if isinstance(phi, Imp):
        return (1 - evaluate_map(phi.left, assignment)) | evaluate_map(phi.right, assignment)
    if isinstance(phi, Iff):
        return 1 - (evaluate_map(phi.left, assignment) ^ evaluate_map(phi.right, assignment))
    if isinstance(phi, Xor):
        return evaluate_map(phi.left, assignment) ^ evaluate_map(phi.right, assignment)
    raise TypeError(f"not a formula node: {phi!r}")


def evaluate(phi: Formula, x: TwoValuedState) -> int:
    """Two-valued evaluation on a total state."""
    for name in variables(phi):
        if name not in x.signature:
            raise ValueError(f"signature mismatch: formula mentions {name!r}")
    return evaluate_map(phi, {a: b for a, b in zip(x.signature, x.bits)})


def variables(phi: Formula) -> frozenset:
    """Names occurring syntactically in the formula."""
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Var):
        return frozenset((phi.name,))
    if isinstance(phi, Not):
        return variables(phi.child)
    return variables(phi.left) | variables(phi.right)


def depends_on(phi: Formula, name: str, cap: int = DEPENDENCE_SCAN_CAP) -> bool:
    """Semantic dependence: some pair of assignments differing only at name
    gives different values.  Decided by scanning assignments of the formula's
    syntactic variables, not by inspecting syntax."""
    others = sorted(variables(phi) - {name})
    if name not in variables(phi):
        return False
    if 2 ** len(others) > cap:
        raise EnumerationCapError(f"dependence scan over 2^{len(others)} rows exceeds cap")
    env = {}
    for combo in itertools.product((0, 1), repeat=len(others)):
        env.clear()
        env.update(zip(others, combo))
        env[name] = 0
        low = evaluate_map(phi, env)
        env[name] = 1
        if low != evaluate_map(phi, env):
            return True
    return False


def support(phi: Formula, cap: int = DEPENDENCE_SCAN_CAP) -> frozenset:
    """Variables the formula semantically depends on."""
    return frozenset(a for a in variables(phi) if depends_on(phi, a, cap))


# --- disjunctive normal form ------------------------------------------------
# A literal is a (name, polarity) pair; polarity True is the positive literal.


@dataclass(frozen=True)
class Dnf:
    """Subsumption-free DNF: a tuple of terms, each a frozenset of literals.

    No terms means the constant-false formula; a term with no literals
    means constant-true.  No term contains both polarities of a variable
    and no term's literal set is a subset of another's.
    """

    terms: tuple

    def is_false(self) -> bool:
        return not self.terms

    def is_true(self) -> bool:
        return len(self.terms) == 1 and not self.terms[0]

    def evaluate_map(self, assignment: Mapping[str, int]) -> int:
        for term in self.terms:
            if all(assignment.get(a, 0) == (1 if pos else 0) for a, pos in term):
                return 1
        return 0

    def evaluate(self, x: TwoValuedState) -> int:
        return self.evaluate_map({a: b for a, b in zip(x.signature, x.bits)})

    def variables(self) -> frozenset:
        return frozenset(a for term in self.terms for a, _ in term)

    def to_string(self) -> str:
        if self.is_false():
            return "false"
        if self.is_true():
            return "true"
        parts = []
        for term in self.terms:
            lits = [("" if pos else "!") + a for a, pos in sorted(term)]
            parts.append(" & ".join(lits))
        return " | ".join(parts)


def _desugar(phi: Formula) -> Formula:
    """Rewrite Imp/Iff/Xor into and/or/not."""
    if isinstance(phi, (Const, Var)):
        return phi
    if isinstance(phi, Not):
        return Not(_desugar(phi.child))
    left, right = _desugar(phi.left), _desugar(phi.right)
    if isinstance(phi, And):
        return And(left, right)
    if isinstance(phi, Or):
        return Or(left, right)
    if isinstance(phi, Imp):
        return Or(Not(left), right)
    if isinstance(phi, Iff):
        return Or(And(left, right), And(Not(left), Not(right)))
    if isinstance(phi, Xor):
        return Or(And(left, Not(right)), And(Not(left), right))
    raise TypeError(f"not a formula node: {phi!r}")


def _terms(phi: Formula, negate: bool) -> set:
    """Terms of a DNF of phi (or of its negation), contradictions dropped.

    Negation is pushed inward on the fly, so only and/or/not/literal nodes
    are ever visited.
    """
    if isinstance(phi, Const):
        value = phi.value != negate
        return {frozenset()} if value else set()
    if isinstance(phi, Var):
        return {frozenset(((phi.name, not negate),))}
    if isinstance(phi, Not):
        return _terms(phi.child, not negate)
    is_or = isinstance(phi, Or) != negate  # De Morgan under negation
    left = _terms(phi.left, negate)
    right = _terms(phi.right, negate)
    if is_or:
        return left | right
    out = set()
    for t1 in left:
        for t2 in right:
            merged = t1 | t2
            if any((a, not pos) in merged for a, pos in t2):
                continue  # contradictory term
            out.add(merged)
    return out


def _prune_subsumed(terms: set) -> tuple:
    """Drop terms whose literal set is a superset of another's."""
    ordered = sorted(terms, key=lambda t: (len(t), sorted(t)))
    kept = []
    for term in ordered:
        if not any(prev <= term for prev in kept):
            kept.append(term)
    return tuple(kept)


def to_dnf(phi: Formula) -> Dnf:
    """A subsumption-free, contradiction-free DNF equivalent to phi."""
    return Dnf(_prune_subsumed(_terms(_desugar(phi), negate=False)))


def to_dnf_negation(phi: Formula) -> Dnf:
    """A subsumption-free, contradiction-free DNF equivalent to the negation of phi."""
    return Dnf(_prune_subsumed(_terms(_desugar(phi), negate=True)))
