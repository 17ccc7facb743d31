"""The shared framework model: one argument/gene set, one acceptance or
regulatory formula per argument.

A framework is simultaneously an argumentation model and a Boolean
network; the three-valued characteristic operator is provided both as a
brute-force enumeration over completions (the oracle) and as the
polynomial DNF shortcut through the doubled positive/negative variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import formula as fm
from .core import (
    DEFAULT_COMPLETION_CAP,
    DEFAULT_STATE_CAP,
    EnumerationCapError,
    Signature,
    ThreeValuedInterpretation,
    U,
    iter_interpretations,
)


@dataclass(frozen=True)
class Diagnostic:
    """One well-formedness problem of a framework."""

    argument: str
    kind: str  # "foreign-variable" or "non-dependent-parent"
    subject: str
    witness: Optional[tuple] = None

    def __str__(self) -> str:
        if self.kind == "foreign-variable":
            return f"{self.argument}: formula mentions {self.subject!r} outside its parents"
        return (
            f"{self.argument}: condition does not depend on parent {self.subject!r}"
            + (f" (witness pair {self.witness})" if self.witness else "")
        )


class FrameworkError(ValueError):
    """Construction rejected; carries the diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class Framework:
    """Argument set plus one condition formula per argument.

    Immutable after construction.  Each argument's parents are the
    in-neighbours it may read; every condition must semantically depend
    on each of its parents.  `on_invalid` selects what construction does
    with violations: "raise" (default), "prune" (shrink the parent sets
    to the semantic support), or "keep" (store as given, for diagnosis).
    """

    def __init__(
        self,
        signature: Signature,
        conditions: Mapping[str, fm.Formula],
        parents: Optional[Mapping[str, Iterable[str]]] = None,
        on_invalid: str = "raise",
    ):
        if on_invalid not in ("raise", "prune", "keep"):
            raise ValueError(f"bad on_invalid mode: {on_invalid!r}")
        self.signature = signature
        missing = [a for a in signature if a not in conditions]
        if missing:
            raise ValueError(f"missing conditions for: {', '.join(missing)}")
        unknown = [a for a in conditions if a not in signature]
        if unknown:
            raise ValueError(f"conditions for unknown arguments: {', '.join(unknown)}")
        self.conditions = {a: conditions[a] for a in signature}
        order = signature.position
        if parents is None:
            declared = {a: tuple(sorted(fm.variables(self.conditions[a]), key=order))
                        for a in signature}
        else:
            declared = {}
            for a in signature:
                ps = tuple(sorted(set(parents.get(a, ())), key=order))
                for p in ps:
                    if p not in signature:
                        raise ValueError(f"unknown parent {p!r} of {a!r}")
                declared[a] = ps
        self.parents = declared
        problems = _diagnose(signature, self.conditions, declared)
        if problems and on_invalid == "raise":
            raise FrameworkError(problems)
        if on_invalid == "prune":
            self.parents = {
                a: tuple(sorted(fm.support(self.conditions[a]), key=order))
                for a in signature
            }
        self._dnf = {}
        self._dnf_neg = {}
        self._tables = {}

    # -- cached per-argument data ------------------------------------------

    def dnf(self, name: str) -> fm.Dnf:
        if name not in self._dnf:
            self._dnf[name] = fm.to_dnf(self.conditions[name])
        return self._dnf[name]

    def dnf_negation(self, name: str) -> fm.Dnf:
        if name not in self._dnf_neg:
            self._dnf_neg[name] = fm.to_dnf_negation(self.conditions[name])
        return self._dnf_neg[name]

    def table(self, name: str) -> tuple:
        """Truth table of the condition over the parent tuple (first parent
        is the most significant index bit)."""
        if name not in self._tables:
            ps = self.parents[name]
            phi = self.conditions[name]
            env = {}
            rows = []
            for combo in itertools.product((0, 1), repeat=len(ps)):
                env.clear()
                env.update(zip(ps, combo))
                rows.append(fm.evaluate_map(phi, env))
            self._tables[name] = tuple(rows)
        return self._tables[name]

    # -- structure -----------------------------------------------------------

    def edges(self) -> list:
        """(source, target) pairs, targets then sources in signature order."""
        return [(a, b) for b in self.signature for a in self.parents[b]]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Framework)
            and self.signature == other.signature
            and self.parents == other.parents
            and self.conditions == other.conditions
        )

    def __repr__(self) -> str:
        return f"<framework over {list(self.signature.arguments)}>"


def _diagnose(signature, conditions, parents) -> list:
    out = []
    for a in signature:
        phi = conditions[a]
        ps = set(parents[a])
        for v in sorted(fm.variables(phi), key=signature.position):
            if v not in ps:
                out.append(Diagnostic(a, "foreign-variable", v))
        for p in parents[a]:
            if not fm.depends_on(phi, p):
                out.append(Diagnostic(a, "non-dependent-parent", p,
                                      witness=_independence_witness(phi, p)))
    return out


def _independence_witness(phi, name):
    """A pair of assignments differing only at name with equal values, or None."""
    others = sorted(fm.variables(phi) - {name})
    if len(others) > 16:
        return None
    for combo in itertools.product((0, 1), repeat=len(others)):
        env = dict(zip(others, combo))
        low = dict(env, **{name: 0})
        high = dict(env, **{name: 1})
        if fm.evaluate_map(phi, low) == fm.evaluate_map(phi, high):
            return (tuple(sorted(low.items())), tuple(sorted(high.items())))
    return None


def validate(fr: Framework) -> list:
    """Well-formedness diagnostics; an empty list means the framework is ok."""
    return _diagnose(fr.signature, fr.conditions, fr.parents)


# -- the characteristic operator ---------------------------------------------


def gamma_bruteforce(
    fr: Framework,
    v: ThreeValuedInterpretation,
    cap: int = DEFAULT_COMPLETION_CAP,
) -> ThreeValuedInterpretation:
    """Characteristic operator by exhausting completions.

    Per argument, enumerates every assignment of its undecided parents
    (the projection of the completion set onto the parents; the condition
    reads nothing else) and decides the coordinate only when all
    completions agree.
    """
    if v.signature != fr.signature:
        raise ValueError("signature mismatch")
    out = []
    for a in fr.signature:
        ps = fr.parents[a]
        free = [p for p in ps if v[p] == U]
        if 2 ** len(free) > cap:
            raise EnumerationCapError(
                f"{2 ** len(free)} completions for {a!r} exceed the cap of {cap}"
            )
        phi = fr.conditions[a]
        env = {p: v[p] for p in ps if v[p] != U}
        seen0 = seen1 = False
        for combo in itertools.product((0, 1), repeat=len(free)):
            env.update(zip(free, combo))
            if fm.evaluate_map(phi, env):
                seen1 = True
            else:
                seen0 = True
            if seen0 and seen1:
                break
        out.append(1 if not seen0 else (0 if not seen1 else U))
    return ThreeValuedInterpretation(fr.signature, out)


def sigma_prime(v: ThreeValuedInterpretation) -> dict:
    """Assignment over the doubled variables: ('p', a) is false exactly when
    v(a) = 0 and ('n', a) is false exactly when v(a) = 1."""
    out = {}
    for a, value in zip(v.signature, v.values):
        out[("p", a)] = 0 if value == 0 else 1
        out[("n", a)] = 0 if value == 1 else 1
    return out


def sigma_value(dnf: fm.Dnf, v: ThreeValuedInterpretation) -> int:
    """Value of the doubled-variable image of the DNF under sigma_prime(v).

    Equals 1 iff some completion of v satisfies the DNF (valid because
    terms are contradiction-free).
    """
    for term in dnf.terms:
        ok = True
        for name, pos in term:
            value = v[name]
            if (value == 0 and pos) or (value == 1 and not pos):
                ok = False
                break
        if ok:
            return 1
    return 0


def _tau(pos: int, neg: int) -> int:
    if pos and not neg:
        return 1
    if neg and not pos:
        return 0
    if pos and neg:
        return U
    raise RuntimeError("both DNF images evaluated to 0; the DNF pair is broken")


def gamma_dnf(fr: Framework, v: ThreeValuedInterpretation) -> ThreeValuedInterpretation:
    """Characteristic operator through the DNF images; no completion is
    ever enumerated.  Agrees with gamma_bruteforce everywhere."""
    if v.signature != fr.signature:
        raise ValueError("signature mismatch")
    out = []
    for a in fr.signature:
        out.append(_tau(sigma_value(fr.dnf(a), v), sigma_value(fr.dnf_negation(a), v)))
    return ThreeValuedInterpretation(fr.signature, out)


# -- semantics -----------------------------------------------------------------


def is_admissible(fr: Framework, v: ThreeValuedInterpretation) -> bool:
    """True iff v is below its own image under the characteristic operator."""
    if v.signature != fr.signature:
        raise ValueError("signature mismatch")
    for a, value in v.decided_items():
        if value == 1:
            if sigma_value(fr.dnf_negation(a), v):
                return False
        else:
            if sigma_value(fr.dnf(a), v):
                return False
    return True


def is_complete_interpretation(fr: Framework, v: ThreeValuedInterpretation) -> bool:
    """True iff v is a fixed point of the characteristic operator."""
    return gamma_dnf(fr, v) == v


def grounded_interpretation(fr: Framework) -> ThreeValuedInterpretation:
    """Least fixed point: iterate the operator from the all-undecided
    interpretation until it stabilizes."""
    v = ThreeValuedInterpretation.all_undecided(fr.signature)
    while True:
        w = gamma_dnf(fr, v)
        if w == v:
            return v
        v = w


def preferred_interpretations_bruteforce(
    fr: Framework, cap: int = DEFAULT_STATE_CAP
) -> list:
    """Maximal admissible interpretations in the information order, by
    scanning all 3^n interpretations.  Sorted by subcube string."""
    admissible = [v for v in iter_interpretations(fr.signature, cap) if is_admissible(fr, v)]
    out = []
    for v in admissible:
        if not any(v != w and v.info_leq(w) for w in admissible):
            out.append(v)
    return sorted(out, key=ThreeValuedInterpretation.to_string)


def is_conflict_free_interpretation(fr: Framework, v: ThreeValuedInterpretation) -> bool:
    """Every decided coordinate is achievable by at least one completion."""
    if v.signature != fr.signature:
        raise ValueError("signature mismatch")
    for a, value in v.decided_items():
        dnf = fr.dnf(a) if value == 1 else fr.dnf_negation(a)
        if not sigma_value(dnf, v):
            return False
    return True
