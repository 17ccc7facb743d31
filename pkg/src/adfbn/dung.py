"""Attack-only argumentation frameworks and their extension semantics.

All enumerators here are deliberately brute force: they are the oracles
the scalable paths are tested against.  Results are canonically sorted
(extensions by decimal index, labelings by subcube string).
"""

from __future__ import annotations

import itertools
from typing import Iterable

from . import adf
from . import formula as fm
from .core import (
    DEFAULT_STATE_CAP,
    EnumerationCapError,
    Signature,
    ThreeValuedInterpretation,
    TwoValuedState,
    U,
    iter_states,
)


class DungFramework:
    """Finite set of arguments with a binary attack relation."""

    def __init__(self, signature: Signature, attacks: Iterable[tuple]):
        self.signature = signature
        atts = set()
        for a, b in attacks:
            if a not in signature or b not in signature:
                raise ValueError(f"attack ({a!r}, {b!r}) mentions unknown arguments")
            atts.add((a, b))
        self.attacks = frozenset(atts)
        self._parents = {a: frozenset(b for (b, c) in atts if c == a) for a in signature}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DungFramework)
            and self.signature == other.signature
            and self.attacks == other.attacks
        )

    def __repr__(self) -> str:
        return f"<dung framework, {len(self.signature)} arguments, {len(self.attacks)} attacks>"


def attackers(d: DungFramework, a: str) -> frozenset:
    """The arguments with an attack onto a."""
    if a not in d.signature:
        raise ValueError(f"unknown argument: {a!r}")
    return d._parents[a]


def attacked_by(d: DungFramework, members: Iterable[str]) -> frozenset:
    """The arguments attacked by some member of the set."""
    members = set(members)
    for a in members:
        if a not in d.signature:
            raise ValueError(f"unknown argument: {a!r}")
    return frozenset(b for (a, b) in d.attacks if a in members)


def is_conflict_free(d: DungFramework, members: Iterable[str]) -> bool:
    """No member attacks a member."""
    members = set(members)
    return members.isdisjoint(attacked_by(d, members))


def update_two(d: DungFramework, x: TwoValuedState) -> TwoValuedState:
    """One update step: an argument becomes 1 exactly when no attacker is 1."""
    if x.signature != d.signature:
        raise ValueError("signature mismatch")
    return TwoValuedState(
        d.signature,
        (1 if all(x[b] == 0 for b in d._parents[a]) else 0 for a in d.signature),
    )


def characteristic_two(d: DungFramework, x: TwoValuedState) -> TwoValuedState:
    """The update function applied twice."""
    return update_two(d, update_two(d, x))


def stable_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Fixed points of the update function: conflict-free sets attacking
    everything outside themselves."""
    return [x for x in iter_states(d.signature, cap) if update_two(d, x) == x]


def complete_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Conflict-free fixed points of the twice-applied update function."""
    out = []
    for x in iter_states(d.signature, cap):
        if is_conflict_free(d, x.support()) and characteristic_two(d, x) == x:
            out.append(x)
    return out


def grounded_extension(d: DungFramework) -> TwoValuedState:
    """Iterate the twice-applied update from the empty set until it stabilizes."""
    x = TwoValuedState(d.signature, (0,) * len(d.signature))
    while True:
        y = characteristic_two(d, x)
        if y == x:
            return x
        x = y


def _subset(x: TwoValuedState, y: TwoValuedState) -> bool:
    return all(p <= q for p, q in zip(x.bits, y.bits))


def preferred_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Complete extensions whose support is set-inclusion maximal."""
    complete = complete_extensions(d, cap)
    return [x for x in complete if not any(x != y and _subset(x, y) for y in complete)]


def semi_stable_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Complete extensions with set-inclusion maximal range (self plus attacked)."""
    complete = complete_extensions(d, cap)
    ranges = [x.support() | attacked_by(d, x.support()) for x in complete]
    out = []
    for x, r in zip(complete, ranges):
        if not any(r < s for s in ranges):
            out.append(x)
    return out


def _conflict_free_sets(d: DungFramework, cap: int) -> list:
    return [x.support() for x in iter_states(d.signature, cap)
            if is_conflict_free(d, x.support())]


def naive_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Set-inclusion maximal conflict-free sets."""
    cf = _conflict_free_sets(d, cap)
    return [m for m in cf if not any(m < s for s in cf)]


def stage_extensions(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Conflict-free sets with set-inclusion maximal range.

    The historical definition phrases this through the pair of defeated
    and undefeated arguments; range maximality of a conflict-free set is
    the reading consistent with the semi-stable range notion.
    """
    cf = _conflict_free_sets(d, cap)
    ranges = [m | attacked_by(d, m) for m in cf]
    return [m for m, r in zip(cf, ranges) if not any(r < s for s in ranges)]


def update_three(d: DungFramework, v: ThreeValuedInterpretation) -> ThreeValuedInterpretation:
    """Three-valued update: 1 when every attacker is 0, 0 when some attacker
    is 1, undecided otherwise (no attacker at 1 but at least one undecided)."""
    if v.signature != d.signature:
        raise ValueError("signature mismatch")
    out = []
    for a in d.signature:
        vals = [v[b] for b in d._parents[a]]
        if all(p == 0 for p in vals):
            out.append(1)
        elif any(p == 1 for p in vals):
            out.append(0)
        else:
            out.append(U)
    return ThreeValuedInterpretation(d.signature, out)


def caminada_labelings(d: DungFramework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Fixed points of the three-valued update, sorted by subcube string."""
    n = len(d.signature)
    if 3 ** n > cap:
        raise EnumerationCapError(f"3^{n} interpretations exceed the cap of {cap}")
    out = []
    for combo in itertools.product((0, 1, U), repeat=n):
        v = ThreeValuedInterpretation(d.signature, combo)
        if update_three(d, v) == v:
            out.append(v)
    return sorted(out, key=ThreeValuedInterpretation.to_string)


def labeling_from_extension(d: DungFramework, x: TwoValuedState) -> ThreeValuedInterpretation:
    """Label a complete extension: members 1, arguments attacked by a member 0,
    the rest undecided."""
    if x not in complete_extensions(d):
        raise ValueError("state is not a complete extension")
    hit = attacked_by(d, x.support())
    out = []
    for a in d.signature:
        if x[a] == 1:
            out.append(1)
        elif a in hit:
            out.append(0)
        else:
            out.append(U)
    return ThreeValuedInterpretation(d.signature, out)


def extension_from_labeling(d: DungFramework, v: ThreeValuedInterpretation) -> TwoValuedState:
    """Collapse a labeling to the indicator of its 1-part."""
    if update_three(d, v) != v:
        raise ValueError("interpretation is not a labeling fixed point")
    return TwoValuedState(d.signature, (1 if p == 1 else 0 for p in v.values))


def to_framework(d: DungFramework) -> adf.Framework:
    """The shared-model view: each condition is the conjunction of the
    negated attackers (constant true when unattacked)."""
    order = d.signature.position
    conditions = {}
    for a in d.signature:
        parents = sorted(d._parents[a], key=order)
        conditions[a] = fm.conj([fm.Not(fm.Var(b)) for b in parents])
    return adf.Framework(d.signature, conditions)
