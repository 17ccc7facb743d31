"""State-transition graphs under synchronous and asynchronous update,
attractor extraction, and brute-force trap-space computation.

States are handled as integers internally (first argument = most
significant bit); the public surface speaks in TwoValuedState and
ThreeValuedInterpretation values.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

from . import formula as fm
from .adf import Framework
from .core import (
    DEFAULT_COMPLETION_CAP,
    DEFAULT_STATE_CAP,
    EnumerationCapError,
    ThreeValuedInterpretation,
    TwoValuedState,
    U,
    iter_interpretations,
)

SYNCHRONOUS = "synchronous"
ASYNCHRONOUS = "asynchronous"
DISCIPLINES = (SYNCHRONOUS, ASYNCHRONOUS)

#: An attractor is a minimal forward-closed state set (a terminal SCC).
Attractor = frozenset

_sync_cache = weakref.WeakKeyDictionary()


def _check_discipline(discipline: str) -> None:
    if discipline not in DISCIPLINES:
        raise ValueError(f"unknown update discipline: {discipline!r}")


def _sync_table(fr: Framework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Synchronous successor of every state, indexed by state integer."""
    cached = _sync_cache.get(fr)
    if cached is not None:
        return cached
    n = len(fr.signature)
    if 2 ** n > cap:
        raise EnumerationCapError(f"2^{n} states exceed the cap of {cap}")
    pos = fr.signature.position
    per_arg = []
    for a in fr.signature:
        shifts = [n - 1 - pos(p) for p in fr.parents[a]]
        per_arg.append((n - 1 - pos(a), shifts, fr.table(a)))
    table = []
    for s in range(2 ** n):
        t = 0
        for out_shift, shifts, rows in per_arg:
            idx = 0
            for sh in shifts:
                idx = (idx << 1) | ((s >> sh) & 1)
            t |= rows[idx] << out_shift
        table.append(t)
    _sync_cache[fr] = table
    return table


def successors(fr: Framework, discipline: str, x: TwoValuedState) -> set:
    """Successor states of x.

    Synchronous: the single state updating every coordinate at once.
    Asynchronous: one state per unstable coordinate, flipping exactly it,
    plus x itself when no coordinate is unstable.
    """
    _check_discipline(discipline)
    if x.signature != fr.signature:
        raise ValueError("signature mismatch")
    env = {a: b for a, b in zip(x.signature, x.bits)}
    target = [fm.evaluate_map(fr.conditions[a], env) for a in fr.signature]
    if discipline == SYNCHRONOUS:
        return {TwoValuedState(fr.signature, target)}
    out = set()
    for i, a in enumerate(fr.signature):
        if target[i] != x.bits[i]:
            bits = list(x.bits)
            bits[i] = target[i]
            out.add(TwoValuedState(fr.signature, bits))
    if not out:
        out.add(x)
    return out


def _successor_lists(fr: Framework, discipline: str, cap: int) -> list:
    table = _sync_table(fr, cap)
    n = len(fr.signature)
    if discipline == SYNCHRONOUS:
        return [(t,) for t in table]
    out = []
    for s, t in enumerate(table):
        diff = s ^ t
        if diff == 0:
            out.append((s,))
            continue
        succs = []
        for i in range(n):
            bit = 1 << (n - 1 - i)
            if diff & bit:
                succs.append(s ^ bit)
        out.append(tuple(succs))
    return out


@dataclass
class StateTransitionGraph:
    """Explicit successor relation over all states of a framework."""

    signature: object
    discipline: str
    successor_indices: tuple

    def successors_of(self, x: TwoValuedState) -> set:
        return {
            TwoValuedState.from_index(self.signature, t)
            for t in self.successor_indices[x.index()]
        }


def build_stg(fr: Framework, discipline: str, cap: int = DEFAULT_STATE_CAP) -> StateTransitionGraph:
    _check_discipline(discipline)
    return StateTransitionGraph(
        fr.signature, discipline, tuple(_successor_lists(fr, discipline, cap))
    )


def _terminal_sccs(successors: list) -> list:
    """Terminal strongly connected components, iterative Tarjan."""
    n = len(successors)
    index = [0] * n
    low = [0] * n
    on_stack = bytearray(n)
    comp_of = [-1] * n
    stack = []
    sccs = []
    counter = 1
    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            node, child_i = work[-1]
            if child_i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = 1
            advanced = False
            succ = successors[node]
            for k in range(child_i, len(succ)):
                nxt = succ[k]
                if not index[nxt]:
                    work[-1] = (node, k + 1)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if on_stack[nxt] and low[node] > index[nxt]:
                    low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[parent] > low[node]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                comp = []
                while True:
                    m = stack.pop()
                    on_stack[m] = 0
                    comp_of[m] = len(sccs)
                    comp.append(m)
                    if m == node:
                        break
                sccs.append(comp)
    terminal = []
    for ci, comp in enumerate(sccs):
        if all(comp_of[t] == ci for s in comp for t in successors[s]):
            terminal.append(sorted(comp))
    return terminal


def attractors(fr: Framework, discipline: str, cap: int = DEFAULT_STATE_CAP) -> list:
    """Terminal strongly connected components of the state-transition graph,
    as frozensets of states, sorted by their smallest state index."""
    _check_discipline(discipline)
    succ = _successor_lists(fr, discipline, cap)
    comps = _terminal_sccs(succ)
    comps.sort(key=lambda comp: comp[0])
    return [
        frozenset(TwoValuedState.from_index(fr.signature, s) for s in comp)
        for comp in comps
    ]


def _cube_mask(v: ThreeValuedInterpretation) -> tuple:
    n = len(v.signature)
    mask = val = 0
    for i, p in enumerate(v.values):
        if p != U:
            bit = 1 << (n - 1 - i)
            mask |= bit
            if p == 1:
                val |= bit
    return mask, val


def _completion_indices(v: ThreeValuedInterpretation, cap: int):
    n = len(v.signature)
    free = [1 << (n - 1 - i) for i, p in enumerate(v.values) if p == U]
    if 2 ** len(free) > cap:
        raise EnumerationCapError(f"{2 ** len(free)} completions exceed the cap of {cap}")
    _, base = _cube_mask(v)
    out = [base]
    for bit in free:
        out += [s | bit for s in out]
    return out


def is_trap_space(
    fr: Framework,
    discipline: str,
    v: ThreeValuedInterpretation,
    cap: int = DEFAULT_COMPLETION_CAP,
) -> bool:
    """Closure of the subcube of v under the successor relation."""
    _check_discipline(discipline)
    if v.signature != fr.signature:
        raise ValueError("signature mismatch")
    table = _sync_table(fr)
    mask, val = _cube_mask(v)
    if discipline == SYNCHRONOUS:
        for s in _completion_indices(v, cap):
            if (table[s] & mask) != val:
                return False
        return True
    for s in _completion_indices(v, cap):
        diff = s ^ table[s]
        while diff:
            bit = diff & -diff
            if ((s ^ bit) & mask) != val:
                return False
            diff ^= bit
    return True


def trap_spaces_bruteforce(fr: Framework, cap: int = DEFAULT_STATE_CAP) -> list:
    """All interpretations whose subcube is forward closed (checked against
    the synchronous successor; the property does not depend on the
    discipline).  Sorted by subcube string."""
    table = _sync_table(fr)
    out = []
    for v in iter_interpretations(fr.signature, cap):
        mask, val = _cube_mask(v)
        if all((table[s] & mask) == val for s in _completion_indices(v, cap)):
            out.append(v)
    return sorted(out, key=ThreeValuedInterpretation.to_string)


def minimal_trap_spaces_bruteforce(fr: Framework, cap: int = DEFAULT_STATE_CAP) -> list:
    """Trap spaces minimal as subcubes (maximal in the information order)."""
    spaces = trap_spaces_bruteforce(fr, cap)
    return [v for v in spaces if not any(v != w and v.info_leq(w) for w in spaces)]
