"""Shared value domain: argument signatures, two-valued states, and
three-valued interpretations ordered by information content.

States double as indicator functions of argument sets; interpretations
double as subcubes of the state space (their completion sets).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

#: The undecided truth value.  Decided values are the plain bits 0 and 1.
U = 2

TRUTH_VALUES = (0, 1, U)

#: Guardrails for exhaustive enumeration; override per call where supported.
DEFAULT_STATE_CAP = 2 ** 20
DEFAULT_COMPLETION_CAP = 2 ** 20

_RENDER = {0: "0", 1: "1", U: "-"}
_PARSE = {"0": 0, "1": 1, "-": U, "u": U}


class EnumerationCapError(Exception):
    """An exhaustive enumeration would exceed the configured cap."""


def consensus(p: int, q: int) -> int:
    """Consensus of two truth values: agreement on a bit, otherwise undecided."""
    if p == q and p != U:
        return p
    return U


class Signature:
    """Ordered, immutable set of argument names.

    The position of a name is its bit index; position 0 is the most
    significant bit of the decimal state numbering.
    """

    __slots__ = ("arguments", "_position")

    def __init__(self, arguments: Iterable[str]):
        args = tuple(arguments)
        if not args:
            raise ValueError("signature needs at least one argument")
        seen = set()
        for name in args:
            if not name or any(c.isspace() for c in name) or "," in name:
                raise ValueError(f"bad argument name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate argument name: {name!r}")
            seen.add(name)
        self.arguments = args
        self._position = {name: i for i, name in enumerate(args)}

    def position(self, name: str) -> int:
        try:
            return self._position[name]
        except KeyError:
            raise KeyError(f"unknown argument: {name!r}") from None

    def __len__(self) -> int:
        return len(self.arguments)

    def __iter__(self) -> Iterator[str]:
        return iter(self.arguments)

    def __contains__(self, name: object) -> bool:
        return name in self._position

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self.arguments == other.arguments

    def __hash__(self) -> int:
        return hash(self.arguments)

    def __repr__(self) -> str:
        return f"Signature({list(self.arguments)!r})"


def _check_same_signature(a, b) -> None:
    if a.signature != b.signature:
        raise ValueError("signature mismatch")


class TwoValuedState:
    """Total assignment of bits to the arguments of a signature."""

    __slots__ = ("signature", "bits")

    def __init__(self, signature: Signature, bits: Iterable[int]):
        bits = tuple(bits)
        if len(bits) != len(signature):
            raise ValueError("state length does not match signature")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("state bits must be 0 or 1")
        self.signature = signature
        self.bits = bits

    @classmethod
    def from_index(cls, signature: Signature, index: int) -> "TwoValuedState":
        n = len(signature)
        if not 0 <= index < 2 ** n:
            raise ValueError(f"state index {index} out of range for {n} arguments")
        return cls(signature, ((index >> (n - 1 - i)) & 1 for i in range(n)))

    @classmethod
    def from_support(cls, signature: Signature, support: Iterable[str]) -> "TwoValuedState":
        members = set(support)
        for name in members:
            if name not in signature:
                raise KeyError(f"unknown argument: {name!r}")
        return cls(signature, (1 if a in members else 0 for a in signature))

    def index(self) -> int:
        """Decimal name of the state; the first argument is the most significant bit."""
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def support(self) -> frozenset:
        return frozenset(a for a, b in zip(self.signature, self.bits) if b)

    def to_string(self) -> str:
        return "".join(_RENDER[b] for b in self.bits)

    def with_value(self, name: str, bit: int) -> "TwoValuedState":
        i = self.signature.position(name)
        bits = list(self.bits)
        bits[i] = bit
        return TwoValuedState(self.signature, bits)

    def __getitem__(self, name: str) -> int:
        return self.bits[self.signature.position(name)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwoValuedState)
            and self.signature == other.signature
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.bits))

    def __repr__(self) -> str:
        return f"<state {self.to_string()}>"


class ThreeValuedInterpretation:
    """Total assignment of 0, 1, or undecided to the arguments of a signature.

    Read as a subcube, an interpretation denotes its set of completions:
    all states agreeing with it on the decided coordinates.
    """

    __slots__ = ("signature", "values")

    def __init__(self, signature: Signature, values: Iterable[int]):
        values = tuple(values)
        if len(values) != len(signature):
            raise ValueError("interpretation length does not match signature")
        if any(v not in TRUTH_VALUES for v in values):
            raise ValueError("interpretation values must be 0, 1, or U")
        self.signature = signature
        self.values = values

    @classmethod
    def all_undecided(cls, signature: Signature) -> "ThreeValuedInterpretation":
        return cls(signature, (U,) * len(signature))

    @classmethod
    def from_state(cls, state: TwoValuedState) -> "ThreeValuedInterpretation":
        return cls(state.signature, state.bits)

    @classmethod
    def from_string(cls, signature: Signature, text: str) -> "ThreeValuedInterpretation":
        if len(text) != len(signature):
            raise ValueError("string length does not match signature")
        try:
            return cls(signature, (_PARSE[c] for c in text))
        except KeyError as exc:
            raise ValueError(f"bad interpretation character: {exc.args[0]!r}") from None

    def to_string(self) -> str:
        """One character per argument in signature order: '1', '0', or '-'."""
        return "".join(_RENDER[v] for v in self.values)

    def decided_items(self):
        """(name, bit) pairs for the decided coordinates, in signature order."""
        return [(a, v) for a, v in zip(self.signature, self.values) if v != U]

    def undecided_count(self) -> int:
        return sum(1 for v in self.values if v == U)

    def is_decided(self) -> bool:
        return all(v != U for v in self.values)

    def with_value(self, name: str, value: int) -> "ThreeValuedInterpretation":
        i = self.signature.position(name)
        values = list(self.values)
        values[i] = value
        return ThreeValuedInterpretation(self.signature, values)

    def info_leq(self, other: "ThreeValuedInterpretation") -> bool:
        """Information order: every coordinate is undecided or agrees with other."""
        _check_same_signature(self, other)
        return all(p == U or p == q for p, q in zip(self.values, other.values))

    def is_completion(self, state: TwoValuedState) -> bool:
        """True iff state agrees with every decided coordinate (no enumeration)."""
        _check_same_signature(self, state)
        return all(v == U or v == b for v, b in zip(self.values, state.bits))

    def completions(self, cap: int = DEFAULT_COMPLETION_CAP) -> list:
        """All states above this interpretation, ascending by decimal index."""
        free = [i for i, v in enumerate(self.values) if v == U]
        if 2 ** len(free) > cap:
            raise EnumerationCapError(
                f"{2 ** len(free)} completions exceed the cap of {cap}"
            )
        out = []
        bits = list(self.values)
        for combo in itertools.product((0, 1), repeat=len(free)):
            for i, b in zip(free, combo):
                bits[i] = b
            out.append(TwoValuedState(self.signature, bits))
        return out

    def to_state(self) -> TwoValuedState:
        if not self.is_decided():
            raise ValueError("interpretation has undecided coordinates")
        return TwoValuedState(self.signature, self.values)

    def __getitem__(self, name: str) -> int:
        return self.values[self.signature.position(name)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ThreeValuedInterpretation)
            and self.signature == other.signature
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.values))

    def __repr__(self) -> str:
        return f"<interpretation {self.to_string()}>"


def iter_states(signature: Signature, cap: int = DEFAULT_STATE_CAP) -> Iterator[TwoValuedState]:
    """All states of the signature, ascending by decimal index."""
    n = len(signature)
    if 2 ** n > cap:
        raise EnumerationCapError(f"2^{n} states exceed the cap of {cap}")
    for combo in itertools.product((0, 1), repeat=n):
        yield TwoValuedState(signature, combo)


def iter_interpretations(
    signature: Signature, cap: int = DEFAULT_STATE_CAP
) -> Iterator[ThreeValuedInterpretation]:
    """All three-valued interpretations of the signature (3^n of them)."""
    n = len(signature)
    if 3 ** n > cap:
        raise EnumerationCapError(f"3^{n} interpretations exceed the cap of {cap}")
    for combo in itertools.product(TRUTH_VALUES, repeat=n):
        yield ThreeValuedInterpretation(signature, combo)
