"""Bounded Fock space basis for a signature (n, m, p).

A basis state is an occupation vector (r_1, ..., r_{n+m}): the first n slots
are bosonic (any non-negative integer), the last m are fermionic (0 or 1),
and the total occupancy is capped by the order of statistics p:

    sum_i r_i <= p.

The cap is what makes the statistics exclusion-like rather than plain
Bose/Fermi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

DEFAULT_STATE_CAP = 200_000


class StateCapExceeded(RuntimeError):
    """Basis enumeration aborted: more states than the configured cap."""


@dataclass(frozen=True)
class Signature:
    """(n, m, p): n bosonic slots, m fermionic slots, order of statistics p."""

    n: int
    m: int
    p: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or self.p < 0:
            raise ValueError("n, m, p must be non-negative")
        if self.n + self.m < 1:
            raise ValueError("need at least one slot (n + m >= 1)")

    @property
    def width(self) -> int:
        return self.n + self.m


def theta(sig: Signature, i: int) -> int:
    """Z2 grading of slot i: 0 (bosonic) for i <= n, 1 (fermionic) above."""
    if not 1 <= i <= sig.width:
        raise IndexError(f"slot index {i} outside [1;{sig.width}]")
    return 0 if i <= sig.n else 1


def is_admissible(sig: Signature, r) -> bool:
    """Whether an occupation vector satisfies the slot and total constraints."""
    if len(r) != sig.width:
        return False
    total = 0
    for i, v in enumerate(r, start=1):
        if v < 0:
            return False
        if i > sig.n and v > 1:
            return False
        total += v
    return total <= sig.p


@dataclass(frozen=True, eq=False)
class FockBasis:
    """All admissible occupation vectors, lexicographically ascending."""

    signature: Signature
    states: tuple
    _index: dict = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {r: k for k, r in enumerate(self.states)}
        )

    def position(self, r) -> int:
        return self._index[tuple(r)]

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, k):
        return self.states[k]

    def __contains__(self, r):
        return tuple(r) in self._index


@lru_cache(maxsize=None)
def enumerate_basis(sig: Signature, cap: int = DEFAULT_STATE_CAP) -> FockBasis:
    """Enumerate the basis of W_p for a signature.

    The recursion fills slots left to right with ascending occupations, which
    yields lexicographic order directly. Enumeration aborts with
    StateCapExceeded as soon as more than `cap` states have been produced.
    """
    states = []
    width = sig.width
    vec = [0] * width

    def fill(slot: int, budget: int):
        if slot > width:
            if len(states) >= cap:
                raise StateCapExceeded(
                    f"signature {sig} exceeds the state cap of {cap}"
                )
            states.append(tuple(vec))
            return
        top = budget if slot <= sig.n else min(1, budget)
        for v in range(top + 1):
            vec[slot - 1] = v
            fill(slot + 1, budget - v)
        vec[slot - 1] = 0

    fill(1, sig.p)
    return FockBasis(sig, tuple(states))


def dimension(sig: Signature) -> int:
    """Closed-form state count: sum over the fermion number f of
    C(m, f) * C(n + p - f, n)."""
    total = 0
    for f in range(min(sig.m, sig.p) + 1):
        total += math.comb(sig.m, f) * math.comb(sig.n + sig.p - f, sig.n)
    return total


def h_eigenvalue(sig: Signature, i: int, r) -> int:
    """Eigenvalue of the Cartan generator H_i on the state r:

    p - (-1)^theta_i * r_i - sum_j r_j.
    """
    sign = -1 if theta(sig, i) else 1
    return sig.p - sign * r[i - 1] - sum(r)


def basis_json(basis: FockBasis) -> dict:
    """JSON-ready description of a basis (signature, dimension, states)."""
    sig = basis.signature
    return {
        "signature": {"n": sig.n, "m": sig.m, "p": sig.p},
        "dimension": len(basis),
        "states": [list(r) for r in basis],
    }
