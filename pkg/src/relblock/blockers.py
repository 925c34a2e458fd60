"""Weight maps, relative r-blockers and absolute j-blockers.

A weight map sends antichains to ``{-1} ∪ N`` with ``∅ -> -1``,
``{0̂} -> 0`` and positive, monotone values above ``{0̂}`` in the ideal
order.  The ratio that decides relative blocking is compared exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .antichains import Antichain, enumerate_antichains, leq_ideal
from .errors import CapabilityError, DomainError
from .poset import (
    BooleanLattice,
    FinitePoset,
    Poset,
    atoms,
    is_convex,
    maximals,
    minimals,
    order_ideal,
)
from .rational import as_threshold

KINDS = ("ideal", "atoms", "rank", "custom")


def _members(A) -> frozenset[int]:
    if isinstance(A, Antichain):
        return A.members
    return frozenset(A)


def _common_down(P: FinitePoset, a: int, b: int) -> frozenset[int]:
    if isinstance(P, Poset):
        mask = P.down_mask(a) & P.down_mask(b)
        return frozenset(x for x in P.elements if mask >> x & 1)
    return frozenset(x for x in P.downset(a) if P.leq(x, b))


@dataclass(frozen=True)
class WeightMap:
    """An antichain weight; ``kind`` picks a built-in or ``"custom"``.

    A custom ``func(P, antichain_members) -> int`` must be deterministic;
    whether it satisfies the weight-map axioms is the caller's problem,
    checked by :func:`validate_weight_map` on small posets.
    """

    kind: str
    func: Callable[[FinitePoset, frozenset[int]], int] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight map kind {self.kind!r}")
        if (self.kind == "custom") != (self.func is not None):
            raise ValueError("a custom weight map needs func, built-ins take none")

    def __call__(self, P: FinitePoset, A) -> int:
        A = _members(A)
        if self.kind == "custom":
            return self.func(P, A)
        if not A:
            return -1
        if self.kind == "rank":
            P._require_graded()
            return max(P.rank(a) for a in A)
        ideal = order_ideal(P, A)
        if self.kind == "ideal":
            return len(ideal) - 1
        return len(ideal & atoms(P))

    def of(self, P: FinitePoset, x: int) -> int:
        """Weight of the one-element antichain ``{x}``."""
        if isinstance(P, BooleanLattice):
            if self.kind in ("rank", "atoms"):
                return x.bit_count()
            if self.kind == "ideal":
                return (1 << x.bit_count()) - 1
        return self(P, (x,))

    def meet(self, P: FinitePoset, b: int, a: int) -> int:
        """Weight of ``{b} ∧ {a}`` in the ideal order."""
        if isinstance(P, BooleanLattice):
            return self.of(P, a & b)
        common = _common_down(P, a, b)
        if self.kind == "custom":
            return self.func(P, maximals(P, common))
        if self.kind == "ideal":
            return len(common) - 1
        if self.kind == "atoms":
            return len(common & atoms(P))
        P._require_graded()
        return max(P.rank(x) for x in common)

    def total(self, P: FinitePoset) -> int:
        """omega(P), the weight of the top element."""
        return self.of(P, P.top)


IDEAL_SIZE = WeightMap("ideal")
ATOM_COUNT = WeightMap("atoms")
MAX_RANK = WeightMap("rank")


def weight_map(selector) -> WeightMap:
    """Resolve a CLI/config selector ``"ideal" | "atoms" | "rank"``."""
    if isinstance(selector, WeightMap):
        return selector
    try:
        return {"ideal": IDEAL_SIZE, "atoms": ATOM_COUNT, "rank": MAX_RANK}[selector]
    except KeyError:
        raise ValueError(f"unknown weight selector {selector!r}") from None


def _random_antichains(P: FinitePoset, count: int, seed: int = 0):
    rng = random.Random(seed)
    elems = list(P.elements)
    for _ in range(count):
        size = rng.randint(1, min(6, len(elems)))
        yield Antichain(P, maximals(P, rng.sample(elems, size)))


def validate_weight_map(P: FinitePoset, omega: WeightMap, sample: int = 300) -> bool:
    """Check the weight-map axioms on ``P``.

    Exhaustive over all antichain pairs when ``|P| <= 16``; otherwise on
    ``sample`` random antichains.  Raises :class:`CapabilityError` if
    ``omega`` cannot be evaluated on ``P`` at all.
    """
    if omega(P, frozenset()) != -1 or omega(P, frozenset({P.bottom})) != 0:
        return False
    if len(P) <= 16:
        family = [A for A in enumerate_antichains(P) if not A.is_trivial]
    else:
        family = list(_random_antichains(P, sample))
    values = {A: omega(P, A.members) for A in family}
    if any(v <= 0 for v in values.values()):
        return False
    for A in family:
        for B in family:
            if values[A] > values[B] and leq_ideal(A, B):
                return False
    return True


def is_relatively_blocking(P: FinitePoset, omega: WeightMap, r, A, b: int) -> bool:
    r = as_threshold(r)
    A = _members(A)
    if not A:
        return True
    if A == {P.bottom}:
        return False
    if b == P.bottom:
        return False
    wb = omega.of(P, b)
    return all(omega.meet(P, b, a) > r * wb for a in A if a != P.bottom)


def blocking_subposet(P: FinitePoset, omega: WeightMap, r, A) -> frozenset[int]:
    """All relatively r-blocking elements for ``A``."""
    r = as_threshold(r)
    A = _members(A)
    if not A:
        return frozenset(P.elements)
    if A == {P.bottom}:
        return frozenset()
    gens = minimals(P, A - {P.bottom})
    return frozenset(b for b in P.elements if is_relatively_blocking(P, omega, r, gens, b))


def blocking_layer(P: FinitePoset, omega: WeightMap, r, A, k: int) -> frozenset[int]:
    if not 1 <= k <= omega.total(P):
        raise DomainError(f"weight level {k} outside 1..{omega.total(P)}")
    return frozenset(b for b in blocking_subposet(P, omega, r, A) if omega.of(P, b) == k)


def lightest_blocking_elements(P: FinitePoset, omega: WeightMap, r, A) -> frozenset[int]:
    """Relatively r-blocking elements of minimum weight (excluding 0̂)."""
    found = [b for b in blocking_subposet(P, omega, r, A) if b != P.bottom]
    if not found:
        return frozenset()
    low = min(omega.of(P, b) for b in found)
    return frozenset(b for b in found if omega.of(P, b) == low)


def relative_blocker(P: FinitePoset, omega: WeightMap, r, A) -> Antichain:
    A = Antichain.of(P, _members(A)) if not isinstance(A, Antichain) else A
    if A.is_empty:
        return Antichain.bottom(P)
    if A.is_bottom:
        return Antichain.empty(P)
    return Antichain(P, minimals(P, blocking_subposet(P, omega, r, A.members)))


def absolute_blocker(P: FinitePoset, omega: WeightMap, j: int, A) -> Antichain:
    """The absolute j-blocker: minimal b with weight of ``{b} ∧ {a}`` above j for all a."""
    A = Antichain.of(P, _members(A)) if not isinstance(A, Antichain) else A
    top = omega.total(P)
    if not 0 <= j <= top:
        raise DomainError(f"j={j} outside 0..{top}")
    if A.is_empty:
        return Antichain.bottom(P)
    if A.is_bottom:
        return Antichain.empty(P)
    if j == top:
        return Antichain.empty(P)
    gens = list(A.members)
    hits = (b for b in P.elements if all(omega.meet(P, b, a) > j for a in gens))
    return Antichain(P, minimals(P, hits))


def atom_blocker(P: FinitePoset, j: int, A) -> Antichain:
    """Absolute j-blocker w.r.t. atom counts; ``j=0`` gives the plain blocker."""
    if not 0 <= j < len(atoms(P)):
        raise DomainError(f"j={j} outside 0..{len(atoms(P)) - 1}")
    return absolute_blocker(P, ATOM_COUNT, j, A)


def convex_slice(P: FinitePoset, omega: WeightMap, A, h: int, k: int) -> frozenset[int]:
    """Elements of weight k whose meet with every generator weighs at least h."""
    if not 1 <= h <= k <= omega.total(P):
        raise DomainError(f"need 1 <= h <= k <= {omega.total(P)}, got h={h}, k={k}")
    gens = list(_members(A))
    return frozenset(
        b for b in P.elements
        if omega.of(P, b) == k and all(omega.meet(P, b, a) >= h for a in gens)
    )


def convex_slice_exact(P: FinitePoset, omega: WeightMap, a: int, h: int, k: int) -> frozenset[int]:
    if not 1 <= h <= k <= omega.total(P):
        raise DomainError(f"need 1 <= h <= k <= {omega.total(P)}, got h={h}, k={k}")
    return frozenset(
        b for b in P.elements if omega.of(P, b) == k and omega.meet(P, b, a) == h
    )


def committee_threshold(P: FinitePoset, omega: WeightMap, r, A) -> Fraction | None:
    """Threshold r' for which A blocks its own relative r-blocker.

    ``r * min(weight over the blocker) / max(weight over A)``; ``None``
    when the blocker is trivial.
    """
    r = as_threshold(r)
    Y = relative_blocker(P, omega, r, A)
    if Y.is_trivial:
        return None
    gens = _members(A)
    return r * Fraction(min(omega.of(P, y) for y in Y), max(omega.of(P, a) for a in gens))


__all__ = [
    "ATOM_COUNT", "IDEAL_SIZE", "MAX_RANK", "WeightMap", "absolute_blocker", "atom_blocker",
    "blocking_layer", "blocking_subposet", "committee_threshold", "convex_slice",
    "convex_slice_exact", "is_convex", "is_relatively_blocking", "lightest_blocking_elements",
    "relative_blocker", "validate_weight_map", "weight_map",
]
