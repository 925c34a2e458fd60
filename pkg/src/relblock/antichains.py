"""Antichains and the two antichain lattices.

The "ideal" order compares generated down-sets, the "filter" order compares
generated up-sets.  In the filter order the empty antichain is the least
element and ``{bottom}`` the greatest; these two are the trivial antichains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import HostMismatchError, PosetError
from .poset import BooleanLattice, FinitePoset, maximals, minimals, order_filter, order_ideal


@dataclass(frozen=True)
class Antichain:
    host: FinitePoset
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, host: FinitePoset, elements: Iterable[int], reduce: str | None = "min") -> "Antichain":
        """Build an antichain from ``elements``.

        ``reduce`` is ``"min"`` or ``"max"`` to keep minimal/maximal
        elements of an arbitrary set, or ``None`` for strict validation.
        """
        elements = frozenset(elements)
        for x in elements:
            if not 0 <= x < len(host):
                raise PosetError(f"element id {x} not in host")
        if reduce == "min":
            return cls(host, minimals(host, elements))
        if reduce == "max":
            return cls(host, maximals(host, elements))
        if reduce is not None:
            raise ValueError(f"unknown reduction {reduce!r}")
        for x in elements:
            for y in elements:
                if x != y and host.leq(x, y):
                    raise PosetError(f"{host.name(x)} <= {host.name(y)}: not an antichain")
        return cls(host, elements)

    @classmethod
    def empty(cls, host: FinitePoset) -> "Antichain":
        return cls(host, frozenset())

    @classmethod
    def bottom(cls, host: FinitePoset) -> "Antichain":
        return cls(host, frozenset({host.bottom}))

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def is_bottom(self) -> bool:
        return self.members == {self.host.bottom}

    @property
    def is_trivial(self) -> bool:
        return self.is_empty or self.is_bottom

    def ideal(self) -> frozenset[int]:
        return order_ideal(self.host, self.members)

    def filter(self) -> frozenset[int]:
        return order_filter(self.host, self.members)

    def names(self) -> list[str]:
        return sorted(self.host.name(x) for x in self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __repr__(self) -> str:
        if self.is_empty:
            return "Antichain(EMPTY)"
        if self.is_bottom:
            return "Antichain(BOTTOM)"
        return f"Antichain({{{', '.join(self.names())}}})"


def _host(A: Antichain, B: Antichain) -> FinitePoset:
    if A.host is not B.host:
        raise HostMismatchError("antichains live in different posets")
    return A.host


def leq_ideal(A: Antichain, B: Antichain) -> bool:
    P = _host(A, B)
    return all(any(P.leq(a, b) for b in B.members) for a in A.members)


def leq_filter(A: Antichain, B: Antichain) -> bool:
    P = _host(A, B)
    return all(any(P.leq(b, a) for b in B.members) for a in A.members)


def meet_ideal(A: Antichain, B: Antichain) -> Antichain:
    P = _host(A, B)
    return Antichain(P, maximals(P, A.ideal() & B.ideal()))


def join_ideal(A: Antichain, B: Antichain) -> Antichain:
    P = _host(A, B)
    return Antichain(P, maximals(P, A.members | B.members))


def meet_filter(A: Antichain, B: Antichain) -> Antichain:
    P = _host(A, B)
    return Antichain(P, minimals(P, A.filter() & B.filter()))


def join_filter(A: Antichain, B: Antichain) -> Antichain:
    P = _host(A, B)
    return Antichain(P, minimals(P, A.members | B.members))


def enumerate_antichains(P: FinitePoset) -> Iterator[Antichain]:
    """Every antichain of ``P`` exactly once (both trivial ones included).

    Backtracking over elements in a linear extension; each step adds an
    element incomparable with everything chosen so far.
    """
    order = sorted(P.elements, key=P.linear_key)
    if isinstance(P, BooleanLattice):
        def incomparable(x: int, y: int) -> bool:
            return (x & ~y) != 0 and (y & ~x) != 0
    else:
        def incomparable(x: int, y: int) -> bool:
            return not P.comparable(x, y)

    # candidates after position i that are incomparable with order[i]
    pos = {x: i for i, x in enumerate(order)}
    compat = {x: frozenset(y for y in order[pos[x] + 1:] if incomparable(x, y)) for x in order}

    def extend(chosen: tuple[int, ...], cands: list[int]) -> Iterator[Antichain]:
        yield Antichain(P, frozenset(chosen))
        for i, x in enumerate(cands):
            rest = [y for y in cands[i + 1:] if y in compat[x]]
            yield from extend(chosen + (x,), rest)

    yield from extend((), order)
