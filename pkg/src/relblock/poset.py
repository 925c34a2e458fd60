"""Finite bounded posets.

Two backends share one interface: :class:`Poset` stores the order as
per-element down-set bitsets (Python ints), :class:`BooleanLattice` never
materializes the relation and compares bitmasks directly.  Elements are
dense integer ids ``0..len(P)-1``; id order is not the partial order.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CapabilityError, PosetError, SizeError

MAX_BOOLEAN_RANK = 24


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Common surface of both backends."""

    bottom: int
    top: int

    def __len__(self) -> int:
        raise NotImplementedError

    @property
    def elements(self) -> range:
        return range(len(self))

    def leq(self, x: int, y: int) -> bool:
        raise NotImplementedError

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def downset(self, x: int) -> Iterable[int]:
        raise NotImplementedError

    def upset(self, x: int) -> Iterable[int]:
        raise NotImplementedError

    @property
    def graded(self) -> bool:
        raise NotImplementedError

    def rank(self, x: int) -> int:
        raise NotImplementedError

    @property
    def height(self) -> int:
        """rank of the top element"""
        return self.rank(self.top)

    def name(self, x: int) -> str:
        raise NotImplementedError

    def element(self, name: str) -> int:
        raise NotImplementedError

    def linear_key(self, x: int):
        """Sort key of some linear extension."""
        raise NotImplementedError

    def _require_graded(self) -> None:
        if not self.graded:
            raise CapabilityError("operation needs a graded poset")


class Poset(FinitePoset):
    """Explicit finite bounded poset built from cover relations.

    ``covers`` holds pairs ``(x, y)`` of ids with ``x`` covered by ``y``
    (any generating relation works; the transitive closure is taken once).
    """

    def __init__(self, names: Sequence[str], covers: Iterable[tuple[int, int]],
                 ranks: Sequence[int] | None = None):
        self._names = list(names)
        n = len(self._names)
        if n < 2:
            raise PosetError("a bounded poset needs at least two elements")
        if len(set(self._names)) != n:
            raise PosetError("duplicate element names")
        self._index = {nm: i for i, nm in enumerate(self._names)}

        upper = [set() for _ in range(n)]
        for x, y in covers:
            if not (0 <= x < n and 0 <= y < n):
                raise PosetError(f"cover ({x}, {y}) out of range")
            if x == y:
                continue
            upper[x].add(y)

        # topological order (Kahn); a leftover node means a cycle
        indeg = [0] * n
        for x in range(n):
            for y in upper[x]:
                indeg[y] += 1
        order = [x for x in range(n) if indeg[x] == 0]
        for x in order:
            for y in upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    order.append(y)
        if len(order) != n:
            raise PosetError("relation has a cycle; not antisymmetric")

        down = [1 << x for x in range(n)]
        for x in order:
            for y in upper[x]:
                down[y] |= down[x]
        up = [1 << x for x in range(n)]
        for y in range(n):
            for x in _bits(down[y]):
                up[x] |= 1 << y

        self._down = down
        self._up = up
        self._pos = {x: i for i, x in enumerate(order)}
        full = (1 << n) - 1
        bottoms = [x for x in range(n) if up[x] == full]
        tops = [x for x in range(n) if down[x] == full]
        if not bottoms or not tops:
            raise PosetError("poset is not bounded")
        self.bottom = bottoms[0]
        self.top = tops[0]
        self._ranks = self._compute_ranks(ranks)

    @classmethod
    def from_leq(cls, names: Sequence[str], leq: Callable[[int, int], bool]) -> "Poset":
        n = len(names)
        pairs = [(x, y) for x in range(n) for y in range(n) if x != y and leq(x, y)]
        return cls(names, pairs)

    def _compute_ranks(self, supplied):
        n = len(self._names)
        covers = self.cover_relations
        if supplied is not None:
            ranks = list(supplied)
            if len(ranks) != n:
                raise PosetError("rank list length mismatch")
            if ranks[self.bottom] != 0 or any(ranks[y] != ranks[x] + 1 for x, y in covers):
                raise PosetError("supplied ranks are not a grading")
            return ranks
        # longest chain from bottom; graded iff every cover adds exactly one
        ranks = [0] * n
        for x in sorted(range(n), key=self._pos.__getitem__):
            for y in _bits(self._up[x] & ~(1 << x)):
                if ranks[y] < ranks[x] + 1:
                    ranks[y] = ranks[x] + 1
        if any(ranks[y] != ranks[x] + 1 for x, y in covers):
            return None
        return ranks

    @cached_property
    def cover_relations(self) -> list[tuple[int, int]]:
        out = []
        for y in range(len(self)):
            below = self._down[y] & ~(1 << y)
            for x in _bits(below):
                # x is covered by y iff nothing strictly between
                between = below & self._up[x] & ~(1 << x)
                if not between:
                    out.append((x, y))
        return out

    def __len__(self) -> int:
        return len(self._names)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements)"

    def leq(self, x: int, y: int) -> bool:
        return bool(self._down[y] >> x & 1)

    def downset(self, x: int) -> list[int]:
        return list(_bits(self._down[x]))

    def upset(self, x: int) -> list[int]:
        return list(_bits(self._up[x]))

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def up_mask(self, x: int) -> int:
        return self._up[x]

    @property
    def graded(self) -> bool:
        return self._ranks is not None

    def rank(self, x: int) -> int:
        self._require_graded()
        return self._ranks[x]

    def name(self, x: int) -> str:
        return self._names[x]

    def element(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PosetError(f"unknown element {name!r}") from None

    def linear_key(self, x: int) -> int:
        return self._pos[x]

    def dual(self) -> "Poset":
        return Poset(self._names, [(y, x) for x, y in self.cover_relations])

    # -- JSON exchange -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "elements": list(self._names),
            "covers": [[self._names[x], self._names[y]] for x, y in sorted(self.cover_relations)],
            "bottom": self._names[self.bottom],
            "top": self._names[self.top],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Poset":
        names = list(data["elements"])
        index = {nm: i for i, nm in enumerate(names)}
        try:
            covers = [(index[x], index[y]) for x, y in data.get("covers", [])]
        except KeyError as exc:
            raise PosetError(f"cover mentions unknown element {exc.args[0]!r}") from None
        ranks = data.get("ranks")
        if isinstance(ranks, dict):
            ranks = [ranks[nm] for nm in names]
        P = cls(names, covers, ranks)
        for key, want in (("bottom", P.bottom), ("top", P.top)):
            if key in data and index.get(data[key]) != want:
                raise PosetError(f"declared {key} {data[key]!r} is not the {key} of the order")
        return P


def load_poset(path) -> Poset:
    with open(path) as fh:
        return Poset.from_dict(json.load(fh))


def dump_poset(P: Poset, path) -> None:
    with open(path, "w") as fh:
        json.dump(P.to_dict(), fh, indent=1)


class BooleanLattice(FinitePoset):
    """B(n): all subsets of an n-set as bitmasks.

    Element names are bitstrings, most significant bit first, so the
    string's first character is atom 1.
    """

    def __init__(self, n: int):
        if not (isinstance(n, int) and 1 <= n <= MAX_BOOLEAN_RANK):
            raise SizeError(f"Boolean lattice rank must be in 1..{MAX_BOOLEAN_RANK}, got {n!r}")
        self.n = n
        self.full = (1 << n) - 1
        self.bottom = 0
        self.top = self.full

    def __len__(self) -> int:
        return 1 << self.n

    def __repr__(self) -> str:
        return f"BooleanLattice({self.n})"

    def leq(self, x: int, y: int) -> bool:
        return x & ~y == 0

    def downset(self, x: int) -> Iterator[int]:
        sub = x
        while True:
            yield sub
            if sub == 0:
                return
            sub = (sub - 1) & x

    def upset(self, x: int) -> Iterator[int]:
        free = self.full & ~x
        for sub in self.downset(free):
            yield x | sub

    @property
    def graded(self) -> bool:
        return True

    def rank(self, x: int) -> int:
        return x.bit_count()

    @property
    def height(self) -> int:
        return self.n

    def name(self, x: int) -> str:
        return format(x, f"0{self.n}b")

    def element(self, name: str) -> int:
        if len(name) != self.n or set(name) - {"0", "1"}:
            raise PosetError(f"{name!r} is not a {self.n}-bit string")
        return int(name, 2)

    def atom_mask(self, i: int) -> int:
        """Mask of atom number ``i`` (1-based, leftmost bit)."""
        return 1 << (self.n - i)

    def linear_key(self, x: int) -> tuple[int, int]:
        return (x.bit_count(), x)

    def layer_masks(self, j: int) -> list[int]:
        if not 0 <= j <= self.n:
            return []
        # Gosper's hack over all j-subsets
        if j == 0:
            return [0]
        out = []
        x = (1 << j) - 1
        while x <= self.full:
            out.append(x)
            c = x & -x
            r = x + c
            x = (((r ^ x) >> 2) // c) | r
        return out


def boolean_lattice(n: int) -> BooleanLattice:
    return BooleanLattice(n)


def atoms(P: FinitePoset) -> frozenset[int]:
    """Elements covering the bottom."""
    if isinstance(P, BooleanLattice):
        return frozenset(1 << i for i in range(P.n))
    return frozenset(y for x, y in P.cover_relations if x == P.bottom)


def order_ideal(P: FinitePoset, A: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for a in A:
        if a not in out:
            out.update(P.downset(a))
    return frozenset(out)


def order_filter(P: FinitePoset, A: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for a in A:
        if a not in out:
            out.update(P.upset(a))
    return frozenset(out)


def minimals(P: FinitePoset, S: Iterable[int]) -> frozenset[int]:
    S = sorted(set(S), key=P.linear_key)
    keep: list[int] = []
    for x in S:
        # anything strictly below x comes earlier in a linear extension
        if not any(P.leq(y, x) for y in keep):
            keep.append(x)
    return frozenset(keep)


def maximals(P: FinitePoset, S: Iterable[int]) -> frozenset[int]:
    S = sorted(set(S), key=P.linear_key, reverse=True)
    keep: list[int] = []
    for x in S:
        if not any(P.leq(x, y) for y in keep):
            keep.append(x)
    return frozenset(keep)


def layer(P: FinitePoset, j: int) -> frozenset[int]:
    P._require_graded()
    if isinstance(P, BooleanLattice):
        return frozenset(P.layer_masks(j))
    return frozenset(x for x in P.elements if P.rank(x) == j)


def mobius(Q: FinitePoset, x: int, z: int) -> int:
    """Möbius function by its recursive definition over the interval [x, z]."""
    if x == z:
        return 1
    if not Q.leq(x, z):
        return 0
    if isinstance(Q, BooleanLattice):
        interval = [x | s for s in Q.downset(z & ~x)]
    else:
        interval = [y for y in Q.upset(x) if Q.leq(y, z)]
    interval.sort(key=Q.linear_key)
    mu: dict[int, int] = {}
    for y in interval:
        if y == x:
            mu[y] = 1
        else:
            mu[y] = -sum(v for w, v in mu.items() if Q.leq(w, y))
    return mu[z]


def mobius_from_bottom(Q: FinitePoset) -> dict[int, int]:
    """mu(bottom, y) for every y, in one pass."""
    mu: dict[int, int] = {}
    for y in sorted(Q.elements, key=Q.linear_key):
        mu[y] = 1 if y == Q.bottom else -sum(v for w, v in mu.items() if Q.leq(w, y))
    return mu


def is_convex(P: FinitePoset, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not S:
        return True
    between = order_filter(P, S) & order_ideal(P, S)
    return between <= S
