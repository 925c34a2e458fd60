"""Clutters (Sperner families) and their antichains in B(n).

A set over an ordered ground list maps to a bitmask whose leftmost bit
is the first ground atom, matching the bitstring names of
:class:`~relblock.poset.BooleanLattice`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .antichains import Antichain
from .errors import DomainError, PosetError
from .poset import BooleanLattice


@dataclass(frozen=True)
class Clutter:
    ground: tuple[str, ...]
    sets: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(set(self.ground)) != len(self.ground):
            raise PosetError("ground set repeats an atom")
        for S in self.sets:
            if not S <= set(self.ground):
                raise PosetError(f"set {sorted(S)} leaves the ground set")
        for S in self.sets:
            for T in self.sets:
                if S < T:
                    raise PosetError(f"not a clutter: {sorted(S)} is inside {sorted(T)}")

    @classmethod
    def reduced(cls, ground: Iterable[str], sets: Iterable[Iterable[str]]) -> "Clutter":
        """Keep only the inclusion-minimal sets, warning if any were dropped."""
        family = {frozenset(S) for S in sets}
        keep = frozenset(S for S in family if not any(T < S for T in family))
        if keep != family:
            warnings.warn(f"family is not Sperner; dropped {len(family) - len(keep)} non-minimal set(s)")
        return cls(tuple(ground), keep)

    @property
    def lattice(self) -> BooleanLattice:
        return BooleanLattice(len(self.ground))

    def mask(self, S: Iterable[str]) -> int:
        n = len(self.ground)
        pos = {a: i for i, a in enumerate(self.ground)}
        return sum(1 << (n - 1 - pos[a]) for a in S)

    def unmask(self, x: int) -> frozenset[str]:
        n = len(self.ground)
        return frozenset(a for i, a in enumerate(self.ground) if x >> (n - 1 - i) & 1)

    def to_antichain(self, B: BooleanLattice | None = None) -> Antichain:
        B = B or self.lattice
        if B.n != len(self.ground):
            raise PosetError(f"B({B.n}) does not match a ground set of size {len(self.ground)}")
        return Antichain.of(B, (self.mask(S) for S in self.sets), reduce=None)

    @classmethod
    def from_antichain(cls, ground: Iterable[str], A: Antichain) -> "Clutter":
        ground = tuple(ground)
        probe = cls(ground, frozenset())
        return cls(ground, frozenset(probe.unmask(x) for x in A.members))

    def ordered(self, S: Iterable[str]) -> list[str]:
        pos = {a: i for i, a in enumerate(self.ground)}
        return sorted(S, key=pos.__getitem__)

    def format_set(self, S: Iterable[str]) -> str:
        return "{" + " ".join(self.ordered(S)) + "}"


def parse_clutter(text: str) -> Clutter:
    """Parse ``GROUND a b c`` followed by one space-separated set per line.

    Blank lines and ``#`` comments are skipped.  An empty family is an
    error; a non-Sperner family is reduced to its minimal sets.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split()[0] != "GROUND":
        raise PosetError("clutter file must start with a 'GROUND a b c ...' line")
    ground = lines[0].split()[1:]
    if not ground:
        raise PosetError("empty ground set")
    sets = [ln.split() for ln in lines[1:]]
    if not sets:
        raise DomainError("empty family: the trivial clutter has no committees to list")
    known = set(ground)
    for S in sets:
        unknown = set(S) - known
        if unknown:
            raise PosetError(f"atoms {sorted(unknown)} are not in the ground set")
    return Clutter.reduced(ground, sets)


def load_clutter(path) -> Clutter:
    with open(path) as fh:
        return parse_clutter(fh.read())
