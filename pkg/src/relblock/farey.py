"""Farey subsequences.

Kinds handled here:

* ``full(n)``      the classical Farey sequence of order n;
* ``boolean(n,m)`` fractions h/k of order n with ``h <= m`` and
  ``k - h <= n - m``, plus 0/1 and 1/1 (the ratio set of a rank-m element
  of B(n));
* ``left(n,m)``    fractions of order n with ``h <= m``;
* ``poset``        ratios ``omega({b} ∧ {a}) / omega(b)`` over a poset.

All fractions are :class:`fractions.Fraction` and sequences are indexed
from zero.  Closed forms (index, cardinality, neighbours, three-term
recurrences) are checked against the generated sequences in the tests.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator

from .errors import DomainError
from .rational import format_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FareySub:
    kind: str
    params: tuple
    fractions: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.fractions)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.fractions)

    def __getitem__(self, i):
        return self.fractions[i]

    def __contains__(self, f) -> bool:
        f = Fraction(f)
        i = bisect.bisect_left(self.fractions, f)
        return i < len(self.fractions) and self.fractions[i] == f

    def index(self, f) -> int:
        f = Fraction(f)
        i = bisect.bisect_left(self.fractions, f)
        if i == len(self.fractions) or self.fractions[i] != f:
            raise DomainError(f"{format_fraction(f)} is not in {self.describe()}")
        return i

    def neighbors(self, f) -> tuple[Fraction | None, Fraction | None]:
        i = self.index(f)
        before = self.fractions[i - 1] if i > 0 else None
        after = self.fractions[i + 1] if i + 1 < len(self.fractions) else None
        return before, after

    def describe(self) -> str:
        return f"{self.kind}{self.params}"

    def format(self, sep: str = " ") -> str:
        return sep.join(format_fraction(f) for f in self.fractions)


# -- number theory -----------------------------------------------------

@lru_cache(maxsize=None)
def number_mobius(d: int) -> int:
    """Number-theoretic Möbius function."""
    if d < 1:
        raise ValueError("Möbius function needs a positive argument")
    sign, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if d > 1 else sign


def phi(n: int, lo: int, hi: int) -> int:
    """How many s in ``[lo, hi] ∩ [1, n]`` are coprime to n (direct scan)."""
    lo, hi = max(lo, 1), min(hi, n)
    return sum(1 for s in range(lo, hi + 1) if gcd(n, s) == 1)


def phi_divisor_sum(n: int, lo: int, hi: int) -> int:
    """Same count as :func:`phi` through the divisor sum of the Möbius function."""
    lo, hi = max(lo, 1), min(hi, n)
    if lo > hi:
        return 0
    return sum(
        number_mobius(d) * (hi // d - (lo - 1) // d)
        for d in range(1, hi + 1) if n % d == 0
    )


# -- generation --------------------------------------------------------

def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


@lru_cache(maxsize=64)
def _full(n: int) -> tuple[Fraction, ...]:
    a, b, c, d = 0, 1, 1, n
    out = [Fraction(0, 1)]
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append(Fraction(a, b))
    return tuple(out)


def farey_full(n: int) -> FareySub:
    _require(n >= 1, f"Farey order must be positive, got {n}")
    return FareySub("full", (n,), _full(n))


def in_boolean(n: int, m: int, f: Fraction) -> bool:
    f = Fraction(f)
    if f in (ZERO, ONE):
        return True
    h, k = f.numerator, f.denominator
    return 0 < f < 1 and k <= n and h <= m and k - h <= n - m


def in_left(n: int, m: int, f: Fraction) -> bool:
    f = Fraction(f)
    return 0 <= f <= 1 and f.denominator <= n and f.numerator <= m


def farey_boolean(n: int, m: int) -> FareySub:
    _require(n >= 1 and 0 <= m <= n, f"need 0 <= m <= n, got n={n}, m={m}")
    return FareySub("boolean", (n, m), tuple(f for f in _full(n) if in_boolean(n, m, f)))


def farey_left(n: int, m: int) -> FareySub:
    """Fractions of order n with numerator at most m.

    ``m = 0`` yields just ``(0/1,)``.
    """
    _require(n >= 1 and 0 <= m <= n, f"need 0 <= m <= n, got n={n}, m={m}")
    return FareySub("left", (n, m), tuple(f for f in _full(n) if in_left(n, m, f)))


def farey_poset(P, a: int, omega) -> FareySub:
    """Ascending ratios ``omega({b} ∧ {a}) / omega(b)`` over ``b != 0̂``, plus 0/1 and 1/1."""
    _require(a != P.bottom, "the generating element must not be the bottom")
    values = {ZERO, ONE}
    for b in P.elements:
        if b != P.bottom:
            values.add(Fraction(omega.meet(P, b, a), omega.of(P, b)))
    return FareySub("poset", (repr(P), P.name(a), omega.kind), tuple(sorted(values)))


def complement(f) -> Fraction:
    """h/k -> (k-h)/k."""
    f = Fraction(f)
    return 1 - f


# -- index and cardinality ---------------------------------------------

def _interior_bool(n: int, m: int) -> None:
    _require(0 < m < n, f"need 0 < m < n, got n={n}, m={m}")


def _index_sum(n: int, m: int, bound: Fraction, literal: bool) -> int:
    total = 0
    for j in range(1, n + 1):
        hi = min(m, (j * bound.numerator) // bound.denominator)
        lo = max(1, j + hi - n) if literal else max(1, j + m - n)
        total += phi(j, lo, hi)
    return total


def index_of(n: int, m: int, f, literal: bool = False) -> int:
    """Position of f in ``farey_boolean(n, m)`` by the coprime-count formula.

    The lower summation bound is ``max(1, j + m - n)``: a fraction i/j
    belongs to the sequence only if ``j - i <= n - m``.  ``literal=True``
    uses the bound ``max(1, j + min(m, floor(j f)) - n)`` instead, which
    admits fractions outside the sequence (it returns 5 for (6, 3, 1/2)).
    """
    _interior_bool(n, m)
    f = Fraction(f)
    _require(in_boolean(n, m, f), f"{format_fraction(f)} is not in F(B({n}),{m})")
    _require(f != ONE, "the terminal fraction 1/1 has no formula index")
    return _index_sum(n, m, f, literal)


def index_by_search(n: int, m: int, f) -> int:
    return farey_boolean(n, m).index(f)


def cardinality(n: int, m: int, literal: bool = False) -> int:
    """Length of ``farey_boolean(n, m)`` for ``0 < m < n``.

    ``1 + sum_j phi(j; [1, min(m, j)]) - sum_{j in [n-m+2, n]} phi(j; [1, j+m-n-1])``.
    ``literal=True`` also subtracts ``sum_{j in [ceil(n/2)+1, m]} phi(j; [1, 2j-n-1])``,
    which double-counts the exclusion once ``m > n/2`` (gives 3 for (6, 5)).
    """
    _interior_bool(n, m)
    total = 1 + sum(phi(j, 1, min(m, j)) for j in range(1, n + 1))
    total -= sum(phi(j, 1, j + m - n - 1) for j in range(n - m + 2, n + 1))
    if literal:
        total -= sum(phi(j, 1, 2 * j - n - 1) for j in range(-(-n // 2) + 1, m + 1))
    return total


# -- neighbours --------------------------------------------------------

def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _neighbor(n: int, m: int, f: Fraction, sign: int, left: bool) -> Fraction:
    """sign=-1: predecessor, sign=+1: successor."""
    h, k = f.numerator, f.denominator
    # k*x0 ≡ sign (mod h) with x0 in [m-h+1, m]; that window holds one residue class rep
    x0 = (sign * pow(k, -1, h)) % h
    x0 = m - (m - x0) % h
    y0 = (k * x0 - sign) // h
    bounds = [Fraction(m - x0, h), Fraction(n - y0, k)]
    if not left:
        bounds.append(Fraction(n - m + x0 - y0, k - h))
    t = _floor(min(bounds))
    return Fraction(x0 + t * h, y0 + t * k)


def _unit_neighbor(n: int, m: int, k: int, sign: int, left: bool) -> Fraction:
    """Closed form for the neighbours of 1/k."""
    step = k if left else k - 1
    shift = min(0, (n - k * m + sign) // step)
    x = m + shift
    return Fraction(x, k * x - sign)


def _boolean_neighbor(n: int, m: int, f, sign: int) -> Fraction:
    _interior_bool(n, m)
    f = Fraction(f)
    _require(in_boolean(n, m, f), f"{format_fraction(f)} is not in F(B({n}),{m})")
    _require(0 < f < 1, "boundary fractions have no formula neighbour")
    if f.numerator == 1:
        return _unit_neighbor(n, m, f.denominator, sign, left=False)
    return _neighbor(n, m, f, sign, left=False)


def predecessor(n: int, m: int, f) -> Fraction:
    return _boolean_neighbor(n, m, f, -1)


def successor(n: int, m: int, f) -> Fraction:
    return _boolean_neighbor(n, m, f, +1)


def general_neighbor(n: int, m: int, f, sign: int, left: bool = False) -> Fraction:
    """Modular-inverse neighbour formula without the 1/k shortcut (for cross-checks)."""
    return _neighbor(n, m, Fraction(f), sign, left)


# -- three-term recurrences --------------------------------------------

def _det(f: Fraction, g: Fraction) -> int:
    return f.denominator * g.numerator - f.numerator * g.denominator


def _step(n: int, m: int, outer: Fraction, mid: Fraction, left: bool) -> Fraction:
    bounds = [
        Fraction(outer.numerator + m, mid.numerator),
        Fraction(outer.denominator + n, mid.denominator),
    ]
    if not left:
        bounds.append(Fraction(outer.denominator - outer.numerator + n - m,
                               mid.denominator - mid.numerator))
    g = _floor(min(bounds))
    return Fraction(g * mid.numerator - outer.numerator, g * mid.denominator - outer.denominator)


def _check_pair(f: Fraction, g: Fraction) -> None:
    _require(_det(f, g) == 1, f"{format_fraction(f)}, {format_fraction(g)} are not Farey neighbours")


def next_from_pair(n: int, m: int, f0, f1) -> Fraction:
    """Fraction following two consecutive members of ``farey_boolean(n, m)``."""
    _interior_bool(n, m)
    f0, f1 = Fraction(f0), Fraction(f1)
    _check_pair(f0, f1)
    _require(f1 != ONE, "1/1 is the last fraction")
    return _step(n, m, f0, f1, left=False)


def prev_from_pair(n: int, m: int, f1, f2) -> Fraction:
    """Fraction preceding two consecutive members of ``farey_boolean(n, m)``."""
    _interior_bool(n, m)
    f1, f2 = Fraction(f1), Fraction(f2)
    _check_pair(f1, f2)
    _require(f1 != ZERO, "0/1 is the first fraction")
    return _step(n, m, f2, f1, left=False)


def _run(n, m, start, second, stop, left, forward=True):
    out = [start, second]
    while out[-1] != stop:
        out.append(_step(n, m, out[-2], out[-1], left))
    return out if forward else out[::-1]


def boolean_by_recurrence(n: int, m: int, from_end: bool = False) -> tuple[Fraction, ...]:
    """Regenerate ``farey_boolean(n, m)`` from its first (or last) two members."""
    _interior_bool(n, m)
    if from_end:
        return tuple(_run(n, m, ONE, Fraction(m, m + 1), ZERO, False, forward=False))
    return tuple(_run(n, m, ZERO, Fraction(1, n - m + 1), ONE, False))


# -- left-restricted sequences -----------------------------------------

def _left_member(n: int, m: int, f: Fraction) -> None:
    _require(1 <= m <= n, f"need 1 <= m <= n, got n={n}, m={m}")
    _require(in_left(n, m, f), f"{format_fraction(f)} is not in (h/k in F_{n}: h <= {m})")


def left_index_of(n: int, m: int, f) -> int:
    f = Fraction(f)
    _left_member(n, m, f)
    _require(f != ONE, "the terminal fraction 1/1 has no formula index")
    return sum(phi(j, 1, min(m, (j * f.numerator) // f.denominator)) for j in range(1, n + 1))


def left_index_of_mobius(n: int, m: int, f) -> int:
    """Index through the Möbius-weighted lattice-point count."""
    f = Fraction(f)
    _left_member(n, m, f)
    _require(f != ONE, "the terminal fraction 1/1 has no formula index")
    total = -1
    for d in range(1, n + 1):
        mu = number_mobius(d)
        if mu:
            inner = sum(min(m // d, (j * f.numerator) // f.denominator) for j in range(1, n // d + 1))
            total += mu * (n // d + inner)
    return total


def left_cardinality(n: int, m: int) -> int:
    _require(1 <= m <= n, f"need 1 <= m <= n, got n={n}, m={m}")
    return 1 + sum(phi(j, 1, min(m, j)) for j in range(1, n + 1))


def left_cardinality_mobius(n: int, m: int) -> int:
    _require(1 <= m <= n, f"need 1 <= m <= n, got n={n}, m={m}")
    total = Fraction(1)
    for d in range(1, n + 1):
        total += number_mobius(d) * (n // d - Fraction(m // d, 2)) * (m // d + 1)
    assert total.denominator == 1
    return int(total)


def left_neighbors(n: int, m: int, f) -> tuple[Fraction, Fraction]:
    f = Fraction(f)
    _left_member(n, m, f)
    _require(0 < f < 1, "boundary fractions have no formula neighbour")
    if f.numerator == 1:
        k = f.denominator
        return _unit_neighbor(n, m, k, -1, left=True), _unit_neighbor(n, m, k, +1, left=True)
    return _neighbor(n, m, f, -1, left=True), _neighbor(n, m, f, +1, left=True)


def left_from_pair(n: int, m: int, f0, f1, backward: bool = False) -> Fraction:
    """Next (or, with ``backward``, previous) member of a left-restricted sequence.

    Forward: ``f0, f1`` consecutive, returns the member after ``f1``.
    Backward: ``f0, f1`` consecutive, returns the member before ``f0``.
    """
    _require(1 <= m <= n, f"need 1 <= m <= n, got n={n}, m={m}")
    f0, f1 = Fraction(f0), Fraction(f1)
    _check_pair(f0, f1)
    if backward:
        _require(f0 != ZERO, "0/1 is the first fraction")
        return _step(n, m, f1, f0, left=True)
    _require(f1 != ONE, "1/1 is the last fraction")
    return _step(n, m, f0, f1, left=True)


def left_by_recurrence(n: int, m: int, from_end: bool = False) -> tuple[Fraction, ...]:
    _require(1 <= m <= n, f"need 1 <= m <= n, got n={n}, m={m}")
    if n == 1:
        return (ZERO, ONE)
    if from_end:
        c = min(m, n - 1)
        return tuple(_run(n, m, ONE, Fraction(c, c + 1), ZERO, True, forward=False))
    return tuple(_run(n, m, ZERO, Fraction(1, n), ONE, True))
