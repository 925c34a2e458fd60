"""Counting relatively r-blocking elements layer by layer.

Three independent counts of ``|I_{r,k}|`` in B(n) with the max-rank
weight: a direct scan, a double inclusion-exclusion over generator
subsets and layer subsets, and the Möbius-function refinement over the
auxiliary lattices ``C`` (unions of layer-restricted ideals) and ``E``
(join-closures in B(n) with an adjoined bottom).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .antichains import Antichain
from .blockers import MAX_RANK, absolute_blocker, blocking_subposet
from .errors import CapabilityError, DomainError, ResourceGuardError
from .poset import BooleanLattice, FinitePoset, Poset, layer, mobius_from_bottom, order_filter
from .rational import as_threshold

MAX_GENERATORS = 12
MAX_LAYER_SET = 20


def nu(r, k: int) -> int:
    """Smallest integer strictly greater than r*k."""
    r = as_threshold(r)
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    x = r * k
    if x.denominator == 1:
        return int(x) + 1
    return -(-x.numerator // x.denominator)


def gaussian_binomial(j: int, i: int, q: int) -> int:
    if i < 0 or i > j:
        return 0
    if q == 1:
        return comb(j, i)
    num = den = 1
    for t in range(i):
        num *= q ** (j - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


@dataclass(frozen=True)
class BinomialBracket:
    """Number of rank-i elements in a length-j interval; ``q=None`` means B(n)."""

    q: int | None = None

    def __call__(self, j: int, i: int) -> int:
        if self.q is None:
            return comb(j, i) if 0 <= i <= j else 0
        return gaussian_binomial(j, i, self.q)

    @property
    def mode(self) -> str:
        return "binomial" if self.q is None else f"q-binomial({self.q})"


BINOMIAL = BinomialBracket()


def _generators(P: FinitePoset, A) -> list[int]:
    A = A if isinstance(A, Antichain) else Antichain.of(P, A, reduce=None)
    if A.is_trivial:
        raise DomainError("counting needs a nontrivial antichain")
    return sorted(A.members)


def decompose_layers(P: FinitePoset, A, r) -> dict[int, frozenset[int]]:
    """Blocking elements per rank via absolute blockers (max-rank weight).

    Every rank ``k`` in ``1..rank(P)`` is a key; ranks with
    ``nu(r*k) > min rank(a)`` map to the empty set.
    """
    P._require_graded()
    r = as_threshold(r)
    gens = _generators(P, A)
    low = min(P.rank(a) for a in gens)
    out = {}
    for k in range(1, P.height + 1):
        v = nu(r, k)
        if v > low:
            out[k] = frozenset()
            continue
        up = order_filter(P, absolute_blocker(P, MAX_RANK, v - 1, gens).members)
        out[k] = frozenset(b for b in up if P.rank(b) == k)
    return out


def _boolean_setup(n: int, A, r, k: int):
    B = BooleanLattice(n)
    r = as_threshold(r)
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in 1..{n}, got {k}")
    gens = _generators(B, A)
    if len(gens) > MAX_GENERATORS:
        raise ResourceGuardError(f"{len(gens)} generators exceed the guard of {MAX_GENERATORS}")
    v = nu(r, k)
    if v > min(a.bit_count() for a in gens):
        return B, gens, v, None
    per_gen = [frozenset(x for x in B.layer_masks(v) if x & ~a == 0) for a in gens]
    ground = frozenset().union(*per_gen)
    if len(ground) > MAX_LAYER_SET:
        raise ResourceGuardError(f"layer set of size {len(ground)} exceeds the guard of {MAX_LAYER_SET}")
    return B, gens, v, per_gen


def count_brute(n: int, A, r, k: int) -> int:
    B = BooleanLattice(n)
    return sum(1 for b in blocking_subposet(B, MAX_RANK, r, _generators(B, A)) if b.bit_count() == k)


def union_sum(n: int, X, k: int, bracket: BinomialBracket = BINOMIAL) -> int:
    """Alternating sum over nonempty E ⊆ X of bracket(n - rank(join E), n - k).

    Equals the number of rank-k elements above at least one member of X.
    """
    xs = list(X)
    joins = [0] * (1 << len(xs))
    total = 0
    for S in range(1, 1 << len(xs)):
        low = S & -S
        joins[S] = joins[S ^ low] | xs[low.bit_length() - 1]
        sign = 1 if S.bit_count() % 2 else -1
        total += sign * bracket(n - joins[S].bit_count(), n - k)
    return total


def count_inclusion_exclusion(n: int, A, r, k: int, bracket: BinomialBracket = BINOMIAL) -> int:
    B, gens, v, per_gen = _boolean_setup(n, A, r, k)
    if per_gen is None:
        return 0
    cache: dict[frozenset, int] = {}
    total = 0
    for C in range(1, 1 << len(gens)):
        X = frozenset().union(*(per_gen[i] for i in range(len(gens)) if C >> i & 1))
        if X not in cache:
            cache[X] = union_sum(n, X, k, bracket)
        total += (1 if C.bit_count() % 2 else -1) * cache[X]
    return total


@dataclass
class AuxLatticeC:
    """Unions of layer-restricted ideals of generator subsets, by inclusion."""

    sets: list[frozenset[int]]
    poset: Poset = field(repr=False)

    @property
    def top(self) -> frozenset[int]:
        return self.sets[self.poset.top]

    def mobius(self) -> dict[frozenset[int], int]:
        mu = mobius_from_bottom(self.poset)
        return {self.sets[i]: v for i, v in mu.items()}


@dataclass
class AuxLatticeE:
    """Join-closure of X in B(n) with a synthetic least element (``None``)."""

    masks: list[int | None]
    poset: Poset = field(repr=False)

    @property
    def top(self) -> int:
        return self.masks[self.poset.top]

    def mobius(self) -> dict[int | None, int]:
        mu = mobius_from_bottom(self.poset)
        return {self.masks[i]: v for i, v in mu.items()}


def _set_name(B: BooleanLattice, S) -> str:
    return "{" + ",".join(sorted(B.name(x) for x in S)) + "}"


def build_C(P: BooleanLattice, A, r, k: int) -> AuxLatticeC:
    B, gens, v, per_gen = _boolean_setup(P.n, A, r, k)
    if per_gen is None:
        raise DomainError(f"nu(r*k)={v} exceeds the smallest generator rank")
    family = {frozenset()}
    for X in per_gen:
        family |= {Y | X for Y in family}
    sets = sorted(family, key=lambda S: (len(S), sorted(S)))
    poset = Poset.from_leq([_set_name(B, S) for S in sets], lambda i, j: sets[i] <= sets[j])
    return AuxLatticeC(sets, poset)


def build_E(P: BooleanLattice, X) -> AuxLatticeE:
    X = frozenset(X)
    if not X:
        raise DomainError("E lattice needs a nonempty generating set")
    closure = set(X)
    frontier = set(X)
    while frontier:
        fresh = {y | x for y in frontier for x in X} - closure
        closure |= fresh
        frontier = fresh
    masks: list[int | None] = [None] + sorted(closure, key=lambda m: (m.bit_count(), m))

    def leq(i: int, j: int) -> bool:
        if masks[i] is None:
            return True
        if masks[j] is None:
            return False
        return masks[i] & ~masks[j] == 0

    names = ["0^"] + [P.name(m) for m in masks[1:]]
    return AuxLatticeE(masks, Poset.from_leq(names, leq))


def count_mobius(n: int, A, r, k: int, bracket: BinomialBracket = BINOMIAL) -> int:
    B, gens, v, per_gen = _boolean_setup(n, A, r, k)
    if per_gen is None:
        return 0
    C = build_C(B, gens, r, k)
    total = 0
    for X, mu_c in C.mobius().items():
        if not X or mu_c == 0:
            continue
        E = build_E(B, X)
        inner = sum(
            mu_e * bracket(n - z.bit_count(), n - k)
            for z, mu_e in E.mobius().items()
            if z is not None and z.bit_count() <= k
        )
        total += mu_c * inner
    return total


METHODS = {
    "brute": count_brute,
    "inclexcl": count_inclusion_exclusion,
    "mobius": count_mobius,
}


def count_all(n: int, A, r, k: int) -> dict[str, int]:
    """Run every method; raise if they disagree."""
    out = {name: fn(n, A, r, k) for name, fn in METHODS.items()}
    if len(set(out.values())) != 1:
        raise AssertionError(f"counting methods disagree: {out}")
    return out


def q_count_eq(n: int, m: int, k: int, h: int, q: int) -> int:
    """Rank-k subspaces meeting a fixed rank-m subspace in rank exactly h."""
    if not (0 <= h <= k <= n and 0 <= m <= n):
        raise DomainError(f"need 0 <= h <= k <= n and m <= n, got n={n} m={m} k={k} h={h}")
    return gaussian_binomial(m, h, q) * gaussian_binomial(n - m, k - h, q) * q ** ((m - h) * (k - h)) \
        if h <= m else 0


def q_count_geq(n: int, m: int, k: int, h: int, q: int) -> int:
    """Rank-k subspaces meeting a fixed rank-m subspace in rank at least h."""
    if not (0 <= h <= k <= n and 0 <= m <= n):
        raise DomainError(f"need 0 <= h <= k <= n and m <= n, got n={n} m={m} k={k} h={h}")
    return sum(
        gaussian_binomial(m, j, q) * gaussian_binomial(n - m, k - j, q) * q ** ((m - j) * (k - j))
        for j in range(h, k + 1) if j <= m
    )
