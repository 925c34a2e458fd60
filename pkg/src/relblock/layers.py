"""Layer pruning for relatively r-blocking elements.

``d_set`` collects the weight levels that can carry blocking elements
outside the common ideal ``⋂ I(a) - {0̂}``; the two structure functions
rebuild the full blocking subposet of a graded poset from absolute
blockers, once layer by layer and once fraction by fraction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .antichains import Antichain
from .blockers import MAX_RANK, WeightMap, absolute_blocker, blocking_layer
from .enumeration import nu
from .errors import CapabilityError, DomainError, HypothesisError
from .farey import farey_poset, phi
from .poset import BooleanLattice, FinitePoset, order_filter
from .rational import as_threshold

EXHAUSTIVE_PAIRS = 1 << 10
SAMPLED_PAIRS = 4096


def threshold_fraction(P: FinitePoset, a: int, omega: WeightMap, r) -> Fraction:
    """Largest member of the Farey subsequence of ``a`` not exceeding r."""
    r = as_threshold(r)
    return max(f for f in farey_poset(P, a, omega) if f <= r)


def threshold_index(n: int, m: int, r) -> int:
    """Index of the threshold fraction in ``farey_boolean(n, m)``, by formula."""
    if not 0 < m < n:
        raise DomainError(f"need 0 < m < n, got n={n}, m={m}")
    r = as_threshold(r)
    return sum(
        phi(j, max(1, j + m - n), min(m, (j * r.numerator) // r.denominator))
        for j in range(1, n + 1)
    )


def _nontrivial(P: FinitePoset, A) -> list[int]:
    A = A if isinstance(A, Antichain) else Antichain.of(P, A, reduce=None)
    if A.is_trivial:
        raise DomainError("operation needs a nontrivial antichain")
    return sorted(A.members)


def d_set(P: FinitePoset, A, omega: WeightMap, r) -> frozenset[int]:
    r = as_threshold(r)
    gens = _nontrivial(P, A)
    top = omega.total(P)
    result = None
    for a in gens:
        seq = farey_poset(P, a, omega)
        cut = max(f for f in seq if f <= r)
        wa = omega.of(P, a)
        levels = set()
        for f in seq:
            if cut < f < 1:
                h, k = f.numerator, f.denominator
                levels.update(s * k for s in range(1, min(wa // h, top // k) + 1))
        levels.update(omega.of(P, e) for e in P.downset(a) if e != P.bottom)
        result = levels if result is None else result & levels
    return frozenset(result)


def common_ideal(P: FinitePoset, A) -> frozenset[int]:
    """⋂ I(a) over the generators, without the bottom."""
    gens = _nontrivial(P, A)
    common = set(P.downset(gens[0]))
    for a in gens[1:]:
        common &= set(P.downset(a))
    common.discard(P.bottom)
    return frozenset(common)


def check_meet_hypothesis(P: FinitePoset, omega: WeightMap, seed: int = 0) -> None:
    """Require ``omega({x} ∧ {y}) == omega(x)  <=>  x <= y``.

    Known to hold for the built-in weights on B(n).  Exhaustive over all
    pairs when there are at most 1024 of them, otherwise on a fixed
    random sample.
    """
    if isinstance(P, BooleanLattice) and omega.kind != "custom":
        return
    if len(P) ** 2 <= EXHAUSTIVE_PAIRS:
        pairs = product(P.elements, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(len(P)), rng.randrange(len(P))) for _ in range(SAMPLED_PAIRS))
    for x, y in pairs:
        if (omega.meet(P, x, y) == omega.of(P, x)) != P.leq(x, y):
            raise HypothesisError(
                f"weight of {{{P.name(x)}}} ∧ {{{P.name(y)}}} does not detect the order"
            )


def assert_empty_layers(P: FinitePoset, A, omega: WeightMap, r) -> frozenset[int]:
    """Check every level outside ``d_set`` is empty outside the common ideal.

    Returns the checked levels.  Raises :class:`HypothesisError` if the
    weight map does not detect the order and ``AssertionError`` if a
    level outside ``d_set`` holds a blocking element off the common ideal.
    """
    check_meet_hypothesis(P, omega)
    D = d_set(P, A, omega, r)
    common = common_ideal(P, A)
    checked = set()
    for k in range(1, omega.total(P) + 1):
        if k in D:
            continue
        stray = blocking_layer(P, omega, r, A, k) - common
        if stray:
            names = sorted(P.name(b) for b in stray)
            raise AssertionError(f"level {k} is outside the D-set but holds {names}")
        checked.add(k)
    return frozenset(checked)


def _graded(P: FinitePoset) -> None:
    if not P.graded:
        raise CapabilityError("structure decompositions need a graded poset")


def _trivial_case(P: FinitePoset, A) -> frozenset[int] | None:
    """Blocking set of a trivial antichain (everything for ∅, nothing for {0̂})."""
    members = A.members if isinstance(A, Antichain) else frozenset(A)
    if not members:
        return frozenset(P.elements)
    if members == {P.bottom}:
        return frozenset()
    return None


def structure_ideal_form(P: FinitePoset, A, r) -> frozenset[int]:
    """Blocking subposet (max-rank weight) as common ideal plus pruned layers."""
    _graded(P)
    r = as_threshold(r)
    if (trivial := _trivial_case(P, A)) is not None:
        return trivial
    gens = _nontrivial(P, A)
    out = set(common_ideal(P, gens))
    for k in sorted(d_set(P, gens, MAX_RANK, r)):
        j = nu(r, k) - 1
        blocker = absolute_blocker(P, MAX_RANK, j, gens)
        out.update(b for b in order_filter(P, blocker.members) if P.rank(b) == k)
    return frozenset(out)


def _exact_meet_rank(P: FinitePoset, a: int, h: int) -> frozenset[int]:
    """Elements whose meet with a has rank exactly h, via two absolute blockers."""
    upper = order_filter(P, absolute_blocker(P, MAX_RANK, h - 1, [a]).members)
    if h >= P.height:
        return upper
    return upper - order_filter(P, absolute_blocker(P, MAX_RANK, h, [a]).members)


def structure_farey_form(P: FinitePoset, A, r) -> frozenset[int]:
    """Blocking subposet (max-rank weight) assembled fraction by fraction.

    For each generator the admissible fractions are those above the
    threshold, 1/1 included: the 1/1 term picks up elements below that
    generator, which need not lie below the others.
    """
    _graded(P)
    r = as_threshold(r)
    if (trivial := _trivial_case(P, A)) is not None:
        return trivial
    gens = _nontrivial(P, A)
    D = d_set(P, gens, MAX_RANK, r)
    height = P.height
    per_gen = []
    for a in gens:
        seq = farey_poset(P, a, MAX_RANK)
        cut = max(f for f in seq if f <= r)
        ra = P.rank(a)
        hits = set()
        for f in seq:
            if f <= cut:
                continue
            h, k = f.numerator, f.denominator
            for s in range(1, min(ra // h, height // k) + 1):
                if s * k not in D:
                    continue
                hits.update(b for b in _exact_meet_rank(P, a, s * h) if P.rank(b) == s * k)
        per_gen.append(hits)
    return common_ideal(P, gens) | frozenset(set.intersection(*per_gen))
