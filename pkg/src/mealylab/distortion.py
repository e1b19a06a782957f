"""Cyclic-subgroup distortion experiments.

Geodesic lengths in the generated group are computed by breadth-first
search over canonical keys with the symmetric generating set of signed
states; budgets are explicit and exhausted searches report unknown rather
than guessing.  A *power profile* tabulates the geodesic length of g^(kn)
for n = 1..n_max together with the fitted constant
C_est = max kn / |g^(kn)|; a torsion base element is rejected up front
since its cyclic subgroup is finite.  For an undistorted cyclic subgroup
the ratios stay bounded; the profile raises an empirical SUBLINEAR flag
only when the ratios grow strictly along the whole horizon and at least
double, which is a red flag and never a proof.

The orbit language of a seed letter word collects the images of its
powers under all positive state words up to a length bound.  Within that
sample, the free-submonoid search looks for two distinct equal-length
words whose products (up to a chosen depth) remain pairwise distinct in
the dual group; certification is exact but bounded, and is stamped with
the depth it covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .automaton import MealyAutomaton, dual_automaton
from .engine import _explore, canonicalize, element_order
from .errors import ConstructionError, TorsionError
from .rewriting import act_state_on_word
from .words import SignedSymbol, Word, is_positive, reduce_word, word_power


def geodesic_length(
    automaton: MealyAutomaton,
    word: Iterable[SignedSymbol],
    max_radius: int,
    budget: Optional[int] = None,
) -> Optional[int]:
    """Exact word-metric length of a state word, or None beyond `max_radius`.

    Generators are the signed states.  The search stops as soon as the
    element is found, so short elements are cheap regardless of the cap.
    """
    target = canonicalize(automaton, word)
    result = _explore(
        automaton, max_radius=max_radius, budget=budget, stop_key=target.key
    )
    return result.distances.get(target.key)


@dataclass(frozen=True)
class PowerProfile:
    """Geodesic lengths of powers g^(kn), n = 1..n_max.

    `entries` holds (n, kn, length) with length None beyond the search
    horizon.  `c_est` is the largest observed ratio kn / length; the
    `sublinear` flag marks profiles whose ratios grow strictly along the
    whole horizon and at least double overall.
    """

    base: Word
    step: int
    entries: Tuple[Tuple[int, int, Optional[int]], ...]
    c_est: Optional[float]
    sublinear: bool
    max_radius: int

    @property
    def known_lengths(self) -> Tuple[int, ...]:
        return tuple(e[2] for e in self.entries if e[2] is not None)


def power_profile(
    automaton: MealyAutomaton,
    word: Iterable[SignedSymbol],
    k: int,
    n_max: int,
    max_radius: int,
    budget: Optional[int] = None,
) -> PowerProfile:
    """Profile the geodesic lengths of g^k, g^2k, ..., g^(k n_max).

    Raises TorsionError when the base element has finite order at most
    k * n_max: torsion powers cycle and say nothing about distortion.
    """
    if k < 1 or n_max < 1:
        raise ValueError("k and n_max must be >= 1")
    base = reduce_word(word)
    order = element_order(automaton, base, k * n_max)
    if order.is_finite:
        raise TorsionError(
            "base element has finite order %d <= %d; its cyclic subgroup "
            "is finite and trivially undistorted" % (order.order, k * n_max),
            order=order.order,
        )
    explored = _explore(automaton, max_radius=max_radius, budget=budget)
    entries: List[Tuple[int, int, Optional[int]]] = []
    for n in range(1, n_max + 1):
        power = word_power(base, k * n)
        key = canonicalize(automaton, power).key
        entries.append((n, k * n, explored.distances.get(key)))
    ratios = [(kn / length) for (_, kn, length) in entries if length]
    c_est = max(ratios) if ratios else None
    sublinear = (
        len(ratios) >= 3
        and all(a < b for a, b in zip(ratios, ratios[1:]))
        and ratios[-1] >= 2 * ratios[0]
    )
    return PowerProfile(
        base=base,
        step=k,
        entries=tuple(entries),
        c_est=c_est,
        sublinear=sublinear,
        max_radius=max_radius,
    )


@dataclass(frozen=True)
class OrbitLanguageSample:
    """Images of seed powers under bounded positive state words.

    Every member has length a multiple of the seed length (the actions
    are length-preserving), and applying a further state action to a
    member stays in the sample as long as the bounds allow it.
    """

    seed: Word
    n_max: int
    gamma_len_max: int
    words: Tuple[Word, ...]

    def __contains__(self, word) -> bool:
        return tuple(word) in set(self.words)


def orbit_language(
    automaton: MealyAutomaton,
    seed: Iterable[SignedSymbol],
    n_max: int,
    gamma_len_max: int,
) -> OrbitLanguageSample:
    """Collect the images of seed^n (n = 1..n_max) under every positive
    state word of length at most `gamma_len_max` (including the empty
    one), de-duplicated and sorted."""
    automaton.require_bireversible()
    seed = tuple(seed)
    if not seed or not is_positive(seed):
        raise ConstructionError("seed must be a non-empty positive letter word")
    if n_max < 1 or gamma_len_max < 0:
        raise ValueError("n_max must be >= 1 and gamma_len_max >= 0")
    states = [SignedSymbol(q, 1) for q in automaton.states]
    gammas: List[Word] = [()]
    layer: List[Word] = [()]
    for _ in range(gamma_len_max):
        layer = [g + (q,) for g in layer for q in states]
        gammas.extend(layer)
    powers = [word_power(seed, n) for n in range(1, n_max + 1)]
    seen = set()
    for gamma in gammas:
        for power in powers:
            seen.add(act_state_on_word(automaton, gamma, power))
    return OrbitLanguageSample(
        seed=seed,
        n_max=n_max,
        gamma_len_max=gamma_len_max,
        words=tuple(sorted(seen, key=lambda w: (len(w), w))),
    )


@dataclass(frozen=True)
class FreeMonoidCandidate:
    """Two equal-length orbit words whose products stay distinct in the
    dual group up to the certified depth.  Bounded evidence, not a proof."""

    x1: Word
    x2: Word
    certified_up_to: int
    products_checked: int


def free_submonoid_search(
    automaton: MealyAutomaton,
    seed: Iterable[SignedSymbol],
    n_max: int = 3,
    gamma_len_max: int = 2,
    order_bound: int = 8,
    certify_depth: int = 3,
    order_certify_depth: int = 6,
) -> Optional[FreeMonoidCandidate]:
    """Search the orbit-language sample for a free pair.

    Two distinct positive words of equal length always generate a free
    submonoid of the letter monoid, so the work is in checking that the
    dual group separates their products: all products of at most
    `certify_depth` factors are compared pairwise by exact dual-group
    equality.  The first certified pair (in length-lexicographic order)
    is returned; None means no pair in the sample certified.

    Raises TorsionError when the seed's dual-group image has finite order
    within `order_bound`; long orbits found up to `order_certify_depth`
    settle the order precondition cheaply for seeds of large order.
    """
    seed = tuple(seed)
    dual = dual_automaton(automaton)
    order = element_order(dual, seed, order_bound, certify_depth=order_certify_depth)
    if order.is_finite:
        raise TorsionError(
            "dual image of the seed has finite order %d; an infinite-order "
            "seed is required" % order.order,
            order=order.order,
        )
    sample = orbit_language(automaton, seed, n_max, gamma_len_max)
    by_length: dict = {}
    for w in sample.words:
        by_length.setdefault(len(w), []).append(w)
    for length in sorted(by_length):
        bucket = by_length[length]
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                count = _certify_products(
                    dual, bucket[i], bucket[j], certify_depth
                )
                if count is not None:
                    return FreeMonoidCandidate(
                        x1=bucket[i],
                        x2=bucket[j],
                        certified_up_to=certify_depth,
                        products_checked=count,
                    )
    return None


def _certify_products(
    dual: MealyAutomaton, x1: Word, x2: Word, depth: int
) -> Optional[int]:
    """Number of products checked if all products of <= depth factors are
    pairwise distinct in the dual group, else None."""
    keys = set()
    count = 0
    products = [x1, x2]
    for d in range(1, depth + 1):
        for product in products:
            keys.add(canonicalize(dual, product).key)
            count += 1
        if len(keys) != count:
            return None
        if d < depth:
            products = [p + x for p in products for x in (x1, x2)]
    return count
