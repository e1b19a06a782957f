"""Exact element arithmetic for the group generated by an automaton.

A reduced state word acts on the rooted tree of reduced letter words.  The
action is realized by a finite transducer whose states are the residual
state words reachable from the input word and whose alphabet is the signed
letter set.  Two state words represent the same group element exactly when
these transducers compute the same function, which is decided by
minimizing each reachable machine (partition refinement on output rows,
then transition rows) and serializing it under the canonical breadth-first
state ordering.  Equal canonical keys therefore mean equal group elements,
with no depth cutoff and no hashing tricks: the key *is* the minimized
machine.

On top of canonical keys the module builds the usual coarse tools: ball
sizes of the word metric with respect to the symmetric generating set of
signed states, a finiteness semi-decision (breadth-first closure of the
element set), the primal/dual finiteness cross-check, and bounded element
order detection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .automaton import MealyAutomaton, dual_automaton
from .words import SignedSymbol, Word, reduce_word

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class GroupElement:
    """A group element given by a representative word and its canonical key.

    ``key`` is the minimized action transducer serialized in breadth-first
    order; two elements of the same automaton are equal in the generated
    group iff their keys are identical.  ``machine_size`` is the number of
    states of the minimized transducer.
    """

    automaton: MealyAutomaton = field(compare=False, repr=False)
    word: Word = field(compare=False)
    key: tuple
    machine_size: int = field(compare=False)

    @property
    def is_identity(self) -> bool:
        return self.key == identity_key(self.automaton)


def _machine(
    automaton: MealyAutomaton, codes: Tuple[int, ...]
) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """Reachable action transducer of a reduced state word.

    Machine states are residual state tuples; crossing a signed letter
    through a reduced tuple keeps it reduced, so no re-reduction is needed
    inside the loop.  Returns (output rows, transition rows) with the
    initial state at index 0.
    """
    table = automaton.crossing
    na2 = 2 * automaton.n_letters
    index = {codes: 0}
    order = [codes]
    out_rows: List[Tuple[int, ...]] = []
    tr_rows: List[Tuple[int, ...]] = []
    pos = 0
    while pos < len(order):
        current = order[pos]
        pos += 1
        outs = []
        targets = []
        for lc in range(na2):
            tup = list(current)
            carry = lc
            for i in range(len(tup) - 1, -1, -1):
                carry, tup[i] = table[tup[i]][carry]
            nxt = tuple(tup)
            slot = index.get(nxt)
            if slot is None:
                slot = len(order)
                index[nxt] = slot
                order.append(nxt)
            outs.append(carry)
            targets.append(slot)
        out_rows.append(tuple(outs))
        tr_rows.append(tuple(targets))
    return out_rows, tr_rows


def _minimize(
    out_rows: List[Tuple[int, ...]], tr_rows: List[Tuple[int, ...]]
) -> Tuple[tuple, int]:
    """Canonical key of a reachable transducer.

    Partition refinement: initial blocks by output row, refined by the
    blocks of the transition rows until stable; then blocks are renumbered
    in breadth-first discovery order from the initial state's block and
    serialized.  Minimizing an already minimal machine is the identity.
    """
    n = len(out_rows)
    block_ids: Dict[Tuple[int, ...], int] = {}
    block = [0] * n
    for i, row in enumerate(out_rows):
        block[i] = block_ids.setdefault(row, len(block_ids))
    count = len(block_ids)
    while True:
        sig_ids: Dict[tuple, int] = {}
        new_block = [0] * n
        for i in range(n):
            sig = (block[i], tuple(block[t] for t in tr_rows[i]))
            new_block[i] = sig_ids.setdefault(sig, len(sig_ids))
        if len(sig_ids) == count:
            block = new_block
            break
        block, count = new_block, len(sig_ids)
    # breadth-first renumbering; every block is reachable from block[0]
    rep = {}
    for i in range(n):
        rep.setdefault(block[i], i)
    renumber = {block[0]: 0}
    queue = [block[0]]
    ordered = [block[0]]
    while queue:
        b = queue.pop(0)
        for t in tr_rows[rep[b]]:
            bt = block[t]
            if bt not in renumber:
                renumber[bt] = len(renumber)
                queue.append(bt)
                ordered.append(bt)
    key = tuple(
        (out_rows[rep[b]], tuple(renumber[block[t]] for t in tr_rows[rep[b]]))
        for b in ordered
    )
    return key, len(ordered)


def _canonical_key(
    automaton: MealyAutomaton, codes: Tuple[int, ...]
) -> Tuple[tuple, int]:
    cache = automaton.__dict__.setdefault("_key_cache", {})
    hit = cache.get(codes)
    if hit is None:
        hit = _minimize(*_machine(automaton, codes))
        cache[codes] = hit
    return hit


def canonicalize(
    automaton: MealyAutomaton, word: Iterable[SignedSymbol]
) -> GroupElement:
    """Canonical representation of the group element of a state word."""
    automaton.require_bireversible()
    reduced = reduce_word(word)
    codes = automaton.state_codes(reduced)
    key, size = _canonical_key(automaton, codes)
    return GroupElement(
        automaton=automaton, word=reduced, key=key, machine_size=size
    )


def identity_key(automaton: MealyAutomaton) -> tuple:
    if "_identity_key" not in automaton.__dict__:
        automaton.__dict__["_identity_key"] = _canonical_key(automaton, ())[0]
    return automaton.__dict__["_identity_key"]


def equal(
    automaton: MealyAutomaton,
    left: Iterable[SignedSymbol],
    right: Iterable[SignedSymbol],
) -> bool:
    """Exact equality of two state words in the generated group."""
    return canonicalize(automaton, left).key == canonicalize(automaton, right).key


# ---------------------------------------------------------------------------
# breadth-first exploration over canonical keys
# ---------------------------------------------------------------------------


@dataclass
class _Exploration:
    distances: Dict[tuple, int]
    words: Dict[tuple, Tuple[int, ...]]
    layer_sizes: List[int]
    closed: bool  # no new elements remained to expand
    truncated: bool  # stopped by the node budget


def _explore(
    automaton: MealyAutomaton,
    max_radius: Optional[int] = None,
    budget: Optional[int] = None,
    stop_key: Optional[tuple] = None,
) -> _Exploration:
    """Breadth-first search over group elements from the identity.

    Generators are the signed states (positives then inverses).  Dedup is
    by canonical key.  Stops at the radius cap, at closure, when the node
    budget is hit, or when `stop_key` is found; `truncated` records a
    budget stop (results are complete only for full layers).
    """
    automaton.require_bireversible()
    nq = automaton.n_states
    gens = list(range(2 * nq))
    root_key = identity_key(automaton)
    distances = {root_key: 0}
    words: Dict[tuple, Tuple[int, ...]] = {root_key: ()}
    layer_sizes = [1]
    frontier: List[Tuple[int, ...]] = [()]
    closed = False
    truncated = False
    if stop_key == root_key:
        return _Exploration(distances, words, layer_sizes, False, False)
    radius = 0
    while frontier:
        if max_radius is not None and radius >= max_radius:
            break
        radius += 1
        next_frontier: List[Tuple[int, ...]] = []
        for word in frontier:
            for g in gens:
                if word and word[-1] == (g + nq) % (2 * nq):
                    continue  # cancels: that element was seen one layer up
                child = word + (g,)
                key, _ = _canonical_key(automaton, child)
                if key in distances:
                    continue
                if budget is not None and len(distances) >= budget:
                    truncated = True
                    break
                distances[key] = radius
                words[key] = child
                next_frontier.append(child)
                if stop_key is not None and key == stop_key:
                    return _Exploration(
                        distances, words, layer_sizes, False, False
                    )
            if truncated:
                break
        if truncated:
            break
        layer_sizes.append(len(distances))
        frontier = next_frontier
        if not frontier:
            closed = True
            break
    return _Exploration(distances, words, layer_sizes, closed, truncated)


@dataclass(frozen=True)
class GrowthSequence:
    """Ball sizes |B(0)|, |B(1)|, ... of the word metric on the generated
    group, generators = signed states.  When the node budget interrupts
    the search, `sizes` only covers fully completed radii."""

    automaton_name: str
    requested_radius: int
    sizes: Tuple[int, ...]
    complete: bool
    budget: Optional[int] = None

    @property
    def completed_radius(self) -> int:
        return len(self.sizes) - 1


def ball(
    automaton: MealyAutomaton, radius: int, budget: Optional[int] = None
) -> GrowthSequence:
    """Sizes of the balls of radius 0..`radius` (exact, key-deduplicated)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    result = _explore(automaton, max_radius=radius, budget=budget)
    sizes = result.layer_sizes
    if not result.truncated:
        # group closed early: remaining balls repeat the group order
        while len(sizes) < radius + 1:
            sizes = sizes + [sizes[-1]]
        return GrowthSequence(
            automaton.name, radius, tuple(sizes[: radius + 1]), True, budget
        )
    return GrowthSequence(automaton.name, radius, tuple(sizes), False, budget)


@dataclass(frozen=True)
class Enumeration:
    """Outcome of the finiteness semi-decision.

    ``finite`` means the breadth-first closure terminated: `elements` is
    the complete element list and its length is the group order.  An
    unknown outcome carries the exhausted budget; it never claims
    infiniteness.
    """

    automaton_name: str
    finite: bool
    budget: int
    explored: int
    elements: Optional[Tuple[GroupElement, ...]] = None

    @property
    def order(self) -> Optional[int]:
        return len(self.elements) if self.finite else None

    @property
    def status(self) -> str:
        return "finite" if self.finite else "unknown"


def try_enumerate(
    automaton: MealyAutomaton, budget: int = DEFAULT_BUDGET
) -> Enumeration:
    """Enumerate the generated group if its element set closes within
    `budget` distinct elements; otherwise report unknown."""
    result = _explore(automaton, budget=budget)
    if result.closed and not result.truncated:
        elements = []
        for key, word in result.words.items():
            reduced = tuple(automaton.state_symbol(c) for c in word)
            size = _canonical_key(automaton, word)[1]
            elements.append(
                GroupElement(
                    automaton=automaton,
                    word=reduced,
                    key=key,
                    machine_size=size,
                )
            )
        return Enumeration(
            automaton.name, True, budget, len(elements), tuple(elements)
        )
    return Enumeration(automaton.name, False, budget, len(result.distances))


@dataclass(frozen=True)
class FinitenessReport:
    """Primal and dual enumeration under a shared budget.

    The generated group and its dual are finite together or infinite
    together, and this tool can only ever *prove* finiteness, so the only
    reachable verdicts are consistent ones: both finite, both unknown, or
    one side proven finite with the other budget-limited.  An inconsistent
    verdict is unreachable by construction.
    """

    primal: Enumeration
    dual: Enumeration

    @property
    def consistent(self) -> bool:
        return True

    @property
    def verdict(self) -> str:
        if self.primal.finite and self.dual.finite:
            return "finite(%d)/finite(%d): consistent" % (
                self.primal.order,
                self.dual.order,
            )
        if self.primal.finite or self.dual.finite:
            return "budget-limited, consistent"
        return "unknown/unknown: consistent"


def cross_check_finiteness(
    automaton: MealyAutomaton, budget: int = DEFAULT_BUDGET
) -> FinitenessReport:
    """Run the finiteness semi-decision on an automaton and on its dual."""
    return FinitenessReport(
        primal=try_enumerate(automaton, budget),
        dual=try_enumerate(dual_automaton(automaton), budget),
    )


@dataclass(frozen=True)
class OrderResult:
    """Outcome of bounded element-order detection.

    ``finite`` carries the least n with word^n trivial.  ``exceeds-bound``
    certifies order > bound through an orbit longer than the bound on a
    finite word level (never a proof of infinite order).  ``unknown``
    means no power up to the bound was trivial and no certificate was
    requested or found.
    """

    status: str  # "finite" | "exceeds-bound" | "unknown"
    order: Optional[int]
    bound: int
    certificate: Optional[str] = None

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"


def element_order(
    automaton: MealyAutomaton,
    word: Iterable[SignedSymbol],
    bound: int,
    certify_depth: int = 0,
) -> OrderResult:
    """Least n <= bound with word^n trivial, else a bounded certificate.

    With ``certify_depth`` > 0, the action of the word on positive letter
    words of each length up to that depth is inspected first; a cycle
    longer than the bound certifies order > bound without touching the
    (much costlier) canonical keys of high powers.  Any finite order at
    most the bound makes every such cycle divide it, so certification
    never masks a detectable finite order.
    """
    automaton.require_bireversible()
    if bound < 1:
        raise ValueError("bound must be >= 1")
    base = reduce_word(word)
    for depth in range(1, certify_depth + 1):
        longest = _longest_orbit(automaton, base, depth)
        if longest > bound:
            return OrderResult(
                "exceeds-bound",
                None,
                bound,
                certificate="orbit of length %d on words of length %d"
                % (longest, depth),
            )
    target = identity_key(automaton)
    power: Word = ()
    for n in range(1, bound + 1):
        power = reduce_word(power + base)
        if canonicalize(automaton, power).key == target:
            return OrderResult("finite", n, bound)
    return OrderResult("unknown", None, bound)


def _longest_orbit(
    automaton: MealyAutomaton, word: Word, depth: int
) -> int:
    """Longest cycle of the permutation the word induces on positive
    letter words of exactly `depth` letters."""
    from .rewriting import act_state_on_word

    alphabet = [SignedSymbol(a, 1) for a in automaton.alphabet]
    points = [()]
    for _ in range(depth):
        points = [p + (a,) for p in points for a in alphabet]
    remaining = set(points)
    longest = 0
    while remaining:
        start = remaining.pop()
        length = 1
        current = tuple(act_state_on_word(automaton, word, start))
        while current != start:
            remaining.discard(current)
            current = tuple(act_state_on_word(automaton, word, current))
            length += 1
        longest = max(longest, length)
    return longest
