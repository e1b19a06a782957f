"""Finite marked groups, quotient graphs, and automorphism descent.

A finite marked group assigns to every letter of an automaton's alphabet a
permutation of {0..n-1}: the right-regular image of that letter in a group
of order n, with vertex 0 playing the identity.  Words over signed letters
evaluate by composing those permutations, and a word lies in the kernel of
the marking exactly when its evaluation fixes vertex 0.

The quotient graph has the group elements as vertices and one oriented
edge v -> v.letter per (vertex, letter) pair; parallel edges appear when
two letters share an image.  A bireversible automaton is *compatible* with
the marked group when every signed state maps kernel words to kernel
words; the finite check below tests this on Schreier generators of the
kernel (and their inverses), which suffices because the kernel is normal
in the free group and states residuate to single signed states.  Each
state word of a compatible automaton then descends to an automorphism of
the quotient graph fixing vertex 0, and the descended automorphisms can be
compared against the exhaustive list of identity-fixing graph
automorphisms found by backtracking.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .automaton import MealyAutomaton
from .errors import (
    CapError,
    CompatibilityError,
    ConstructionError,
    ParseError,
    TableError,
)
from .rewriting import act_state_on_word, residual
from .words import (
    SignedSymbol,
    Word,
    format_word,
    invert_word,
    reduce_word,
)


class FiniteMarkedGroup:
    """A finite group of order n marked by an alphabet.

    `marking` maps each letter to the permutation of {0..n-1} given by
    right multiplication with that letter's image; vertex 0 is the
    identity.  The permutations must generate a transitive group of order
    exactly n (a regular action), which makes kernel membership a single
    walk from vertex 0.
    """

    def __init__(self, alphabet, order, marking, name="G"):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise TableError("marking alphabet must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise TableError("duplicate letters in marking alphabet")
        if order < 1:
            raise TableError("group order must be positive")
        perms = {}
        for a in alphabet:
            if a not in marking:
                raise TableError("no permutation for letter %r" % a)
            perm = tuple(marking[a])
            if sorted(perm) != list(range(order)):
                raise TableError(
                    "image of %r is not a permutation of 0..%d: %r"
                    % (a, order - 1, perm)
                )
            perms[a] = perm
        self.alphabet = alphabet
        self.order = order
        self.marking = perms
        self.name = name
        self._check_regular()

    def _check_regular(self):
        reached = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for perm in self.marking.values():
                for w in (perm[v], perm.index(v)):
                    if w not in reached:
                        reached.add(w)
                        frontier.append(w)
        if len(reached) != self.order:
            raise TableError(
                "marking is not transitive: only %d of %d vertices reachable"
                % (len(reached), self.order)
            )
        identity = tuple(range(self.order))
        group = {identity}
        frontier = [identity]
        while frontier:
            g = frontier.pop()
            for perm in self.marking.values():
                h = tuple(perm[i] for i in g)
                if h not in group:
                    if len(group) >= self.order:
                        raise TableError(
                            "marking generates a group larger than the "
                            "declared order %d (action is not regular)"
                            % self.order
                        )
                    group.add(h)
                    frontier.append(h)
        if len(group) != self.order:
            raise TableError(
                "marking generates a group of order %d, declared %d"
                % (len(group), self.order)
            )

    def __eq__(self, other):
        if not isinstance(other, FiniteMarkedGroup):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.order == other.order
            and self.marking == other.marking
        )

    __hash__ = None

    def __repr__(self):
        return "FiniteMarkedGroup(%r, order=%d, letters=%d)" % (
            self.name,
            self.order,
            len(self.alphabet),
        )

    @cached_property
    def _inverse_marking(self) -> Dict[str, Tuple[int, ...]]:
        inv = {}
        for a, perm in self.marking.items():
            back = [0] * self.order
            for i, j in enumerate(perm):
                back[j] = i
            inv[a] = tuple(back)
        return inv

    def step(self, vertex: int, letter: SignedSymbol) -> int:
        if letter.base not in self.marking:
            raise ConstructionError(
                "%r is not a letter of marking %s" % (letter.token(), self.name)
            )
        table = self.marking if letter.sign == 1 else self._inverse_marking
        return table[letter.base][vertex]

    def walk(self, vertex: int, word: Iterable[SignedSymbol]) -> int:
        for s in word:
            vertex = self.step(vertex, s)
        return vertex

    def permutation_of(self, word: Iterable[SignedSymbol]) -> Tuple[int, ...]:
        perm = list(range(self.order))
        for s in word:
            table = self.marking if s.sign == 1 else self._inverse_marking
            row = table[s.base]
            perm = [row[i] for i in perm]
        return tuple(perm)

    def in_kernel(self, word: Iterable[SignedSymbol]) -> bool:
        # the action is regular, so fixing vertex 0 already forces identity
        return self.walk(0, word) == 0

    @cached_property
    def coset_words(self) -> Tuple[Word, ...]:
        """Breadth-first spanning-tree words: coset_words[v] is a positive
        word walking vertex 0 to vertex v (empty at 0)."""
        words: List[Optional[Word]] = [None] * self.order
        words[0] = ()
        queue = [0]
        while queue:
            v = queue.pop(0)
            for a in self.alphabet:
                w = self.marking[a][v]
                if words[w] is None:
                    words[w] = words[v] + (SignedSymbol(a, 1),)
                    queue.append(w)
        return tuple(words)  # type: ignore[arg-type]


def kernel_generators(group: FiniteMarkedGroup) -> Tuple[Word, ...]:
    """Schreier generators of the marking's kernel.

    For every vertex v and letter a, the word (tree path to v) . a .
    (tree path to v.a)^-1 evaluates to the identity; spanning-tree edges
    reduce to the empty word and are dropped, as are duplicates.  The
    returned words generate the kernel.
    """
    reps = group.coset_words
    out: List[Word] = []
    seen = set()
    for v in range(group.order):
        for a in group.alphabet:
            w = group.marking[a][v]
            gen = reduce_word(
                reps[v] + (SignedSymbol(a, 1),) + invert_word(reps[w])
            )
            if gen and gen not in seen:
                seen.add(gen)
                out.append(gen)
    return tuple(out)


@dataclass(frozen=True)
class CompatibilityReport:
    """Outcome of the compatibility check, with a violating pair on failure."""

    compatible: bool
    state: Optional[SignedSymbol] = None
    kernel_word: Optional[Word] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.compatible

    def describe(self) -> str:
        if self.compatible:
            return "compatible"
        return "incompatible: state %s, kernel word %s (%s)" % (
            self.state.token(),
            format_word(self.kernel_word),
            self.reason,
        )


def is_compatible(
    automaton: MealyAutomaton, group: FiniteMarkedGroup
) -> CompatibilityReport:
    """Check that conjugation by the automaton's states preserves the kernel.

    Two finite conditions are tested for every signed state and every
    Schreier generator of the kernel (and its inverse): the acted image
    must evaluate to the identity again, and the residual state must equal
    the original state in the generated group.  Together these make the
    kernel invariant under conjugation by generators, and the property
    propagates to arbitrary products (residuals of single states are
    single states; conjugating by a letter stays inside the kernel since
    the kernel is normal in the free group on the alphabet).  The image
    condition alone is weaker: it controls how cosets move but not how
    parallel edges of the quotient graph do, and it would let descent
    depend on the chosen coset representatives.
    """
    automaton.require_bireversible()
    if tuple(group.alphabet) != tuple(automaton.alphabet):
        raise ConstructionError(
            "alphabet mismatch: automaton %s has %r, marking %s has %r"
            % (automaton.name, automaton.alphabet, group.name, group.alphabet)
        )
    from .engine import equal

    gens = kernel_generators(group)
    signed_states = [SignedSymbol(q, s) for q in automaton.states for s in (1, -1)]
    for q in signed_states:
        for gen in gens:
            for word in (gen, invert_word(gen)):
                image = act_state_on_word(automaton, (q,), word)
                if not group.in_kernel(image):
                    return CompatibilityReport(
                        False, q, word, reason="image leaves the kernel"
                    )
                rest = residual(automaton, (q,), word)
                if not equal(automaton, rest, (q,)):
                    return CompatibilityReport(
                        False,
                        q,
                        word,
                        reason="residual %s differs from %s in the group"
                        % (format_word(rest), q.token()),
                    )
    return CompatibilityReport(True)


# ---------------------------------------------------------------------------
# quotient graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientGraph:
    """Oriented multigraph on the marked group: one edge v -> v.letter per
    (vertex, letter), kept in (vertex, letter) order."""

    name: str
    n: int
    alphabet: Tuple[str, ...]
    targets: Tuple[Tuple[int, ...], ...]  # targets[v][letter_index]

    @property
    def edges(self) -> Tuple[Tuple[int, str, int], ...]:
        return tuple(
            (v, a, self.targets[v][ai])
            for v in range(self.n)
            for ai, a in enumerate(self.alphabet)
        )

    def target(self, vertex: int, letter: str) -> int:
        return self.targets[vertex][self.alphabet.index(letter)]

    def multiplicity(self, source: int, dest: int) -> int:
        return sum(1 for t in self.targets[source] if t == dest)

    @cached_property
    def diameter(self) -> int:
        # directed eccentricity from vertex 0; the graph is vertex-transitive
        dist = {0: 0}
        queue = [0]
        while queue:
            v = queue.pop(0)
            for t in self.targets[v]:
                if t not in dist:
                    dist[t] = dist[v] + 1
                    queue.append(t)
        return max(dist.values())

    def to_dot(self) -> str:
        lines = ["digraph %s {" % (self.name or "quotient")]
        for v in range(self.n):
            lines.append("  %d;" % v)
        for v, a, w in self.edges:
            lines.append('  %d -> %d [label="%s"];' % (v, w, a))
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_quotient_graph(group: FiniteMarkedGroup) -> QuotientGraph:
    targets = tuple(
        tuple(group.marking[a][v] for a in group.alphabet)
        for v in range(group.order)
    )
    return QuotientGraph(
        name=group.name, n=group.order, alphabet=group.alphabet, targets=targets
    )


@dataclass(frozen=True)
class GraphAutomorphism:
    """Orientation-preserving automorphism of a quotient graph.

    `vertex_map` permutes vertices; `edge_images[i]` is the (source,
    letter) pair of the image of the i-th canonical edge.  Incidence is
    preserved: the image edge runs between the images of the endpoints.
    """

    graph: QuotientGraph = field(compare=False, repr=False)
    vertex_map: Tuple[int, ...]
    edge_images: Tuple[Tuple[int, str], ...]

    def apply_vertex(self, v: int) -> int:
        return self.vertex_map[v]

    def apply_edge(self, v: int, letter: str) -> Tuple[int, str]:
        return self.edge_images[
            v * len(self.graph.alphabet) + self.graph.alphabet.index(letter)
        ]

    @property
    def is_identity(self) -> bool:
        return self == identity_automorphism(self.graph)

    def compose(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        """self after other (apply `other` first)."""
        na = len(self.graph.alphabet)
        vm = tuple(self.vertex_map[other.vertex_map[v]] for v in range(self.graph.n))
        ei = []
        for v in range(self.graph.n):
            for ai, a in enumerate(self.graph.alphabet):
                w, b = other.edge_images[v * na + ai]
                ei.append(self.edge_images[w * na + self.graph.alphabet.index(b)])
        return GraphAutomorphism(self.graph, vm, tuple(ei))


def identity_automorphism(graph: QuotientGraph) -> GraphAutomorphism:
    return GraphAutomorphism(
        graph,
        tuple(range(graph.n)),
        tuple((v, a) for v in range(graph.n) for a in graph.alphabet),
    )


def aut1_search(graph: QuotientGraph, cap: int = 64) -> List[GraphAutomorphism]:
    """All orientation-preserving automorphisms fixing vertex 0.

    Vertex images are assigned by backtracking in breadth-first order with
    multiplicity pruning; each consistent vertex permutation is then
    extended over the parallel-edge classes in every way.  Complete and
    duplicate-free; refuses graphs above `cap` vertices.
    """
    if graph.n > cap:
        raise CapError(
            "graph has %d vertices, above the automorphism-search cap %d"
            % (graph.n, cap)
        )
    n = graph.n
    letters = graph.alphabet
    mult = [
        {w: graph.multiplicity(v, w) for w in set(graph.targets[v])}
        for v in range(n)
    ]
    order = [0]
    parent: Dict[int, Tuple[int, str]] = {}
    seen = {0}
    qpos = 0
    while qpos < len(order):
        v = order[qpos]
        qpos += 1
        for ai, a in enumerate(letters):
            w = graph.targets[v][ai]
            if w not in seen:
                seen.add(w)
                parent[w] = (v, a)
                order.append(w)
    vertex_maps: List[Tuple[int, ...]] = []

    def consistent(v, w, assigned):
        for x, y in assigned.items():
            if mult[v].get(x, 0) != mult[w].get(y, 0):
                return False
            if mult[x].get(v, 0) != mult[y].get(w, 0):
                return False
        return True

    def assign(i, mapping, used):
        if i == n:
            vertex_maps.append(tuple(mapping[v] for v in range(n)))
            return
        v = order[i]
        p, a = parent[v]
        candidates = []
        for b in letters:
            w = graph.targets[mapping[p]][letters.index(b)]
            if w not in used and w not in candidates:
                candidates.append(w)
        for w in sorted(candidates):
            if consistent(v, w, mapping):
                mapping[v] = w
                used.add(w)
                assign(i + 1, mapping, used)
                used.discard(w)
                del mapping[v]

    assign(1, {0: 0}, {0})

    automorphisms = []
    for vm in vertex_maps:
        # per vertex: match parallel-edge classes of v onto those of vm[v]
        per_vertex_choices = []
        feasible = True
        for v in range(n):
            classes: Dict[int, List[str]] = {}
            for ai, a in enumerate(letters):
                classes.setdefault(graph.targets[v][ai], []).append(a)
            vertex_choice_sets = []
            for w in sorted(classes):
                src_letters = classes[w]
                dst_letters = [
                    b
                    for b in letters
                    if graph.targets[vm[v]][letters.index(b)] == vm[w]
                ]
                if len(dst_letters) != len(src_letters):
                    feasible = False
                    break
                vertex_choice_sets.append(
                    (
                        src_letters,
                        list(itertools.permutations(dst_letters)),
                    )
                )
            if not feasible:
                break
            per_vertex_choices.append(vertex_choice_sets)
        if not feasible:
            continue
        flat = [
            (v, src, perms)
            for v, sets in enumerate(per_vertex_choices)
            for (src, perms) in sets
        ]
        for combo in itertools.product(*(perms for (_, _, perms) in flat)):
            letter_map: Dict[Tuple[int, str], str] = {}
            for (v, src, _), perm in zip(flat, combo):
                for a, b in zip(src, perm):
                    letter_map[(v, a)] = b
            edge_images = tuple(
                (vm[v], letter_map[(v, a)]) for v in range(n) for a in letters
            )
            automorphisms.append(GraphAutomorphism(graph, vm, edge_images))
    return automorphisms


# ---------------------------------------------------------------------------
# descent of state-word actions
# ---------------------------------------------------------------------------


def descend_automorphism(
    automaton: MealyAutomaton,
    group: FiniteMarkedGroup,
    word: Iterable[SignedSymbol],
    _checked: bool = False,
) -> GraphAutomorphism:
    """Automorphism of the quotient graph induced by a state word.

    Vertices move by the marked image of the acted coset representative;
    the edge at (v, a) maps to the edge at the image vertex labelled by
    the image of `a` under the residual of the word at v.  The result
    fixes vertex 0 and preserves orientation, and the assignment
    word -> automorphism is a homomorphism.
    """
    if not _checked:
        report = is_compatible(automaton, group)
        if not report:
            raise CompatibilityError(report.describe())
    word = reduce_word(word)
    graph = build_quotient_graph(group)
    reps = group.coset_words
    vm = []
    letter_images = []
    for v in range(group.order):
        vm.append(group.walk(0, act_state_on_word(automaton, word, reps[v])))
        rest = residual(automaton, word, reps[v])
        images = {}
        for a in group.alphabet:
            images[a] = act_state_on_word(automaton, rest, (SignedSymbol(a, 1),))[
                0
            ].base
        letter_images.append(images)
    if sorted(vm) != list(range(group.order)):
        raise CompatibilityError(
            "descended vertex map is not a permutation; the pair is incompatible"
        )
    edge_images = []
    for v in range(group.order):
        for a in group.alphabet:
            b = letter_images[v][a]
            edge_images.append((vm[v], b))
            assert group.marking[b][vm[v]] == vm[group.marking[a][v]]
    return GraphAutomorphism(graph, tuple(vm), tuple(edge_images))


@dataclass(frozen=True)
class MnsReport:
    """Descended automorphisms versus the full identity-fixing group."""

    automaton_name: str
    group_name: str
    aut1_count: int
    descended_count: int
    subgroup_order: int
    contained: bool


def verify_mns_instance(
    automaton: MealyAutomaton, group: FiniteMarkedGroup, cap: int = 64
) -> MnsReport:
    """Compare the descended state-word automorphisms with the exhaustive
    list of identity-fixing graph automorphisms.

    The descended images of all signed states are closed under
    composition (the group is finite), the closure is checked for
    containment in the exhaustive list, and its order is reported.
    """
    report = is_compatible(automaton, group)
    if not report:
        raise CompatibilityError(report.describe())
    graph = build_quotient_graph(group)
    aut1 = aut1_search(graph, cap=cap)
    generators = [
        descend_automorphism(automaton, group, (SignedSymbol(q, s),), _checked=True)
        for q in automaton.states
        for s in (1, -1)
    ]
    closure = {identity_automorphism(graph)}
    frontier = list(closure)
    while frontier:
        f = frontier.pop()
        for g in generators:
            h = g.compose(f)
            if h not in closure:
                closure.add(h)
                frontier.append(h)
    aut1_set = set(aut1)
    return MnsReport(
        automaton_name=automaton.name,
        group_name=group.name,
        aut1_count=len(aut1),
        descended_count=len(closure),
        subgroup_order=len(closure),
        contained=closure <= aut1_set,
    )


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------
#
#   group <name>
#   order <n>
#   gen <letter> <permutation>        (one line per letter)
#
# The permutation is either an image list `1 0 3 2` or cycle notation
# `(0 1)(2 3)`; '#' comments and blank lines are ignored.

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_permutation(text: str, order: int, source: str, line: int):
    text = text.strip()
    if text.startswith("("):
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped and stripped != "()":
            raise ParseError(
                "%s: malformed cycle notation %r" % (source, text), line=line
            )
        perm = list(range(order))
        for cycle in _CYCLE_RE.findall(text):
            entries = cycle.split()
            if not entries:
                continue
            try:
                points = [int(e) for e in entries]
            except ValueError:
                raise ParseError(
                    "%s: non-integer point in cycle %r" % (source, cycle),
                    line=line,
                ) from None
            for p in points:
                if not 0 <= p < order:
                    raise ParseError(
                        "%s: point %d outside 0..%d" % (source, p, order - 1),
                        line=line,
                    )
            if len(set(points)) != len(points):
                raise ParseError(
                    "%s: repeated point in cycle %r" % (source, cycle), line=line
                )
            for i, p in enumerate(points):
                perm[p] = points[(i + 1) % len(points)]
        return tuple(perm)
    try:
        images = [int(t) for t in text.split()]
    except ValueError:
        raise ParseError(
            "%s: permutation must be an image list or cycles, got %r"
            % (source, text),
            line=line,
        ) from None
    if len(images) != order:
        raise ParseError(
            "%s: image list has %d entries, expected %d"
            % (source, len(images), order),
            line=line,
        )
    return tuple(images)


def parse_marked_group(text: str, source: str = "<string>") -> FiniteMarkedGroup:
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((no, stripped))
    if len(lines) < 3:
        raise ParseError("%s: marked-group file too short" % source)
    no, header = lines[0]
    parts = header.split()
    if parts[0] != "group" or len(parts) != 2:
        raise ParseError("%s: expected 'group <name>'" % source, line=no)
    name = parts[1]
    no, order_line = lines[1]
    parts = order_line.split()
    if parts[0] != "order" or len(parts) != 2:
        raise ParseError("%s: expected 'order <n>'" % source, line=no)
    try:
        order = int(parts[1])
    except ValueError:
        raise ParseError(
            "%s: order must be an integer, got %r" % (source, parts[1]), line=no
        ) from None
    alphabet = []
    marking = {}
    for no, content in lines[2:]:
        parts = content.split(None, 2)
        if parts[0] != "gen" or len(parts) != 3:
            raise ParseError(
                "%s: expected 'gen <letter> <perm>', got %r" % (source, content),
                line=no,
            )
        letter = parts[1]
        if letter in marking:
            raise ParseError(
                "%s: duplicate generator line for %r" % (source, letter), line=no
            )
        alphabet.append(letter)
        marking[letter] = _parse_permutation(parts[2], order, source, no)
    try:
        return FiniteMarkedGroup(alphabet, order, marking, name=name)
    except TableError as exc:
        raise ParseError("%s: %s" % (source, exc)) from exc


def read_marked_group(path) -> FiniteMarkedGroup:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_marked_group(handle.read(), source=str(path))


def format_marked_group(group: FiniteMarkedGroup) -> str:
    lines = ["group %s" % group.name, "order %d" % group.order]
    for a in group.alphabet:
        lines.append("gen %s %s" % (a, " ".join(str(i) for i in group.marking[a])))
    return "\n".join(lines) + "\n"
