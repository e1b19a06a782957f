"""Mealy automata and the invertible/reversible/bireversible hierarchy.

A Mealy automaton is a finite letter-to-letter transducer: a tuple of an
alphabet A, a state set Q, an output table Q x A -> A and a transition
table Q x A -> Q.  It is *invertible* when every state's output row is a
permutation of A, *reversible* when every letter's transition column is a
permutation of Q, and *bireversible* when additionally the combined map
(q, a) -> (output, transition) is a bijection of Q x A onto A x Q.

For bireversible automata the single-step relation ``q . a = b . p`` (state
then letter equals letter then state) extends uniquely to formal inverses
of states and letters.  The resulting *crossing table* on signed symbols is
the workhorse of every rewriting operation in this package; it is computed
once per automaton and cached.

This module also provides the constructions that build new automata from
old ones: the inverse, the dual (state/letter roles exchanged via the
inverse of the combined map), disjoint unions over a shared alphabet, the
symmetrization that adjoins formal inverses as genuine states/letters, and
the closure automaton generated by a finite set of state words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ConstructionError, ParseError, PropertyError, TableError
from .words import (
    SignedSymbol,
    Word,
    format_word,
    is_positive,
    is_reduced,
    reduce_word,
)


@dataclass(frozen=True)
class Witness:
    """Two table inputs mapping to the same image under `map_label`."""

    map_label: str
    inputs: tuple
    image: object

    def __str__(self):
        a, b = self.inputs
        return "%s not injective: %s and %s both map to %s" % (
            self.map_label,
            a,
            b,
            self.image,
        )


@dataclass(frozen=True)
class PropertyReport:
    """Result of checking the property hierarchy of one automaton.

    ``witnesses`` holds, for each failed flag, a concrete collision.
    """

    invertible: bool
    reversible: bool
    delta_bijective: bool
    bireversible: bool
    witnesses: Dict[str, Witness] = field(default_factory=dict)

    def witness(self, flag: str) -> Optional[Witness]:
        return self.witnesses.get(flag)


class MealyAutomaton:
    """Immutable Mealy automaton over ordered alphabet/state symbol tuples.

    `output` and `transition` are total maps keyed by (state, letter)
    pairs.  Symbols are opaque strings; the alphabet and state set must be
    disjoint so that mixed words are unambiguous.  All table iteration and
    all derived constructions follow the declared symbol order, which makes
    every emitted listing reproducible.
    """

    def __init__(self, alphabet, states, output, transition, name="M"):
        alphabet = tuple(alphabet)
        states = tuple(states)
        if not alphabet:
            raise TableError("alphabet must be non-empty")
        if not states:
            raise TableError("state set must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise TableError("duplicate alphabet symbol in %r" % (alphabet,))
        if len(set(states)) != len(states):
            raise TableError("duplicate state symbol in %r" % (states,))
        overlap = set(alphabet) & set(states)
        if overlap:
            raise TableError(
                "alphabet and states must be disjoint, both contain %s"
                % sorted(overlap)
            )
        out = {}
        tr = {}
        for q in states:
            for a in alphabet:
                if (q, a) not in output:
                    raise TableError("missing output cell (%s, %s)" % (q, a))
                if (q, a) not in transition:
                    raise TableError("missing transition cell (%s, %s)" % (q, a))
                b = output[(q, a)]
                p = transition[(q, a)]
                if b not in set(alphabet):
                    raise TableError(
                        "output(%s, %s) = %r is not an alphabet symbol" % (q, a, b)
                    )
                if p not in set(states):
                    raise TableError(
                        "transition(%s, %s) = %r is not a state symbol" % (q, a, p)
                    )
                out[(q, a)] = b
                tr[(q, a)] = p
        for key in output:
            if key not in out:
                raise TableError("unexpected output cell %s" % (key,))
        for key in transition:
            if key not in tr:
                raise TableError("unexpected transition cell %s" % (key,))
        self.alphabet = alphabet
        self.states = states
        self.output = out
        self.transition = tr
        self.name = name

    # -- basics ---------------------------------------------------------

    @property
    def n_letters(self) -> int:
        return len(self.alphabet)

    @property
    def n_states(self) -> int:
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, MealyAutomaton):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and self.output == other.output
            and self.transition == other.transition
        )

    __hash__ = None

    def __repr__(self):
        return "MealyAutomaton(%r, |A|=%d, |Q|=%d)" % (
            self.name,
            self.n_letters,
            self.n_states,
        )

    # -- cached index structures -----------------------------------------

    @cached_property
    def _letter_idx(self) -> Dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def _state_idx(self) -> Dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def _out(self) -> List[List[int]]:
        li = self._letter_idx
        return [
            [li[self.output[(q, a)]] for a in self.alphabet] for q in self.states
        ]

    @cached_property
    def _tr(self) -> List[List[int]]:
        si = self._state_idx
        return [
            [si[self.transition[(q, a)]] for a in self.alphabet]
            for q in self.states
        ]

    # -- property hierarchy ----------------------------------------------

    @cached_property
    def report(self) -> PropertyReport:
        witnesses = {}
        invertible = True
        for q in self.states:
            seen = {}
            for a in self.alphabet:
                b = self.output[(q, a)]
                if b in seen:
                    invertible = False
                    witnesses["invertible"] = Witness(
                        "lambda_%s" % q, (seen[b], a), b
                    )
                    break
                seen[b] = a
            if not invertible:
                break
        reversible = True
        for a in self.alphabet:
            seen = {}
            for q in self.states:
                p = self.transition[(q, a)]
                if p in seen:
                    reversible = False
                    witnesses["reversible"] = Witness(
                        "rho_%s" % a, (seen[p], q), p
                    )
                    break
                seen[p] = q
            if not reversible:
                break
        delta_bijective = True
        seen = {}
        for q in self.states:
            for a in self.alphabet:
                img = (self.output[(q, a)], self.transition[(q, a)])
                if img in seen:
                    delta_bijective = False
                    witnesses["delta_bijective"] = Witness(
                        "delta", (seen[img], (q, a)), img
                    )
                    break
                seen[img] = (q, a)
            if not delta_bijective:
                break
        return PropertyReport(
            invertible=invertible,
            reversible=reversible,
            delta_bijective=delta_bijective,
            bireversible=invertible and reversible and delta_bijective,
            witnesses=witnesses,
        )

    @property
    def is_invertible(self) -> bool:
        return self.report.invertible

    @property
    def is_reversible(self) -> bool:
        return self.report.reversible

    @property
    def is_bireversible(self) -> bool:
        return self.report.bireversible

    def require_invertible(self):
        if not self.report.invertible:
            raise PropertyError(
                "%s is not invertible (%s)"
                % (self.name, self.report.witnesses["invertible"])
            )

    def require_reversible(self):
        if not self.report.reversible:
            raise PropertyError(
                "%s is not reversible (%s)"
                % (self.name, self.report.witnesses["reversible"])
            )

    def require_bireversible(self):
        rep = self.report
        if not rep.bireversible:
            for flag in ("invertible", "reversible", "delta_bijective"):
                if not getattr(rep, flag):
                    raise PropertyError(
                        "%s is not bireversible: %s fails (%s)"
                        % (self.name, flag, rep.witnesses[flag])
                    )

    # -- signed symbol codes ----------------------------------------------
    #
    # Internally a signed state is an int in [0, 2|Q|): index i for the
    # i-th state, |Q|+i for its formal inverse.  Signed letters use the
    # same scheme over [0, 2|A|).  Hot loops work entirely in this space.

    def state_code(self, s: SignedSymbol) -> int:
        try:
            i = self._state_idx[s.base]
        except KeyError:
            raise ConstructionError(
                "%r is not a state of %s" % (s.token(), self.name)
            ) from None
        return i if s.sign == 1 else self.n_states + i

    def letter_code(self, s: SignedSymbol) -> int:
        try:
            i = self._letter_idx[s.base]
        except KeyError:
            raise ConstructionError(
                "%r is not a letter of %s" % (s.token(), self.name)
            ) from None
        return i if s.sign == 1 else self.n_letters + i

    def state_symbol(self, code: int) -> SignedSymbol:
        nq = self.n_states
        if code < nq:
            return SignedSymbol(self.states[code], 1)
        return SignedSymbol(self.states[code - nq], -1)

    def letter_symbol(self, code: int) -> SignedSymbol:
        na = self.n_letters
        if code < na:
            return SignedSymbol(self.alphabet[code], 1)
        return SignedSymbol(self.alphabet[code - na], -1)

    def state_codes(self, word: Iterable[SignedSymbol]) -> Tuple[int, ...]:
        return tuple(self.state_code(s) for s in word)

    def letter_codes(self, word: Iterable[SignedSymbol]) -> Tuple[int, ...]:
        return tuple(self.letter_code(s) for s in word)

    @cached_property
    def crossing(self) -> List[List[Tuple[int, int]]]:
        """Signed crossing table: ``crossing[sc][lc] = (lc', sc')``.

        Realizes the relation (signed state)(signed letter) =
        (signed letter')(signed state') on integer codes.  Only defined for
        bireversible automata; the four sign combinations are resolved via
        the output/transition tables and their three inverse forms.
        """
        self.require_bireversible()
        nq, na = self.n_states, self.n_letters
        out, tr = self._out, self._tr
        lam_inv = [[-1] * na for _ in range(nq)]
        rho_inv = [[-1] * nq for _ in range(na)]
        delta_inv = {}
        for q in range(nq):
            for a in range(na):
                lam_inv[q][out[q][a]] = a
                rho_inv[a][tr[q][a]] = q
                delta_inv[(out[q][a], tr[q][a])] = (q, a)
        table = [[None] * (2 * na) for _ in range(2 * nq)]
        for q in range(nq):
            for a in range(na):
                # q . a = out . tr
                table[q][a] = (out[q][a], tr[q][a])
                # q . a^-1 = b^-1 . p  with p the rho_a-preimage of q
                p = rho_inv[a][q]
                table[q][na + a] = (na + out[p][a], p)
                # q^-1 . a = b . p^-1  with b the lambda_q-preimage of a
                b = lam_inv[q][a]
                table[nq + q][a] = (b, nq + tr[q][b])
                # q^-1 . a^-1 = b^-1 . p^-1  via the inverse of delta
                p, b = delta_inv[(a, q)]
                table[nq + q][na + a] = (na + b, nq + p)
        return table

    @cached_property
    def crossing_inverse(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        """Inverse of :attr:`crossing`: ``(lc', sc') -> (sc, lc)``."""
        inv = {}
        for sc, row in enumerate(self.crossing):
            for lc, image in enumerate(row):
                inv[image] = (sc, lc)
        return inv


# ---------------------------------------------------------------------------
# property check
# ---------------------------------------------------------------------------


def validate(automaton: MealyAutomaton) -> PropertyReport:
    """Check invertibility, reversibility and bijectivity of the combined
    (state, letter) -> (letter, state) map; collect collision witnesses."""
    return automaton.report


# ---------------------------------------------------------------------------
# crossing on public symbols
# ---------------------------------------------------------------------------


def cross(
    automaton: MealyAutomaton, state: SignedSymbol, letter: SignedSymbol
) -> Tuple[SignedSymbol, SignedSymbol]:
    """Move a signed state past a signed letter: returns (letter', state')
    with state.letter = letter'.state' holding in the presented group."""
    lc, sc = automaton.crossing[automaton.state_code(state)][
        automaton.letter_code(letter)
    ]
    return automaton.letter_symbol(lc), automaton.state_symbol(sc)


def cross_back(
    automaton: MealyAutomaton, letter: SignedSymbol, state: SignedSymbol
) -> Tuple[SignedSymbol, SignedSymbol]:
    """Inverse of :func:`cross`: returns (state', letter') with
    state'.letter' = letter.state."""
    sc, lc = automaton.crossing_inverse[
        (automaton.letter_code(letter), automaton.state_code(state))
    ]
    return automaton.state_symbol(sc), automaton.letter_symbol(lc)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _toggle_inverse_name(symbol: str) -> str:
    suffix = "^-1"
    if symbol.endswith(suffix) and len(symbol) > len(suffix):
        return symbol[: -len(suffix)]
    return symbol + suffix


def inverse_automaton(automaton: MealyAutomaton) -> MealyAutomaton:
    """Automaton whose states act as the inverse permutations.

    States are relabeled by toggling a ``^-1`` suffix, so applying the
    construction twice restores the original automaton exactly.
    """
    automaton.require_invertible()
    states = tuple(_toggle_inverse_name(q) for q in automaton.states)
    out = {}
    tr = {}
    for qi, q in enumerate(automaton.states):
        preimage = {automaton.output[(q, a)]: a for a in automaton.alphabet}
        for a in automaton.alphabet:
            b = preimage[a]
            out[(states[qi], a)] = b
            tr[(states[qi], a)] = _toggle_inverse_name(
                automaton.transition[(q, b)]
            )
    return MealyAutomaton(
        automaton.alphabet, states, out, tr, name="inverse(%s)" % automaton.name
    )


def dual_automaton(automaton: MealyAutomaton) -> MealyAutomaton:
    """Exchange the roles of states and letters via the inverse of the
    combined map.

    The dual has alphabet Q and state set A.  For a dual state ``a`` and a
    dual letter ``q`` the cell is the unique (q', a') with
    output(q', a') = a and transition(q', a') = q; the dual outputs q' and
    moves to a'.  The construction is an involution: the dual of the dual
    is the original automaton, symbol for symbol.
    """
    automaton.require_bireversible()
    out = {}
    tr = {}
    delta_inv = {}
    for q in automaton.states:
        for a in automaton.alphabet:
            delta_inv[(automaton.output[(q, a)], automaton.transition[(q, a)])] = (
                q,
                a,
            )
    for a in automaton.alphabet:
        for q in automaton.states:
            q0, a0 = delta_inv[(a, q)]
            out[(a, q)] = q0
            tr[(a, q)] = a0
    return MealyAutomaton(
        automaton.states,
        automaton.alphabet,
        out,
        tr,
        name="dual(%s)" % automaton.name,
    )


def disjoint_union(*automata: MealyAutomaton) -> MealyAutomaton:
    """Disjoint union of bireversible automata over one common alphabet.

    State sets are kept verbatim when already pairwise disjoint; otherwise
    every state of operand i is tagged with ``#i`` (1-based).  Tables
    restrict to the originals on each part.
    """
    if not automata:
        raise ConstructionError("disjoint_union needs at least one automaton")
    first = automata[0]
    for m in automata:
        m.require_bireversible()
        if m.alphabet != first.alphabet:
            raise ConstructionError(
                "alphabet mismatch: %s has %r, %s has %r"
                % (first.name, first.alphabet, m.name, m.alphabet)
            )
    all_states = [q for m in automata for q in m.states]
    if len(set(all_states)) == len(all_states):
        rename = [{q: q for q in m.states} for m in automata]
    else:
        rename = [
            {q: "%s#%d" % (q, i + 1) for q in m.states}
            for i, m in enumerate(automata)
        ]
        tagged = [q for r in rename for q in r.values()]
        if len(set(tagged)) != len(tagged):
            raise ConstructionError(
                "state sets still collide after #i tagging: %r" % (tagged,)
            )
    states = tuple(rename[i][q] for i, m in enumerate(automata) for q in m.states)
    out = {}
    tr = {}
    for i, m in enumerate(automata):
        for q in m.states:
            for a in m.alphabet:
                out[(rename[i][q], a)] = m.output[(q, a)]
                tr[(rename[i][q], a)] = rename[i][m.transition[(q, a)]]
    return MealyAutomaton(
        first.alphabet,
        states,
        out,
        tr,
        name="+".join(m.name for m in automata),
    )


def symmetrize(automaton: MealyAutomaton) -> MealyAutomaton:
    """Adjoin formal inverses as genuine states and letters.

    The result has state set Q + Q^-1 and alphabet A + A^-1; its tables
    agree with the signed crossing table of the input on all four sign
    combinations, so its positive part restricted to (Q, A) is the input.
    """
    automaton.require_bireversible()
    nq, na = automaton.n_states, automaton.n_letters
    letters = tuple(automaton.alphabet) + tuple(
        _toggle_inverse_name(a) for a in automaton.alphabet
    )
    states = tuple(automaton.states) + tuple(
        _toggle_inverse_name(q) for q in automaton.states
    )
    if set(letters) & set(states):
        raise ConstructionError(
            "symmetrized symbol sets collide: %r"
            % sorted(set(letters) & set(states))
        )
    table = automaton.crossing
    out = {}
    tr = {}
    for sc in range(2 * nq):
        for lc in range(2 * na):
            lc2, sc2 = table[sc][lc]
            out[(states[sc], letters[lc])] = letters[lc2]
            tr[(states[sc], letters[lc])] = states[sc2]
    return MealyAutomaton(
        letters, states, out, tr, name="sym(%s)" % automaton.name
    )


def _state_word_name(automaton: MealyAutomaton, codes: Sequence[int]) -> str:
    """Serialize a reduced state word as a state name for closure automata."""
    syms = [automaton.state_symbol(c) for c in codes]
    if not syms:
        return "eps"
    plain = all(len(q) == 1 for q in automaton.states)
    return format_word(syms, sep="" if plain else ".")


def subgroup_closure_automaton(
    automaton: MealyAutomaton, generators: Iterable[Word]
) -> MealyAutomaton:
    """Automaton whose states are the residuals of the given state words.

    Starting from the freely reduced generator words, the state set is
    closed under residuation by every signed letter (a finite breadth-first
    fixed point: residuation preserves reduced word length).  Tables are
    given by single-letter residuation of the closure members; the result
    is bireversible.
    """
    automaton.require_bireversible()
    gens = [reduce_word(w) for w in generators]
    if not gens:
        raise ConstructionError("generator set must be non-empty")
    table = automaton.crossing
    na = automaton.n_letters
    start = []
    for w in gens:
        codes = automaton.state_codes(w)
        if codes not in start:
            start.append(codes)
    seen = set(start)
    queue = list(start)
    order = list(start)
    while queue:
        cur = queue.pop(0)
        for lc in range(2 * na):
            nxt = list(cur)
            carry = lc
            for j in range(len(nxt) - 1, -1, -1):
                carry, nxt[j] = table[nxt[j]][carry]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                order.append(nxt)
    names = {}
    for codes in order:
        name = _state_word_name(automaton, codes)
        if name in names.values() or name in automaton.alphabet:
            raise ConstructionError(
                "closure state name %r is ambiguous; rename the input states"
                % name
            )
        names[codes] = name
    out = {}
    tr = {}
    for codes in order:
        for ai, a in enumerate(automaton.alphabet):
            nxt = list(codes)
            carry = ai
            for j in range(len(nxt) - 1, -1, -1):
                carry, nxt[j] = table[nxt[j]][carry]
            out[(names[codes], a)] = automaton.alphabet[carry]
            tr[(names[codes], a)] = names[tuple(nxt)]
    result = MealyAutomaton(
        automaton.alphabet,
        tuple(names[c] for c in order),
        out,
        tr,
        name="closure(%s)" % automaton.name,
    )
    result.require_bireversible()
    return result


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------
#
#   automaton <name>
#   alphabet <sym> <sym> ...
#   states <sym> <sym> ...
#   trans <state> <letter> -> <letter> <state>     (|Q|*|A| lines)
#
# '#' starts a comment; blank lines are ignored; parsing is strict.


def parse_automaton(text: str, source: str = "<string>") -> MealyAutomaton:
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((no, stripped))
    if not lines:
        raise ParseError("%s: empty automaton file" % source)

    def expect(i, keyword):
        if i >= len(lines):
            raise ParseError("%s: missing %r line" % (source, keyword))
        no, content = lines[i]
        parts = content.split()
        if parts[0] != keyword:
            raise ParseError(
                "%s: expected %r, got %r" % (source, keyword, parts[0]), line=no
            )
        return no, parts[1:]

    no, rest = expect(0, "automaton")
    if len(rest) != 1:
        raise ParseError("%s: automaton line needs exactly one name" % source, line=no)
    name = rest[0]
    no, alphabet = expect(1, "alphabet")
    if not alphabet:
        raise ParseError("%s: empty alphabet" % source, line=no)
    no, states = expect(2, "states")
    if not states:
        raise ParseError("%s: empty state set" % source, line=no)
    out = {}
    tr = {}
    for no, content in lines[3:]:
        parts = content.split()
        if parts[0] != "trans":
            raise ParseError(
                "%s: expected 'trans', got %r" % (source, parts[0]), line=no
            )
        if len(parts) != 6 or parts[3] != "->":
            raise ParseError(
                "%s: trans line must be 'trans <state> <letter> -> <letter> <state>'"
                % source,
                line=no,
            )
        q, a, b, p = parts[1], parts[2], parts[4], parts[5]
        if q not in states:
            raise ParseError("%s: unknown state %r" % (source, q), line=no)
        if p not in states:
            raise ParseError("%s: unknown state %r" % (source, p), line=no)
        if a not in alphabet:
            raise ParseError("%s: unknown letter %r" % (source, a), line=no)
        if b not in alphabet:
            raise ParseError("%s: unknown letter %r" % (source, b), line=no)
        if (q, a) in out:
            raise ParseError("%s: duplicate cell (%s, %s)" % (source, q, a), line=no)
        out[(q, a)] = b
        tr[(q, a)] = p
    for q in states:
        for a in alphabet:
            if (q, a) not in out:
                raise ParseError(
                    "%s: missing trans line for cell (%s, %s)" % (source, q, a)
                )
    try:
        return MealyAutomaton(alphabet, states, out, tr, name=name)
    except TableError as exc:
        raise ParseError("%s: %s" % (source, exc)) from exc


def read_automaton(path) -> MealyAutomaton:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_automaton(handle.read(), source=str(path))


def format_automaton(automaton: MealyAutomaton) -> str:
    lines = ["automaton %s" % automaton.name]
    lines.append("alphabet %s" % " ".join(automaton.alphabet))
    lines.append("states %s" % " ".join(automaton.states))
    for q in automaton.states:
        for a in automaton.alphabet:
            lines.append(
                "trans %s %s -> %s %s"
                % (q, a, automaton.output[(q, a)], automaton.transition[(q, a)])
            )
    return "\n".join(lines) + "\n"


def write_automaton(automaton: MealyAutomaton, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_automaton(automaton))
