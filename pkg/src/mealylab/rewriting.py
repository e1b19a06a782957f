"""Word actions and exact normal forms for bireversible automata.

Every mixed word over signed states and signed letters is equal, in the
group presented by the single-step relations ``q a = output . transition``,
to a unique product of a reduced state word and a reduced letter word (in
either order).  This module computes that factorization by scanning the
input left to right and moving each incoming symbol through the
opposite-kind part with the cached crossing table, freely reducing after
every append.  Comparing factorizations decides the word problem of the
presented group.

The induced actions are exposed directly: a state word acting on a letter
word (``act_state_on_word``) yields the letter part of the mixed product,
and its state part is the *residual* (the state word left over after the
letters have been processed).  For automata that are merely invertible or
merely reversible, the positive-word actions are available through the
plain table recursion, no formal inverses involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .automaton import MealyAutomaton
from .errors import ConstructionError, PropertyError
from .words import SignedSymbol, Word, is_positive

STATES_FIRST = "states-first"
LETTERS_FIRST = "letters-first"
ORIENTATIONS = (STATES_FIRST, LETTERS_FIRST)


@dataclass(frozen=True)
class NormalFormPair:
    """The unique factorization of a mixed word.

    ``states-first`` means state_part . letter_part; ``letters-first``
    means letter_part . state_part.  Both parts are freely reduced.
    """

    state_part: Word
    letter_part: Word
    orientation: str

    @property
    def is_identity(self) -> bool:
        return not self.state_part and not self.letter_part


def _classify(automaton: MealyAutomaton, symbol: SignedSymbol) -> str:
    in_states = symbol.base in automaton._state_idx
    in_letters = symbol.base in automaton._letter_idx
    if in_states:
        return "state"
    if in_letters:
        return "letter"
    raise ConstructionError(
        "%r is neither a state nor a letter of %s" % (symbol.token(), automaton.name)
    )


def _push(stack: List[int], code: int, n: int) -> None:
    # codes c and (c + n) % (2n) are mutually inverse
    if stack and stack[-1] == (code + n) % (2 * n):
        stack.pop()
    else:
        stack.append(code)


def normal_form(
    automaton: MealyAutomaton,
    word: Iterable[SignedSymbol],
    orientation: str = LETTERS_FIRST,
) -> NormalFormPair:
    """Factor a mixed word into its unique reduced state/letter parts.

    The input need not be freely reduced; the output always is.  Inserting
    a defining relation anywhere in the input does not change the result.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError("orientation must be one of %r" % (ORIENTATIONS,))
    automaton.require_bireversible()
    table = automaton.crossing
    inverse = automaton.crossing_inverse
    nq, na = automaton.n_states, automaton.n_letters
    state_stack: List[int] = []
    letter_stack: List[int] = []
    for symbol in word:
        kind = _classify(automaton, symbol)
        if orientation == LETTERS_FIRST:
            if kind == "state":
                _push(state_stack, automaton.state_code(symbol), nq)
            else:
                carry = automaton.letter_code(symbol)
                for i in range(len(state_stack) - 1, -1, -1):
                    carry, state_stack[i] = table[state_stack[i]][carry]
                _push(letter_stack, carry, na)
        else:
            if kind == "letter":
                _push(letter_stack, automaton.letter_code(symbol), na)
            else:
                carry = automaton.state_code(symbol)
                for i in range(len(letter_stack) - 1, -1, -1):
                    carry, letter_stack[i] = inverse[(letter_stack[i], carry)]
                _push(state_stack, carry, nq)
    return NormalFormPair(
        state_part=tuple(automaton.state_symbol(c) for c in state_stack),
        letter_part=tuple(automaton.letter_symbol(c) for c in letter_stack),
        orientation=orientation,
    )


def pi1_is_identity(
    automaton: MealyAutomaton, word: Iterable[SignedSymbol]
) -> bool:
    """Decide whether a mixed word is trivial in the presented group."""
    return normal_form(automaton, word, LETTERS_FIRST).is_identity


def _act_parts(
    automaton: MealyAutomaton, states: Word, letters: Word
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Letters-first factorization of states . letters, on integer codes.

    Uses the signed crossing table when the automaton is bireversible;
    otherwise falls back to the positive-word table recursion, which
    requires invertibility and positive input.
    """
    if automaton.is_bireversible:
        table = automaton.crossing
        tup = [c for c in automaton.state_codes(states)]
        out: List[int] = []
        na = automaton.n_letters
        for lc in automaton.letter_codes(letters):
            carry = lc
            for i in range(len(tup) - 1, -1, -1):
                carry, tup[i] = table[tup[i]][carry]
            _push(out, carry, na)
        return tuple(out), tuple(tup)
    automaton.require_invertible()
    if not (is_positive(states) and is_positive(letters)):
        raise PropertyError(
            "%s is not bireversible; only positive words act" % automaton.name
        )
    out_tbl, tr_tbl = automaton._out, automaton._tr
    tup = [automaton._state_idx[s.base] for s in states]
    out = []
    for letter in letters:
        carry = automaton._letter_idx[letter.base]
        for i in range(len(tup) - 1, -1, -1):
            carry, tup[i] = out_tbl[tup[i]][carry], tr_tbl[tup[i]][carry]
        out.append(carry)
    return tuple(out), tuple(tup)


def act_state_on_word(
    automaton: MealyAutomaton,
    states: Iterable[SignedSymbol],
    letters: Iterable[SignedSymbol],
) -> Word:
    """Image of a letter word under the action of a state word.

    The action is by isometries fixing the empty word: a reduced input
    maps to a reduced output of the same length, positive letters map to
    positive letters.
    """
    states = tuple(states)
    letters = tuple(letters)
    out, _ = _act_parts(automaton, states, letters)
    return tuple(automaton.letter_symbol(c) for c in out)


def residual(
    automaton: MealyAutomaton,
    states: Iterable[SignedSymbol],
    letters: Iterable[SignedSymbol],
) -> Word:
    """State word remaining after a state word has processed a letter word."""
    states = tuple(states)
    letters = tuple(letters)
    _, rest = _act_parts(automaton, states, letters)
    if automaton.is_bireversible:
        return tuple(automaton.state_symbol(c) for c in rest)
    return tuple(SignedSymbol(automaton.states[c], 1) for c in rest)


def act_letter_on_stateword(
    automaton: MealyAutomaton,
    letter: SignedSymbol,
    states: Iterable[SignedSymbol],
) -> Word:
    """Image of a state word under the dual action of one letter.

    The word is processed right to left: the letter transforms the last
    state first and the transformed letter continues through the rest.
    Signed input needs a bireversible automaton; positive input only needs
    reversibility.
    """
    states = tuple(states)
    if automaton.is_bireversible:
        table = automaton.crossing
        tup = [c for c in automaton.state_codes(states)]
        carry = automaton.letter_code(letter)
        for i in range(len(tup) - 1, -1, -1):
            carry, tup[i] = table[tup[i]][carry]
        return tuple(automaton.state_symbol(c) for c in tup)
    automaton.require_reversible()
    if letter.sign != 1 or not is_positive(states):
        raise PropertyError(
            "%s is not bireversible; only positive words act" % automaton.name
        )
    out_tbl, tr_tbl = automaton._out, automaton._tr
    tup = [automaton._state_idx[s.base] for s in states]
    carry = automaton._letter_idx[letter.base]
    for i in range(len(tup) - 1, -1, -1):
        carry, tup[i] = out_tbl[tup[i]][carry], tr_tbl[tup[i]][carry]
    return tuple(SignedSymbol(automaton.states[c], 1) for c in tup)
