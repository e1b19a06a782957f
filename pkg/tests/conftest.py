"""Shared fixtures and independent brute-force oracles.

The oracle functions here deliberately avoid the library's crossing table
and canonical keys: they work straight off the output/transition dicts so
that acceptance checks compare two genuinely different code paths.
"""

import itertools
import pathlib

import pytest

from mealylab import zoo
from mealylab.automaton import MealyAutomaton
from mealylab.words import SignedSymbol

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def swap():
    return zoo.swap()


@pytest.fixture
def identity2():
    return zoo.identity()


@pytest.fixture
def adding():
    return zoo.adding_machine()


@pytest.fixture
def nonbirev():
    return zoo.nonbireversible()


@pytest.fixture
def toggle():
    return zoo.state_toggle()


@pytest.fixture
def aleshin():
    return zoo.aleshin()


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def oracle_flags(m: MealyAutomaton):
    """Property flags by direct cardinality checks on the raw tables."""
    invertible = all(
        len({m.output[(q, a)] for a in m.alphabet}) == len(m.alphabet)
        for q in m.states
    )
    reversible = all(
        len({m.transition[(q, a)] for q in m.states}) == len(m.states)
        for a in m.alphabet
    )
    delta = len({(m.output[k], m.transition[k]) for k in m.output}) == len(
        m.states
    ) * len(m.alphabet)
    return invertible, reversible, invertible and reversible and delta


def oracle_act_symbol(m: MealyAutomaton, state: SignedSymbol, word):
    """Image of a signed letter word under one signed state, computed from
    the raw tables with local inverse lookups (no crossing table)."""
    out = dict(m.output)
    tr = dict(m.transition)
    lam_inv = {
        (q, out[(q, a)]): a for q in m.states for a in m.alphabet
    }
    rho_inv = {
        (a, tr[(q, a)]): q for q in m.states for a in m.alphabet
    }
    delta_inv = {
        (out[(q, a)], tr[(q, a)]): (q, a) for q in m.states for a in m.alphabet
    }
    q, qs = state.base, state.sign
    image = []
    for letter in word:
        a, ls = letter.base, letter.sign
        if qs == 1 and ls == 1:
            b, p = out[(q, a)], tr[(q, a)]
        elif qs == 1 and ls == -1:
            p = rho_inv[(a, q)]
            b = out[(p, a)]
        elif qs == -1 and ls == 1:
            b = lam_inv[(q, a)]
            p = tr[(q, b)]
        else:
            p, b = delta_inv[(a, q)]
        image.append(SignedSymbol(b, ls))
        q, qs = p, qs
    return tuple(image)


def oracle_act_word(m: MealyAutomaton, states, word):
    """Image under a signed state word: rightmost state acts first."""
    for state in reversed(tuple(states)):
        word = oracle_act_symbol(m, state, word)
    return tuple(word)


def reduced_signed_words(symbols, max_len):
    """All freely reduced signed words up to max_len over base symbols."""
    letters = [SignedSymbol(s, sig) for s in symbols for sig in (1, -1)]
    words = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for l in letters:
                if w and w[-1].base == l.base and w[-1].sign == -l.sign:
                    continue
                nxt.append(w + (l,))
        words.extend(nxt)
        layer = nxt
    return words


def action_fingerprint(m: MealyAutomaton, states, depth):
    """Tuple of oracle images of every reduced signed letter word up to
    the given depth; a sound (depth-limited) equality fingerprint."""
    probes = reduced_signed_words(m.alphabet, depth)
    return tuple(oracle_act_word(m, states, p) for p in probes)


def all_two_state_two_letter():
    """The exhaustive corpus of 2-state/2-letter Mealy automata (256)."""
    states = ("p", "q")
    alphabet = ("0", "1")
    cells = [(q, a) for q in states for a in alphabet]
    corpus = []
    for out_vals in itertools.product(alphabet, repeat=4):
        for tr_vals in itertools.product(states, repeat=4):
            corpus.append(
                MealyAutomaton(
                    alphabet,
                    states,
                    dict(zip(cells, out_vals)),
                    dict(zip(cells, tr_vals)),
                    name="m",
                )
            )
    return corpus
