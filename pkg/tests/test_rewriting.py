import random

import pytest

from conftest import oracle_act_word, reduced_signed_words
from mealylab.errors import ConstructionError, PropertyError
from mealylab.rewriting import (
    LETTERS_FIRST,
    STATES_FIRST,
    act_letter_on_stateword,
    act_state_on_word,
    normal_form,
    pi1_is_identity,
    residual,
)
from mealylab.words import (
    SignedSymbol,
    format_word,
    invert_word,
    is_positive,
    is_reduced,
    parse_word,
    reduce_word,
)


def random_mixed_word(rng, automaton, max_len=12):
    symbols = [
        SignedSymbol(s, sign)
        for s in automaton.states + automaton.alphabet
        for sign in (1, -1)
    ]
    return tuple(rng.choice(symbols) for _ in range(rng.randrange(max_len + 1)))


def defining_relator(rng, automaton):
    q = rng.choice(automaton.states)
    a = rng.choice(automaton.alphabet)
    return (
        SignedSymbol(q),
        SignedSymbol(a),
        SignedSymbol(automaton.transition[(q, a)], -1),
        SignedSymbol(automaton.output[(q, a)], -1),
    )


# -- normal forms ------------------------------------------------------------


def test_nf_letters_first_example(swap):
    pair = normal_form(swap, parse_word("0 s 1 s^-1"), LETTERS_FIRST)
    assert pair.letter_part == parse_word("0 0")
    assert pair.state_part == ()


def test_nf_states_first_example(swap):
    pair = normal_form(swap, parse_word("s 0 s"), STATES_FIRST)
    assert pair.state_part == parse_word("s s")
    assert pair.letter_part == parse_word("1")


def test_nf_empty_word(swap):
    for orient in (LETTERS_FIRST, STATES_FIRST):
        pair = normal_form(swap, (), orient)
        assert pair.is_identity


def test_nf_rejects_foreign_symbols(swap):
    with pytest.raises(ConstructionError):
        normal_form(swap, parse_word("x"))


def test_nf_requires_bireversible(adding):
    with pytest.raises(PropertyError):
        normal_form(adding, parse_word("q 0"))


def test_nf_parts_always_reduced(aleshin):
    rng = random.Random(11)
    for _ in range(200):
        word = random_mixed_word(rng, aleshin)
        for orient in (LETTERS_FIRST, STATES_FIRST):
            pair = normal_form(aleshin, word, orient)
            assert is_reduced(pair.state_part)
            assert is_reduced(pair.letter_part)


def test_nf_relator_insertion_invariance(swap, toggle, aleshin):
    rng = random.Random(23)
    for automaton in (swap, toggle, aleshin):
        for _ in range(100):
            word = random_mixed_word(rng, automaton)
            base = normal_form(automaton, word, LETTERS_FIRST)
            pos = rng.randrange(len(word) + 1)
            spiked = word[:pos] + defining_relator(rng, automaton) + word[pos:]
            assert normal_form(automaton, spiked, LETTERS_FIRST) == base


def test_nf_orientations_agree_after_conversion(aleshin):
    rng = random.Random(5)
    for _ in range(150):
        word = random_mixed_word(rng, aleshin)
        lf = normal_form(aleshin, word, LETTERS_FIRST)
        sf = normal_form(aleshin, word, STATES_FIRST)
        # feed one factorization back through the other orientation
        assert normal_form(aleshin, lf.letter_part + lf.state_part, STATES_FIRST) == sf
        assert normal_form(aleshin, sf.state_part + sf.letter_part, LETTERS_FIRST) == lf


# -- word problem in the presented group --------------------------------------


def test_pi1_identity_examples(swap):
    assert pi1_is_identity(swap, parse_word("s 0 s^-1 1^-1"))
    assert not pi1_is_identity(swap, parse_word("s s"))
    assert pi1_is_identity(swap, ())


def test_pi1_conjugates_of_relators_vanish(aleshin):
    rng = random.Random(3)
    for _ in range(50):
        conj = random_mixed_word(rng, aleshin, max_len=5)
        relator = defining_relator(rng, aleshin)
        word = conj + relator + invert_word(conj)
        assert pi1_is_identity(aleshin, word)


# -- actions -------------------------------------------------------------------


def test_act_swap_toggles_all(swap):
    assert act_state_on_word(swap, parse_word("s"), parse_word("0 1 0 1")) == parse_word(
        "1 0 1 0"
    )


def test_act_identity_fixes_everything(identity2):
    for text in ("0", "0 1 1", "1 0"):
        w = parse_word(text)
        assert act_state_on_word(identity2, parse_word("e"), w) == w


def test_act_adding_machine_increments(adding):
    assert act_state_on_word(adding, parse_word("q"), parse_word("1 1")) == parse_word(
        "0 0"
    )
    assert act_state_on_word(adding, parse_word("q"), parse_word("0 1")) == parse_word(
        "1 1"
    )


def test_act_positive_words_need_invertible(adding):
    with pytest.raises(PropertyError):
        act_state_on_word(adding, parse_word("q^-1"), parse_word("1"))


def test_act_matches_oracle(aleshin):
    rng = random.Random(17)
    probes = reduced_signed_words(aleshin.alphabet, 4)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    for _ in range(60):
        g = tuple(rng.choice(states) for _ in range(rng.randrange(4)))
        v = rng.choice(probes)
        assert act_state_on_word(aleshin, g, v) == oracle_act_word(aleshin, g, v)


def test_act_is_isometry_and_sign_preserving(aleshin):
    rng = random.Random(29)
    probes = reduced_signed_words(aleshin.alphabet, 5)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    for _ in range(100):
        g = tuple(rng.choice(states) for _ in range(rng.randrange(5)))
        v = rng.choice(probes)
        image = act_state_on_word(aleshin, g, v)
        assert len(image) == len(v)
        assert [s.sign for s in image] == [s.sign for s in v]


def test_act_is_a_left_action(aleshin):
    rng = random.Random(41)
    probes = reduced_signed_words(aleshin.alphabet, 4)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    for _ in range(80):
        g = tuple(rng.choice(states) for _ in range(rng.randrange(4)))
        h = tuple(rng.choice(states) for _ in range(rng.randrange(4)))
        v = rng.choice(probes)
        composed = act_state_on_word(aleshin, g + h, v)
        nested = act_state_on_word(aleshin, g, act_state_on_word(aleshin, h, v))
        assert composed == nested


def test_act_inverse_coherence(aleshin):
    rng = random.Random(53)
    probes = reduced_signed_words(aleshin.alphabet, 4)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    for _ in range(80):
        g = reduce_word(rng.choice(states) for _ in range(rng.randrange(4)))
        v = rng.choice(probes)
        assert act_state_on_word(aleshin, g + invert_word(g), v) == v


# -- dual action ----------------------------------------------------------------


def test_dual_action_toggle(toggle):
    assert act_letter_on_stateword(toggle, SignedSymbol("1"), parse_word("a b")) == parse_word(
        "b a"
    )
    assert act_letter_on_stateword(toggle, SignedSymbol("0"), parse_word("a b")) == parse_word(
        "a b"
    )


def test_dual_action_single_state(swap):
    assert act_letter_on_stateword(swap, SignedSymbol("0"), parse_word("s s")) == parse_word(
        "s s"
    )


def test_dual_action_preserves_length(aleshin):
    rng = random.Random(61)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    letters = [SignedSymbol(a, s) for a in aleshin.alphabet for s in (1, -1)]
    for _ in range(100):
        u = reduce_word(rng.choice(states) for _ in range(rng.randrange(6)))
        a = rng.choice(letters)
        image = act_letter_on_stateword(aleshin, a, u)
        assert len(image) == len(u)
        assert is_reduced(image)


def test_dual_action_needs_reversible(adding):
    with pytest.raises(PropertyError):
        act_letter_on_stateword(adding, SignedSymbol("0"), parse_word("q"))


# -- residuals --------------------------------------------------------------------


def test_residual_examples(swap, adding, toggle):
    assert residual(swap, parse_word("s"), parse_word("0")) == parse_word("s")
    assert residual(adding, parse_word("q"), parse_word("1")) == parse_word("q")
    assert residual(toggle, parse_word("a"), parse_word("1")) == parse_word("b")


def test_residual_single_state_stays_single(aleshin):
    for q in aleshin.states:
        for sign in (1, -1):
            for a in aleshin.alphabet:
                rest = residual(aleshin, (SignedSymbol(q, sign),), (SignedSymbol(a),))
                assert len(rest) == 1


def test_residual_agrees_with_normal_form(aleshin):
    rng = random.Random(71)
    states = [SignedSymbol(q, s) for q in aleshin.states for s in (1, -1)]
    probes = reduced_signed_words(aleshin.alphabet, 4)
    for _ in range(60):
        g = reduce_word(rng.choice(states) for _ in range(rng.randrange(4)))
        v = rng.choice(probes)
        pair = normal_form(aleshin, g + v, LETTERS_FIRST)
        assert residual(aleshin, g, v) == pair.state_part
        assert act_state_on_word(aleshin, g, v) == pair.letter_part
