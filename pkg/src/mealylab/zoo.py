"""Small classic machines used throughout the tests and the docs."""

from __future__ import annotations

from .automaton import MealyAutomaton


def swap() -> MealyAutomaton:
    """One state over {0, 1}; the state flips every letter.  Bireversible;
    generates the group of order 2."""
    return MealyAutomaton(
        ("0", "1"),
        ("s",),
        {("s", "0"): "1", ("s", "1"): "0"},
        {("s", "0"): "s", ("s", "1"): "s"},
        name="swap",
    )


def identity(alphabet=("0", "1")) -> MealyAutomaton:
    """One state acting as the identity on every word.  Trivial group."""
    return MealyAutomaton(
        tuple(alphabet),
        ("e",),
        {("e", a): a for a in alphabet},
        {("e", a): "e" for a in alphabet},
        name="identity",
    )


def adding_machine() -> MealyAutomaton:
    """Binary odometer: state q adds one with carry, state e is idle.

    Invertible but not reversible (both states move to e on letter 0), so
    it sits strictly below the bireversible class.
    """
    return MealyAutomaton(
        ("0", "1"),
        ("e", "q"),
        {
            ("e", "0"): "0",
            ("e", "1"): "1",
            ("q", "0"): "1",
            ("q", "1"): "0",
        },
        {
            ("e", "0"): "e",
            ("e", "1"): "e",
            ("q", "0"): "e",
            ("q", "1"): "q",
        },
        name="adding",
    )


def nonbireversible() -> MealyAutomaton:
    """Invertible and reversible, yet the combined (state, letter) map
    collides: the middle rung of the hierarchy."""
    return MealyAutomaton(
        ("0", "1"),
        ("p", "q"),
        {
            ("p", "0"): "1",
            ("p", "1"): "0",
            ("q", "0"): "0",
            ("q", "1"): "1",
        },
        {
            ("p", "0"): "p",
            ("p", "1"): "q",
            ("q", "0"): "q",
            ("q", "1"): "p",
        },
        name="nonbireversible",
    )


def state_toggle() -> MealyAutomaton:
    """Two states with identity output; letter 1 swaps the states.

    The generated group is trivial, the dual group has order 2.
    """
    return MealyAutomaton(
        ("0", "1"),
        ("a", "b"),
        {
            ("a", "0"): "0",
            ("a", "1"): "1",
            ("b", "0"): "0",
            ("b", "1"): "1",
        },
        {
            ("a", "0"): "a",
            ("a", "1"): "b",
            ("b", "0"): "b",
            ("b", "1"): "a",
        },
        name="statetoggle",
    )


def aleshin() -> MealyAutomaton:
    """The three-state machine over {0, 1} whose states generate a free
    group of rank 3: a and b flip the letter, c copies it; transitions
    cycle through the states."""
    return MealyAutomaton(
        ("0", "1"),
        ("a", "b", "c"),
        {
            ("a", "0"): "1",
            ("a", "1"): "0",
            ("b", "0"): "1",
            ("b", "1"): "0",
            ("c", "0"): "0",
            ("c", "1"): "1",
        },
        {
            ("a", "0"): "b",
            ("a", "1"): "c",
            ("b", "0"): "c",
            ("b", "1"): "b",
            ("c", "0"): "a",
            ("c", "1"): "a",
        },
        name="aleshin",
    )
