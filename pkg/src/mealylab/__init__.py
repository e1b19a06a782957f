"""mealylab: a workbench for Mealy automata and the groups they generate.

Decide the invertible/reversible/bireversible hierarchy, build the inverse,
dual, union, symmetrization and subgroup-closure automata, solve the word
problem exactly (both in the relation-presented group of mixed words and in
the generated group via transducer equivalence), check marked-group
compatibility and quotient-graph descent, and run cyclic-subgroup
distortion experiments.
"""

from .automaton import (
    MealyAutomaton,
    PropertyReport,
    Witness,
    cross,
    cross_back,
    disjoint_union,
    dual_automaton,
    format_automaton,
    inverse_automaton,
    parse_automaton,
    read_automaton,
    subgroup_closure_automaton,
    symmetrize,
    validate,
    write_automaton,
)
from .engine import (
    Enumeration,
    FinitenessReport,
    GroupElement,
    GrowthSequence,
    OrderResult,
    ball,
    canonicalize,
    cross_check_finiteness,
    element_order,
    equal,
    try_enumerate,
)
from .errors import (
    CapError,
    ConstructionError,
    MealyError,
    ParseError,
    PropertyError,
    TableError,
    TorsionError,
)
from .rewriting import (
    LETTERS_FIRST,
    STATES_FIRST,
    NormalFormPair,
    act_letter_on_stateword,
    act_state_on_word,
    normal_form,
    pi1_is_identity,
    residual,
)
from .words import (
    SignedSymbol,
    Word,
    format_word,
    invert_word,
    parse_word,
    positive_word,
    reduce_word,
    word_power,
)

__version__ = "0.1.0"
