import pytest

from mealylab.automaton import dual_automaton
from mealylab.distortion import (
    free_submonoid_search,
    geodesic_length,
    orbit_language,
    power_profile,
)
from mealylab.engine import canonicalize, equal
from mealylab.errors import ConstructionError, TorsionError
from mealylab.rewriting import act_state_on_word
from mealylab.words import (
    SignedSymbol,
    invert_word,
    parse_word,
    positive_word,
    reduce_word,
    word_power,
)


# -- geodesic lengths ---------------------------------------------------------


def test_geodesic_examples(swap, aleshin):
    assert geodesic_length(swap, parse_word("s"), 5) == 1
    assert geodesic_length(swap, parse_word("s s"), 5) == 0
    assert geodesic_length(aleshin, parse_word("a b a"), 6) == 3


def test_geodesic_unknown_beyond_horizon(aleshin):
    assert geodesic_length(aleshin, parse_word("a b a c a"), 2) is None


def test_geodesic_bounded_by_reduced_length(aleshin):
    for text in ("a", "a b^-1", "c c", "a b c^-1"):
        w = parse_word(text)
        length = geodesic_length(aleshin, w, 6)
        assert length is not None and length <= len(reduce_word(w))


def test_geodesic_symmetry_and_triangle(aleshin):
    # |g^m| = |g^-m| and |g^(m+n)| <= |g^m| + |g^n| on computed entries
    g = parse_word("a b")
    lengths = {}
    for m in range(1, 3):
        lengths[m] = geodesic_length(aleshin, word_power(g, m), 4)
        assert lengths[m] == geodesic_length(aleshin, word_power(g, -m), 4)
    assert lengths[2] <= 2 * lengths[1]


# -- power profiles ------------------------------------------------------------


def test_profile_rejects_torsion(swap, identity2):
    with pytest.raises(TorsionError) as err:
        power_profile(swap, parse_word("s"), 1, 3, 5)
    assert err.value.order == 2
    with pytest.raises(TorsionError) as err:
        power_profile(identity2, parse_word("e"), 1, 3, 5)
    assert err.value.order == 1


def test_profile_free_generator(aleshin):
    profile = power_profile(aleshin, parse_word("a"), 1, 4, 4)
    assert profile.entries == ((1, 1, 1), (2, 2, 2), (3, 3, 3), (4, 4, 4))
    assert profile.c_est == 1.0
    assert not profile.sublinear


def test_profile_unknown_beyond_horizon(aleshin):
    profile = power_profile(aleshin, parse_word("a"), 1, 4, 2)
    assert profile.entries[:2] == ((1, 1, 1), (2, 2, 2))
    assert profile.entries[2] == (3, 3, None)
    assert profile.entries[3] == (4, 4, None)
    assert profile.c_est == 1.0


def test_profile_with_step(aleshin):
    profile = power_profile(aleshin, parse_word("a"), 2, 2, 4)
    assert profile.entries == ((1, 2, 2), (2, 4, 4))


# -- orbit languages -------------------------------------------------------------


def test_orbit_swap_example(swap):
    sample = orbit_language(swap, parse_word("0 1"), 2, 2)
    assert set(sample.words) == {
        parse_word("0 1"),
        parse_word("1 0"),
        parse_word("0 1 0 1"),
        parse_word("1 0 1 0"),
    }


def test_orbit_identity_example(identity2):
    sample = orbit_language(identity2, parse_word("0"), 3, 1)
    assert set(sample.words) == {
        parse_word("0"),
        parse_word("0 0"),
        parse_word("0 0 0"),
    }


def test_orbit_lengths_are_multiples_of_seed(aleshin):
    sample = orbit_language(aleshin, parse_word("0 1"), 2, 2)
    assert all(len(w) % 2 == 0 for w in sample.words)
    assert all(len(w) in (2, 4) for w in sample.words)


def test_orbit_closed_under_single_states(aleshin):
    sample = orbit_language(aleshin, parse_word("0"), 2, 3)
    members = set(sample.words)
    inner = orbit_language(aleshin, parse_word("0"), 2, 2)
    for w in inner.words:
        for q in aleshin.states:
            assert act_state_on_word(aleshin, (SignedSymbol(q),), w) in members


def test_orbit_rejects_bad_seed(swap):
    with pytest.raises(ConstructionError):
        orbit_language(swap, (), 2, 2)
    with pytest.raises(ConstructionError):
        orbit_language(swap, parse_word("0^-1"), 2, 2)


# -- free submonoid search ---------------------------------------------------------


def test_free_search_rejects_torsion_seed(swap, identity2):
    with pytest.raises(TorsionError) as err:
        free_submonoid_search(swap, parse_word("0 1"))
    assert err.value.order == 1
    with pytest.raises(TorsionError) as err:
        free_submonoid_search(identity2, parse_word("0"))
    assert err.value.order == 1


def test_free_search_finds_certified_pair(aleshin):
    candidate = free_submonoid_search(
        aleshin, parse_word("0 1"), n_max=3, gamma_len_max=2, certify_depth=3
    )
    assert candidate is not None
    assert len(candidate.x1) == len(candidate.x2)
    assert candidate.x1 != candidate.x2
    assert candidate.certified_up_to == 3
    assert candidate.products_checked == 2 + 4 + 8
    # re-verify the certificate by hand: all products of <= 3 factors are
    # pairwise distinct in the dual group
    dual = dual_automaton(aleshin)
    products = []
    frontier = [(), ]
    for _ in range(3):
        frontier = [p + x for p in frontier for x in (candidate.x1, candidate.x2)]
        products.extend(frontier)
    keys = {canonicalize(dual, p).key for p in products}
    assert len(keys) == len(products)


def test_free_search_products_live_in_orbit_language(aleshin):
    candidate = free_submonoid_search(aleshin, parse_word("0 1"))
    sample = orbit_language(aleshin, parse_word("0 1"), 3, 2)
    assert candidate.x1 in sample.words and candidate.x2 in sample.words
