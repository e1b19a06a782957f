import random

import pytest

from mealylab import zoo
from mealylab.automaton import disjoint_union, symmetrize
from mealylab.engine import canonicalize, identity_key
from mealylab.errors import (
    CapError,
    CompatibilityError,
    ConstructionError,
    ParseError,
    TableError,
)
from mealylab.quotient import (
    FiniteMarkedGroup,
    aut1_search,
    build_quotient_graph,
    descend_automorphism,
    format_marked_group,
    identity_automorphism,
    is_compatible,
    kernel_generators,
    parse_marked_group,
    verify_mns_instance,
)
from mealylab.words import SignedSymbol, parse_word, reduce_word


def parity():
    return FiniteMarkedGroup(("0", "1"), 2, {"0": (1, 0), "1": (1, 0)}, name="parity")


def lopsided():
    return FiniteMarkedGroup(("0", "1"), 2, {"0": (1, 0), "1": (0, 1)}, name="lopsided")


def cyclic3():
    return FiniteMarkedGroup(("0",), 3, {"0": (1, 2, 0)}, name="c3")


def trivial():
    return FiniteMarkedGroup(("0", "1"), 1, {"0": (0,), "1": (0,)}, name="trivial")


# -- marked groups -------------------------------------------------------------


def test_marking_validation():
    with pytest.raises(TableError, match="permutation"):
        FiniteMarkedGroup(("0",), 2, {"0": (0, 0)})
    with pytest.raises(TableError, match="transitive"):
        FiniteMarkedGroup(("0",), 2, {"0": (0, 1)})
    # S3 acting on 3 points: transitive but not regular
    with pytest.raises(TableError, match="regular|order"):
        FiniteMarkedGroup(("0", "1"), 3, {"0": (1, 2, 0), "1": (1, 0, 2)})


def test_walk_and_kernel():
    g = parity()
    assert g.walk(0, parse_word("0 1")) == 0
    assert g.walk(0, parse_word("0")) == 1
    assert g.in_kernel(parse_word("0 0"))
    assert g.in_kernel(parse_word("0 1^-1"))
    assert not g.in_kernel(parse_word("0"))


def test_kernel_generators_evaluate_to_identity():
    for group in (parity(), lopsided(), cyclic3(), trivial()):
        gens = kernel_generators(group)
        assert gens
        for gen in gens:
            assert group.permutation_of(gen) == tuple(range(group.order))
            assert gen == reduce_word(gen)


def test_kernel_generators_examples():
    assert kernel_generators(cyclic3()) == (parse_word("0 0 0"),)
    assert set(kernel_generators(trivial())) == {parse_word("0"), parse_word("1")}
    gens = set(kernel_generators(parity()))
    assert parse_word("0 0") in gens
    assert parse_word("1 0^-1") in gens or parse_word("0 1^-1") in gens


def test_kernel_generators_generate_the_kernel():
    # every short kernel word reduces to the identity in the quotient of
    # the generated subgroup: check by evaluating Schreier words closure
    group = parity()
    gens = kernel_generators(group)
    # the subgroup generated has index 2: its coset action on {0,1} under
    # evaluation must reach both vertices only via non-kernel prefixes
    for gen in gens:
        assert group.in_kernel(gen)
    # sanity: some even-length words are products of the returned set
    assert group.in_kernel(parse_word("1 1"))


# -- compatibility ----------------------------------------------------------------


def test_compat_examples(swap, identity2):
    from mealylab.rewriting import act_state_on_word

    assert is_compatible(swap, parity())
    report = is_compatible(swap, lopsided())
    assert not report
    assert report.state.base == "s"
    # the violating image really leaves the kernel
    image = act_state_on_word(swap, (report.state,), report.kernel_word)
    assert not lopsided().in_kernel(image)
    assert is_compatible(identity2, lopsided())
    assert is_compatible(identity2, parity())


def test_compat_alphabet_mismatch(swap):
    with pytest.raises(ConstructionError, match="alphabet mismatch"):
        is_compatible(swap, cyclic3())


def test_compat_rejects_drifting_residuals(aleshin):
    # every state image preserves the letter-count parity, but residuals of
    # kernel words land on other free generators, so conjugation does not
    # fix the kernel and descent would depend on coset representatives
    report = is_compatible(aleshin, parity())
    assert not report
    assert "residual" in report.reason


def test_union_preserves_compatibility(swap, identity2, toggle):
    group = parity()
    pool = [swap, identity2, toggle, disjoint_union(swap, identity2)]
    rng = random.Random(9)
    for _ in range(20):
        left, right = rng.choice(pool), rng.choice(pool)
        assert is_compatible(left, group) and is_compatible(right, group)
        assert is_compatible(disjoint_union(left, right), group)


# -- quotient graphs -----------------------------------------------------------------


def test_quotient_graph_trivial():
    graph = build_quotient_graph(trivial())
    assert graph.n == 1
    assert graph.edges == ((0, "0", 0), (0, "1", 0))


def test_quotient_graph_parity_has_parallel_edges():
    graph = build_quotient_graph(parity())
    assert graph.edges == (
        (0, "0", 1),
        (0, "1", 1),
        (1, "0", 0),
        (1, "1", 0),
    )
    assert graph.multiplicity(0, 1) == 2


def test_quotient_graph_c3_cycle():
    graph = build_quotient_graph(cyclic3())
    assert graph.edges == ((0, "0", 1), (1, "0", 2), (2, "0", 0))


def test_dot_output_is_deterministic():
    graph = build_quotient_graph(parity())
    dot = graph.to_dot()
    assert dot == graph.to_dot()
    assert '0 -> 1 [label="0"];' in dot
    assert dot.startswith("digraph parity {")


# -- automorphism search ----------------------------------------------------------


def test_aut1_counts():
    assert len(aut1_search(build_quotient_graph(trivial()))) == 2
    assert len(aut1_search(build_quotient_graph(cyclic3()))) == 1
    assert len(aut1_search(build_quotient_graph(parity()))) == 4


def test_aut1_elements_fix_vertex_zero_and_incidence():
    graph = build_quotient_graph(parity())
    for f in aut1_search(graph):
        assert f.vertex_map[0] == 0
        for v, a, w in graph.edges:
            v2, a2 = f.apply_edge(v, a)
            assert v2 == f.vertex_map[v]
            assert graph.target(v2, a2) == f.vertex_map[w]


def test_aut1_duplicate_free():
    graph = build_quotient_graph(parity())
    found = aut1_search(graph)
    assert len(set(found)) == len(found)


def test_aut1_cap():
    big = FiniteMarkedGroup(
        ("0",), 3, {"0": (1, 2, 0)}, name="c3"
    )
    with pytest.raises(CapError, match="cap 2"):
        aut1_search(build_quotient_graph(big), cap=2)


def test_aut1_closed_under_composition():
    graph = build_quotient_graph(parity())
    found = set(aut1_search(graph))
    for f in found:
        for g in found:
            assert f.compose(g) in found


# -- descent ----------------------------------------------------------------------


def test_descend_swap_swaps_parallel_edges(swap):
    f = descend_automorphism(swap, parity(), parse_word("s"))
    assert f.vertex_map == (0, 1)
    assert f.apply_edge(0, "0") == (0, "1")
    assert f.apply_edge(0, "1") == (0, "0")
    assert f.apply_edge(1, "0") == (1, "1")


def test_descend_identity_and_squares(swap, identity2):
    assert descend_automorphism(identity2, parity(), parse_word("e")).is_identity
    assert descend_automorphism(swap, parity(), parse_word("s s")).is_identity


def test_descend_is_homomorphism(swap, identity2, toggle):
    rng = random.Random(31)
    group = parity()
    for automaton in (swap, toggle, disjoint_union(swap, identity2)):
        states = [SignedSymbol(q, s) for q in automaton.states for s in (1, -1)]
        for _ in range(25):
            u = tuple(rng.choice(states) for _ in range(rng.randrange(4)))
            v = tuple(rng.choice(states) for _ in range(rng.randrange(4)))
            left = descend_automorphism(automaton, group, u + v)
            right = descend_automorphism(automaton, group, u).compose(
                descend_automorphism(automaton, group, v)
            )
            assert left == right


def test_descend_kernel_law(swap, toggle):
    # the descended automorphism is trivial iff the element acts trivially
    # on coset representatives deep enough to cover the graph
    group = parity()
    for automaton in (swap, toggle):
        words = [
            (),
            (SignedSymbol(automaton.states[0]),),
            (SignedSymbol(automaton.states[0]), SignedSymbol(automaton.states[0])),
        ]
        for word in words:
            descended = descend_automorphism(automaton, group, word)
            trivial_action = (
                canonicalize(automaton, word).key == identity_key(automaton)
            )
            if trivial_action:
                assert descended.is_identity
    # and a genuinely nontrivial action descends nontrivially here
    assert not descend_automorphism(swap, group, parse_word("s")).is_identity


def test_descend_incompatible_raises(swap):
    with pytest.raises(CompatibilityError, match="incompatible"):
        descend_automorphism(swap, lopsided(), parse_word("s"))


# -- instance verification ----------------------------------------------------------


def test_mns_swap_parity(swap):
    report = verify_mns_instance(swap, parity())
    assert report.aut1_count == 4
    assert report.subgroup_order == 2
    assert report.contained


def test_mns_identity_trivial(identity2):
    report = verify_mns_instance(identity2, trivial())
    assert report.subgroup_order == 1
    assert report.contained


def test_mns_union(swap, identity2):
    union = disjoint_union(swap, identity2)
    report = verify_mns_instance(union, parity())
    assert report.contained
    assert report.subgroup_order == 2


# -- text format ---------------------------------------------------------------------


def test_group_format_roundtrip():
    for group in (parity(), lopsided(), cyclic3(), trivial()):
        assert parse_marked_group(format_marked_group(group)) == group


def test_group_cycle_notation():
    text = "group c2\norder 2\ngen 0 (0 1)\ngen 1 (0 1)\n"
    assert parse_marked_group(text) == parity()


def test_group_parse_errors():
    with pytest.raises(ParseError, match="line 3"):
        parse_marked_group("group x\norder 2\ngen 0 1\n")
    with pytest.raises(ParseError, match="order"):
        parse_marked_group("group x\nsize 2\ngen 0 1 0\ngen 1 1 0\n")
    with pytest.raises(ParseError, match="cycle"):
        parse_marked_group("group x\norder 2\ngen 0 (0 1\ngen 1 1 0\n")
