"""Named generators, embeddings, spinal elements, Sidon sets, planning."""

import random

import pytest

from conftest import W
from vncalc.constructions import (
    AlphaPlan,
    Permutation,
    SidonSet,
    base_involutions,
    default_base,
    dot,
    embed,
    is_sidon,
    load_alpha_plan,
    make_s_alpha,
    make_t,
    make_tau,
    plan_alpha,
    save_alpha_plan,
    sidon_generate,
    sigma_dot,
)
from vncalc.element import (
    apply_point,
    apply_word,
    commutator,
    compose,
    conjugate,
    format_element,
    identity,
    make_element,
    order_bounded,
    random_element,
    sign,
    support,
)
from vncalc.element import ConeKind
from vncalc.errors import InvolutionRequiredError, PlanInvariantError
from vncalc.words import Alphabet, PartitionSet, Word, point_normalize

A2 = Alphabet(2)
A3 = Alphabet(3)
A5 = Alphabet(5)


def order3_element(alphabet):
    """Cycles the cones 1.1 -> 1.2 -> 2 -> 1.1, fixing everything else."""
    table = {W("1.1"): W("1.2"), W("1.2"): W("2"), W("2"): W("1.1")}
    for i in range(3, alphabet.degree + 1):
        table[Word((1, i))] = Word((1, i))
        table[Word((i,))] = Word((i,))
    dom = PartitionSet.from_words(table, alphabet)
    return make_element(dom, [table[w] for w in dom.words])


# --- permutations and level-1 lifts ------------------------------------------


def test_permutation_from_cycles():
    p = Permutation.from_cycles([(1, 2)], 5)
    assert p.images == (2, 1, 3, 4, 5)
    assert p.parity() == -1
    assert Permutation.from_cycles([(1, 2, 3)], 3).parity() == 1


def test_permutation_rejects_bad_cycles():
    with pytest.raises(ValueError):
        Permutation.from_cycles([(1, 2), (2, 3)], 3)
    with pytest.raises(ValueError):
        Permutation.from_cycles([(0, 1)], 2)


def test_dot_of_swap_in_v5():
    g = dot(Permutation.from_cycles([(1, 2)], 5), A5)
    expected = {W("1"): W("2"), W("2"): W("1")}
    expected.update({Word((i,)): Word((i,)) for i in range(3, 6)})
    assert dict(g.pairs()) == expected


def test_dot_of_identity_is_identity():
    assert dot(Permutation.identity(4), Alphabet(4)) == identity(Alphabet(4))


def test_dot_sign_matches_permutation_parity():
    rng = random.Random(0)
    for _ in range(20):
        images = list(range(1, 6))
        rng.shuffle(images)
        p = Permutation(tuple(images))
        assert sign(dot(p, A5)) == p.parity()


# --- tau and t -----------------------------------------------------------------


def test_tau_table_v5():
    expected = {
        "1.1": "2", "1.2": "3", "1.3": "4", "1.4": "5", "1.5": "1.5",
        "2": "1.1", "3": "1.2", "4": "1.3", "5": "1.4",
    }
    assert {str(w): str(v) for w, v in make_tau(A5).pairs()} == expected


def test_tau_table_v2():
    expected = {"1.1": "2", "1.2": "1.2", "2": "1.1"}
    assert {str(w): str(v) for w, v in make_tau(A2).pairs()} == expected


def test_tau_is_involution_across_degrees():
    for n in range(2, 7):
        alphabet = Alphabet(n)
        assert order_bounded(make_tau(alphabet), 4) == 2
        assert order_bounded(sigma_dot(alphabet), 4) == 2


def test_t_moves_spine_words_up():
    rng = random.Random(1)
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        t = make_t(alphabet)
        for _ in range(20):
            tail = Word(tuple(rng.randint(1, n) for _ in range(rng.randint(1, 4))))
            assert apply_word(t, W("1.1") + tail) == W("1") + tail


def test_t_fixes_the_spine_point():
    for n in (2, 3):
        t = make_t(Alphabet(n))
        p = point_normalize(W("eps"), W("1"))
        assert apply_point(t, p) == p


def test_t_conjugation_pushes_embeddings_deeper():
    rng = random.Random(2)
    t = make_t(A2)
    for _ in range(10):
        gamma = random_element(A2, rng)
        assert conjugate(embed(W("1"), gamma), t) == embed(W("1.1"), gamma)


# --- embedding -------------------------------------------------------------------


def test_embed_swap_at_cone():
    g = embed(W("1"), sigma_dot(A2))
    assert {str(w): str(v) for w, v in g.pairs()} == {
        "1.1": "1.2", "1.2": "1.1", "2": "2",
    }


def test_embed_identity_is_identity():
    assert embed(W("1.2.1"), identity(A2)) == identity(A2)


def test_embed_at_empty_word_is_the_element():
    rng = random.Random(3)
    for _ in range(10):
        g = random_element(A2, rng)
        assert embed(W("eps"), g) == g


def test_embed_composes_cones():
    rng = random.Random(4)
    for _ in range(20):
        g = random_element(A2, rng, expansions=2)
        u = Word(tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 3))))
        v = Word(tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 3))))
        assert embed(u, embed(v, g)) == embed(u + v, g)


def test_embed_is_homomorphism_in_the_element():
    rng = random.Random(5)
    for _ in range(20):
        g, h = random_element(A3, rng), random_element(A3, rng)
        w = Word(tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 2))))
        assert embed(w, compose(g, h)) == compose(embed(w, g), embed(w, h))


def test_embed_support_stays_in_cone():
    rng = random.Random(6)
    for _ in range(20):
        g = random_element(A2, rng)
        w = W("1.2")
        for cone in support(embed(w, g)).cones:
            if not w.is_prefix_of(cone.word):
                assert cone.kind is ConeKind.FIXED


# --- spinal elements ---------------------------------------------------------------


def test_spinal_single_identity_entry():
    s = make_s_alpha([identity(A3)])
    assert s == embed(W("1.1"), sigma_dot(A3))
    expected = {
        "1.1.1": "1.1.2", "1.1.2": "1.1.1", "1.1.3": "1.1.3",
        "1.2": "1.2", "1.3": "1.3", "2": "2", "3": "3",
    }
    assert {str(w): str(v) for w, v in s.pairs()} == expected


def test_spinal_empty_sequence():
    s = make_s_alpha([], A2)
    assert s == embed(W("1"), sigma_dot(A2))


def test_spinal_involution_with_involutive_entries():
    for n in (2, 3):
        alphabet = Alphabet(n)
        plan = plan_alpha(default_base(alphabet, 2))
        assert order_bounded(make_s_alpha(plan), 4) == 2


def test_spinal_not_involution_with_order3_entry():
    for n in (2, 3):
        alphabet = Alphabet(n)
        bad = order3_element(alphabet)
        assert order_bounded(bad, 4) == 3
        s = make_s_alpha([bad, identity(alphabet)])
        assert order_bounded(s, 2) is None
        assert order_bounded(s, 8) == 6


def test_spinal_constructors_agree_on_random_sequences():
    # make_s_alpha cross-checks its two constructions internally; drive it
    # over random involutive sequences so a disagreement would raise.
    rng = random.Random(7)
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        pool = default_base(alphabet, 3) + [identity(alphabet)]
        for _ in range(17):
            ell = rng.randint(0, 6)
            alpha = [rng.choice(pool) for _ in range(ell)]
            s = make_s_alpha(alpha, alphabet)
            assert apply_word(s, Word((1,) * (ell + 1) + (1,))) == Word(
                (1,) * (ell + 1) + (2,)
            )


# --- Sidon sets ----------------------------------------------------------------------


def test_is_sidon_examples():
    assert is_sidon({2, 4, 8, 16})
    assert not is_sidon({1, 2, 3})
    assert is_sidon(set())
    assert is_sidon({5})


def test_sidon_powers_of_two():
    assert sidon_generate(3, "powers-of-two").sorted_members == (2, 4, 8)


def test_sidon_greedy_matches_sum_oracle():
    # Independent oracle: distinct differences is the same as distinct
    # pairwise sums with repetition; grow greedily under the sum rule.
    chosen: list[int] = []
    sums: set[int] = set()
    candidate = 1
    while len(chosen) < 6:
        new_sums = {candidate + x for x in chosen} | {2 * candidate}
        if len(new_sums) == len(chosen) + 1 and not (new_sums & sums):
            chosen.append(candidate)
            sums |= new_sums
        candidate += 1
    assert tuple(chosen) == (1, 2, 4, 8, 13, 21)
    assert sidon_generate(4, "greedy").sorted_members == (1, 2, 4, 8)
    assert sidon_generate(6, "greedy").sorted_members == tuple(chosen)


def test_sidon_empty():
    assert sidon_generate(0).sorted_members == ()


def test_sidon_set_validates():
    with pytest.raises(ValueError):
        SidonSet(frozenset({1, 2, 3}))
    with pytest.raises(ValueError):
        SidonSet(frozenset({0, 3}))


# --- planning -------------------------------------------------------------------------


def test_plan_sizes_and_parameters():
    base = default_base(A2, 2)
    plan = plan_alpha(base)
    assert plan.support.sorted_members == (2, 3)
    assert plan.padding == 1
    assert plan.length == 5
    assert [g.is_identity() for g in plan.entries] == [True, False, False, True, True]


def test_plan_three_elements():
    plan = plan_alpha(default_base(A3, 3))
    assert plan.support.sorted_members == (4, 5, 7)
    assert plan.padding == 3
    assert plan.length == 11


def test_plan_single_element():
    plan = plan_alpha(default_base(A2, 1))
    assert plan.support.sorted_members == (1,)
    assert plan.padding == 0
    assert plan.length == 2
    assert plan.entries[1].is_identity()


def test_plan_rejects_higher_order_base():
    with pytest.raises(InvolutionRequiredError):
        plan_alpha([order3_element(A2)])


def test_plan_invariants_checked_on_raw_sequences():
    sig = sigma_dot(A2)
    seed = compose(embed(W("1"), sig), embed(W("2"), sig))
    with pytest.raises(PlanInvariantError):
        # Nontrivial entry in the top padding.
        AlphaPlan.from_entries([identity(A2), seed, seed])
    with pytest.raises(InvolutionRequiredError):
        AlphaPlan.from_entries([order3_element(A2), identity(A2)])


def test_plan_powers_of_two_strategy():
    plan = plan_alpha(default_base(A2, 2), strategy="powers-of-two")
    assert plan.support.sorted_members == (3, 5)
    assert plan.padding == 2
    assert plan.length == 8


# --- base involutions --------------------------------------------------------------------


def test_base_involutions_are_involutions():
    for n in (2, 3, 5):
        for g in base_involutions(Alphabet(n)):
            assert order_bounded(g, 2) == 2


def test_base_involutions_trivial_parity_for_odd_degree():
    for n in (3, 5):
        alphabet = Alphabet(n)
        sig = sigma_dot(alphabet)
        assert sign(embed(W("1"), sig)) == -1
        assert sign(embed(W("2"), sig)) == -1
        for g in base_involutions(alphabet):
            assert sign(g) == 1


def test_base_involutions_with_identity_conjugator_only():
    out = base_involutions(A2, conjugators=[identity(A2)])
    assert len(out) == 2
    seed, twisted = out
    assert not commutator(seed, twisted).is_identity()


def test_default_base_distinct():
    for n in (2, 3, 4, 5, 6):
        base = default_base(Alphabet(n), 3)
        assert len(set(base)) == 3
        assert all(not g.is_identity() for g in base)


# --- plan files ------------------------------------------------------------------------------


def test_plan_file_round_trip(tmp_path):
    base = default_base(A2, 2)
    plan = plan_alpha(base)
    paths = {}
    for k, g in zip(plan.support.sorted_members, base):
        p = tmp_path / f"base{k}.elt"
        p.write_text(format_element(g) + "\n")
        paths[k] = p.name
    plan_path = tmp_path / "plan.alpha"
    save_alpha_plan(plan, str(plan_path), paths)
    loaded = load_alpha_plan(str(plan_path))
    assert loaded == plan
    text = plan_path.read_text()
    assert text.splitlines()[0] == "alpha 2 5"


def test_plan_file_spells_out_support_lines(tmp_path):
    base = default_base(A2, 1)
    plan = plan_alpha(base)
    elt_path = tmp_path / "b.elt"
    elt_path.write_text(format_element(base[0]) + "\n")
    plan_path = tmp_path / "p.alpha"
    save_alpha_plan(plan, str(plan_path), {1: "b.elt"})
    assert plan_path.read_text() == "alpha 2 2\n1 @ b.elt\n"


def test_plan_file_rejects_duplicate_index(tmp_path):
    from vncalc.errors import FileFormatError

    base = default_base(A2, 1)
    (tmp_path / "b.elt").write_text(format_element(base[0]) + "\n")
    plan_path = tmp_path / "p.alpha"
    plan_path.write_text("alpha 2 3\n1 @ b.elt\n1 @ b.elt\n")
    with pytest.raises(FileFormatError) as info:
        load_alpha_plan(str(plan_path))
    assert "twice" in str(info.value)
