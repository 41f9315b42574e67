"""Acceptance gate: one test per criterion, each printing a verdict line.

Every check is exact (canonical-form equality, integer counts); the only
tolerances are wall-clock budgets.  Run with ``pytest -s`` to see the
per-criterion verdict lines.
"""

import random
import time

from conftest import tuple_closure
from vncalc.constructions import (
    default_base,
    dot,
    embed,
    make_s_alpha,
    make_t,
    make_tau,
    plan_alpha,
    sigma_dot,
    Permutation,
)
from vncalc.element import (
    commutator,
    compose,
    identity,
    is_volume_preserving,
    order_bounded,
    random_element,
    sign,
    sign_refinement_probe,
    table_parity,
)
from vncalc.search import GeneratorSet, evaluate_word, find_element, grow_ball, save_ball
from vncalc.verify import (
    AbelianImage,
    abelianization_image,
    enumerate_en_group,
    in_maximal_subgroup,
    verify_commutator_trick,
    verify_isolation,
    verify_s_alpha_conjugation,
    verify_translation,
)
from vncalc.words import Alphabet, PartitionSet, Word


def report(number, label, failures, elapsed=None, budget=None):
    ok = not failures and (budget is None or elapsed < budget)
    timing = f" ({elapsed:.1f}s / {budget:.0f}s)" if budget is not None else ""
    print(f"acceptance {number} {label}: {'PASS' if ok else 'FAIL'}{timing}")
    assert not failures, f"criterion {number} ({label}): {failures[:5]}"
    if budget is not None:
        assert elapsed < budget, f"criterion {number} exceeded {budget}s: {elapsed:.1f}s"


def order3_element(alphabet):
    from vncalc.element import make_element

    table = {Word((1, 1)): Word((1, 2)), Word((1, 2)): Word((2,)), Word((2,)): Word((1, 1))}
    for i in range(3, alphabet.degree + 1):
        table[Word((1, i))] = Word((1, i))
        table[Word((i,))] = Word((i,))
    dom = PartitionSet.from_words(table, alphabet)
    return make_element(dom, [table[w] for w in dom.words])


def test_criterion_1_involutions():
    start = time.monotonic()
    failures = []
    for n in (2, 3, 4, 5, 6):
        alphabet = Alphabet(n)
        for g, label in [(sigma_dot(alphabet), "swap"), (make_tau(alphabet), "tau")]:
            if not compose(g, g).is_identity():
                failures.append(f"n={n} {label} square nontrivial")
        for size in (1, 2, 3):
            s = make_s_alpha(plan_alpha(default_base(alphabet, size)))
            if not compose(s, s).is_identity():
                failures.append(f"n={n} spinal size={size} square nontrivial")
        bad = order3_element(alphabet)
        if order_bounded(bad, 4) != 3:
            failures.append(f"n={n} order-3 probe element broken")
        s_bad = make_s_alpha([bad, identity(alphabet)])
        if compose(s_bad, s_bad).is_identity():
            failures.append(f"n={n} spinal with order-3 entry squared to identity")
    report(1, "involution-suite", failures, time.monotonic() - start, 5.0)


def test_criterion_2_translation():
    start = time.monotonic()
    failures = []
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        rng = random.Random(0)
        for idx in range(200):
            gamma = random_element(alphabet, rng, expansions=4, max_depth=4)
            for k in range(1, 6):
                if not verify_translation(gamma, k).passed:
                    failures.append(f"n={n} gamma#{idx} k={k}")
    report(2, "spine-translation", failures, time.monotonic() - start, 30.0)


def test_criterion_3_shift_and_commutator_grid():
    failures = []
    skips = 0
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        for size in (1, 2, 3):
            plan = plan_alpha(default_base(alphabet, size))
            for k in range(0, 6):
                shift = verify_s_alpha_conjugation(plan, k)
                if not shift.passed:
                    failures.append(f"shift n={n} size={size} k={k}: {shift.verdict}")
                trick = verify_commutator_trick(plan, k)
                if trick.failed:
                    failures.append(f"trick n={n} size={size} k={k}")
                if trick.verdict == "SKIP":
                    skips += 1
                    hypothesis_ok = all(
                        plan.entry(i).is_identity()
                        for i in range(max(plan.length - k + 1, 1), plan.length + 1)
                    )
                    if hypothesis_ok:
                        failures.append(f"spurious skip n={n} size={size} k={k}")
    if skips == 0:
        failures.append("grid never exercised the padding hypothesis")
    report(3, "shift-and-commutator-grid", failures)


def test_criterion_4_isolation():
    failures = []
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        sig = sigma_dot(alphabet)
        for size, expected_support in ((2, (2, 3)), (3, (4, 5, 7))):
            plan = plan_alpha(default_base(alphabet, size))
            if plan.support.sorted_members != expected_support:
                failures.append(f"n={n} size={size} unexpected support")
                continue
            members = plan.support.sorted_members
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    i, j = members[a], members[b]
                    rep = verify_isolation(plan, i, j)
                    if not rep.passed:
                        failures.append(f"n={n} pair=({i},{j}): {rep.verdict}")
                    gamma = commutator(sig, embed(Word((1,) * (j - i)), sig))
                    if not is_volume_preserving(gamma):
                        failures.append(f"n={n} pair=({i},{j}) gamma not volume preserving")
    report(4, "pair-isolation", failures)


def _expand_pairs(pairs, target, alphabet):
    out = []
    for w, v in pairs:
        if w == target:
            out.extend(
                (Word(w.letters + (i,)), Word(v.letters + (i,)))
                for i in alphabet.letters
            )
        else:
            out.append((w, v))
    return out


def test_criterion_5_parity():
    start = time.monotonic()
    failures = []
    for n in (3, 5):
        alphabet = Alphabet(n)
        rng = random.Random(0)
        elements = []
        for idx in range(500):
            g, h = random_element(alphabet, rng), random_element(alphabet, rng)
            if sign(compose(g, h)) != sign(g) * sign(h):
                failures.append(f"n={n} pair#{idx} not multiplicative")
            elements.extend((g, h))
        refine_rng = random.Random(1)
        for idx, g in enumerate(elements):
            base = sign(g)
            pairs = sorted(g.pairs())
            for _ in range(50):
                refined = list(pairs)
                for _ in range(refine_rng.randint(1, 3)):
                    target = refine_rng.choice(sorted(w for w, _ in refined))
                    refined = _expand_pairs(refined, target, alphabet)
                if table_parity(refined) != base:
                    failures.append(f"n={n} element#{idx} refinement changed parity")
                    break
    witness = sign_refinement_probe(sigma_dot(Alphabet(2)))
    if witness is None:
        failures.append("n=2 probe found no witness")
    else:
        if (witness.base_parity, witness.parity) != (-1, 1):
            failures.append("n=2 witness parities wrong")
        if [str(w) for w in witness.domain] != ["1.1", "1.2", "2"]:
            failures.append("n=2 witness domain unexpected")
        if [str(w) for w in witness.images] != ["2.1", "2.2", "1"]:
            failures.append("n=2 witness images unexpected")
    report(5, "parity-map", failures, time.monotonic() - start, 60.0)


def test_criterion_6_finite_closure():
    start = time.monotonic()
    failures = []
    a2 = Alphabet(2)
    sig = sigma_dot(a2)
    if enumerate_en_group([sig]).order != 2:
        failures.append("swap closure order != 2")
    pair = [sig, embed(Word((1,)), sig)]
    result = enumerate_en_group(pair)
    if result.order != 8:
        failures.append(f"pair closure order {result.order} != 8")
    # Independent oracle in plain index permutations: leaves 1.1, 1.2, 2.1,
    # 2.2 are 0..3; the swap is (0 2)(1 3), the nested swap is (0 1).
    oracle = tuple_closure({(2, 3, 0, 1), (1, 0, 2, 3)})
    if len(oracle) != 8:
        failures.append("tuple-permutation oracle disagrees")
    if enumerate_en_group(pair, level=3).order != 8:
        failures.append("closure order changed at level 3")
    report(6, "locally-finite-closure", failures, time.monotonic() - start, 5.0)


def test_criterion_7_maximal_membership():
    failures = []
    rng = random.Random(2)
    for n in (2, 3, 5):
        alphabet = Alphabet(n)
        inside = [
            ("swap", sigma_dot(alphabet)),
            ("lift", dot(Permutation.from_cycles([(1, 2), *(((3, n),) if n > 3 else ())], n), alphabet)),
            ("embed", embed(Word((1,)), random_element(alphabet, rng))),
            ("embed-deep", embed(Word((2, 1)), random_element(alphabet, rng))),
        ]
        for label, g in inside:
            if not in_maximal_subgroup(g):
                failures.append(f"n={n} {label} wrongly outside")
        for label, g in [("tau", make_tau(alphabet)), ("t", make_t(alphabet))]:
            if in_maximal_subgroup(g):
                failures.append(f"n={n} {label} wrongly inside")
    report(7, "maximal-membership", failures)


def test_criterion_8_search(tmp_path):
    start = time.monotonic()
    failures = []
    a2 = Alphabet(2)
    plan = plan_alpha(default_base(a2, 1))
    gens = GeneratorSet.from_dict(
        {"sigma": sigma_dot(a2), "tau": make_tau(a2), "s": make_s_alpha(plan)}
    )
    serial = grow_ball(gens, 6, cap=10**6, workers=1)
    parallel = grow_ball(gens, 6, cap=10**6, workers=4)
    p1, p2 = tmp_path / "serial.ball", tmp_path / "parallel.ball"
    save_ball(serial, str(p1))
    save_ball(parallel, str(p2))
    if p1.read_bytes() != p2.read_bytes():
        failures.append("worker counts changed the persisted ball")
    if serial.truncated:
        failures.append("ball unexpectedly truncated")
    for r in range(1, 7):
        if serial.sizes[r] <= serial.sizes[r - 1]:
            failures.append(f"ball stalled at radius {r}")
    for word, g in serial.entries:
        if evaluate_word(gens, word) != g:
            failures.append(f"word {' '.join(word)} does not evaluate to its element")
            break
    pair = GeneratorSet.from_dict({"sigma": sigma_dot(a2), "tau": make_tau(a2)})
    if find_element(make_t(a2), pair, 2) != ("sigma", "tau"):
        failures.append("shortest word for t not recovered")
    report(8, "ball-search", failures, time.monotonic() - start, 300.0)


def test_criterion_9_abelianization():
    failures = []
    swap = [(1, 2)]
    for n in (3, 5):
        alphabet = Alphabet(n)
        if abelianization_image(dot(Permutation.from_cycles(swap, n), alphabet)) is not AbelianImage.NONTRIVIAL:
            failures.append(f"n={n} swap image trivial")
        rng = random.Random(3)
        for idx in range(100):
            g = commutator(random_element(alphabet, rng), random_element(alphabet, rng))
            if abelianization_image(g) is not AbelianImage.TRIVIAL:
                failures.append(f"n={n} commutator#{idx} image nontrivial")
                break
    for n in (2, 4):
        alphabet = Alphabet(n)
        rng = random.Random(4)
        samples = [dot(Permutation.from_cycles(swap, n), alphabet)]
        samples += [random_element(alphabet, rng) for _ in range(100)]
        for idx, g in enumerate(samples):
            if abelianization_image(g) is not AbelianImage.TRIVIAL:
                failures.append(f"n={n} sample#{idx} image nontrivial")
                break
    report(9, "abelianization", failures)
