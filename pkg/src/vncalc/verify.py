"""Machine checks of the algebraic identities used by the constructions.

Every check compares canonical forms exactly; there is no tolerance and
no sampling inside a single check.  Failing reports carry both sides'
canonical tables for diffing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum

from .constructions import (
    AlphaPlan,
    default_base,
    embed,
    make_s_alpha,
    make_t,
    make_tau,
    plan_alpha,
    sigma_dot,
    spine_cone,
)
from .element import (
    VnElement,
    apply_word,
    canonicalize,
    commutator,
    compose,
    conjugate,
    identity,
    is_volume_preserving,
    power,
    random_element,
    sign,
)
from .errors import NotVolumePreservingError
from .words import Alphabet, PartitionSet, Word

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


@dataclass(frozen=True)
class VerificationReport:
    name: str
    params: str
    verdict: str
    lhs: VnElement | None = None
    rhs: VnElement | None = None
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def verdict_text(self) -> str:
        if self.verdict == SKIP and self.reason:
            return f"SKIP({self.reason})"
        return self.verdict

    def line(self) -> str:
        return f"{self.name} {self.params} {self.verdict_text()}"


def _compare(name: str, params: str, lhs: VnElement, rhs: VnElement) -> VerificationReport:
    if lhs == rhs:
        return VerificationReport(name, params, PASS)
    return VerificationReport(name, params, FAIL, lhs=lhs, rhs=rhs)


def _entries_of(alpha) -> tuple[tuple[VnElement, ...], Alphabet]:
    if isinstance(alpha, AlphaPlan):
        return alpha.entries, alpha.alphabet
    entries = tuple(alpha)
    if not entries:
        raise ValueError("empty sequences need an explicit alphabet; pass a plan")
    return entries, entries[0].alphabet


def verify_translation(gamma: VnElement, k: int) -> VerificationReport:
    """Conjugating a spine-embedded element by t pushes it one level deeper."""
    params = f"n={gamma.alphabet.degree} k={k}"
    if k < 1:
        return VerificationReport("translation", params, SKIP, reason="k must be >= 1")
    t = make_t(gamma.alphabet)
    lhs = conjugate(embed(spine_cone(k), gamma), t)
    rhs = embed(spine_cone(k + 1), gamma)
    return _compare("translation", params, lhs, rhs)


def _shifted_spinal(entries, alphabet: Alphabet, k: int) -> VnElement:
    """The product form of a spinal element with every cone pushed k deeper."""
    ell = len(entries)
    out = embed(spine_cone(ell + k + 1), sigma_dot(alphabet))
    for i, g in enumerate(entries, start=1):
        out = compose(out, embed(spine_cone(i + k).child(2), g))
    return out


def verify_s_alpha_conjugation(alpha, k: int) -> VerificationReport:
    """Conjugating a spinal element by t^k shifts all its cones k deeper."""
    entries, alphabet = _entries_of(alpha)
    params = f"n={alphabet.degree} ell={len(entries)} k={k}"
    if k < 0:
        return VerificationReport("shift-conjugation", params, SKIP, reason="k must be >= 0")
    s = make_s_alpha(entries, alphabet)
    lhs = conjugate(s, power(make_t(alphabet), k))
    rhs = _shifted_spinal(entries, alphabet, k)
    return _compare("shift-conjugation", params, lhs, rhs)


def verify_commutator_trick(alpha, k: int) -> VerificationReport:
    """Commutator of a spinal element with its t^k-conjugate, in product form.

    Requires the top k entries of the sequence to be trivial; otherwise
    the per-cone factorization below does not hold and the check reports
    a precondition violation instead of attempting it.
    """
    entries, alphabet = _entries_of(alpha)
    ell = len(entries)
    params = f"n={alphabet.degree} ell={ell} k={k}"
    if k < 0:
        return VerificationReport("commutator-product", params, SKIP, reason="k must be >= 0")
    bad = [i for i in range(max(ell - k + 1, 1), ell + 1) if not entries[i - 1].is_identity()]
    if bad:
        return VerificationReport(
            "commutator-product",
            params,
            SKIP,
            reason=f"entries {bad} in the top k positions are nontrivial",
        )
    s = make_s_alpha(entries, alphabet)
    sig = sigma_dot(alphabet)
    lhs = commutator(s, conjugate(s, power(make_t(alphabet), k)))
    rhs = embed(spine_cone(ell + 1), commutator(sig, embed(spine_cone(k), sig)))
    for i in range(k + 1, ell + 1):
        inner = commutator(entries[i - 1], entries[i - k - 1])
        rhs = compose(rhs, embed(spine_cone(i).child(2), inner))
    return _compare("commutator-product", params, lhs, rhs)


def verify_isolation(plan: AlphaPlan, i: int, j: int) -> VerificationReport:
    """A single pair of supported positions isolates in the commutator.

    For supported positions i < j the commutator of the spinal element
    with its t^(j-i)-conjugate splits into a volume-preserving factor deep
    on the spine times the single cone factor at position j; the unique
    difference property of the support kills every other cone term.  Also
    asserts the two right-hand factors commute (their cones are disjoint).
    """
    params = f"n={plan.alphabet.degree} ell={plan.length} i={i} j={j}"
    name = "isolation"
    members = plan.support.members
    if i not in members or j not in members:
        return VerificationReport(name, params, SKIP, reason="positions must be supported")
    if i >= j:
        return VerificationReport(name, params, SKIP, reason="need i < j")
    k = j - i
    sig = sigma_dot(plan.alphabet)
    s = make_s_alpha(plan)
    lhs = commutator(s, conjugate(s, power(make_t(plan.alphabet), k)))
    gamma = commutator(sig, embed(spine_cone(k), sig))
    deep = embed(spine_cone(plan.length + 1), gamma)
    cone = embed(spine_cone(j).child(2), commutator(plan.entry(j), plan.entry(i)))
    if not is_volume_preserving(gamma):
        return VerificationReport(
            name, params, FAIL, lhs=lhs, rhs=compose(deep, cone),
            reason="spine factor is not volume preserving",
        )
    if compose(deep, cone) != compose(cone, deep):
        return VerificationReport(
            name, params, FAIL, lhs=compose(deep, cone), rhs=compose(cone, deep),
            reason="right-hand factors do not commute",
        )
    return _compare(name, params, lhs, compose(deep, cone))


def in_maximal_subgroup(g: VnElement) -> bool:
    """Whether g permutes the level-1 cones.

    Equivalent to membership in the subgroup generated by the level-1
    permutation lifts together with all elements supported in single
    level-1 cones.  Holds iff the first letters of the canonical table
    realize a well-defined permutation of the alphabet.
    """
    if g.is_identity():
        return True
    first: dict[int, int] = {}
    for w, v in g.pairs():
        a, b = w.letters[0], v.letters[0]
        if first.setdefault(a, b) != b:
            return False
    return sorted(first.values()) == list(g.alphabet.letters)


@dataclass(frozen=True)
class FiniteClosure:
    order: int
    level: int
    elements: frozenset[VnElement]


def enumerate_en_group(gens, level: int | None = None) -> FiniteClosure:
    """Exact closure of volume-preserving generators.

    All generators are expanded to a common level and act there as
    permutations of the leaf words; the closure of those permutations is
    the generated group.  The order always divides (n^level)!.
    """
    gens = list(gens)
    alphabet = gens[0].alphabet if gens else None
    if alphabet is None:
        raise ValueError("at least one generator is required")
    for idx, g in enumerate(gens):
        if not is_volume_preserving(g):
            raise NotVolumePreservingError(f"generator {idx} is not volume preserving: {g}")
    depth = max(g.domain.max_depth() for g in gens)
    if level is not None:
        if level < depth:
            raise ValueError(f"level {level} is below the deepest generator table {depth}")
        depth = level
    leaves = PartitionSet.level(alphabet, depth).words
    index = {w: i for i, w in enumerate(leaves)}
    perms = {tuple(index[apply_word(g, w)] for w in leaves) for g in gens}
    ident = tuple(range(len(leaves)))
    closure = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in perms:
                r = tuple(p[x] for x in q)
                if r not in closure:
                    closure.add(r)
                    nxt.append(r)
        frontier = nxt
    assert math.factorial(len(leaves)) % len(closure) == 0
    elements = frozenset(
        canonicalize([(w, leaves[p[i]]) for i, w in enumerate(leaves)], alphabet)
        for p in closure
    )
    return FiniteClosure(len(closure), depth, elements)


class AbelianImage(Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "NonTrivial"


def abelianization_image(g: VnElement) -> AbelianImage:
    """Image of g in the abelianized group.

    For even degree the group is simple, so the image is always trivial;
    for odd degree the abelianization is detected by the parity map.
    """
    if g.alphabet.degree % 2 == 0:
        return AbelianImage.TRIVIAL
    return AbelianImage.NONTRIVIAL if sign(g) == -1 else AbelianImage.TRIVIAL


def verify_involution_suite(
    alphabet: Alphabet, alpha=None, base_sizes=(1, 2, 3)
) -> VerificationReport:
    """The three generators square to the identity.

    With no explicit sequence, spinal elements are built from planned
    sequences over deterministic involutive bases of the given sizes.
    Passing a sequence with a higher-order entry makes the spinal square
    nontrivial, which this reports as a failure.
    """
    params = f"n={alphabet.degree}"
    ident = identity(alphabet)
    checks = [sigma_dot(alphabet), make_tau(alphabet)]
    if alpha is not None:
        checks.append(make_s_alpha(alpha, alphabet))
    else:
        for size in base_sizes:
            plan = plan_alpha(default_base(alphabet, size))
            checks.append(make_s_alpha(plan))
    for g in checks:
        square = compose(g, g)
        if square != ident:
            return VerificationReport(
                "involutions", params, FAIL, lhs=square, rhs=ident
            )
    return VerificationReport("involutions", params, PASS)


# ---------------------------------------------------------------------------
# Parameter-grid suites; each returns one report per grid point.


def translation_suite(
    degrees=(2, 3, 5), k_values=range(1, 6), count: int = 200, seed: int = 0
) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        alphabet = Alphabet(n)
        rng = random.Random(seed)
        gammas = [sigma_dot(alphabet), identity(alphabet)]
        gammas += [random_element(alphabet, rng) for _ in range(count)]
        for idx, gamma in enumerate(gammas):
            for k in k_values:
                rep = verify_translation(gamma, k)
                reports.append(
                    VerificationReport(
                        rep.name, f"{rep.params} gamma#{idx}", rep.verdict,
                        rep.lhs, rep.rhs, rep.reason,
                    )
                )
    return reports


def _planned(alphabet: Alphabet, sizes=(1, 2, 3)) -> list[AlphaPlan]:
    return [plan_alpha(default_base(alphabet, size)) for size in sizes]


def conjugation_suite(degrees=(2, 3, 5), k_values=range(0, 6)) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        for plan in _planned(Alphabet(n)):
            for k in k_values:
                reports.append(verify_s_alpha_conjugation(plan, k))
    return reports


def commutator_suite(degrees=(2, 3, 5), k_values=range(0, 6)) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        for plan in _planned(Alphabet(n)):
            for k in k_values:
                reports.append(verify_commutator_trick(plan, k))
    return reports


def isolation_suite(degrees=(2, 3, 5)) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        for plan in _planned(Alphabet(n), sizes=(2, 3)):
            members = plan.support.sorted_members
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    reports.append(verify_isolation(plan, members[a], members[b]))
    return reports


def involution_suite(degrees=(2, 3, 4, 5, 6)) -> list[VerificationReport]:
    return [verify_involution_suite(Alphabet(n)) for n in degrees]


def maximal_suite(degrees=(2, 3, 5)) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        alphabet = Alphabet(n)
        sig, tau = sigma_dot(alphabet), make_tau(alphabet)
        cases = [
            ("sigma", sig, True),
            ("embed", embed(Word((1,)), tau), True),
            ("tau", tau, False),
            ("t", make_t(alphabet), False),
        ]
        for label, g, expected in cases:
            ok = in_maximal_subgroup(g) == expected
            reports.append(
                VerificationReport(
                    "maximal-membership", f"n={n} {label}", PASS if ok else FAIL
                )
            )
    return reports


def en_suite(degrees=(2, 3, 5)) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        alphabet = Alphabet(n)
        sig = sigma_dot(alphabet)
        ok = enumerate_en_group([sig]).order == 2
        reports.append(
            VerificationReport("finite-closure", f"n={n} swap-only", PASS if ok else FAIL)
        )
    alphabet = Alphabet(2)
    sig = sigma_dot(alphabet)
    pair = [sig, embed(Word((1,)), sig)]
    base = enumerate_en_group(pair)
    deeper = enumerate_en_group(pair, level=3)
    ok = base.order == 8 and deeper.order == 8
    reports.append(
        VerificationReport("finite-closure", "n=2 dihedral-pair", PASS if ok else FAIL)
    )
    return reports


def abelianization_suite(
    degrees=(2, 3, 4, 5), count: int = 100, seed: int = 0
) -> list[VerificationReport]:
    reports = []
    for n in degrees:
        alphabet = Alphabet(n)
        expected = AbelianImage.TRIVIAL if n % 2 == 0 else AbelianImage.NONTRIVIAL
        ok = abelianization_image(sigma_dot(alphabet)) == expected
        reports.append(
            VerificationReport("abelianization", f"n={n} swap", PASS if ok else FAIL)
        )
        rng = random.Random(seed)
        ok = True
        for _ in range(count):
            a, b = random_element(alphabet, rng), random_element(alphabet, rng)
            if abelianization_image(commutator(a, b)) != AbelianImage.TRIVIAL:
                ok = False
                break
        reports.append(
            VerificationReport(
                "abelianization", f"n={n} commutators x{count}", PASS if ok else FAIL
            )
        )
    return reports


SUITE_BUILDERS = {
    "eq2": lambda opts: translation_suite(
        opts["degrees"], range(1, opts["kmax"] + 1), opts["count"], opts["seed"]
    ),
    "eq3": lambda opts: conjugation_suite(opts["degrees"], range(0, opts["kmax"] + 1)),
    "trick": lambda opts: commutator_suite(opts["degrees"], range(0, opts["kmax"] + 1)),
    "isolation": lambda opts: isolation_suite(opts["degrees"]),
    "involutions": lambda opts: involution_suite(opts["degrees"]),
    "maximal": lambda opts: maximal_suite(opts["degrees"]),
    "en": lambda opts: en_suite(opts["degrees"]),
    "abelianization": lambda opts: abelianization_suite(
        opts["degrees"], opts["count"], opts["seed"]
    ),
}

SUITE_ALIASES = {"translation": "eq2", "shift": "eq3", "commutator": "trick"}


def run_suites(which: str, degrees, kmax: int = 5, count: int = 200, seed: int = 0):
    """All reports for one named suite, or for every suite with 'all'."""
    opts = {"degrees": tuple(degrees), "kmax": kmax, "count": count, "seed": seed}
    which = SUITE_ALIASES.get(which, which)
    if which == "all":
        out = []
        for name in SUITE_BUILDERS:
            out.extend(SUITE_BUILDERS[name](opts))
        return out
    if which not in SUITE_BUILDERS:
        raise ValueError(f"unknown suite {which!r}")
    return SUITE_BUILDERS[which](opts)
