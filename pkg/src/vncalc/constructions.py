"""Named elements and generating data for V_n.

Provides the level-1 permutation lifts, the involution tau, the spine
translation t = sigma_dot * tau, cone embeddings, spinal elements built
from a sequence of cone contents, Sidon sets, and the planner that pads a
list of involutions into a spinal sequence whose support has the unique
difference property.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import (
    AlphabetMismatchError,
    ConstructionFailedError,
    FileFormatError,
    InvolutionRequiredError,
    PlanInvariantError,
)
from .element import (
    VnElement,
    canonicalize,
    commutator,
    compose,
    conjugate,
    identity,
    order_bounded,
    parse_element,
    power,
)
from .words import Alphabet, Word, check_letters, repeat_letter


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; images[i-1] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for x in cycle:
                if not 1 <= x <= n:
                    raise ValueError(f"cycle entry {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"cycles are not disjoint at {x}")
                seen.add(x)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def parity(self) -> int:
        seen = [False] * self.degree
        out = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                out = -out
        return out


def dot(p: Permutation, alphabet: Alphabet) -> VnElement:
    """Lift a permutation of the alphabet to the level-1 cones."""
    if p.degree != alphabet.degree:
        raise AlphabetMismatchError(
            f"permutation degree {p.degree} vs alphabet degree {alphabet.degree}"
        )
    pairs = [(Word((i,)), Word((p(i),))) for i in alphabet.letters]
    return canonicalize(pairs, alphabet)


def sigma_dot(alphabet: Alphabet) -> VnElement:
    """The lift of the transposition (1 2), fixed throughout as sigma."""
    return dot(Permutation.from_cycles([(1, 2)], alphabet.degree), alphabet)


def make_tau(alphabet: Alphabet) -> VnElement:
    """The involution swapping the cone at 1.i with the cone at i+1.

    Runs over 1 <= i < n; the leftover cone at 1.n is fixed pointwise.
    """
    n = alphabet.degree
    pairs = []
    for i in range(1, n):
        pairs.append((Word((1, i)), Word((i + 1,))))
        pairs.append((Word((i + 1,)), Word((1, i))))
    pairs.append((Word((1, n)), Word((1, n))))
    return canonicalize(pairs, alphabet)


def make_t(alphabet: Alphabet) -> VnElement:
    """sigma * tau: translates one step along the spine 1.1.1..."""
    return compose(sigma_dot(alphabet), make_tau(alphabet))


def embed(w: Word, g: VnElement) -> VnElement:
    """The element acting as g inside the cone at w and trivially elsewhere."""
    check_letters(w, g.alphabet)
    pairs = [(w + u, w + v) for u, v in g.pairs()]
    for k in range(len(w)):
        for b in g.alphabet.letters:
            if b != w.letters[k]:
                sibling = w.take(k).child(b)
                pairs.append((sibling, sibling))
    return canonicalize(pairs, g.alphabet)


def spine_cone(k: int) -> Word:
    """The word 1^k."""
    return repeat_letter(1, k)


def _spinal_from_product(entries, alphabet: Alphabet) -> VnElement:
    ell = len(entries)
    out = embed(spine_cone(ell + 1), sigma_dot(alphabet))
    for k, g in enumerate(entries, start=1):
        out = compose(out, embed(spine_cone(k).child(2), g))
    return out


def _spinal_from_cases(entries, alphabet: Alphabet) -> VnElement:
    ell = len(entries)
    n = alphabet.degree
    pairs = []
    for i in range(2, n + 1):
        pairs.append((Word((i,)), Word((i,))))
    for k, g in enumerate(entries, start=1):
        cone = spine_cone(k).child(2)
        pairs.extend((cone + u, cone + v) for u, v in g.pairs())
        for i in range(3, n + 1):
            side = spine_cone(k).child(i)
            pairs.append((side, side))
    deep = spine_cone(ell + 1)
    swap = {1: 2, 2: 1}
    for i in alphabet.letters:
        pairs.append((deep.child(i), deep.child(swap.get(i, i))))
    return canonicalize(pairs, alphabet)


def make_s_alpha(alpha, alphabet: Alphabet | None = None) -> VnElement:
    """Spinal element for a sequence of cone contents.

    Entry k acts inside the cone at 1^k.2; the swap of the two deepest
    spine children caps the construction at depth len(alpha)+1.  Built as
    a product of embeddings and cross-checked against an independent
    case-by-case table; the two must agree exactly.
    """
    if isinstance(alpha, AlphaPlan):
        entries, alphabet = alpha.entries, alpha.alphabet
    else:
        entries = tuple(alpha)
        if entries:
            alphabet = entries[0].alphabet
        elif alphabet is None:
            raise ValueError("an alphabet is required for the empty sequence")
    for g in entries:
        if g.alphabet != alphabet:
            raise AlphabetMismatchError("sequence entries use mixed alphabets")
    via_product = _spinal_from_product(entries, alphabet)
    via_cases = _spinal_from_cases(entries, alphabet)
    if via_product != via_cases:
        raise ConstructionFailedError(
            "spinal constructors disagree: "
            f"product gave {via_product} but cases gave {via_cases}"
        )
    return via_product


def is_sidon(members) -> bool:
    """True iff all pairwise differences are distinct."""
    xs = sorted(set(members))
    diffs = [b - a for i, a in enumerate(xs) for b in xs[i + 1 :]]
    return len(diffs) == len(set(diffs))


@dataclass(frozen=True)
class SidonSet:
    """A finite set of positive integers with all pairwise differences distinct."""

    members: frozenset[int]

    def __post_init__(self):
        for x in self.members:
            if not isinstance(x, int) or x < 1:
                raise ValueError(f"members must be positive integers, got {x!r}")
        if not is_sidon(self.members):
            raise ValueError(f"pairwise differences collide in {sorted(self.members)}")

    @property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def max_difference(self) -> int:
        xs = self.sorted_members
        return xs[-1] - xs[0] if len(xs) > 1 else 0

    def shift(self, offset: int) -> SidonSet:
        return SidonSet(frozenset(x + offset for x in self.members))


def sidon_generate(count: int, strategy: str = "greedy") -> SidonSet:
    """A Sidon set of the requested size.

    ``powers-of-two`` returns {2, 4, .., 2^count}; ``greedy`` extends
    from 1 by always taking the least integer that keeps all pairwise
    differences distinct (the Mian-Chowla rule: 1, 2, 4, 8, 13, ...).
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if strategy == "powers-of-two":
        return SidonSet(frozenset(2**i for i in range(1, count + 1)))
    if strategy != "greedy":
        raise ValueError(f"unknown strategy {strategy!r}")
    members: list[int] = []
    candidate = 1
    while len(members) < count:
        if is_sidon(members + [candidate]):
            members.append(candidate)
        candidate += 1
    return SidonSet(frozenset(members))


@dataclass(frozen=True)
class AlphaPlan:
    """A spinal sequence whose nontrivial positions form a Sidon set.

    Checked on construction: every entry has order at most 2, the support
    has the unique difference property, all positions up to the padding
    width are trivial, and so are the last padding-width+1 positions.
    Whether the entries generate anything in particular is deliberately
    not (and cannot be) checked here.
    """

    alphabet: Alphabet
    entries: tuple[VnElement, ...]
    support: SidonSet
    padding: int
    top: int

    @classmethod
    def from_entries(cls, entries, alphabet: Alphabet | None = None) -> AlphaPlan:
        entries = tuple(entries)
        if entries:
            alphabet = entries[0].alphabet
        elif alphabet is None:
            raise ValueError("an alphabet is required for the empty sequence")
        ell = len(entries)
        for k, g in enumerate(entries, start=1):
            if g.alphabet != alphabet:
                raise AlphabetMismatchError("entries use mixed alphabets")
            if order_bounded(g, 2) is None:
                raise InvolutionRequiredError(f"entry {k} has order > 2")
        idx = [k for k, g in enumerate(entries, start=1) if not g.is_identity()]
        try:
            support = SidonSet(frozenset(idx))
        except ValueError as exc:
            raise PlanInvariantError(str(exc)) from exc
        padding = support.max_difference()
        top = max(idx) if idx else 0
        for k in range(1, min(padding, ell) + 1):
            if not entries[k - 1].is_identity():
                raise PlanInvariantError(
                    f"entry {k} must be trivial below the padding width {padding}"
                )
        for i in range(0, padding + 1):
            k = ell - i
            if 1 <= k <= ell and not entries[k - 1].is_identity():
                raise PlanInvariantError(
                    f"entry {k} must be trivial within the top padding"
                )
        return cls(alphabet, entries, support, padding, top)

    @property
    def length(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> VnElement:
        return self.entries[k - 1]


def plan_alpha(base, strategy: str = "greedy") -> AlphaPlan:
    """Pad a list of involutions into a valid spinal sequence.

    A Sidon set of size len(base) is generated, then shifted up until its
    minimum exceeds its own largest pairwise difference (shifting keeps
    the differences, so one pass settles it).  The sequence length is
    max(support) + padding + 1, placing base elements on the support in
    order and identities elsewhere.
    """
    base = list(base)
    if not base:
        raise ValueError("base must be nonempty")
    alphabet = base[0].alphabet
    for k, g in enumerate(base, start=1):
        if g.alphabet != alphabet:
            raise AlphabetMismatchError("base elements use mixed alphabets")
        if order_bounded(g, 2) is None:
            raise InvolutionRequiredError(f"base element {k} has order > 2")
    support = sidon_generate(len(base), strategy)
    while support.members and min(support.members) <= support.max_difference():
        support = support.shift(support.max_difference() - min(support.members) + 1)
    padding = support.max_difference()
    top = max(support.members)
    ell = top + padding + 1
    entries = [identity(alphabet)] * ell
    for g, k in zip(base, support.sorted_members):
        entries[k - 1] = g
    return AlphaPlan.from_entries(entries, alphabet)


def base_involutions(
    alphabet: Alphabet,
    conjugators: list[VnElement] | None = None,
    twist_candidates: list[VnElement] | None = None,
) -> list[VnElement]:
    """Involutions obtained by conjugating a seed around the group.

    The seed is the product of the level-1 and level-2 cone copies of the
    basic swap, an involution of trivial parity.  A twisting element is
    picked as the first candidate whose conjugate of the seed fails to
    commute with it; the result collects the conjugates of the seed by
    every supplied conjugator, with and without the twist, deduplicated
    in first-seen order.
    """
    sig, tau = sigma_dot(alphabet), make_tau(alphabet)
    seed = compose(embed(Word((1,)), sig), embed(Word((2,)), sig))
    if conjugators is None:
        conjugators = _generator_words(alphabet, max_length=2)
    if twist_candidates is None:
        twist_candidates = _generator_words(alphabet, max_length=3)
    twist = None
    for c in twist_candidates:
        if not commutator(seed, conjugate(seed, c)).is_identity():
            twist = c
            break
    if twist is None:
        raise ConstructionFailedError(
            f"no twisting element among {len(twist_candidates)} candidates "
            "makes the seed conjugate noncommuting"
        )
    out: list[VnElement] = []
    for g in conjugators:
        for h in (g, compose(twist, g)):
            cand = conjugate(seed, h)
            if cand not in out:
                out.append(cand)
    return out


def _generator_words(alphabet: Alphabet, max_length: int) -> list[VnElement]:
    """Products of up to max_length factors from {sigma, tau}, deduplicated."""
    gens = [sigma_dot(alphabet), make_tau(alphabet)]
    seen = [identity(alphabet)]
    frontier = list(seen)
    for _ in range(max_length):
        nxt = []
        for g in frontier:
            for h in gens:
                cand = compose(g, h)
                if cand not in seen:
                    seen.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen


def default_base(alphabet: Alphabet, size: int) -> list[VnElement]:
    """A deterministic list of distinct nontrivial involutions."""
    pool = base_involutions(alphabet)
    if len(pool) < size:
        t = make_t(alphabet)
        seed = pool[0]
        k = 1
        while len(pool) < size:
            cand = conjugate(seed, power(t, k))
            if cand not in pool:
                pool.append(cand)
            k += 1
    return pool[:size]


def save_alpha_plan(plan: AlphaPlan, path: str, entry_paths: dict[int, str]) -> None:
    """Write a plan file: header, then one line per supported index.

    ``entry_paths`` maps each supported index to the element file recorded
    for it; unlisted indices are identity by convention.
    """
    missing = set(plan.support.members) - set(entry_paths)
    if missing:
        raise ValueError(f"no element file given for indices {sorted(missing)}")
    lines = [f"alpha {plan.alphabet.degree} {plan.length}"]
    for k in plan.support.sorted_members:
        lines.append(f"{k} @ {entry_paths[k]}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_alpha_plan(path: str) -> AlphaPlan:
    """Read a plan file; element paths resolve relative to the file."""
    with open(path) as fh:
        raw = fh.read()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise FileFormatError("empty plan file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "alpha":
        raise FileFormatError(f"expected 'alpha <degree> <length>', got {header!r}", lineno)
    try:
        alphabet, ell = Alphabet(int(parts[1])), int(parts[2])
    except ValueError as exc:
        raise FileFormatError(str(exc), lineno) from exc
    if ell < 0:
        raise FileFormatError("sequence length must be >= 0", lineno)
    entries = [identity(alphabet)] * ell
    base_dir = os.path.dirname(os.path.abspath(path))
    filled: set[int] = set()
    for lineno, ln in lines[1:]:
        if " @ " not in ln:
            raise FileFormatError(f"expected '<index> @ <element-file>', got {ln!r}", lineno)
        left, right = ln.split(" @ ", 1)
        try:
            k = int(left)
        except ValueError:
            raise FileFormatError(f"bad index {left!r}", lineno) from None
        if not 1 <= k <= ell:
            raise FileFormatError(f"index {k} outside 1..{ell}", lineno)
        if k in filled:
            raise FileFormatError(f"index {k} listed twice", lineno)
        filled.add(k)
        elt_path = right if os.path.isabs(right) else os.path.join(base_dir, right)
        with open(elt_path) as fh:
            g = parse_element(fh.read())
        if g.alphabet != alphabet:
            raise FileFormatError(
                f"element at index {k} has degree {g.alphabet.degree}, plan has "
                f"{alphabet.degree}",
                lineno,
            )
        entries[k - 1] = g
    return AlphaPlan.from_entries(entries, alphabet)
