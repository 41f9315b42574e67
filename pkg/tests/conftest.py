"""Shared helpers and independent oracles used across the test modules.

The oracles here deliberately avoid the code paths they check: tree
walking instead of measure sums, brute-force enumeration instead of the
pairwise refinement rule, inversion counting instead of cycle parity, and
plain leaf-index permutation tuples instead of element arithmetic.
"""

from __future__ import annotations

import random
from itertools import product

from vncalc.words import Alphabet, PartitionSet, Word


def W(text: str) -> Word:
    return Word.parse(text)


def words(*texts: str) -> list[Word]:
    return [Word.parse(t) for t in texts]


def tree_complete_oracle(word_list, n: int) -> bool:
    """Trie check: every internal node has all n children, leaves are the words."""
    leaves = {w.letters for w in word_list}
    children: dict[tuple, set[int]] = {}
    for w in word_list:
        for k in range(len(w)):
            children.setdefault(w.letters[:k], set()).add(w.letters[k])
    stack = [()]
    while stack:
        node = stack.pop()
        if node in leaves:
            if children.get(node):
                return False
            continue
        kids = children.get(node, set())
        if kids != set(range(1, n + 1)):
            return False
        stack.extend(node + (i,) for i in kids)
    return True


def refine_oracle(a: PartitionSet, b: PartitionSet) -> set[Word]:
    """Minimal-depth words covered by both antichains, by brute force."""
    n = a.alphabet.degree
    top = max(a.max_depth(), b.max_depth())

    def covered(w: Word) -> bool:
        return any(u.is_prefix_of(w) for u in a.words) and any(
            u.is_prefix_of(w) for u in b.words
        )

    out = set()
    for depth in range(top + 1):
        for tup in product(range(1, n + 1), repeat=depth):
            w = Word(tup)
            if covered(w) and (depth == 0 or not covered(Word(tup[:-1]))):
                out.add(w)
    return out


def parity_by_inversions(perm: list[int]) -> int:
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def tuple_closure(perms: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Closure of index permutations under composition, no group arithmetic."""
    size = len(next(iter(perms)))
    ident = tuple(range(size))
    out = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for p in frontier:
            for q in perms:
                r = tuple(p[x] for x in q)
                if r not in out:
                    out.add(r)
                    fresh.append(r)
        frontier = fresh
    return out


def random_volume_preserving(alphabet: Alphabet, rng: random.Random):
    """A random element acting as a leaf permutation at depth 1 or 2."""
    from vncalc.element import canonicalize

    depth = rng.choice([1, 2])
    leaves = list(PartitionSet.level(alphabet, depth).words)
    shuffled = list(leaves)
    rng.shuffle(shuffled)
    return canonicalize(zip(leaves, shuffled), alphabet)
