"""Breadth-first exploration of the subgroup generated by named elements.

Balls collect every product of at most r generators (inverses included
for non-involutive generators), deduplicated by canonical form.  Output
is deterministic: candidates are enumerated in lexicographic word order
level by level, so the recorded witness for an element is its shortest,
lexicographically least word.  Persisted files are byte-identical across
worker counts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .element import VnElement, compose, format_element, identity, invert, parse_element
from .errors import AlphabetMismatchError, FileFormatError
from .words import Alphabet

GenWord = tuple[str, ...]

_INVERSE_SUFFIX = "^-1"


@dataclass(frozen=True)
class GeneratorSet:
    """Named generators over one alphabet, ordered by name."""

    alphabet: Alphabet
    generators: tuple[tuple[str, VnElement], ...]

    @classmethod
    def from_dict(cls, named: dict[str, VnElement]) -> GeneratorSet:
        if not named:
            raise ValueError("at least one generator is required")
        items = sorted(named.items())
        alphabet = items[0][1].alphabet
        for name, g in items:
            if not name or any(ch.isspace() for ch in name) or "^" in name:
                raise ValueError(f"bad generator name {name!r}")
            if g.alphabet != alphabet:
                raise AlphabetMismatchError(f"generator {name} uses a different alphabet")
        return cls(alphabet, tuple(items))

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def element(self, name: str) -> VnElement:
        for key, g in self.generators:
            if key == name:
                return g
        raise KeyError(name)

    def tokens(self) -> tuple[tuple[str, VnElement], ...]:
        """Sorted (token, element) pairs, adding inverses where they differ."""
        out = []
        for name, g in self.generators:
            out.append((name, g))
            gi = invert(g)
            if gi != g:
                out.append((name + _INVERSE_SUFFIX, gi))
        return tuple(sorted(out))


def evaluate_word(gens: GeneratorSet, word: GenWord) -> VnElement:
    """Product of the named generators, leftmost factor outermost."""
    acc = identity(gens.alphabet)
    for token in word:
        if token.endswith(_INVERSE_SUFFIX):
            g = invert(gens.element(token[: -len(_INVERSE_SUFFIX)]))
        else:
            g = gens.element(token)
        acc = compose(acc, g)
    return acc


@dataclass(frozen=True)
class Ball:
    """All elements within a generator-word radius, with shortest witnesses.

    ``entries`` is in search order (by word length, then lexicographic);
    ``sizes[r]`` is the number of elements within radius r.  ``manifest``
    records the generator names and the element files they came from, as
    provenance only.
    """

    alphabet: Alphabet
    radius: int
    entries: tuple[tuple[GenWord, VnElement], ...]
    sizes: tuple[int, ...]
    truncated: bool
    manifest: tuple[tuple[str, str], ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def elements(self) -> dict[VnElement, GenWord]:
        return {g: w for w, g in self.entries}

    def word_for(self, g: VnElement) -> GenWord | None:
        for w, h in self.entries:
            if h == g:
                return w
        return None


def _expand_frontier(frontier, tokens, workers: int):
    """Candidate (word, element) pairs for the next level, in frontier order."""

    def expand(item):
        word, g = item
        return [(word + (tok,), compose(g, h)) for tok, h in tokens]

    if workers <= 1 or len(frontier) < 2:
        chunks = map(expand, frontier)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(expand, frontier))
    out = []
    for chunk in chunks:
        out.extend(chunk)
    return out


def grow_ball(
    gens: GeneratorSet,
    radius: int,
    cap: int = 10**6,
    workers: int = 1,
    manifest: tuple[tuple[str, str], ...] = (),
) -> Ball:
    """Deduplicated ball of the given radius, deterministically ordered.

    Stops early once the cap is reached, marking the ball truncated; the
    retained prefix of the enumeration is still deterministic.  Worker
    counts affect only how candidate products are computed, never the
    merged result.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    tokens = gens.tokens()
    ident = identity(gens.alphabet)
    entries: list[tuple[GenWord, VnElement]] = [((), ident)]
    seen = {ident}
    sizes = [1]
    frontier = [((), ident)]
    truncated = False
    for _ in range(radius):
        fresh: list[tuple[GenWord, VnElement]] = []
        if not truncated:
            for word, g in _expand_frontier(frontier, tokens, workers):
                if g in seen:
                    continue
                if len(seen) >= cap:
                    truncated = True
                    break
                seen.add(g)
                fresh.append((word, g))
        entries.extend(fresh)
        sizes.append(len(entries))
        frontier = fresh
    return Ball(
        gens.alphabet, radius, tuple(entries), tuple(sizes), truncated, tuple(manifest)
    )


def find_element(
    target: VnElement, gens: GeneratorSet, max_radius: int
) -> GenWord | None:
    """Shortest (then lexicographically least) word for the target, if any."""
    if target.alphabet != gens.alphabet:
        raise AlphabetMismatchError("target and generators use different alphabets")
    tokens = gens.tokens()
    ident = identity(gens.alphabet)
    if target == ident:
        return ()
    seen = {ident}
    frontier = [((), ident)]
    for _ in range(max_radius):
        fresh = []
        for word, g in _expand_frontier(frontier, tokens, 1):
            if g in seen:
                continue
            if g == target:
                return word
            seen.add(g)
            fresh.append((word, g))
        frontier = fresh
    return None


def save_ball(ball: Ball, path: str) -> None:
    """Write the ball file; see load_ball for the layout."""
    parts = [
        f"ball {ball.alphabet.degree} {ball.radius} {len(ball.entries)} "
        f"{1 if ball.truncated else 0}"
    ]
    parts.extend(f"gen {name} {src}" for name, src in sorted(ball.manifest))
    for word, g in ball.entries:
        parts.append("")
        parts.append(("word " + " ".join(word)) if word else "word")
        parts.append(format_element(g))
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def load_ball(path: str) -> Ball:
    """Parse a ball file back; a lossless inverse of save_ball.

    Layout: a header ``ball <n> <radius> <count> <truncated>``, optional
    ``gen <name> <file>`` provenance lines, then one block per element (a
    ``word`` line followed by the element's text form), blocks separated
    by blank lines.  Per-radius sizes are recomputed from word lengths.
    """
    with open(path) as fh:
        raw = fh.read()
    lines = raw.splitlines()
    if not lines:
        raise FileFormatError("empty ball file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "ball":
        raise FileFormatError(
            f"expected 'ball <n> <radius> <count> <truncated>', got {lines[0]!r}", 1
        )
    try:
        alphabet = Alphabet(int(head[1]))
        radius, count, trunc = int(head[2]), int(head[3]), int(head[4])
    except ValueError as exc:
        raise FileFormatError(str(exc), 1) from exc
    if trunc not in (0, 1):
        raise FileFormatError("truncated flag must be 0 or 1", 1)
    manifest = []
    pos = 1
    while pos < len(lines) and lines[pos].startswith("gen "):
        fields = lines[pos].split(maxsplit=2)
        if len(fields) != 3:
            raise FileFormatError(f"expected 'gen <name> <file>', got {lines[pos]!r}", pos + 1)
        manifest.append((fields[1], fields[2]))
        pos += 1
    entries: list[tuple[GenWord, VnElement]] = []
    while pos < len(lines):
        if not lines[pos].strip():
            pos += 1
            continue
        if lines[pos] != "word" and not lines[pos].startswith("word "):
            raise FileFormatError(f"expected a 'word' line, got {lines[pos]!r}", pos + 1)
        word = tuple(lines[pos].split()[1:])
        word_line = pos + 1
        if len(word) > radius:
            raise FileFormatError(f"word longer than the ball radius {radius}", word_line)
        pos += 1
        block = []
        while pos < len(lines) and lines[pos].strip():
            block.append(lines[pos])
            pos += 1
        try:
            g = parse_element("\n".join(block))
        except FileFormatError as exc:
            raise FileFormatError(
                f"bad element block for word at line {word_line}: {exc}", word_line
            ) from exc
        if g.alphabet != alphabet:
            raise FileFormatError("element degree differs from the header", word_line)
        entries.append((word, g))
    if len(entries) != count:
        raise FileFormatError(f"header says {count} elements, file has {len(entries)}")
    sizes = tuple(
        sum(1 for w, _ in entries if len(w) <= r) for r in range(radius + 1)
    )
    return Ball(alphabet, radius, tuple(entries), sizes, bool(trunc), tuple(manifest))


def load_generator_manifest(path: str) -> tuple[GeneratorSet, tuple[tuple[str, str], ...]]:
    """Read 'gen <name> <element-file>' lines into a generator set."""
    import os

    with open(path) as fh:
        lines = fh.read().splitlines()
    base_dir = os.path.dirname(os.path.abspath(path))
    named: dict[str, VnElement] = {}
    manifest = []
    for lineno, ln in enumerate(lines, start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        fields = ln.split(maxsplit=2)
        if len(fields) != 3 or fields[0] != "gen":
            raise FileFormatError(f"expected 'gen <name> <element-file>', got {ln!r}", lineno)
        name, src = fields[1], fields[2]
        if name in named:
            raise FileFormatError(f"duplicate generator name {name!r}", lineno)
        full = src if os.path.isabs(src) else os.path.join(base_dir, src)
        with open(full) as fh:
            named[name] = parse_element(fh.read())
        manifest.append((name, src))
    return GeneratorSet.from_dict(named), tuple(manifest)
