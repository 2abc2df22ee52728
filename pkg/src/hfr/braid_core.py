"""Braid words, their closures, and the word surgeries used by skein arguments.

Letters follow the usual Artin convention: ``+i`` is the generator sigma_i
(strand ``i`` crosses strand ``i+1``, a positive crossing once the closure is
oriented along the braid) and ``-i`` is its inverse.  Strand positions are
1-based in letters and 0-based everywhere else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Literal

from hfr.errors import BraidInputError, DisconnectedSurfaceError

_TOKEN_SPLIT = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise BraidInputError(f"strand count must be positive, got {self.strands}")
        for x in self.letters:
            if x == 0:
                raise BraidInputError("letter must be nonzero")
            if abs(x) >= self.strands:
                raise BraidInputError(
                    f"letter {x} needs at least {abs(x) + 1} strands, have {self.strands}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.letters)

    def generators_used(self) -> frozenset[int]:
        return frozenset(abs(x) for x in self.letters)

    def is_connected(self) -> bool:
        """True when every generator index occurs, i.e. the Seifert surface is connected."""
        return self.generators_used() == frozenset(range(1, self.strands))

    def to_dict(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse comma or whitespace separated signed integers into a braid word.

    Without an explicit strand count the minimal one, ``max|letter| + 1``, is used.
    """
    tokens = [t for t in _TOKEN_SPLIT.split(text.strip()) if t]
    letters = []
    for tok in tokens:
        try:
            value = int(tok)
        except ValueError:
            raise BraidInputError(f"not an integer: {tok!r}") from None
        if value == 0:
            raise BraidInputError(f"letter must be nonzero (token {tok!r})")
        letters.append(value)
    if strands is None:
        if not letters:
            raise BraidInputError("empty braid text needs an explicit strand count")
        strands = max(abs(x) for x in letters) + 1
    for x in letters:
        if abs(x) >= strands:
            raise BraidInputError(f"letter {x} out of range for {strands} strands")
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class ComponentStructure:
    """Closure components.  ``assignment[s]`` is the 0-based component of strand ``s``.

    Components are numbered by their lowest strand, so component 0 contains strand 0.
    """

    count: int
    assignment: tuple[int, ...]

    def lowest_strand(self, component: int) -> int:
        return self.assignment.index(component)


def closure_permutation(b: BraidWord) -> tuple[int, ...]:
    """Map each starting strand position to its position after reading the whole word."""
    pos = list(range(b.strands))
    for x in b.letters:
        i = abs(x) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    # pos[p] is the strand now at position p; invert
    out = [0] * b.strands
    for p, s in enumerate(pos):
        out[s] = p
    return tuple(out)


def closure_components(b: BraidWord) -> ComponentStructure:
    perm = closure_permutation(b)
    assignment = [-1] * b.strands
    count = 0
    for start in range(b.strands):
        if assignment[start] >= 0:
            continue
        s = start
        while assignment[s] < 0:
            assignment[s] = count
            s = perm[s]
        count += 1
    return ComponentStructure(count, tuple(assignment))


@dataclass(frozen=True)
class SeifertData:
    circles: int
    bands: int
    first_betti: int
    components: int
    genus: int


def require_connected(b: BraidWord) -> None:
    if not b.is_connected():
        missing = sorted(set(range(1, b.strands)) - b.generators_used())
        raise DisconnectedSurfaceError(
            f"generator(s) {missing} never occur, so the Seifert surface is disconnected; "
            "Markov-destabilize or reindex the braid"
        )


def seifert_data(b: BraidWord) -> SeifertData:
    require_connected(b)
    l = closure_components(b).count
    betti = len(b.letters) - b.strands + 1
    return SeifertData(b.strands, len(b.letters), betti, l, (betti - l + 1) // 2)


def resolve_crossing(
    b: BraidWord, index: int, mode: Literal["flip", "smooth"]
) -> BraidWord:
    """Crossing change (``flip``) or oriented smoothing (``smooth``) at a letter."""
    if not 0 <= index < len(b.letters):
        raise IndexError(f"crossing index {index} out of range 0..{len(b.letters) - 1}")
    w = list(b.letters)
    if mode == "flip":
        w[index] = -w[index]
    elif mode == "smooth":
        del w[index]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return BraidWord(b.strands, tuple(w))


def rotate(b: BraidWord, shift: int) -> BraidWord:
    """Cyclic permutation of the letters; the closure is unchanged."""
    if not b.letters:
        return b
    k = shift % len(b.letters)
    return BraidWord(b.strands, b.letters[k:] + b.letters[:k])


def insert_cancelling_pair(b: BraidWord, position: int, letter: int) -> BraidWord:
    w = list(b.letters)
    w[position:position] = [letter, -letter]
    return BraidWord(b.strands, tuple(w))


def normalize_last_crossing(b: BraidWord, index: int) -> BraidWord:
    """Rewrite so the chosen crossing is the final letter and its generator occurs earlier.

    Smoothing the final letter of the result never disconnects the Seifert surface.
    """
    if not 0 <= index < len(b.letters):
        raise IndexError(f"crossing index {index} out of range 0..{len(b.letters) - 1}")
    r = rotate(b, index + 1)
    x = r.letters[-1]
    if any(abs(y) == abs(x) for y in r.letters[:-1]):
        return r
    return insert_cancelling_pair(r, len(r.letters) - 1, x)


def reverse(b: BraidWord) -> BraidWord:
    """Braid whose closure is the closure of ``b`` with every component reversed."""
    return BraidWord(b.strands, tuple(reversed(b.letters)))


def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple(-x for x in b.letters))


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: add a strand and the letter ``±(n)`` at the end."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def from_letters(letters: Iterable[int], strands: int | None = None) -> BraidWord:
    letters = tuple(letters)
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, letters)
