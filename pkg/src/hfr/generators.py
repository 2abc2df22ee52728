"""Generators of the real Floer complex and their absolute Z/2 gradings.

A generator picks, for every alpha curve, one point: either a crossing of its
projection with another curve's projection (which then uses up both curves,
since the crossing contributes the point and its mirror image) or one of the
curve's intersections with the link.  The sign of a generator is

    sgn(x) = eps(perm) * prod(crossing signs) * prod(c-point signs)

where ``perm`` lists each used crossing as (alpha curve, beta curve) followed
by the curves placed on the link, in the order their points occur along the
link components.  Grading 0 means sign +1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from hfr.errors import BudgetExceededError
from hfr.real_diagram import RealHeegaardDiagram

DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    env = os.environ.get("HFR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True, order=True)
class Generator:
    pairs: tuple[int, ...]  # crossing ids, ascending
    placements: tuple[tuple[int, int], ...]  # (curve, c-point id), ascending by curve

    @property
    def k(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class GradedGenerator:
    generator: Generator
    sign: int
    grading: int


def _matchings(d: RealHeegaardDiagram) -> list[tuple[int, ...]]:
    """All sets of crossings with pairwise disjoint curves, sorted by size then ids."""
    crossings = d.crossings
    out: list[tuple[int, ...]] = []

    def grow(start: int, used: frozenset[int], chosen: tuple[int, ...]) -> None:
        out.append(chosen)
        for cid in range(start, len(crossings)):
            a, b = crossings[cid].curves
            if a in used or b in used:
                continue
            grow(cid + 1, used | {a, b}, chosen + (cid,))

    grow(0, frozenset(), ())
    out.sort(key=lambda t: (len(t), t))
    return out


def iter_generators(d: RealHeegaardDiagram) -> Iterator[Generator]:
    """Generators in stratum order (number of crossings ascending), then lexicographic."""
    m = d.alpha_count
    choices = {i: sorted(c.id for c in d.c_points_on(i)) for i in range(m)}
    for matching in _matchings(d):
        used = set()
        for cid in matching:
            used.update(d.crossings[cid].curves)
        free = [i for i in range(m) if i not in used]
        for picks in product(*(choices[i] for i in free)):
            yield Generator(matching, tuple(zip(free, picks)))


def enumerate_generators(d: RealHeegaardDiagram, budget: int | None = None) -> list[Generator]:
    budget = default_budget() if budget is None else budget
    out = []
    for x in iter_generators(d):
        out.append(x)
        if len(out) > budget:
            raise BudgetExceededError(
                f"more than {budget} generators; raise --budget or HFR_BUDGET"
            )
    return out


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of a permutation of ``0..n-1`` given in one-line notation."""
    p = list(seq)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{seq!r} is not a permutation of 0..{len(p) - 1}")
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def link_order(d: RealHeegaardDiagram, x: Generator) -> list[int]:
    """The curves of ``x`` that sit on the link, in the order met along the link."""
    rank = {c: r for r, c in enumerate(d.component_order or range(d.components))}
    pts = sorted(
        (d.c_points[pid] for _curve, pid in x.placements),
        key=lambda c: (rank[c.component], c.position),
    )
    return [c.curve for c in pts]


def eps_perm(x: Generator, d: RealHeegaardDiagram) -> int:
    seq: list[int] = []
    for cid in x.pairs:
        seq.extend(d.crossings[cid].curves)
    seq.extend(link_order(d, x))
    return permutation_sign(seq)


def sign(x: Generator, d: RealHeegaardDiagram) -> int:
    s = eps_perm(x, d)
    for cid in x.pairs:
        s *= d.crossings[cid].sign
    for _curve, pid in x.placements:
        s *= d.c_points[pid].sign
    return s


def grading(x: Generator, d: RealHeegaardDiagram) -> int:
    return 0 if sign(x, d) == 1 else 1


def graded(d: RealHeegaardDiagram, budget: int | None = None) -> list[GradedGenerator]:
    out = []
    for x in enumerate_generators(d, budget):
        s = sign(x, d)
        out.append(GradedGenerator(x, s, 0 if s == 1 else 1))
    return out


def torus_sign_prefactor(g: int, perm: Sequence[int], local_signs: Sequence[int]) -> int:
    """Local intersection sign of two product tori at a point matching curve ``i``
    with curve ``perm[i]``: ``(-1)**(g(g-1)/2) * sgn(perm) * prod(local_signs)``."""
    if len(local_signs) != g or len(perm) != g:
        raise ValueError(f"expected {g} local signs and a permutation of size {g}")
    s = -1 if (g * (g - 1) // 2) % 2 else 1
    s *= permutation_sign(perm)
    for e in local_signs:
        s *= e
    return s
