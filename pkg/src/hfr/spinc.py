"""Spin^c bookkeeping through the presentation H_1 = coker(V + V^T).

Two generators lie in the same Spin^c structure exactly when the difference
of their defect vectors lies in the row lattice of ``V + V^T``.  Classes are
reported in Smith-normal-form coordinates: writing ``U A W = D``, a vector
``v`` has coordinates ``v W`` reduced modulo the invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from hfr.generators import Generator, GradedGenerator
from hfr.real_diagram import RealHeegaardDiagram

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, W)`` with ``U @ A @ W == D`` diagonal, ``d_i | d_{i+1}``, and
    ``U``, ``W`` unimodular."""
    D = [list(map(int, r)) for r in A]
    rows = len(D)
    cols = len(D[0]) if rows else 0
    U, W = _identity(rows), _identity(cols)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for M in (D, W):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, f: int) -> None:  # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, f: int) -> None:
        for M in (D, W):
            for r in M:
                r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(D[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                 if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, W


@dataclass(frozen=True)
class SpinCGroup:
    """``H_1`` of the double branched cover as a product of cyclic groups."""

    presentation: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]  # nonzero diagonal entries, 1s included
    rank: int
    column_transform: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        """Number of Spin^c structures when finite, else 0."""
        if self.rank:
            return 0
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def cyclic_factors(self) -> tuple[int, ...]:
        """Nontrivial torsion orders followed by a 0 for each free summand."""
        return tuple(d for d in self.invariant_factors if d != 1) + (0,) * self.rank

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of a defect difference: torsion part, then free part."""
        n = len(self.column_transform)
        w = [sum(v[i] * self.column_transform[i][j] for i in range(n)) for j in range(n)]
        diag = list(self.invariant_factors) + [0] * (n - len(self.invariant_factors))
        coords = []
        for x, d in zip(w, diag):
            if d == 1:
                continue
            coords.append(x % d if d else x)
        return tuple(coords)


def homology_presentation(V: Sequence[Sequence[int]]) -> SpinCGroup:
    n = len(V)
    A = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
    _, D, W = smith_normal_form(A)
    diag = [D[i][i] for i in range(n)]
    factors = tuple(d for d in diag if d)
    return SpinCGroup(
        presentation=tuple(tuple(r) for r in A),
        invariant_factors=factors,
        rank=n - len(factors),
        column_transform=tuple(tuple(r) for r in W),
    )


def generator_defect(d: RealHeegaardDiagram, x: Generator) -> list[int]:
    v = [0] * d.genus
    for cid in x.pairs:
        for j, a in enumerate(d.crossings[cid].defect):
            v[j] += a
    for _curve, pid in x.placements:
        for j, a in enumerate(d.c_points[pid].defect):
            v[j] += a
    return v


def difference_class(
    d: RealHeegaardDiagram, x: Generator, y: Generator, group: SpinCGroup | None = None
) -> tuple[int, ...]:
    group = group if group is not None else homology_presentation(d.seifert_matrix)
    vx, vy = generator_defect(d, x), generator_defect(d, y)
    return group.reduce([a - b for a, b in zip(vx, vy)])


def partition(
    d: RealHeegaardDiagram,
    gens: Iterable[GradedGenerator],
    group: SpinCGroup | None = None,
) -> dict[tuple[int, ...], list[GradedGenerator]]:
    """Group generators by Spin^c class, labelled relative to the first generator.

    Classes are returned sorted by label.
    """
    group = group if group is not None else homology_presentation(d.seifert_matrix)
    classes: dict[tuple[int, ...], list[GradedGenerator]] = {}
    base = None
    for gg in gens:
        v = generator_defect(d, gg.generator)
        if base is None:
            base = v
        label = group.reduce([a - b for a, b in zip(v, base)])
        classes.setdefault(label, []).append(gg)
    return dict(sorted(classes.items()))
