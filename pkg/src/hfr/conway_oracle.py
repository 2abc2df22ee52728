"""Independent Conway-polynomial oracle.

The Conway polynomial is computed by the skein relation
``C(L+) - C(L-) = z C(L0)`` with the descending-diagram strategy: walk the
closure component by component and switch the first crossing met from below.
A fully descending closure is an unlink, whose polynomial is 1 for one
component and 0 otherwise.  Each switch spawns a smoothing with one letter
fewer, so the recursion terminates.

Nothing here is shared with the diagram pipeline beyond the ``BraidWord``
container.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from hfr.braid_core import BraidWord
from hfr.errors import BudgetExceededError

DEFAULT_SKEIN_BUDGET = 2_000_000


@dataclass(frozen=True)
class ConwayPoly:
    """``coefficients[e]`` is the coefficient of ``z**e``; zero terms are dropped."""

    coefficients: dict[int, int] = field(default_factory=dict)
    components: int = 1

    def __post_init__(self) -> None:
        clean = {int(e): int(c) for e, c in self.coefficients.items() if c}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConwayPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def reduced_coefficients(self) -> dict[int, int]:
        """Map ``k -> a_k`` where the polynomial is ``sum a_k z**(l-1+2k)``."""
        shift = self.components - 1
        return {(e - shift) // 2: c for e, c in self.coefficients.items()}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for e, c in self.coefficients.items():
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _components_and_lowest(n: int, word: tuple[int, ...]) -> tuple[int, list[int]]:
    """Number of closure components and the lowest starting strand of each."""
    perm = list(range(n))
    for x in word:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    after = [0] * n
    for p, s in enumerate(perm):
        after[s] = p
    seen = [False] * n
    starts = []
    for s in range(n):
        if not seen[s]:
            starts.append(s)
            t = s
            while not seen[t]:
                seen[t] = True
                t = after[t]
    return len(starts), starts


def _canonical_rotation(word: tuple[int, ...]) -> tuple[int, ...]:
    if not word:
        return word
    return min(word[k:] + word[:k] for k in range(len(word)))


class _SkeinSolver:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.calls = 0
        self.memo: dict[tuple[int, tuple[int, ...]], dict[int, int]] = {}

    def solve(self, n: int, word: tuple[int, ...]) -> dict[int, int]:
        # Rotations have isotopic closures, so they share a cache entry.  The
        # recursion itself must run on ``word``: rotating moves the traversal
        # start and a switch could then undo an earlier one.
        key = (n, _canonical_rotation(word))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        if self.calls > self.budget:
            raise BudgetExceededError(
                f"skein recursion exceeded {self.budget} nodes; raise the budget"
            )
        result = self._solve(n, word)
        self.memo[key] = result
        return result

    def _solve(self, n: int, w: tuple[int, ...]) -> dict[int, int]:
        count, starts = _components_and_lowest(n, w)
        seen: set[int] = set()
        for start in starts:
            p = start
            while True:
                for k, x in enumerate(w):
                    i = abs(x) - 1
                    if p != i and p != i + 1:
                        continue
                    # for +i the strand moving right passes over
                    over = (p == i) == (x > 0)
                    if k not in seen:
                        seen.add(k)
                        if not over:
                            return self._switch(n, w, k)
                    p = i + 1 if p == i else i
                if p == start:
                    break
        return {0: 1} if count == 1 else {}

    def _switch(self, n: int, w: tuple[int, ...], k: int) -> dict[int, int]:
        x = w[k]
        switched = self.solve(n, w[:k] + (-x,) + w[k + 1 :])
        smoothed = self.solve(n, w[:k] + w[k + 1 :])
        sign = 1 if x > 0 else -1
        out = dict(switched)
        for e, c in smoothed.items():
            out[e + 1] = out.get(e + 1, 0) + sign * c
        return {e: c for e, c in out.items() if c}


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("HFR_SKEIN_BUDGET")
    return int(env) if env else DEFAULT_SKEIN_BUDGET


def conway(b: BraidWord, budget: int | None = None) -> ConwayPoly:
    solver = _SkeinSolver(_budget(budget))
    coeffs = solver.solve(b.strands, b.letters)
    count, _ = _components_and_lowest(b.strands, b.letters)
    return ConwayPoly(coeffs, count)


def chi_oracle(b: BraidWord, poly: ConwayPoly | None = None) -> int:
    """``2**(l-1) * Delta_L(i)``: evaluate ``sum a_k (-2)**k`` and scale."""
    poly = poly if poly is not None else conway(b)
    total = sum(c * (-2) ** k for k, c in poly.reduced_coefficients().items())
    return 2 ** (poly.components - 1) * total


def det_oracle(b: BraidWord, poly: ConwayPoly | None = None) -> int:
    """Link determinant ``|C(2i)|``, computed exactly over the Gaussian integers."""
    poly = poly if poly is not None else conway(b)
    re = im = 0
    for e, c in poly.coefficients.items():
        mag = c * 2**e
        phase = e % 4
        if phase == 0:
            re += mag
        elif phase == 1:
            im += mag
        elif phase == 2:
            re -= mag
        else:
            im -= mag
    # every exponent has the parity of l-1, so one part vanishes
    return abs(re) + abs(im)
