"""Euler characteristics per Spin^c structure, and the checks run against them."""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from hfr import braid_core as bc
from hfr.braid_core import BraidWord
from hfr.compile_braid import compile_diagram
from hfr.conway_oracle import chi_oracle, conway, det_oracle
from hfr.generators import graded
from hfr.spinc import homology_presentation, partition


@dataclass(frozen=True)
class ClassChi:
    label: tuple[int, ...]
    chi: int
    even: int
    odd: int


@dataclass(frozen=True)
class ChiReport:
    braid: str
    strands: int
    components: int
    determinant: int
    group: tuple[int, ...]
    chi_tot: int
    per_class: tuple[ClassChi, ...]
    generator_count: int
    oracle_value: int | None
    name: str | None = None

    @property
    def oracle_match(self) -> bool:
        return self.oracle_value is not None and self.oracle_value == self.chi_tot

    @property
    def chi_values(self) -> list[int]:
        return sorted(c.chi for c in self.per_class)

    @property
    def nonzero_chi_values(self) -> list[int]:
        return [x for x in self.chi_values if x]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "braid": self.braid,
            "strands": self.strands,
            "components": self.components,
            "determinant": self.determinant,
            "group": list(self.group),
            "chi_tot": self.chi_tot,
            "oracle_value": self.oracle_value,
            "oracle_match": self.oracle_match,
            "generator_count": self.generator_count,
            "per_class": [
                {"label": list(c.label), "chi": c.chi, "even": c.even, "odd": c.odd}
                for c in self.per_class
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "braid", "class", "chi", "even", "odd"])
        for c in self.per_class:
            label = " ".join(str(x) for x in c.label)
            writer.writerow([self.name or "", self.braid, label, c.chi, c.even, c.odd])
        return buf.getvalue()

    def pretty(self) -> str:
        title = self.name or f"braid [{self.braid}]"
        group = " x ".join(f"Z/{d}" if d else "Z" for d in self.group) or "0"
        lines = [
            f"{title}: {self.strands} strands, {self.components} component(s)",
            f"  H_1 of double branched cover: {group}  (det {self.determinant})",
            f"  generators: {self.generator_count}",
            f"  chi_tot = {self.chi_tot}"
            + (
                f"  (oracle {self.oracle_value}, {'match' if self.oracle_match else 'MISMATCH'})"
                if self.oracle_value is not None
                else ""
            ),
            f"  per class: {[c.chi for c in self.per_class]}",
        ]
        return "\n".join(lines)


def chi_by_spinc(
    b: BraidWord,
    budget: int | None = None,
    component_order: Sequence[int] | None = None,
    name: str | None = None,
    oracle: bool = True,
) -> ChiReport:
    """Compile, enumerate, grade and partition; return per-class signed counts."""
    d = compile_diagram(b, component_order)
    gens = graded(d, budget)
    group = homology_presentation(d.seifert_matrix)
    classes = partition(d, gens, group)
    per_class = []
    for label, members in classes.items():
        even = sum(1 for g in members if g.grading == 0)
        odd = len(members) - even
        per_class.append(ClassChi(label, even - odd, even, odd))
    poly = conway(b) if oracle else None
    return ChiReport(
        braid=str(b),
        strands=b.strands,
        components=d.components,
        determinant=det_oracle(b, poly) if oracle else group.order,
        group=group.cyclic_factors,
        chi_tot=sum(c.chi for c in per_class),
        per_class=tuple(per_class),
        generator_count=len(gens),
        oracle_value=chi_oracle(b, poly) if oracle else None,
        name=name,
    )


def same_distribution(a: ChiReport, b: ChiReport) -> bool:
    """Whether two reports agree as functions Spin^c -> Z up to relabelling.

    With determinant 0 there are infinitely many Spin^c structures and a
    diagram realizes only finitely many, so how many zero-valued classes show
    up depends on the diagram; only the nonzero values are compared.
    """
    if a.determinant and b.determinant:
        return a.chi_values == b.chi_values
    return a.determinant == b.determinant and a.nonzero_chi_values == b.nonzero_chi_values


def _compare(a: ChiReport, b: ChiReport) -> str:
    if a.determinant:
        return f"{a.chi_values} vs {b.chi_values}"
    return f"det 0, nonzero {a.nonzero_chi_values} vs {b.nonzero_chi_values}"


# ---------------------------------------------------------------- checks


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class LinkVerification:
    report: ChiReport
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_link(b: BraidWord, budget: int | None = None, name: str | None = None) -> LinkVerification:
    rep = chi_by_spinc(b, budget, name=name)
    out = LinkVerification(rep)
    out.checks.append(
        CheckResult("oracle", rep.oracle_match, f"pipeline {rep.chi_tot}, oracle {rep.oracle_value}")
    )
    group_order = 0 if 0 in rep.group else _prod(rep.group)
    out.checks.append(
        CheckResult("group-order", group_order == rep.determinant,
                    f"|coker(V+V^T)| {group_order}, det {rep.determinant}")
    )
    if rep.determinant:
        out.checks.append(
            CheckResult("class-count", len(rep.per_class) == rep.determinant,
                        f"{len(rep.per_class)} classes realized, det {rep.determinant}")
        )
    total = sum(c.even + c.odd for c in rep.per_class)
    out.checks.append(
        CheckResult("rank-bound", abs(rep.chi_tot) <= total, f"|{rep.chi_tot}| <= {total}")
    )
    return out


def _prod(xs: Sequence[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass
class SkeinResult:
    words: tuple[str, str, str]  # L+, L-, L0
    components: tuple[int, int]  # |L+-|, |L0|
    chis: tuple[int, int, int]
    case: str
    ok: bool


def chi_total(b: BraidWord, budget: int | None = None) -> int:
    return chi_by_spinc(b, budget, oracle=False).chi_tot


def skein_check(b: BraidWord, index: int, budget: int | None = None) -> SkeinResult:
    """Check the skein relation at one crossing using only the diagram pipeline."""
    w = bc.normalize_last_crossing(b, index)
    last = len(w.letters) - 1
    x = abs(w.letters[last])
    plus = BraidWord(w.strands, w.letters[:last] + (x,))
    minus = BraidWord(w.strands, w.letters[:last] + (-x,))
    zero = bc.resolve_crossing(w, last, "smooth")
    cp, cm, c0 = (chi_total(v, budget) for v in (plus, minus, zero))
    lp = bc.closure_components(plus).count
    l0 = bc.closure_components(zero).count
    if lp == l0 + 1:
        case, ok = "split", cp - cm == 2 * c0
    else:
        case, ok = "merge", cp - cm == -c0
    return SkeinResult((str(plus), str(minus), str(zero)), (lp, l0), (cp, cm, c0), case, ok)


@dataclass
class InvarianceResult:
    braid: str
    label: str
    ok: bool
    detail: str = ""


def ordering_invariance_check(
    b: BraidWord, rng: random.Random | None = None, budget: int | None = None
) -> list[InvarianceResult]:
    """Compare per-class values under reordered components and global reversal."""
    rng = rng or random.Random(0)
    base = chi_by_spinc(b, budget)
    l = base.components
    results = []
    orders = list(itertools.permutations(range(l)))[1:]
    if len(orders) > 5:
        orders = rng.sample(orders, 5)
    for order in orders:
        rep = chi_by_spinc(b, budget, component_order=order)
        results.append(
            InvarianceResult(str(b), f"order {list(order)}", same_distribution(base, rep),
                             _compare(base, rep))
        )
    rb = bc.reverse(b)
    for order in (None, tuple(reversed(range(l)))):
        rep = chi_by_spinc(rb, budget, component_order=order)
        tag = "reverse" if order is None else "reverse+reorder"
        results.append(
            InvarianceResult(str(b), tag, same_distribution(base, rep),
                             _compare(base, rep))
        )
    return results


def stabilization_check(
    b: BraidWord, rng: random.Random | None = None, budget: int | None = None
) -> list[InvarianceResult]:
    """Compare per-class values under a cancelling-pair insertion and Markov moves."""
    rng = rng or random.Random(0)
    base = chi_by_spinc(b, budget)
    pos = rng.randint(0, len(b.letters))
    letter = rng.choice([-1, 1]) * rng.randint(1, b.strands - 1) if b.strands > 1 else None
    variants = []
    if letter is not None:
        variants.append((f"cancel {letter} at {pos}", bc.insert_cancelling_pair(b, pos, letter)))
    variants += [("stabilize +", bc.stabilize(b, 1)), ("stabilize -", bc.stabilize(b, -1))]
    out = []
    for tag, v in variants:
        rep = chi_by_spinc(v, budget)
        out.append(InvarianceResult(str(b), tag, same_distribution(base, rep),
                                    _compare(base, rep)))
    return out


def random_connected_braid(
    rng: random.Random, max_strands: int = 4, max_crossings: int = 8, min_strands: int = 2
) -> BraidWord:
    """Uniformly sampled letters, rejected until every generator occurs."""
    while True:
        n = rng.randint(min_strands, max_strands)
        c = rng.randint(n - 1, max_crossings)
        letters = tuple(rng.choice((-1, 1)) * rng.randint(1, n - 1) for _ in range(c))
        b = BraidWord(n, letters)
        if b.is_connected():
            return b


def component_histogram(words: Sequence[BraidWord]) -> Counter:
    return Counter(bc.closure_components(w).count for w in words)
