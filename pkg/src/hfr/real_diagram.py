"""Combinatorial model of a multi-pointed real Heegaard diagram.

The surface is the boundary of a thickened Seifert surface and the involution
swaps its two sheets, so every beta curve is the image of an alpha curve and
only alpha data is stored.  A generator draws one point per alpha curve, either
a point where the curve meets the fixed set or a crossing of two projected
curves together with its image under the involution.

Point records carry exactly what the sign formula needs (local signs and the
order of fixed-set points along each link component) plus an integer defect
vector used to separate Spin^c structures.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from math import prod
from typing import Literal

CurveKind = Literal["window", "basepoint"]


@dataclass(frozen=True)
class AlphaCurve:
    """One alpha curve.

    ``window`` curves form a homology basis of the Seifert surface and are
    attached to two consecutive letters of one generator.  ``basepoint`` curves
    are small circles around the basepoint of a non-initial link component.
    """

    index: int
    kind: CurveKind
    generator: int | None = None
    letters: tuple[int, int] | None = None
    component: int | None = None

    @property
    def label(self) -> str:
        if self.kind == "window":
            p, q = self.letters
            return f"w{self.generator}[{p},{q}]"
        return f"b{self.component}"


@dataclass(frozen=True)
class CrossingPoint:
    """A crossing of two projected alpha curves.

    ``alpha`` is the curve through the point on the positive sheet and ``beta``
    the curve whose involution image passes through it, so the point lies on
    alpha_{alpha} and beta_{beta}; its mirror image lies on alpha_{beta} and
    beta_{alpha}.  ``sign`` is the local intersection sign on the positive
    sheet.
    """

    id: int
    alpha: int
    beta: int
    sign: int
    defect: tuple[int, ...]

    @property
    def curves(self) -> tuple[int, int]:
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class CPoint:
    """An intersection of an alpha curve with the fixed set (the link).

    ``position`` counts from 1 along the oriented component, starting just
    after its basepoint.
    """

    id: int
    curve: int
    component: int
    position: int
    sign: int
    defect: tuple[int, ...]


@dataclass(frozen=True)
class RealHeegaardDiagram:
    genus: int
    components: int
    alpha_curves: tuple[AlphaCurve, ...]
    crossings: tuple[CrossingPoint, ...]
    c_points: tuple[CPoint, ...]
    seifert_matrix: tuple[tuple[int, ...], ...]
    component_order: tuple[int, ...] = ()
    source: str = ""
    _by_curve: dict = field(default=None, init=False, repr=False, compare=False)

    @property
    def alpha_count(self) -> int:
        return len(self.alpha_curves)

    def c_points_on(self, curve: int) -> tuple[CPoint, ...]:
        if self._by_curve is None:
            groups: dict[int, list[CPoint]] = {i: [] for i in range(self.alpha_count)}
            for c in self.c_points:
                groups.setdefault(c.curve, []).append(c)
            object.__setattr__(
                self, "_by_curve", {k: tuple(v) for k, v in groups.items()}
            )
        return self._by_curve.get(curve, ())

    def crossing(self, cid: int) -> CrossingPoint:
        return self.crossings[cid]

    def c_point(self, pid: int) -> CPoint:
        return self.c_points[pid]

    def validate(self) -> list[str]:
        """Check all structural invariants; return every violation found."""
        problems: list[str] = []
        g, l, m = self.genus, self.components, self.alpha_count
        if m != g + l - 1:
            problems.append(f"alpha count: m={m} but g+l-1={g + l - 1}")
        for i, a in enumerate(self.alpha_curves):
            if a.index != i:
                problems.append(f"alpha curve at slot {i} carries index {a.index}")
        kinds = [a.kind for a in self.alpha_curves]
        if kinds.count("basepoint") != max(l - 1, 0):
            problems.append(
                f"basepoint curves: {kinds.count('basepoint')} present, {l - 1} expected"
            )
        if kinds.count("window") != g:
            problems.append(f"window curves: {kinds.count('window')} present, {g} expected")
        for z in self.crossings:
            if z.sign not in (1, -1):
                problems.append(f"crossing {z.id}: sign {z.sign}")
            if z.alpha == z.beta or not (0 <= z.alpha < m and 0 <= z.beta < m):
                problems.append(f"crossing {z.id}: bad curve pair {z.curves}")
            if len(z.defect) != g:
                problems.append(f"crossing {z.id}: defect length {len(z.defect)} != {g}")
        slots: Counter = Counter()
        for c in self.c_points:
            if c.sign not in (1, -1):
                problems.append(f"c-point {c.id}: sign {c.sign}")
            if not 0 <= c.curve < m:
                problems.append(f"c-point {c.id}: curve {c.curve} out of range")
            if not 0 <= c.component < l:
                problems.append(f"c-point {c.id}: component {c.component} out of range")
            if c.position <= 0:
                problems.append(f"c-point {c.id}: position {c.position} at or before basepoint")
            if len(c.defect) != g:
                problems.append(f"c-point {c.id}: defect length {len(c.defect)} != {g}")
            slots[(c.component, c.position)] += 1
        for (comp, pos), n in slots.items():
            if n > 1:
                problems.append(f"component {comp}: {n} c-points share position {pos}")
        for a in self.alpha_curves:
            if a.kind != "basepoint":
                continue
            pts = [c for c in self.c_points if c.curve == a.index]
            if any(a.index in z.curves for z in self.crossings):
                problems.append(f"basepoint curve {a.index} meets another alpha projection")
            if len(pts) != 2:
                problems.append(f"basepoint curve {a.index}: {len(pts)} c-points, expected 2")
            elif len({c.component for c in pts}) != 1 or pts[0].sign != -pts[1].sign:
                problems.append(f"basepoint curve {a.index}: c-points not an opposite-sign pair")
        if len(self.seifert_matrix) != g or any(len(r) != g for r in self.seifert_matrix):
            problems.append("seifert matrix is not g x g")
        return problems

    def total_capacity(self) -> int:
        """Upper bound on the generator count: each curve picks one of its points."""
        degree = Counter()
        for z in self.crossings:
            degree[z.alpha] += 1
            degree[z.beta] += 1
        return prod(len(self.c_points_on(i)) + degree[i] for i in range(self.alpha_count))

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "components": self.components,
            "component_order": list(self.component_order),
            "source": self.source,
            "alpha_curves": [
                {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(a).items()}
                for a in self.alpha_curves
            ],
            "crossings": [{**asdict(z), "defect": list(z.defect)} for z in self.crossings],
            "c_points": [{**asdict(c), "defect": list(c.defect)} for c in self.c_points],
            "seifert_matrix": [list(r) for r in self.seifert_matrix],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RealHeegaardDiagram":
        curves = tuple(
            AlphaCurve(
                index=a["index"],
                kind=a["kind"],
                generator=a.get("generator"),
                letters=tuple(a["letters"]) if a.get("letters") is not None else None,
                component=a.get("component"),
            )
            for a in data["alpha_curves"]
        )
        crossings = tuple(
            CrossingPoint(z["id"], z["alpha"], z["beta"], z["sign"], tuple(z["defect"]))
            for z in data["crossings"]
        )
        cpts = tuple(
            CPoint(
                c["id"], c["curve"], c["component"], c["position"], c["sign"], tuple(c["defect"])
            )
            for c in data["c_points"]
        )
        return cls(
            genus=data["genus"],
            components=data["components"],
            alpha_curves=curves,
            crossings=crossings,
            c_points=cpts,
            seifert_matrix=tuple(tuple(r) for r in data["seifert_matrix"]),
            component_order=tuple(data.get("component_order", ())),
            source=data.get("source", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "RealHeegaardDiagram":
        return cls.from_dict(json.loads(text))
