"""Compile a braid word into a canonically oriented real Heegaard diagram.

Geometric model
---------------
The Seifert surface of a braid closure is a stack of disks, one per strand
position, joined by one half-twisted band per letter.  Each disk is drawn as
the region above a parabola: the band of letter ``k`` (0-based) attaches at
rim coordinate ``k + 1`` and the link basepoints sit at rim coordinate 0.
Since rim points are in convex position, two chords cross exactly when their
endpoints interleave, and the crossing sign is the sign of a 2x2 determinant.

Homology is generated by *window* loops, one for every two consecutive letters
``p < q`` of the same generator ``i``.  A window runs along the lower disk from
band ``p`` to band ``q``, up band ``q``, back along the upper disk, and down band
``p``.  Inside a band it is offset by a quarter step towards its partner letter;
the half twist swaps the offset side on the upper disk.

The alpha curve over a window is that loop drawn on the thickened surface,
top sheet on the lower disk and bottom sheet on the upper one.  It meets the
link once on each of its two bands.  Two windows that share a band cross on
it, and windows of adjacent generators cross on their common disk when their
chords interleave.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hfr.braid_core import BraidWord, closure_components, require_connected
from hfr.real_diagram import AlphaCurve, CPoint, CrossingPoint, RealHeegaardDiagram

QUARTER = Fraction(1, 4)

# Segments of a window curve, in traversal order.
LOWER_DISK, UP_BAND, UPPER_DISK, DOWN_BAND = range(4)


@dataclass(frozen=True)
class Window:
    generator: int  # 1-based; joins disks generator-1 and generator
    first: int  # 0-based letter index
    second: int


def windows_of(b: BraidWord) -> list[Window]:
    out = []
    for i in range(1, b.strands):
        ks = [k for k, x in enumerate(b.letters) if abs(x) == i]
        out.extend(Window(i, p, q) for p, q in zip(ks, ks[1:]))
    return out


def seifert_matrix(b: BraidWord) -> list[list[int]]:
    """Seifert matrix in the window basis (windows ordered by generator, then letter).

    Diagonal entries come from the two band twists; off-diagonal entries from
    windows sharing a band or overlapping on a common disk.
    """
    require_connected(b)
    wins = windows_of(b)
    sign = [1 if x > 0 else -1 for x in b.letters]
    m = len(wins)
    V = [[0] * m for _ in range(m)]
    for a, wa in enumerate(wins):
        V[a][a] = (sign[wa.first] + sign[wa.second]) // 2
        for c, wc in enumerate(wins):
            if wc.generator == wa.generator and wc.first == wa.second:
                if sign[wa.second] > 0:
                    V[a][c] = -1
                else:
                    V[c][a] = 1
            elif wc.generator == wa.generator + 1:
                if wa.first < wc.first < wa.second < wc.second:
                    V[a][c] = 1
                elif wc.first < wa.first < wc.second < wa.second:
                    V[a][c] = -1
    return V


# ---------------------------------------------------------------- geometry


def _rim(k: int) -> Fraction:
    return Fraction(k + 1)


def _point(x: Fraction) -> tuple[Fraction, Fraction]:
    return (x, x * x)


def chord_crossing(
    a0: Fraction, a1: Fraction, b0: Fraction, b1: Fraction
) -> tuple[int, Fraction, Fraction] | None:
    """Transverse crossing of chords ``a0->a1`` and ``b0->b1`` of the rim parabola.

    Returns ``(sign, t, u)`` with ``t``, ``u`` the crossing parameters along each
    chord, or ``None``.  The sign is that of ``det(a', b')``.
    """
    (ax, ay), (bx, by) = _point(a0), _point(a1)
    (cx, cy), (dx, dy) = _point(b0), _point(b1)
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    den = rx * sy - ry * sx
    if den == 0:
        return None
    qx, qy = cx - ax, cy - ay
    t = (qx * sy - qy * sx) / den
    u = (qx * ry - qy * rx) / den
    if 0 < t < 1 and 0 < u < 1:
        return (1 if den > 0 else -1, t, u)
    return None


def window_chord(w: Window, disk: int, twisted: bool = True) -> tuple[Fraction, Fraction]:
    """Directed chord of a window on one of its two disks (0-based disk index).

    On the upper disk the half twists put the band offsets on the far side of
    each letter (``twisted``).  Crossings between windows are ordered along the
    untwisted chord, which keeps the offsets towards the partner letter.
    """
    if disk == w.generator - 1:
        return _rim(w.first) + QUARTER, _rim(w.second) - QUARTER
    if disk == w.generator:
        if twisted:
            return _rim(w.second) + QUARTER, _rim(w.first) - QUARTER
        return _rim(w.second) - QUARTER, _rim(w.first) + QUARTER
    raise ValueError(f"window {w} does not touch disk {disk}")


# ---------------------------------------------------------------- compiler


@dataclass
class _Station:
    """A point on an alpha curve, as met when traversing that curve."""

    key: tuple[int, Fraction]
    kind: str  # "c", "z" (positive-sheet crossing point) or "tz" (its image)
    ref: int  # c-point id or crossing id
    partner: int  # index of the beta curve through the point
    local: int  # alpha . beta local sign


class _Builder:
    def __init__(self, b: BraidWord, order: Sequence[int] | None) -> None:
        require_connected(b)
        self.b = b
        self.comps = closure_components(b)
        l = self.comps.count
        if order is None:
            order = list(range(l))
        if sorted(order) != list(range(l)):
            raise ValueError(f"component order {list(order)} is not a permutation of 0..{l - 1}")
        self.order = list(order)
        self.rank = {c: r for r, c in enumerate(self.order)}
        self.wins = windows_of(b)
        self.g = len(self.wins)
        self.sign = [1 if x > 0 else -1 for x in b.letters]
        self.stations: dict[int, list[_Station]] = {i: [] for i in range(self.g)}
        # crossing: [alpha, beta, sign]; c-point: [curve, band or None, sign, local]
        self.crossings: list[list[int]] = []
        self.cpoints: list[list] = []

    # -- points

    def _add_crossing(self, r: int, s: int, eps: int) -> int:
        self.crossings.append([r, s, eps])
        return len(self.crossings) - 1

    def _add_cpoint(self, curve: int, band: int | None, eps: int, local: int) -> int:
        self.cpoints.append([curve, band, eps, local])
        return len(self.cpoints) - 1

    def _disk_crossings(self) -> None:
        for ia, wa in enumerate(self.wins):
            for ib, wb in enumerate(self.wins):
                if wb.generator != wa.generator - 1:
                    continue
                disk = wa.generator - 1
                hit = chord_crossing(*window_chord(wa, disk), *window_chord(wb, disk, twisted=False))
                if hit is None:
                    continue
                eps, t, u = hit
                # the positive-sheet point lies on the higher generator's alpha
                zid = self._add_crossing(ia, ib, eps)
                self.stations[ia].append(_Station((LOWER_DISK, t), "z", zid, ib, eps))
                self.stations[ib].append(_Station((UPPER_DISK, u), "tz", zid, ia, eps))

    def _band_points(self) -> dict[int, list[int]]:
        """C-points and shared-band crossings; returns band -> c-point ids in link order."""
        index = {(w.generator, w.first, w.second): i for i, w in enumerate(self.wins)}
        on_band: dict[int, list[int]] = {}
        for k, x in enumerate(self.b.letters):
            i, s = abs(x), self.sign[k]
            ks = [j for j, y in enumerate(self.b.letters) if abs(y) == i]
            pos = ks.index(k)
            ending = index[(i, ks[pos - 1], k)] if pos > 0 else None
            starting = index[(i, k, ks[pos + 1])] if pos + 1 < len(ks) else None
            pts = []
            if ending is not None:
                ca = self._add_cpoint(ending, k, 1, s)
                pts.append(ca)
            if starting is not None:
                cb = self._add_cpoint(starting, k, -1, s)
                pts.append(cb)
            on_band[k] = pts
            if ending is not None and starting is not None:
                ca, cb = pts
                eps = -s
                if s > 0:
                    zid = self._add_crossing(starting, ending, eps)
                    self.stations[ending] += [
                        _Station((UP_BAND, Fraction(0)), "c", ca, ending, s),
                        _Station((UP_BAND, Fraction(1)), "tz", zid, starting, eps),
                    ]
                    self.stations[starting] += [
                        _Station((DOWN_BAND, Fraction(0)), "c", cb, starting, s),
                        _Station((DOWN_BAND, Fraction(1)), "z", zid, ending, eps),
                    ]
                else:
                    zid = self._add_crossing(ending, starting, eps)
                    self.stations[ending] += [
                        _Station((UP_BAND, Fraction(0)), "z", zid, starting, eps),
                        _Station((UP_BAND, Fraction(1)), "c", ca, ending, s),
                    ]
                    self.stations[starting] += [
                        _Station((DOWN_BAND, Fraction(0)), "tz", zid, ending, eps),
                        _Station((DOWN_BAND, Fraction(1)), "c", cb, starting, s),
                    ]
            elif ending is not None:
                self.stations[ending].append(_Station((UP_BAND, Fraction(0)), "c", pts[0], ending, s))
            elif starting is not None:
                self.stations[starting].append(
                    _Station((DOWN_BAND, Fraction(0)), "c", pts[0], starting, s)
                )
        return on_band

    # -- link traversal

    def _c_order(self, on_band: dict[int, list[int]]) -> tuple[dict[int, tuple[int, int]], int]:
        """Assign (component, position) to every c-point; add basepoint circles."""
        placed: dict[int, tuple[int, int]] = {}
        for comp in self.order:
            start = self.comps.lowest_strand(comp)
            seq: list[int] = []
            circle = None
            if self.rank[comp] > 0:
                circle = self.g + self.rank[comp] - 1
                seq.append(self._add_cpoint(circle, None, 1, 1))
            p = start
            while True:
                for k, x in enumerate(self.b.letters):
                    lo = abs(x) - 1
                    if p == lo:
                        if x > 0:
                            seq += on_band[k]
                        p = lo + 1
                    elif p == lo + 1:
                        if x < 0:
                            seq += on_band[k]
                        p = lo
                if p == start:
                    break
            if circle is not None:
                seq.append(self._add_cpoint(circle, None, -1, 1))
            for pos, cid in enumerate(seq, start=1):
                placed[cid] = (comp, pos)
        return placed, len(self.order) - 1

    # -- canonical orientation

    def intersection_form(self) -> list[list[int]]:
        G = [[0] * self.g for _ in range(self.g)]
        for r, s, eps in self.crossings:
            G[r][s] += eps
            G[s][r] -= eps
        return G

    def _arc_pairings(self) -> list[list[int]]:
        """Intersections of each window with arcs from the first basepoint to the others."""
        root = self.comps.lowest_strand(self.order[0])
        cols = []
        for comp in self.order[1:]:
            target = self.comps.lowest_strand(comp)
            prev: dict[int, tuple[int, int] | None] = {root: None}
            queue = deque([root])
            while queue:
                d = queue.popleft()
                for k, x in enumerate(self.b.letters):
                    lo = abs(x) - 1
                    for a, c in ((lo, lo + 1), (lo + 1, lo)):
                        if a == d and c not in prev:
                            prev[c] = (d, k)
                            queue.append(c)
            hops = []
            d = target
            while prev[d] is not None:
                pd, k = prev[d]
                hops.append((pd, k))
                d = pd
            hops.reverse()
            segments = []
            disk, at = root, Fraction(0)
            for pd, k in hops:
                segments.append((disk, at, _rim(k)))
                lo = abs(self.b.letters[k]) - 1
                disk = lo + 1 if pd == lo else lo
                at = _rim(k)
            segments.append((disk, at, Fraction(0)))
            col = [0] * self.g
            for disk, a0, a1 in segments:
                for i, w in enumerate(self.wins):
                    if disk not in (w.generator - 1, w.generator):
                        continue
                    hit = chord_crossing(*window_chord(w, disk), a0, a1)
                    if hit is not None:
                        col[i] += hit[0]
            cols.append(col)
        return cols

    def orientation_sign(self) -> int:
        """Sign of the Pfaffian of the capped-surface intersection form of the curve basis."""
        G = self.intersection_form()
        arcs = self._arc_pairings()
        m = self.g + len(arcs)
        A = [[0] * m for _ in range(m)]
        for i in range(self.g):
            A[i][: self.g] = G[i]
        for t, col in enumerate(arcs):
            for i in range(self.g):
                A[i][self.g + t] = col[i]
                A[self.g + t][i] = -col[i]
        pf = pfaffian(A)
        if pf not in (1, -1):
            raise AssertionError(f"curve basis is not unimodular (Pfaffian {pf})")
        return int(pf)

    def flip_first_curve(self) -> None:
        for z in self.crossings:
            if 0 in (z[0], z[1]):
                z[2] = -z[2]
        for c in self.cpoints:
            if c[0] == 0:
                c[2] = -c[2]
        for curve, sts in self.stations.items():
            for st in sts:
                if st.kind != "c" and (curve == 0 or st.partner == 0):
                    st.local = -st.local
        # traversal direction of curve 0 is reversed
        self.stations[0].sort(key=lambda st: st.key, reverse=True)
        self.stations[0] = [
            _Station((-st.key[0], -st.key[1]), st.kind, st.ref, st.partner, st.local)
            for st in self.stations[0]
        ]

    def relation_matrix(self) -> list[list[int]]:
        R = [[0] * self.g for _ in range(self.g)]
        for curve in range(self.g):
            for st in self.stations[curve]:
                if st.partner < self.g:
                    R[curve][st.partner] -= st.local
        return R

    # -- defects

    def defects(self) -> tuple[list[list[int]], list[list[int]]]:
        """Per-point Spin^c defect vectors.

        Walking alpha_i also walks beta_i, its mirror image, meeting the mirror
        of each point.  The running count of signed crossings of beta_i with
        the window curves, with the endpoint counted only when it is a negative
        crossing, is the contribution of the generator point sitting there.
        """
        zdef = [[0] * self.g for _ in self.crossings]
        cdef = [[0] * self.g for _ in self.cpoints]
        for curve in range(self.g):
            running = [0] * self.g
            for st in sorted(self.stations[curve], key=lambda s: s.key):
                weight = -st.local
                here = list(running)
                if weight < 0:
                    here[st.partner] -= 1
                target = cdef[st.ref] if st.kind == "c" else zdef[st.ref]
                for j in range(self.g):
                    target[j] += here[j]
                running[st.partner] += weight
        return zdef, cdef

    def build(self) -> RealHeegaardDiagram:
        self._disk_crossings()
        on_band = self._band_points()
        placed, n_circles = self._c_order(on_band)
        V = seifert_matrix(self.b)
        if self.orientation_sign() < 0:
            self.flip_first_curve()
            for i in range(self.g):
                V[0][i] = -V[0][i]
                V[i][0] = -V[i][0]
        zdef, cdef = self.defects()
        curves = [
            AlphaCurve(i, "window", w.generator, (w.first, w.second))
            for i, w in enumerate(self.wins)
        ]
        curves += [
            AlphaCurve(self.g + t, "basepoint", component=comp)
            for t, comp in enumerate(self.order[1:])
        ]
        crossings = tuple(
            CrossingPoint(zid, r, s, eps, tuple(zdef[zid]))
            for zid, (r, s, eps) in enumerate(self.crossings)
        )
        cpts = tuple(
            CPoint(cid, curve, placed[cid][0], placed[cid][1], eps, tuple(cdef[cid]))
            for cid, (curve, _band, eps, _local) in enumerate(self.cpoints)
        )
        return RealHeegaardDiagram(
            genus=self.g,
            components=self.comps.count,
            alpha_curves=tuple(curves),
            crossings=crossings,
            c_points=cpts,
            seifert_matrix=tuple(tuple(r) for r in V),
            component_order=tuple(self.order),
            source=f"{self.b.strands}:{self.b}",
        )


def pfaffian(matrix: Sequence[Sequence[int]]) -> Fraction:
    """Exact Pfaffian of a skew-symmetric matrix by congruence elimination."""
    A = [[Fraction(x) for x in row] for row in matrix]
    n = len(A)
    if n % 2:
        return Fraction(0)
    result = Fraction(1)
    for k in range(0, n, 2):
        piv = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k + 1:
            A[k + 1], A[piv] = A[piv], A[k + 1]
            for row in A:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            result = -result
        p = A[k][k + 1]
        result *= p
        for i in range(k + 2, n):
            a = A[k][i] / p
            c = A[k + 1][i] / p
            if a == 0 and c == 0:
                continue
            # column i -= a*col(k+1) - c*col(k), then the same on rows
            for row in A:
                row[i] -= a * row[k + 1] - c * row[k]
            A[i] = [x - a * y + c * z for x, y, z in zip(A[i], A[k + 1], A[k])]
    return result


def compile_diagram(
    b: BraidWord, component_order: Sequence[int] | None = None
) -> RealHeegaardDiagram:
    """Build the canonically oriented diagram of the closure of ``b``.

    ``component_order`` lists closure components (numbered by lowest strand) in
    the order used by the sign formula; the default is the numbering itself.
    """
    return _Builder(b, component_order).build()


def intersection_form(d: RealHeegaardDiagram) -> list[list[int]]:
    """Algebraic intersection numbers of the projected window curves."""
    G = [[0] * d.genus for _ in range(d.genus)]
    for z in d.crossings:
        if z.alpha < d.genus and z.beta < d.genus:
            G[z.alpha][z.beta] += z.sign
            G[z.beta][z.alpha] -= z.sign
    return G


def relation_matrix(
    b: BraidWord, component_order: Sequence[int] | None = None
) -> list[list[int]]:
    """Algebraic intersections ``beta_i . alpha_j`` of the window curves.

    Its rows span the relations of the Spin^c difference group; it should equal
    ``-(V + V^T)`` for the Seifert matrix stored in the diagram.
    """
    builder = _Builder(b, component_order)
    builder.build()
    return builder.relation_matrix()
