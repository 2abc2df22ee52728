import random
from fractions import Fraction

import pytest

from hfr.braid_core import BraidWord, closure_components
from hfr.compile_braid import (
    Window,
    chord_crossing,
    compile_diagram,
    intersection_form,
    pfaffian,
    relation_matrix,
    seifert_matrix,
    windows_of,
)
from hfr.conway_oracle import conway, det_oracle
from hfr.errors import DisconnectedSurfaceError
from hfr.euler import random_connected_braid
from hfr.spinc import smith_normal_form


def _det(M):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def _sym(V):
    return [[V[i][j] + V[j][i] for j in range(len(V))] for i in range(len(V))]


def _sample(n=60, seed=5):
    rng = random.Random(seed)
    return [random_connected_braid(rng) for _ in range(n)]


class TestWindows:
    def test_trefoil_windows(self):
        assert windows_of(BraidWord(2, (1, 1, 1))) == [Window(1, 0, 1), Window(1, 1, 2)]

    def test_count_is_first_betti(self):
        for b in _sample(30):
            assert len(windows_of(b)) == len(b.letters) - b.strands + 1


class TestSeifertMatrix:
    def test_hopf(self):
        V = seifert_matrix(BraidWord(2, (1, 1)))
        assert len(V) == 1 and abs(_det(_sym(V))) == 2

    def test_figure_eight(self):
        V = seifert_matrix(BraidWord(3, (1, -2, 1, -2)))
        assert len(V) == 2 and abs(_det(_sym(V))) == 5

    def test_symmetrized_determinant_is_link_determinant(self):
        for b in _sample():
            assert abs(_det(_sym(seifert_matrix(b)))) == det_oracle(b)

    def test_antisymmetric_part_is_intersection_form(self):
        # V - V^T = -(intersection form); the diagram stores V in its own orientation
        for b in _sample(40):
            d = compile_diagram(b)
            V, G = d.seifert_matrix, intersection_form(d)
            n = len(V)
            assert all(V[i][j] - V[j][i] == -G[i][j] for i in range(n) for j in range(n))

    def test_conway_from_seifert_matrix(self):
        # det(t^{1/2} V - t^{-1/2} V^T) with z = t^{1/2} - t^{-1/2}; check at t = 4 (z = 3/2)
        for b in _sample(25, seed=9):
            V = seifert_matrix(b)
            n = len(V)
            M = [[Fraction(2 * V[i][j]) - Fraction(V[j][i], 2) for j in range(n)] for i in range(n)]
            lhs = _fraction_det(M)
            rhs = sum(c * Fraction(3, 2) ** e for e, c in conway(b).coefficients.items())
            assert lhs == rhs, b


def _fraction_det(M):
    A = [list(r) for r in M]
    n = len(A)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            out = -out
        out *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return out


class TestGeometry:
    def test_chord_crossing_interleaved(self):
        hit = chord_crossing(Fraction(1), Fraction(3), Fraction(2), Fraction(4))
        assert hit is not None and hit[0] in (1, -1)
        assert 0 < hit[1] < 1 and 0 < hit[2] < 1

    def test_chord_crossing_disjoint(self):
        assert chord_crossing(Fraction(1), Fraction(2), Fraction(3), Fraction(4)) is None
        assert chord_crossing(Fraction(1), Fraction(4), Fraction(2), Fraction(3)) is None

    def test_chord_crossing_antisymmetric(self):
        a = chord_crossing(Fraction(1), Fraction(3), Fraction(2), Fraction(4))
        b = chord_crossing(Fraction(2), Fraction(4), Fraction(1), Fraction(3))
        assert a[0] == -b[0]

    def test_pfaffian(self):
        assert pfaffian([[0, 1], [-1, 0]]) == 1
        assert pfaffian([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]) == 6
        assert pfaffian([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]) == 0
        M = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
        assert pfaffian(M) == 1 * 6 - 2 * 5 + 3 * 4


class TestCompile:
    def test_hopf_shape(self):
        d = compile_diagram(BraidWord(2, (1, 1)))
        assert d.genus == 1 and d.components == 2 and d.alpha_count == 2
        assert [a.kind for a in d.alpha_curves] == ["window", "basepoint"]
        assert d.validate() == []

    def test_unknot_has_no_curves(self):
        d = compile_diagram(BraidWord(2, (1,)))
        assert d.alpha_count == 0 and d.validate() == []

    def test_disconnected(self):
        with pytest.raises(DisconnectedSurfaceError):
            compile_diagram(BraidWord(3, (1, -1)))

    def test_curve_counts(self):
        for b in _sample(40):
            d = compile_diagram(b)
            l = closure_components(b).count
            assert d.validate() == []
            assert d.alpha_count == d.genus + l - 1
            for a in d.alpha_curves:
                if a.kind == "window":
                    assert len(d.c_points_on(a.index)) % 2 == 0

    def test_relation_matrix_is_minus_symmetrized_seifert(self):
        for b in _sample(40, seed=3):
            V = compile_diagram(b).seifert_matrix
            R = relation_matrix(b)
            n = len(V)
            assert all(R[i][j] == -(V[i][j] + V[j][i]) for i in range(n) for j in range(n))

    def test_group_order_is_determinant(self):
        for b in _sample(40, seed=4):
            _, D, _ = smith_normal_form(_sym(seifert_matrix(b)))
            order = 1
            for i in range(len(D)):
                order *= D[i][i]
            assert abs(order) == det_oracle(b)

    def test_stored_matrix_differs_by_basis_sign(self):
        # orienting the diagram may reverse the first window: V -> S V S, S = diag(+-1, 1, ...)
        for b in _sample(30, seed=6):
            V, W = seifert_matrix(b), compile_diagram(b).seifert_matrix
            n = len(V)
            for s in (1, -1):
                sg = [s] + [1] * (n - 1)
                if all(W[i][j] == sg[i] * sg[j] * V[i][j] for i in range(n) for j in range(n)):
                    break
            else:
                pytest.fail(f"{b}: stored matrix is not a basis-sign change")

    def test_deterministic(self):
        b = BraidWord(4, (1, 1, 2, -1, -3, 2, -3))
        assert compile_diagram(b).to_json() == compile_diagram(b).to_json()
