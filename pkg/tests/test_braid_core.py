import pytest
from hypothesis import given, strategies as st

from hfr.braid_core import (
    BraidWord,
    closure_components,
    insert_cancelling_pair,
    normalize_last_crossing,
    parse_braid,
    resolve_crossing,
    rotate,
    seifert_data,
    stabilize,
)
from hfr.conway_oracle import conway
from hfr.errors import BraidInputError, DisconnectedSurfaceError


def braids(max_strands=4, max_len=7):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])),
            min_size=0,
            max_size=max_len,
        ).map(lambda w: BraidWord(n, tuple(w)))
    )


class TestParse:
    def test_infers_strands(self):
        assert parse_braid("1,1,1") == BraidWord(2, (1, 1, 1))
        assert parse_braid("1,-2,1,-2") == BraidWord(3, (1, -2, 1, -2))

    def test_whitespace_separators(self):
        assert parse_braid(" 1  -2\t1 ") == BraidWord(3, (1, -2, 1))

    def test_zero_rejected(self):
        with pytest.raises(BraidInputError, match="letter must be nonzero"):
            parse_braid("0,1")

    def test_out_of_range(self):
        with pytest.raises(BraidInputError, match="out of range"):
            parse_braid("1,3", strands=3)

    def test_empty_needs_strands(self):
        with pytest.raises(BraidInputError):
            parse_braid("")
        assert parse_braid("", strands=3) == BraidWord(3, ())

    def test_non_integer(self):
        with pytest.raises(BraidInputError, match="not an integer"):
            parse_braid("1,a")

    def test_direct_construction_validates(self):
        with pytest.raises(BraidInputError):
            BraidWord(0, ())
        with pytest.raises(BraidInputError):
            BraidWord(2, (2,))

    def test_str_round_trip(self):
        b = BraidWord(3, (1, -2, 1))
        assert parse_braid(str(b), b.strands) == b


class TestComponents:
    @pytest.mark.parametrize(
        "n, word, count",
        [(2, (1, 1, 1), 1), (2, (1, 1), 2), (3, (), 3), (3, (1, -2, 1, -2), 1)],
    )
    def test_counts(self, n, word, count):
        assert closure_components(BraidWord(n, word)).count == count

    def test_component_zero_holds_strand_zero(self):
        c = closure_components(BraidWord(3, (2, 2)))
        assert c.assignment[0] == 0
        assert c.lowest_strand(1) == 1


class TestSeifertData:
    def test_trefoil(self):
        s = seifert_data(BraidWord(2, (1, 1, 1)))
        assert (s.circles, s.bands, s.first_betti, s.components, s.genus) == (2, 3, 2, 1, 1)

    def test_hopf(self):
        s = seifert_data(BraidWord(2, (1, 1)))
        assert (s.first_betti, s.components, s.genus) == (1, 2, 0)

    def test_figure_eight(self):
        s = seifert_data(BraidWord(3, (1, -2, 1, -2)))
        assert (s.first_betti, s.components, s.genus) == (2, 1, 1)

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedSurfaceError, match="stabilize"):
            seifert_data(BraidWord(3, (1, 1)))

    @given(braids())
    def test_betti_identity(self, b):
        if not b.is_connected():
            return
        s = seifert_data(b)
        assert s.first_betti == 2 * s.genus + s.components - 1


class TestMoves:
    def test_flip_and_smooth(self):
        b = BraidWord(2, (1, 1, 1))
        assert resolve_crossing(b, 2, "flip").letters == (1, 1, -1)
        assert resolve_crossing(b, 2, "smooth").letters == (1, 1)
        assert resolve_crossing(BraidWord(2, (1, 1)), 1, "smooth").letters == (1,)

    def test_index_checked(self):
        with pytest.raises(IndexError):
            resolve_crossing(BraidWord(2, (1,)), 1, "flip")

    @given(braids(), st.integers(0, 50))
    def test_flip_involution(self, b, k):
        if not b.letters:
            return
        k %= len(b.letters)
        assert resolve_crossing(resolve_crossing(b, k, "flip"), k, "flip") == b

    def test_normalize_examples(self):
        assert normalize_last_crossing(BraidWord(2, (1, 1, 1)), 1).letters == (1, 1, 1)
        assert normalize_last_crossing(BraidWord(2, (1,)), 0).letters == (1, -1, 1)
        w = normalize_last_crossing(BraidWord(3, (2, 1)), 0)
        assert w.letters[-1] == 2 and 2 in map(abs, w.letters[:-1])
        assert conway(w) == conway(BraidWord(3, (2, 1)))

    @given(braids(), st.integers(0, 50))
    def test_normalize_preserves_closure(self, b, k):
        if not b.letters:
            return
        k %= len(b.letters)
        w = normalize_last_crossing(b, k)
        assert abs(w.letters[-1]) == abs(b.letters[k])
        assert closure_components(w).count == closure_components(b).count
        assert conway(w) == conway(b)

    @given(braids(), st.integers(-20, 20))
    def test_rotation_invariants(self, b, k):
        r = rotate(b, k)
        assert closure_components(r).count == closure_components(b).count
        assert conway(r) == conway(b)

    @given(braids(max_len=5), st.integers(0, 10), st.integers(1, 3))
    def test_cancelling_pair_invariants(self, b, pos, gen):
        gen = min(gen, b.strands - 1)
        c = insert_cancelling_pair(b, pos % (len(b.letters) + 1), gen)
        assert closure_components(c).count == closure_components(b).count
        assert conway(c) == conway(b)

    def test_stabilize(self):
        s = stabilize(BraidWord(2, (1, 1, 1)), -1)
        assert s == BraidWord(3, (1, 1, 1, -2))
        assert conway(s) == conway(BraidWord(2, (1, 1, 1)))
