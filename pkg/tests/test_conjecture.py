import itertools
import math

import pytest

from hyperlag import (
    Hypergraph,
    ScanReport,
    colex_first_m,
    complete,
    complete_uniform_value,
    enumerate_left_compressed,
    is_left_compressed,
    optimize,
    scan,
    talbot_range,
    verify_connection,
)


def _brute_left_compressed(types, m, n):
    """Independent enumeration: filter all strict-type edge sets."""
    types = tuple(sorted(types))
    pools = {
        r: list(itertools.combinations(range(1, n + 1), r)) for r in types
    }

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for head in range(1, total - parts + 2):
            for rest in compositions(total - head, parts - 1):
                yield (head,) + rest

    found = set()
    for counts in compositions(m, len(types)):
        choices = [
            itertools.combinations(pools[r], c)
            for r, c in zip(types, counts)
        ]
        for combo in itertools.product(*choices):
            edges = [e for level in combo for e in level]
            n_used = max(v for e in edges for v in e)
            H = Hypergraph(n_used, edges)
            if is_left_compressed(H):
                found.add(frozenset(H.edges()))
    return found


class TestEnumeration:
    def test_single_triangle(self):
        out = list(enumerate_left_compressed((2,), 3, 3))
        assert len(out) == 1
        assert out[0] == Hypergraph(3, [(1, 2), (1, 3), (2, 3)])

    def test_single_triple(self):
        out = list(enumerate_left_compressed((3,), 1, 3))
        assert out == [Hypergraph(3, [(1, 2, 3)])]

    def test_two_pairs(self):
        out = list(enumerate_left_compressed((2,), 2, 4))
        assert out == [Hypergraph(3, [(1, 2), (1, 3)])]

    def test_triangle_or_star(self):
        got = {frozenset(G.edges()) for G in enumerate_left_compressed((2,), 3, 6)}
        assert got == {
            frozenset({(1, 2), (1, 3), (2, 3)}),
            frozenset({(1, 2), (1, 3), (1, 4)}),
        }

    def test_mixed_levels(self):
        got = {frozenset(G.edges()) for G in enumerate_left_compressed((1, 2), 3, 4)}
        assert got == {
            frozenset({(1,), (1, 2), (1, 3)}),
            frozenset({(1,), (2,), (1, 2)}),
        }

    def test_every_candidate_is_valid(self):
        for G in enumerate_left_compressed((2, 3), 5, 5):
            assert is_left_compressed(G)
            assert G.edge_count() == 5
            assert G.edge_types == (2, 3)
            assert G.n == max(v for e in G.edges() for v in e)

    @pytest.mark.parametrize(
        "types,m,n",
        [((2,), 3, 4), ((2,), 4, 5), ((3,), 2, 4), ((1, 2), 3, 3), ((2, 3), 3, 4)],
    )
    def test_matches_brute_force(self, types, m, n):
        got = {
            frozenset(G.edges())
            for G in enumerate_left_compressed(types, m, n)
        }
        assert got == _brute_left_compressed(types, m, n)

    def test_no_duplicates(self):
        seen = [
            frozenset(G.edges())
            for G in enumerate_left_compressed((2, 3), 6, 5)
        ]
        assert len(seen) == len(set(seen))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            list(enumerate_left_compressed((2,), 0, 4))
        with pytest.raises(ValueError):
            list(enumerate_left_compressed((2,), 2, 0))


class TestScan:
    def test_triangle_case(self):
        rep = scan((2,), {}, 3, 6)
        assert isinstance(rep, ScanReport)
        assert rep.conjecture_holds
        assert rep.complete
        assert rep.enumerated_count == 2
        assert rep.extremal_value == pytest.approx(1.0 / 3, abs=1e-9)
        assert rep.colex_value == pytest.approx(1.0 / 3, abs=1e-9)
        assert any(
            frozenset(w.edges()) == frozenset({(1, 2), (1, 3), (2, 3)})
            for w in rep.witnesses
        )

    def test_no_candidates_is_vacuous(self):
        # four triples never fit in 3 vertices
        rep = scan((3,), {}, 4, 3)
        assert rep.enumerated_count == 0
        assert rep.extremal_value is None
        assert rep.conjecture_holds

    def test_limit_marks_incomplete(self):
        rep = scan((2,), {}, 3, 6, limit=1)
        assert not rep.complete
        assert rep.enumerated_count == 1

    def test_threads_agree_with_serial(self):
        a = scan((2, 3), {3: 1.0}, 4, 5)
        b = scan((2, 3), {3: 1.0}, 4, 5, threads=4)
        assert a.extremal_value == pytest.approx(b.extremal_value, abs=1e-12)
        assert a.enumerated_count == b.enumerated_count

    def test_json_dict(self):
        d = scan((2,), {}, 2, 4).to_json_dict()
        assert d["types"] == [2]
        assert d["m"] == 2 and d["n"] == 4
        assert isinstance(d["witnesses"], list)
        assert all(isinstance(w, str) for w in d["witnesses"])


class TestTalbotRange:
    def test_frozen_windows(self):
        assert talbot_range(3, 5, "tal") == (8, 11)
        assert talbot_range(3, 5, "tpzz") == (3, 13)
        assert talbot_range(3, 4, "tal") == (2, 3)
        assert talbot_range(3, 4, "tpzz") == (1, 5)
        assert talbot_range(4, 5, "tpzz1") == (1, 5)

    def test_lower_bound_clamped(self):
        lo, hi = talbot_range(3, 4, "tpzz")  # raw lower end would be -3
        assert lo == 1 and hi >= lo
        # the t=3 window degenerates to empty rather than erroring
        lo3, hi3 = talbot_range(3, 3, "tpzz")
        assert lo3 == 1 and hi3 < lo3

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            talbot_range(4, 6, "tal")  # tal window is 3-uniform only
        with pytest.raises(ValueError):
            talbot_range(3, 2, "tal")
        with pytest.raises(ValueError):
            talbot_range(3, 5, "unknown")


class TestColexWindowIdentity:
    def test_segment_value_equals_complete_on_upper_subwindow(self):
        # with m at least C(t,3) the segment keeps the K_t value
        for t in (4, 5):
            target = complete_uniform_value((3,), None, t)
            base = math.comb(t, 3)
            for m in range(base, base + math.comb(t - 1, 2) + 1):
                got = optimize(colex_first_m((3,), m)).value
                assert got == pytest.approx(target, abs=1e-9), (t, m)

    def test_scan_extremal_is_colex_on_talbot_window(self):
        # the ordering claim itself: the colex segment is extremal
        for t in (4, 5):
            lo, hi = talbot_range(3, t, "tal")
            for m in range(lo, hi + 1):
                rep = scan((3,), {}, m, t + 1)
                assert rep.conjecture_holds, (t, m)
                assert rep.extremal_value == pytest.approx(
                    rep.colex_value, abs=1e-9
                ), (t, m)


class TestVerifyConnection:
    def test_pair_window(self):
        v = verify_connection((1, 2), {2: 1.0}, 6, 6)
        assert v.passed()
        assert v.predicted == pytest.approx(4.0 / 3, abs=1e-9)

    def test_trivial_tail(self):
        v = verify_connection((1, 3), {3: 1.0}, 3, 5)
        assert v.passed()
        assert v.predicted == pytest.approx(1.0, abs=1e-9)

    def test_requires_level1(self):
        with pytest.raises(ValueError):
            verify_connection((2, 3), {3: 1.0}, 4, 5)
