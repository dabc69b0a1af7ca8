import math
from fractions import Fraction

import numpy as np
import pytest

from pytanner.analysis import (
    AceSpectrum,
    Vnlgd,
    ace_spectrum,
    brute_force_cycles,
    compare_spectra,
    compare_vnlgd,
    distance_girth,
    girth,
    local_girth_edge,
    local_girth_vn,
    local_girths,
    vnlgd,
)
from pytanner.constants import INF
from pytanner.exceptions import TannerValidationError
from pytanner.graph import TannerGraph
from pytanner.metric import MetricKind, MetricValue
from pytanner.utils import Ordering
from tests.graphs import complete_bipartite, four_cycle, random_graph


def six_cycle(degrees: tuple[int, ...] = (2, 2, 2)) -> TannerGraph:
    # c0 - v0 - c1 - v1 - c2 - v2 - c0, c3 stays free for heavier VNs
    return TannerGraph.from_edges(
        4, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)], degrees
    )


def six_cycle_with_pendant() -> TannerGraph:
    g = TannerGraph(3, 4, [2, 2, 2, 1])
    g.add_edge_set([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2), (0, 3)])
    return g


## Local Girth section


class TestLocalGirth:
    def test_four_cycle(self):
        g = four_cycle()

        assert local_girth_edge(g, 0, 0, MetricKind.distance) == MetricValue(4)
        assert local_girth_vn(g, 1, MetricKind.distance_ace) == (
            MetricValue(4, 0)
        )
        assert girth(g, MetricKind.distance_ace) == MetricValue(4, 0)
        assert distance_girth(g) == 4

    def test_edgeless_graph(self):
        g = TannerGraph(2, 2, [1, 1])

        assert girth(g, MetricKind.distance) == MetricValue(INF)
        assert math.isinf(distance_girth(g))
        assert local_girths(g) == [INF, INF]

    def test_tree(self):
        g = TannerGraph.from_edges(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)])

        assert math.isinf(distance_girth(g))

    def test_ace_of_six_cycle(self):
        g = six_cycle((2, 3, 4))

        assert local_girth_vn(g, 2, MetricKind.distance_ace) == (
            MetricValue(6, 3)
        )

    def test_missing_edge(self):
        with pytest.raises(TannerValidationError, match="does not exist"):
            local_girth_edge(six_cycle(), 2, 0, MetricKind.distance)

    def test_local_girths(self):
        assert local_girths(six_cycle_with_pendant()) == [6, 6, 6, INF]

    @pytest.mark.parametrize("kind", list(MetricKind))
    def test_random_graphs_match_cycle_oracle(self, kind: MetricKind):
        rng = np.random.default_rng(17)
        for _ in range(40):
            m, n = (int(x) for x in rng.integers(2, 6, size=2))
            g = random_graph(rng, m, n, density=0.5, max_edges=14)
            cycles = brute_force_cycles(g, max_len=2 * min(m, n))
            for c, v in g.edges():
                through = [x for x in cycles if (c, v) in x.edges]
                got = local_girth_edge(g, c, v, kind)
                if not through:
                    assert not got.is_finite()
                    continue
                shortest = min(x.length for x in through)
                assert got.distance == shortest
                if kind is MetricKind.distance_ace:
                    assert got.ace == min(
                        x.ace for x in through if x.length == shortest
                    )
            edge_min = min(
                (local_girth_edge(g, c, v, kind) for c, v in g.edges()),
                default=girth(g, kind),
            )
            assert girth(g, kind) == edge_min


## ACE Spectrum section


class TestAceSpectrum:
    def test_four_cycle(self):
        assert ace_spectrum(four_cycle(), 3) == (INF, 0, INF)

    def test_six_cycle(self):
        assert ace_spectrum(six_cycle((2, 3, 4)), 3) == (INF, INF, 3)

    def test_complete_bipartite(self):
        assert ace_spectrum(complete_bipartite(3, 3), 5) == (
            INF, 2, 3, INF, INF,
        )  # fmt: skip

    def test_depth_is_positive(self):
        with pytest.raises(TannerValidationError):
            ace_spectrum(four_cycle(), 0)

    def test_random_graphs_match_cycle_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            m, n = (int(x) for x in rng.integers(2, 7, size=2))
            g = random_graph(rng, m, n, density=0.45)
            want = [INF] * 5
            for cycle in brute_force_cycles(g, max_len=10):
                slot = cycle.length // 2 - 1
                want[slot] = min(want[slot], cycle.ace)
            spectrum = ace_spectrum(g, 5)
            assert spectrum == want, g.edges()
            # the entry at the girth length is finite iff the girth is
            finite = [i for i, x in enumerate(spectrum) if math.isfinite(x)]
            if finite:
                assert distance_girth(g) == 2 * (finite[0] + 1)
            else:
                assert distance_girth(g) > 10

    def test_notation(self):
        spectrum = AceSpectrum.from_string("(inf, inf, 26, 13, 6)")

        assert spectrum == (INF, INF, 26, 13, 6)
        assert str(spectrum) == "(inf, inf, 26, 13, 6)"
        assert repr(spectrum) == "AceSpectrum((inf, inf, 26, 13, 6))"
        assert spectrum.depth == 5

    def test_bad_notation(self):
        with pytest.raises(TannerValidationError):
            AceSpectrum.from_string("(inf, x)")

    @pytest.mark.parametrize(
        ("a", "b", "answer"),
        [
            ("(inf, inf, 19, 13, 4)", "(inf, inf, 19, 10, 4)",
             Ordering.greater),
            ("(inf, inf, 19, 13, 4)", "(inf, inf, 19, 13, 4)",
             Ordering.equal),
            ("(inf, inf, 13, 13, 4)", "(inf, inf, 26, 13, 6)",
             Ordering.less),
            ("(inf, 2)", "(4, inf)", Ordering.greater),
        ],
    )  # fmt: skip
    def test_compare(self, a: str, b: str, answer: Ordering):
        sa, sb = AceSpectrum.from_string(a), AceSpectrum.from_string(b)

        assert compare_spectra(sa, sb) is answer

    def test_compare_depth_mismatch(self):
        with pytest.raises(TannerValidationError, match="depths"):
            compare_spectra(AceSpectrum([1, 2]), AceSpectrum([1, 2, 3]))


## VNLGD section


class TestVnlgd:
    def test_four_cycle(self):
        dist = vnlgd(four_cycle())

        assert dist == {4: 1}
        assert str(dist) == "1.0000x^4"

    def test_acyclic_bin(self):
        dist = vnlgd(six_cycle_with_pendant())

        assert dist[INF] == Fraction(1, 4)
        assert dist[6] == Fraction(3, 4)
        assert str(dist) == "0.7500x^6 + 0.2500x^inf"

    def test_parse(self):
        dist = Vnlgd.from_string("0.0293x^8 + 0.9707x^{10}")

        assert list(dist) == [8, 10]
        assert dist[8] == pytest.approx(0.0293)

    @pytest.mark.parametrize(
        "text", ["0.5x^4 + 0.4x^6", "0.5y^4 + 0.5x^6", "1.2x^4"]
    )
    def test_bad_notation(self, text: str):
        with pytest.raises(TannerValidationError):
            Vnlgd.from_string(text)

    @pytest.mark.parametrize(
        ("a", "b", "answer"),
        [
            ("1.0x^10", "0.0293x^8 + 0.9707x^10", Ordering.less),
            ("0.0293x^8 + 0.9707x^10", "0.0293x^8 + 0.9707x^10",
             Ordering.equal),
            ("0.5x^4 + 0.5x^6", "0.4x^4 + 0.6x^6", Ordering.greater),
            ("0.5x^6 + 0.5x^inf", "0.5x^6 + 0.5x^8", Ordering.less),
        ],
    )  # fmt: skip
    def test_compare(self, a: str, b: str, answer: Ordering):
        va, vb = Vnlgd.from_string(a), Vnlgd.from_string(b)

        assert compare_vnlgd(va, vb) is answer
        assert (va < vb) is (answer is Ordering.less)


## Cycle Oracle section


class TestBruteForceCycles:
    def test_four_cycle(self):
        cycles = brute_force_cycles(four_cycle(), max_len=8)

        assert len(cycles) == 1
        assert cycles[0].length == 4
        assert cycles[0].ace == 0
        assert cycles[0].cns == (0, 1)

    def test_complete_bipartite(self):
        lengths = [x.length for x in brute_force_cycles(
            complete_bipartite(3, 3), max_len=6
        )]  # fmt: skip

        assert lengths.count(4) == 9
        assert lengths.count(6) == 6

    def test_size_guard(self):
        with pytest.raises(TannerValidationError, match="oracle limit"):
            brute_force_cycles(complete_bipartite(13, 13), max_len=4)
