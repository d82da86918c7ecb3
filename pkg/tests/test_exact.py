import numpy as np
import pytest

from pprquery import (exact_single_source, exact_single_target,
                      exact_pagerank, brute_force_pair, ExplosionGuard)
from conftest import (chain_graph, star_graph, cycle_graph, singleton_graph,
                      random_graph)

ALPHA = 0.2


class TestTrivialValues:
    def test_singleton(self):
        g = singleton_graph()
        assert exact_single_source(g, 0, ALPHA)[0] == pytest.approx(1.0, abs=1e-12)
        assert exact_single_target(g, 0, ALPHA)[0] == pytest.approx(1.0, abs=1e-12)
        assert exact_pagerank(g, ALPHA)[0] == pytest.approx(1.0, abs=1e-12)

    def test_chain_source(self):
        v = exact_single_source(chain_graph(), 0, ALPHA)
        assert v[0] == pytest.approx(0.2, abs=1e-12)
        assert v[1] == pytest.approx(0.8, abs=1e-12)

    def test_chain_target(self):
        v = exact_single_target(chain_graph(), 1, ALPHA)
        assert v[0] == pytest.approx(0.8, abs=1e-12)
        assert v[1] == pytest.approx(1.0, abs=1e-12)

    def test_chain_pagerank(self):
        v = exact_pagerank(chain_graph(), ALPHA)
        assert v[0] == pytest.approx(0.1, abs=1e-12)
        assert v[1] == pytest.approx(0.9, abs=1e-12)

    def test_star_symmetry(self):
        v = exact_single_source(star_graph(), 0, ALPHA)
        assert v[1] == pytest.approx(0.4, abs=1e-12)
        assert v[2] == pytest.approx(0.4, abs=1e-12)


class TestInvariants:
    TOL = 1e-12

    @pytest.mark.parametrize("seed", range(10))
    def test_forward_backward_duality(self, seed):
        # 5 sizes x 10 seeds covers 50 random graphs
        for n in (5, 12, 23, 37, 50):
            g = random_graph(1000 * seed + n, n)
            t = n // 2
            tv = exact_single_target(g, t, ALPHA, self.TOL)
            for s in range(0, n, max(1, n // 7)):
                sv = exact_single_source(g, s, ALPHA, self.TOL)
                assert abs(tv[s] - sv[t]) <= 2 * self.TOL

    @pytest.mark.parametrize("seed", range(5))
    def test_normalization_and_self_mass(self, seed):
        g = random_graph(seed, 40)
        for s in (0, 17, 39):
            v = exact_single_source(g, s, ALPHA, self.TOL)
            assert abs(v.values.sum() - 1.0) <= g.node_count * self.TOL
            assert v[s] >= ALPHA - self.TOL

    def test_pagerank_floor(self):
        g = random_graph(9, 30)
        v = exact_pagerank(g, ALPHA)
        assert v.values.min() >= ALPHA / g.node_count - 1e-12
        assert abs(v.values.sum() - 1.0) <= g.node_count * 1e-12

    def test_pagerank_is_average_of_sources(self):
        g = random_graph(4, 15)
        n = g.node_count
        avg = sum(exact_single_source(g, s, ALPHA).values for s in range(n)) / n
        assert np.allclose(avg, exact_pagerank(g, ALPHA).values, atol=1e-11)


class TestBruteForce:
    def test_singleton(self):
        # horizon h leaves exactly the geometric tail (1-alpha)^(h+1)
        got = brute_force_pair(singleton_graph(), 0, 0, ALPHA, 50)
        assert got == pytest.approx(1.0 - 0.8 ** 51, abs=1e-12)
        assert brute_force_pair(singleton_graph(), 0, 0, ALPHA, 120) == \
            pytest.approx(1.0, abs=1e-10)

    def test_chain(self):
        assert brute_force_pair(chain_graph(), 0, 1, ALPHA, 150) == \
            pytest.approx(0.8, abs=1e-10)

    def test_three_cycle_cross_check(self):
        g = cycle_graph(3)
        ex = exact_single_source(g, 0, ALPHA)[0]
        assert brute_force_pair(g, 0, 0, ALPHA, 160) == pytest.approx(ex, abs=1e-9)

    def test_cross_check_random(self):
        g = random_graph(8, 20)
        ex = exact_single_source(g, 0, ALPHA)
        for t in range(0, 20, 5):
            assert brute_force_pair(g, 0, t, ALPHA, 160) == \
                pytest.approx(ex[t], abs=1e-9)

    def test_explosion_guard(self):
        g = random_graph(0, 65)
        with pytest.raises(ExplosionGuard):
            brute_force_pair(g, 0, 1, ALPHA, 10)


def test_dump_csv(tmp_path):
    from pprquery.exact import dump_csv
    v = exact_single_source(chain_graph(), 0, ALPHA)
    p = tmp_path / "v.csv"
    dump_csv(v, p)
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "node,value"
    assert len(lines) == 3
    assert float(lines[2].split(",")[1]) == pytest.approx(0.8, abs=1e-12)
