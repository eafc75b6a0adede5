#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxlin/errors.hpp"
#include "support.hpp"

#include <functional>

using namespace testing;

namespace {

// Strict ratio system z_u / z_v < w: feasible iff every cycle has product above 1.
// Min-times Floyd-Warshall over the constraint graph.
struct StrictRatios {
    std::size_t n;
    std::vector<std::vector<std::optional<Rational>>> w;  // w[v][u] bounds z_u / z_v
    explicit StrictRatios(std::size_t n) : n(n), w(n, std::vector<std::optional<Rational>>(n)) {}
    void less(std::size_t u, std::size_t v, const Rational& bound) {
        if (!w[v][u] || bound < *w[v][u]) w[v][u] = bound;
    }
    bool feasible() const {
        auto d = w;
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t a = 0; a < n; ++a) {
                if (!d[a][m]) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (!d[m][b]) continue;
                    Rational via = *d[a][m] * *d[m][b];
                    if (!d[a][b] || via < *d[a][b]) d[a][b] = via;
                }
            }
        for (std::size_t v = 0; v < n; ++v)
            if (d[v][v] && !(Rational(1) < *d[v][v])) return false;
        return true;
    }
};

// g is an impact graph iff some z realizes it: the chosen term strictly beats every other term.
bool realizable(const WeightedDag& m, const Galaxy& g) {
    StrictRatios s(m.size());
    for (NodeId i = 0; i < m.size(); ++i) {
        NodeId src = g.root_of(i);
        if (src != i && m.cs(i, src).is_zero()) return false;
        for (NodeId k = 0; k < m.size(); ++k) {
            if (k == src || m.cs(i, k).is_zero()) continue;
            // c*_ik z_k < c*_i,src z_src
            s.less(k, src, m.cs(i, src) / m.cs(i, k));
        }
    }
    return s.feasible();
}

// Every parent map in which each node takes no parent or a strict ancestor.
std::vector<Galaxy> all_parent_maps(const WeightedDag& m) {
    std::vector<Galaxy> out;
    Galaxy g(m.size());
    std::function<void(NodeId)> rec = [&](NodeId v) {
        if (v == m.size()) {
            out.push_back(g);
            return;
        }
        g.set_parent(v, std::nullopt);
        rec(v + 1);
        for (NodeId j = 0; j < m.size(); ++j)
            if (m.reaches(j, v)) {
                g.set_parent(v, j);
                rec(v + 1);
            }
        g.set_parent(v, std::nullopt);
    };
    rec(0);
    return out;
}

bool is_forest_of_stars(const Galaxy& g) {
    for (NodeId i = 0; i < g.size(); ++i)
        if (g.parent(i) && g.parent(*g.parent(i))) return false;
    return true;
}

GalaxySet impact_graphs_by_regions(const WeightedDag& m) {
    GalaxySet out;
    for (const auto& g : all_parent_maps(m))
        if (is_forest_of_stars(g) && realizable(m, g)) out.insert(g);
    return out;
}

}  // namespace

TEST_CASE("bipartite model has eight impact graphs") {
    auto m = bipartite();
    auto gs = enumerate_impact_graphs(m);
    CHECK(gs.size() == 8);
    CHECK(gs == impact_graphs_by_regions(m));
}

TEST_CASE("Cassiopeia has the empty graph, four single edges and four pairs") {
    auto gs = enumerate_impact_graphs(cassiopeia());
    CHECK(gs.size() == 9);
    std::map<std::size_t, int> by_size;
    for (const auto& g : gs) ++by_size[g.edges().size()];
    CHECK(by_size == std::map<std::size_t, int>{{0, 1}, {1, 4}, {2, 4}});
}

TEST_CASE("a single node has only the empty galaxy") {
    auto gs = enumerate_impact_graphs(make_model(1, {}));
    REQUIRE(gs.size() == 1);
    CHECK(gs.begin()->edges().empty());
}

TEST_CASE("enumeration guard") {
    auto m = make_model(6, {{1, 2, "1"}});
    CHECK_THROWS_AS(enumerate_impact_graphs(m, {5}), Error);
    CHECK(enumerate_impact_graphs(m, {6}).size() == 2);
}

TEST_CASE("impact exchange matrices") {
    auto bx = impact_exchange(bipartite(), galaxy(4, {{1, 3}, {2, 4}}));
    CHECK(bx.m == TropMatrix{{0, 2}, {2, 0}});
    CHECK(cycle_compare_one(bx.m).order == Ordering::GT);
    auto hx = impact_exchange(half_butterfly(), galaxy(5, {{1, 3}, {1, 4}, {2, 5}}));
    CHECK(hx.roots == std::vector<NodeId>{0, 1});
    CHECK(hx.m == TropMatrix{{0, q("1/2")}, {q("3/4"), 0}});
    CHECK(impact_exchange(tent(), Galaxy(5)).m == TropMatrix(5));
}

TEST_CASE("impact-graph verdicts on the worked examples") {
    auto bad = is_impact_graph(bipartite(), galaxy(4, {{1, 3}, {2, 4}}));
    CHECK_FALSE(bad.valid);
    CHECK(bad.condition == 'd');
    CHECK(bad.cycle_product == Rational(4));

    auto g1 = is_impact_graph(half_butterfly(), galaxy(5, {{1, 4}, {2, 5}, {2, 3}}));
    CHECK_FALSE(g1.valid);
    CHECK(g1.condition == 'c');
    CHECK(g1.witness == std::vector<NodeId>{0, 3, 2});

    CHECK(is_impact_graph(half_butterfly(), galaxy(5, {{1, 3}, {1, 4}, {2, 5}})).valid);
    CHECK(is_impact_graph(tent(), galaxy(5, {{3, 4}})).condition == 'a');
    CHECK(is_impact_graph(make_model(3, {{1, 2, "1"}, {2, 3, "1"}}), galaxy(3, {{1, 2}, {2, 3}})).condition == 'b');
}

TEST_CASE("realized impact graphs") {
    CHECK(realized_impact_graph(half_butterfly(), {2, 3, q("1/10"), q("2/5"), q("1/5")}) ==
          galaxy(5, {{1, 3}, {1, 4}, {2, 5}}));
    CHECK(realized_impact_graph(bipartite(), {1, q("1/3"), q("1/4"), q("1/5")}) == galaxy(4, {{1, 3}, {1, 4}}));
    CHECK(realized_impact_graph(tent(), {1, 1, 100, 100, 100}) == Galaxy(5));
    CHECK_THROWS_AS(realized_impact_graph(tent(), {1, 1, q("1/2"), q("1/2"), q("1/2")}), Error);
}

TEST_CASE("restricted Kleene star") {
    auto m = bipartite();
    auto empty = restricted_kleene(m, Galaxy(4));
    CHECK(empty.matrix == TropMatrix::identity(4));
    CHECK(empty.rank == 4);
    auto s = restricted_kleene(m, galaxy(4, {{1, 3}, {1, 4}}));
    CHECK(s.matrix == TropMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {q("1/2"), 0, 0, 0}, {1, 0, 0, 0}});
    CHECK(s.rank == 2);
}

TEST_CASE("property: enumeration equals the realizable parent maps") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        auto m = random_model(rng, 1 + trial % 5, 0.6);
        GalaxySet engine = enumerate_impact_graphs(m);
        REQUIRE(engine == impact_graphs_by_regions(m));
        for (const auto& g : engine) REQUIRE(restricted_kleene(m, g).rank == g.roots().size());
    }
}

TEST_CASE("property: realized galaxies pass the characterization and linearize evaluation") {
    std::mt19937_64 rng(32);
    std::size_t checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_model(rng, 2 + trial % 5, 0.6);
        GalaxySet all = enumerate_impact_graphs(m);
        for (int draw = 0; draw < 40; ++draw) {
            RatVec z = random_innovations(rng, m.size());
            auto rec = oracle::recursive_evaluate(m, z);
            if (!rec.galaxy) continue;
            Galaxy g = realized_impact_graph(m, z);
            REQUIRE(g == *rec.galaxy);
            REQUIRE(is_impact_graph(m, g).valid);
            REQUIRE(all.count(g));
            // One term per row: x = C*_g z as an ordinary product.
            auto star = restricted_kleene(m, g).matrix;
            for (NodeId i = 0; i < m.size(); ++i) {
                int terms = 0;
                Rational sum;
                for (NodeId j = 0; j < m.size(); ++j)
                    if (!star(i, j).is_zero()) {
                        ++terms;
                        sum = sum + star(i, j) * z[j];
                    }
                REQUIRE(terms == 1);
                REQUIRE(sum == rec.x[i]);
            }
            auto ex = impact_exchange(m, g);
            RatVec zr;
            for (NodeId r : ex.roots) zr.push_back(z[r]);
            RatVec lhs = trop_mul(ex.m, zr);
            for (std::size_t a = 0; a < zr.size(); ++a) REQUIRE_FALSE(zr[a] < lhs[a]);
            ++checked;
        }
    }
    CHECK(checked > 1500);
}

TEST_CASE("property: Monte Carlo realizes exactly the enumerated impact graphs") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 6; ++trial) {
        auto m = random_model(rng, 3 + trial % 3, 0.6);
        GalaxySet all = enumerate_impact_graphs(m);
        std::set<Galaxy> seen;
        for (const auto& [g, count] : oracle::mc_impact_graphs(m, 100000, InnovationDist::frechet(), 100 + trial))
            seen.insert(g);
        if (seen != all) {
            for (const auto& [g, count] : oracle::mc_impact_graphs(m, 100000, InnovationDist::frechet(), 900 + trial))
                seen.insert(g);
        }
        REQUIRE(seen == all);
    }
}
