#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxlin/errors.hpp"
#include "support.hpp"

#include <functional>

using namespace testing;

namespace {

// Every directed path from `from` to `to`, as node lists.
std::vector<std::vector<NodeId>> all_paths(const WeightedDag& m, NodeId from, NodeId to) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> stack{from};
    std::function<void(NodeId)> dfs = [&](NodeId v) {
        if (v == to && stack.size() > 1) {
            out.push_back(stack);
            return;
        }
        for (NodeId w : m.children()[v]) {
            stack.push_back(w);
            dfs(w);
            stack.pop_back();
        }
    };
    dfs(from);
    return out;
}

Rational path_weight(const WeightedDag& m, const std::vector<NodeId>& p) {
    Rational w(1);
    for (std::size_t t = 0; t + 1 < p.size(); ++t) w *= m.c()(p[t + 1], p[t]);
    return w;
}

bool interior_meets(const std::vector<NodeId>& p, const NodeSet& k) {
    for (std::size_t t = 1; t + 1 < p.size(); ++t)
        if (k.count(p[t])) return true;
    return false;
}

EdgeSet conditional_reach_by_paths(const WeightedDag& m, const NodeSet& k) {
    EdgeSet out;
    for (NodeId j = 0; j < m.size(); ++j)
        for (NodeId i = 0; i < m.size(); ++i)
            for (const auto& p : all_paths(m, j, i))
                if (!interior_meets(p, k)) out.insert({j, i});
    return out;
}

EdgeSet critical_by_paths(const WeightedDag& m, const NodeSet& k) {
    EdgeSet out;
    for (NodeId j = 0; j < m.size(); ++j)
        for (NodeId i = 0; i < m.size(); ++i) {
            auto paths = all_paths(m, j, i);
            if (paths.empty()) continue;
            Rational best;
            for (const auto& p : paths) best = tmax(best, path_weight(m, p));
            bool blocked = false;
            for (const auto& p : paths)
                if (path_weight(m, p) == best && interior_meets(p, k)) blocked = true;
            if (!blocked) out.insert({j, i});
        }
    return out;
}

bool subset(const EdgeSet& a, const EdgeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("evaluate on the worked examples") {
    CHECK(evaluate(half_butterfly(), {2, 3, q("1/10"), q("2/5"), q("1/5")}) == RatVec{2, 3, 2, 6, 12});
    CHECK(evaluate(tent(), {2, 1, q("1/2"), q("1/4"), q("1/4")}) == RatVec{2, 1, 2, 2, 2});
    WeightedDag empty = make_model(3, {});
    RatVec z{q("1/3"), 5, 7};
    CHECK(evaluate(empty, z) == z);
}

TEST_CASE("evaluate rejects bad innovations") {
    CHECK_THROWS_AS(evaluate(tent(), {1, 1, 1}), Error);
    CHECK_THROWS_AS(evaluate(tent(), {1, 1, 0, 1, 1}), Error);
}

TEST_CASE("model construction rejects invalid graphs") {
    CHECK_THROWS_AS(make_model(2, {{1, 2, "1"}, {2, 1, "1"}}), Error);
    CHECK_THROWS_AS(make_model(2, {{1, 1, "1"}}), Error);
    CHECK_THROWS_AS(make_model(2, {{1, 2, "1"}, {1, 2, "2"}}), Error);
    CHECK_THROWS_AS(make_model(2, {{1, 2, "0"}}), Error);
    CHECK_THROWS_AS(make_model(2, {{1, 2, "-1"}}), Error);
}

TEST_CASE("C* is lower triangular in topological order with a unit diagonal") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_model(rng, 2 + trial % 6, 0.5);
        const auto& topo = m.topological_order();
        for (std::size_t a = 0; a < topo.size(); ++a) {
            REQUIRE(m.cs(topo[a], topo[a]) == Rational(1));
            for (std::size_t b = a + 1; b < topo.size(); ++b) REQUIRE(m.cs(topo[a], topo[b]).is_zero());
        }
    }
}

TEST_CASE("conditional reachability DAG") {
    CHECK(conditional_reach_dag(diamond(), nodes({2})).edges.count(edge(1, 4)));
    CHECK(conditional_reach_dag(cassiopeia(), nodes({4, 5})).edges == cassiopeia().edges());
    CHECK(conditional_reach_dag(tent(), {}).edges == reachability_dag(tent()).edges);
}

TEST_CASE("critical DAG") {
    CHECK_FALSE(critical_dag(diamond(), nodes({2})).edges.count(edge(1, 4)));
    CHECK(critical_dag(diamond("1", "1", "1", "2"), nodes({2})).edges.count(edge(1, 4)));
    CHECK_FALSE(critical_dag(zigzag(), nodes({4, 5})).edges.count(edge(1, 2)));
    CHECK(critical_dag(umbrella(), {}).edges == reachability_dag(umbrella()).edges);
}

TEST_CASE("property: derived DAGs match path enumeration and are nested") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        auto m = random_model(rng, 2 + trial % 6, 0.55);
        NodeSet k = random_subset(rng, m.size(), 3);
        EdgeSet reach = reachability_dag(m).edges;
        EdgeSet cond = conditional_reach_dag(m, k).edges;
        EdgeSet crit = critical_dag(m, k).edges;
        REQUIRE(cond == conditional_reach_by_paths(m, k));
        REQUIRE(crit == critical_by_paths(m, k));
        REQUIRE(subset(crit, cond));
        REQUIRE(subset(cond, reach));
    }
}

TEST_CASE("property: closure evaluation matches the recursion and is idempotent") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        auto m = random_model(rng, 1 + trial % 7, 0.5);
        RatVec z = random_innovations(rng, m.size());
        RatVec x = evaluate(m, z);
        REQUIRE(x == oracle::recursive_evaluate(m, z).x);
        REQUIRE(evaluate(m, x) == x);
    }
}
