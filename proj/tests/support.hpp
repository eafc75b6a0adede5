#pragma once
// Shared fixtures: the worked-example models and seeded random generators.

#include "maxlin/context.hpp"
#include "maxlin/distributions.hpp"
#include "maxlin/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <tuple>
#include <string>
#include <vector>

namespace testing {

using namespace maxlin;

inline Rational q(const char* s) { return Rational::parse(s); }

inline WeightedDag make_model(int n, const std::vector<std::tuple<int, int, const char*>>& edges) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    std::vector<WeightedEdge> es;
    for (auto [a, b, w] : edges) es.push_back({static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1), q(w)});
    return WeightedDag(labels, es);
}

inline WeightedDag bipartite() { return make_model(4, {{1, 3, "1/2"}, {2, 3, "1"}, {1, 4, "1"}, {2, 4, "1/2"}}); }
inline WeightedDag half_butterfly() {
    return make_model(5, {{1, 3, "1"}, {2, 3, "1/2"}, {3, 4, "3"}, {3, 5, "3"}, {2, 5, "4"}});
}
inline WeightedDag cassiopeia() { return make_model(5, {{1, 4, "1"}, {2, 4, "1"}, {2, 5, "1"}, {3, 5, "1"}}); }
inline WeightedDag tent() {
    return make_model(5, {{1, 3, "1"}, {1, 4, "1"}, {1, 5, "1"}, {2, 3, "1"}, {2, 4, "1"}, {2, 5, "1"}});
}
inline WeightedDag umbrella() {
    return make_model(7, {{1, 2, "2"}, {1, 3, "2"}, {1, 7, "1"}, {4, 2, "2"}, {4, 6, "1"}, {4, 7, "1"}, {4, 3, "1"},
                          {5, 2, "1"}, {5, 6, "1"}, {5, 7, "1"}, {5, 3, "2"}});
}
/// c42 c21 >= c43 c31.
inline WeightedDag diamond(const char* c21 = "1", const char* c31 = "1", const char* c42 = "2", const char* c43 = "1") {
    return make_model(4, {{1, 2, c21}, {1, 3, c31}, {2, 4, c42}, {3, 4, c43}});
}
inline WeightedDag zigzag() { return make_model(5, {{1, 4, "1"}, {3, 4, "1"}, {3, 2, "1"}, {5, 2, "1"}, {1, 5, "1"}}); }
inline WeightedDag two_branch(const char* c41, const char* c43) {
    return make_model(4, {{1, 2, "1"}, {1, 4, c41}, {3, 4, c43}});
}

/// 1-based labels to ids.
inline NodeSet nodes(std::initializer_list<int> ls) {
    NodeSet s;
    for (int l : ls) s.insert(static_cast<NodeId>(l - 1));
    return s;
}
inline Edge edge(int a, int b) { return {static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1)}; }
inline EdgeSet edges(std::initializer_list<std::pair<int, int>> es) {
    EdgeSet s;
    for (auto [a, b] : es) s.insert(edge(a, b));
    return s;
}
inline Context context(const WeightedDag& m, std::initializer_list<std::pair<int, const char*>> obs) {
    std::map<NodeId, Rational> o;
    for (auto [k, v] : obs) o[static_cast<NodeId>(k - 1)] = q(v);
    return make_context(m, o);
}
inline Galaxy galaxy(std::size_t n, std::initializer_list<std::pair<int, int>> es) { return Galaxy(n, edges(es)); }

/// Weights drawn from a small set so that ties between path products are common.
/// Unit weights make constant blocks with several parents likely.
inline WeightedDag random_model(std::mt19937_64& rng, std::size_t n, double density, bool unit = false) {
    static const char* weights[] = {"1/2", "1", "1", "2", "3/2", "3", "1/3"};
    std::bernoulli_distribution coin(density);
    std::uniform_int_distribution<int> pick(0, 6);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<WeightedEdge> es;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng)) es.push_back({perm[a], perm[b], unit ? Rational(1) : q(weights[pick(rng)])});
    return WeightedDag(labels, es);
}

/// Innovations with small denominators so exact arithmetic stays cheap.
inline RatVec random_innovations(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(1, 400);
    RatVec z(n);
    for (auto& v : z) v = Rational(num(rng), 40);
    return z;
}

/// A context read off one realization, so it is possible.
inline Context random_context(std::mt19937_64& rng, const WeightedDag& m, const NodeSet& k) {
    RatVec x = oracle::recursive_evaluate(m, random_innovations(rng, m.size())).x;
    std::map<NodeId, Rational> obs;
    for (NodeId v : k) obs[v] = x[v];
    return make_context(m, obs);
}

inline NodeSet random_subset(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, max_size));
    std::size_t s = std::min(size(rng), n);
    return NodeSet(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s));
}

}  // namespace testing
