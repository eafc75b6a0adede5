#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxlin/errors.hpp"
#include "maxlin/representation.hpp"
#include "support.hpp"

#include <cmath>

using namespace testing;

namespace {

double eval(const MaxLinearExpr& e, const double* z) {
    double v = e.constant.to_double();
    for (const auto& [j, coef] : e.terms) v = std::max(v, coef.to_double() * z[j]);
    return v;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<Term> terms(std::initializer_list<std::pair<int, const char*>> ts) {
    std::vector<Term> out;
    for (auto [v, c] : ts) out.emplace_back(static_cast<NodeId>(v - 1), q(c));
    return out;
}

std::vector<Term> sorted(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end());
    return ts;
}

// Values of X_a carrying at least `min_count` samples.
std::set<double> point_masses(const SampleSet& s, NodeId a, std::size_t min_count) {
    std::map<double, std::size_t> counts;
    for (std::size_t r = 0; r < s.n; ++r) ++counts[s.x_at(r, a)];
    std::set<double> out;
    for (const auto& [v, c] : counts)
        if (c >= min_count) out.insert(v);
    return out;
}

std::set<double> as_doubles(const std::set<Rational>& rs) {
    std::set<double> out;
    for (const auto& r : rs) out.insert(r.to_double());
    return out;
}

}  // namespace

TEST_CASE("compact representation of the umbrella") {
    auto m = umbrella();
    auto a = analyze_context(m, context(m, {{6, "3"}, {7, "3"}}));
    auto rep = build_representation(m, a);
    CHECK(rep.alpha.at(1) == Rational(3));
    CHECK(rep.alpha.at(2) == Rational(3));
    for (int v : {1, 4, 5}) CHECK(rep.bounds[v - 1] == std::optional<Rational>(3));
    REQUIRE(rep.equations.size() == 1);
    CHECK(rep.equations[0].value == Rational(3));
    CHECK(sorted(rep.equations[0].terms) == terms({{4, "1"}, {5, "1"}}));
    CHECK(z_dependency_blocks(rep) == std::vector<NodeSet>{nodes({1}), nodes({2}), nodes({3}), nodes({4, 5}),
                                                            nodes({6}), nodes({7})});
    CHECK(atoms_of(m, a, 1) == std::set<Rational>{3, 6});
}

TEST_CASE("compact representation of the tent") {
    auto m = tent();
    auto a = analyze_context(m, context(m, {{4, "2"}, {5, "2"}}));
    auto rep = build_representation(m, a);
    CHECK(rep.alpha.at(2) == Rational(2));
    REQUIRE(rep.equations.size() == 1);
    CHECK(rep.equations[0].value == Rational(2));
    CHECK(sorted(rep.equations[0].terms) == terms({{1, "1"}, {2, "1"}}));
    CHECK(atoms_of(m, a, 2) == std::set<Rational>{2});
    CHECK(z_dependency_blocks(rep).front() == nodes({1, 2}));
}

TEST_CASE("without equations every variable is its own block") {
    auto m = tent();
    auto a = analyze_context(m, Context{});
    auto rep = build_representation(m, a);
    CHECK(rep.equations.empty());
    CHECK(z_dependency_blocks(rep).size() == 5);
    CHECK(atoms_of(m, a, 0).empty());
}

TEST_CASE("basic representation") {
    auto c = cassiopeia();
    auto bc = basic_representation(c, analyze_context(c, context(c, {{4, "2"}, {5, "2"}})));
    CHECK(bc.x.at(0).constant.is_zero());
    CHECK(bc.x.at(0).terms == terms({{1, "1"}}));
    CHECK(bc.constraints.at(3).terms == terms({{1, "1"}, {2, "1"}, {4, "1"}}));
    CHECK(bc.constraints.at(4).terms == terms({{2, "1"}, {3, "1"}, {5, "1"}}));

    auto d = diamond();
    auto bd = basic_representation(d, analyze_context(d, context(d, {{2, "1"}})));
    CHECK(bd.x.at(3).constant == Rational(2));
    CHECK(bd.x.at(3).terms == terms({{1, "2"}, {3, "1"}, {4, "1"}}));
    CHECK(bd.constraints.at(1).constant == Rational(1));
    CHECK(bd.constraints.at(1).terms == terms({{1, "1"}, {2, "1"}}));

    auto t = tent();
    auto bt = basic_representation(t, analyze_context(t, Context{}));
    CHECK(bt.constraints.empty());
    CHECK(bt.x.size() == 5);
}

TEST_CASE("sampler: equations hold exactly and both umbrella terms achieve") {
    auto m = umbrella();
    auto rep = build_representation(m, analyze_context(m, context(m, {{6, "3"}, {7, "3"}})));
    auto s = conditional_sampler(rep, InnovationDist::frechet(), 10000, 7);
    std::size_t z4 = 0, z5 = 0;
    for (std::size_t r = 0; r < s.n; ++r) {
        bool a4 = s.z_at(r, 3) == 3.0, a5 = s.z_at(r, 4) == 3.0;
        REQUIRE(a4 != a5);
        z4 += a4;
        z5 += a5;
        for (int v : {0, 3, 4}) REQUIRE(s.z_at(r, v) <= 3.0);
    }
    CHECK(z4 + z5 == s.n);
    CHECK(z4 > 0);
    CHECK(z5 > 0);
}

TEST_CASE("sampler is deterministic given the seed") {
    auto m = tent();
    auto rep = build_representation(m, analyze_context(m, context(m, {{4, "2"}, {5, "2"}})));
    auto a = conditional_sampler(rep, InnovationDist::frechet(), 3000, 5);
    auto b = conditional_sampler(rep, InnovationDist::frechet(), 3000, 5);
    auto c = conditional_sampler(rep, InnovationDist::frechet(), 3000, 6);
    CHECK(a.z == b.z);
    CHECK(a.x == b.x);
    CHECK(a.z != c.z);
    CHECK_THROWS_AS(conditional_sampler(rep, InnovationDist::frechet(), 0, 5), Error);
}

TEST_CASE("atoms of the worked examples match empirical point masses") {
    struct Case {
        WeightedDag m;
        Context ctx;
    };
    auto u = umbrella();
    auto t = tent();
    auto hb = half_butterfly();
    std::vector<Case> cases{{u, context(u, {{6, "3"}, {7, "3"}})},
                            {t, context(t, {{4, "2"}, {5, "2"}})},
                            {hb, context(hb, {{4, "1"}, {5, "1"}})}};
    const std::size_t n = 20000;
    for (const auto& [m, ctx] : cases) {
        auto a = analyze_context(m, ctx);
        auto s = conditional_sampler(build_representation(m, a), InnovationDist::frechet(), n, 11);
        for (NodeId v : a.partition.a) {
            CAPTURE(v);
            CHECK(point_masses(s, v, 10) == as_doubles(atoms_of(m, a, v)));
        }
    }
}

TEST_CASE("property: samples satisfy the unreduced representation on random contexts") {
    std::mt19937_64 rng(51);
    int contexts = 0, equations = 0;
    while (contexts < 80) {
        auto m = random_model(rng, 3 + contexts % 4, 0.6, contexts % 2 == 1);
        NodeSet k = random_subset(rng, m.size(), 3);
        Context ctx = random_context(rng, m, k);
        ++contexts;
        CAPTURE(contexts);
        auto a = analyze_context(m, ctx);
        auto rep = build_representation(m, a);
        auto basic = basic_representation(m, a);
        equations += static_cast<int>(rep.equations.size());

        // Equations are variable-disjoint and each term can reach its level.
        std::set<NodeId> seen;
        for (const auto& eq : rep.equations)
            for (const auto& [j, coef] : eq.terms) {
                REQUIRE(seen.insert(j).second);
                REQUIRE((!rep.bounds[j] || !(*rep.bounds[j] < eq.value / coef)));
            }

        auto s = conditional_sampler(rep, InnovationDist::frechet(), 300, contexts);
        std::vector<std::vector<std::size_t>> hits(rep.equations.size());
        for (auto& h : hits) h.resize(8, 0);
        for (std::size_t r = 0; r < s.n; ++r) {
            const double* z = &s.z[r * s.width];
            for (const auto& [v, expr] : basic.x) REQUIRE(close(s.x_at(r, v), eval(expr, z)));
            for (const auto& [v, expr] : basic.constraints) {
                double reached = 0;
                for (const auto& [j, coef] : expr.terms) reached = std::max(reached, coef.to_double() * z[j]);
                REQUIRE(close(reached, expr.constant.to_double()));
            }
            for (std::size_t t = 0; t < rep.equations.size(); ++t) ++hits[t][s.achiever[r * rep.equations.size() + t]];
        }
        // Every term of every equation achieves at least once.
        for (std::size_t t = 0; t < rep.equations.size(); ++t)
            for (std::size_t i = 0; i < rep.equations[t].terms.size(); ++i) REQUIRE(hits[t][i] > 0);
    }
    CHECK(equations > 20);
}
