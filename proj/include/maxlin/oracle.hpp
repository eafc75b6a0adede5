#pragma once
// Brute-force and Monte Carlo reference implementations. Evaluation here goes
// through the structural recursion X_i = max(max_j c_ij X_j, Z_i) in a locally
// computed topological order and never touches the closure C*.

#include "maxlin/context.hpp"
#include "maxlin/distributions.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maxlin::oracle {

struct Recursion {
    RatVec x;
    /// Realized galaxy; empty when two candidates tie for some node.
    std::optional<Galaxy> galaxy;
};

/// Exact structural recursion.
Recursion recursive_evaluate(const WeightedDag& model, const RatVec& z);

struct SampleBatch {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t width = 0;
    std::string dist;
    std::vector<double> z;  ///< row-major n x width
    std::vector<double> x;
    std::vector<Galaxy> galaxies;
    std::size_t attempts = 0;
    double acceptance_rate = 1.0;

    double z_at(std::size_t row, NodeId v) const { return z[row * width + v]; }
    double x_at(std::size_t row, NodeId v) const { return x[row * width + v]; }
    std::vector<double> x_column(NodeId v) const;
};

/// n unconditional draws; rows with ties are redrawn.
SampleBatch sample_model(const WeightedDag& model, std::size_t n, const InnovationDist& dist, std::uint64_t seed);

/// Realized galaxies of n draws with their counts.
std::map<Galaxy, std::size_t> mc_impact_graphs(const WeightedDag& model, std::size_t n, const InnovationDist& dist,
                                               std::uint64_t seed);

struct RejectionOptions {
    double eps = 0.01;
    double acceptance_floor = 1e-5;
    /// Draws made before the acceptance rate is checked against the floor.
    std::size_t warmup = 200000;
    std::size_t max_attempts = 2000000000;
};

/// Keeps draws with |X_k - x_k| <= eps x_k for every observed k. Throws Timeout when
/// the acceptance rate falls below the floor or the attempt budget runs out.
SampleBatch rejection_band_sampler(const WeightedDag& model, const Context& ctx, std::size_t n,
                                   const InnovationDist& dist, std::uint64_t seed, const RejectionOptions& opts = {});

/// Permutation p-value of the distance covariance of the rank-transformed samples.
double independence_test(const std::vector<double>& xs, const std::vector<double>& ys, std::uint64_t seed,
                         std::size_t permutations = 200);

/// Squared sample distance covariance, computed in O(n log n).
double distance_covariance(const std::vector<double>& xs, const std::vector<double>& ys);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// KS distance that forgives a relative horizontal shift up to `rel`:
/// the smallest D with F_a(t) <= F_b(t (1 + rel)) + D and F_b(t) <= F_a(t (1 + rel)) + D.
double ks_statistic_shifted(std::vector<double> a, std::vector<double> b, double rel);

/// Holm step-down rejections at family-wise level alpha.
std::vector<bool> holm_reject(const std::vector<double>& p_values, double alpha);

}  // namespace maxlin::oracle
