#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace maxlin {

/// Seeded generator with an open-interval uniform draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform on (0, 1).
    double uniform();
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

/// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Atom-free innovation law on (0, inf).
class InnovationDist {
public:
    enum class Family { Frechet, LogNormal, Pareto };

    static InnovationDist frechet() { return InnovationDist(Family::Frechet, 0, 1); }
    static InnovationDist lognormal(double mu, double sigma);
    /// Lomax form: F(z) = 1 - (1 + z)^(-alpha).
    static InnovationDist pareto(double alpha);
    /// "frechet", "lognormal:MU,SIGMA" or "pareto:ALPHA".
    static InnovationDist parse(const std::string& text);

    Family family() const { return family_; }
    std::string name() const;

    double cdf(double z) const;
    double log_cdf(double z) const;
    double log_pdf(double z) const;
    double quantile(double p) const;

    double sample(Rng& rng) const;
    /// Draw conditioned on Z < bound.
    double sample_below(Rng& rng, double bound) const;

private:
    InnovationDist(Family f, double a, double b) : family_(f), p1_(a), p2_(b) {}
    Family family_;
    double p1_;  // mu or alpha
    double p2_;  // sigma
};

}  // namespace maxlin
