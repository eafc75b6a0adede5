#include "maxlin/distributions.hpp"

#include "maxlin/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <sstream>

namespace maxlin {

double Rng::uniform() {
    // 53 random bits, shifted half a step off zero.
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

InnovationDist InnovationDist::lognormal(double mu, double sigma) {
    if (!(sigma > 0) || !std::isfinite(mu)) fail(ErrorCode::InvalidArgument, "lognormal needs finite mu and sigma > 0");
    return InnovationDist(Family::LogNormal, mu, sigma);
}

InnovationDist InnovationDist::pareto(double alpha) {
    if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "pareto needs alpha > 0");
    return InnovationDist(Family::Pareto, alpha, 0);
}

InnovationDist InnovationDist::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "bad distribution parameter in \"" + text + "\"");
        }
    };
    if (head == "frechet" && args.empty()) return frechet();
    if (head == "lognormal") {
        if (args.empty()) return lognormal(0.0, 1.0);
        auto comma = args.find(',');
        if (comma == std::string::npos) fail(ErrorCode::InvalidArgument, "lognormal expects MU,SIGMA");
        return lognormal(number(args.substr(0, comma)), number(args.substr(comma + 1)));
    }
    if (head == "pareto") return pareto(args.empty() ? 1.0 : number(args));
    fail(ErrorCode::InvalidArgument, "unknown distribution \"" + text + "\" (frechet, lognormal:MU,SIGMA, pareto:ALPHA)");
}

std::string InnovationDist::name() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
        case Family::Frechet: return "frechet";
        case Family::LogNormal: os << "lognormal:" << p1_ << "," << p2_; return os.str();
        case Family::Pareto: os << "pareto:" << p1_; return os.str();
    }
    return "?";
}

double InnovationDist::cdf(double z) const { return z <= 0 ? 0.0 : std::exp(log_cdf(z)); }

double InnovationDist::log_cdf(double z) const {
    if (z <= 0) return -INFINITY;
    switch (family_) {
        case Family::Frechet: return -1.0 / z;
        case Family::LogNormal: {
            boost::math::normal_distribution<double> n(p1_, p2_);
            double p = boost::math::cdf(n, std::log(z));
            return p > 0 ? std::log(p) : -INFINITY;
        }
        case Family::Pareto: return std::log1p(-std::exp(-p1_ * std::log1p(z)));
    }
    return 0;
}

double InnovationDist::log_pdf(double z) const {
    if (z <= 0) return -INFINITY;
    switch (family_) {
        case Family::Frechet: return -2.0 * std::log(z) - 1.0 / z;
        case Family::LogNormal: {
            double t = (std::log(z) - p1_) / p2_;
            return -0.5 * t * t - std::log(z * p2_) - 0.5 * std::log(2 * M_PI);
        }
        case Family::Pareto: return std::log(p1_) - (p1_ + 1) * std::log1p(z);
    }
    return 0;
}

double InnovationDist::quantile(double p) const {
    if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "quantile needs p in (0,1)");
    switch (family_) {
        case Family::Frechet: return -1.0 / std::log(p);
        case Family::LogNormal: {
            boost::math::normal_distribution<double> n(p1_, p2_);
            return std::exp(boost::math::quantile(n, p));
        }
        case Family::Pareto: return std::expm1(-std::log1p(-p) / p1_);
    }
    return 0;
}

double InnovationDist::sample(Rng& rng) const { return quantile(rng.uniform()); }

double InnovationDist::sample_below(Rng& rng, double bound) const {
    double u = rng.uniform();
    switch (family_) {
        case Family::Frechet:
            // log F(z) = log u + log F(bound), solved in closed form.
            return 1.0 / (1.0 / bound - std::log(u));
        case Family::LogNormal: {
            boost::math::normal_distribution<double> n(p1_, p2_);
            double pb = boost::math::cdf(n, std::log(bound));
            if (pb <= 0) return bound;
            double p = u * pb;
            return std::min(bound, std::exp(boost::math::quantile(n, p)));
        }
        case Family::Pareto: {
            double pb = -std::expm1(-p1_ * std::log1p(bound));
            double p = u * pb;
            return std::min(bound, std::expm1(-std::log1p(-p) / p1_));
        }
    }
    return bound;
}

}  // namespace maxlin
