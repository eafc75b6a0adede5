#include "maxlin/oracle.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxlin::oracle {

namespace {

struct Structure {
    std::vector<NodeId> order;
    std::vector<std::vector<std::pair<NodeId, Rational>>> parents;
    std::vector<std::vector<std::pair<NodeId, double>>> parents_f;
};

Structure structure_of(const WeightedDag& model) {
    const std::size_t n = model.size();
    const TropMatrix& c = model.c();
    Structure s;
    s.parents.resize(n);
    s.parents_f.resize(n);
    std::vector<std::size_t> indegree(n, 0);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (!c(i, j).is_zero()) {
                s.parents[i].emplace_back(j, c(i, j));
                s.parents_f[i].emplace_back(j, c(i, j).to_double());
                ++indegree[i];
            }
    std::vector<NodeId> ready;
    for (NodeId i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        NodeId v = ready.back();
        ready.pop_back();
        s.order.push_back(v);
        for (NodeId i = 0; i < n; ++i)
            if (!c(i, v).is_zero() && --indegree[i] == 0) ready.push_back(i);
    }
    return s;
}

// Float recursion with source tracking. Returns false on a tie between distinct sources.
bool run_recursion(const Structure& s, const double* z, double* x, std::vector<NodeId>& source) {
    for (NodeId i : s.order) {
        double best = z[i];
        NodeId src = i;
        bool tie = false;
        for (const auto& [j, coef] : s.parents_f[i]) {
            double v = coef * x[j];
            if (v > best) {
                best = v;
                src = source[j];
                tie = false;
            } else if (v == best && source[j] != src) {
                tie = true;
            }
        }
        if (tie) return false;
        x[i] = best;
        source[i] = src;
    }
    return true;
}

Galaxy galaxy_from_sources(const std::vector<NodeId>& source) {
    Galaxy g(source.size());
    for (NodeId i = 0; i < source.size(); ++i)
        if (source[i] != i) g.set_parent(i, source[i]);
    return g;
}

void validate_dist_draw(double v) {
    if (!(v > 0) || !std::isfinite(v)) fail(ErrorCode::InvalidArgument, "innovation draw outside (0, inf)");
}

constexpr std::size_t kChunk = 1024;

}  // namespace

Recursion recursive_evaluate(const WeightedDag& model, const RatVec& z) {
    const std::size_t n = model.size();
    if (z.size() != n) fail(ErrorCode::DimensionMismatch, "recursive_evaluate: z has the wrong length");
    Structure s = structure_of(model);
    Recursion out;
    out.x.assign(n, Rational());
    std::vector<NodeId> source(n);
    bool tie = false;
    for (NodeId i : s.order) {
        Rational best = z[i];
        NodeId src = i;
        bool local_tie = false;
        for (const auto& [j, coef] : s.parents[i]) {
            Rational v = coef * out.x[j];
            if (best < v) {
                best = v;
                src = source[j];
                local_tie = false;
            } else if (v == best && source[j] != src) {
                local_tie = true;
            }
        }
        tie = tie || local_tie;
        out.x[i] = best;
        source[i] = src;
    }
    if (!tie) out.galaxy = galaxy_from_sources(source);
    return out;
}

std::vector<double> SampleBatch::x_column(NodeId v) const {
    std::vector<double> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = x_at(r, v);
    return col;
}

SampleBatch sample_model(const WeightedDag& model, std::size_t n, const InnovationDist& dist, std::uint64_t seed) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "sample count must be positive");
    const std::size_t w = model.size();
    Structure s = structure_of(model);
    SampleBatch out;
    out.seed = seed;
    out.n = n;
    out.width = w;
    out.dist = dist.name();
    out.z.assign(n * w, 0.0);
    out.x.assign(n * w, 0.0);
    out.galaxies.reserve(n);
    std::vector<NodeId> source(w);
    for (std::size_t start = 0; start < n; start += kChunk) {
        Rng rng(mix_seed(seed, start / kChunk));
        for (std::size_t row = start; row < std::min(n, start + kChunk); ++row) {
            double* z = &out.z[row * w];
            double* x = &out.x[row * w];
            do {
                ++out.attempts;
                for (NodeId v = 0; v < w; ++v) {
                    z[v] = dist.sample(rng);
                    validate_dist_draw(z[v]);
                }
            } while (!run_recursion(s, z, x, source));
            out.galaxies.push_back(galaxy_from_sources(source));
        }
    }
    out.acceptance_rate = static_cast<double>(n) / static_cast<double>(out.attempts);
    return out;
}

std::map<Galaxy, std::size_t> mc_impact_graphs(const WeightedDag& model, std::size_t n, const InnovationDist& dist,
                                               std::uint64_t seed) {
    SampleBatch batch = sample_model(model, n, dist, seed);
    std::map<Galaxy, std::size_t> counts;
    for (const auto& g : batch.galaxies) ++counts[g];
    return counts;
}

SampleBatch rejection_band_sampler(const WeightedDag& model, const Context& ctx, std::size_t n,
                                   const InnovationDist& dist, std::uint64_t seed, const RejectionOptions& opts) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "sample count must be positive");
    if (!(opts.eps > 0)) fail(ErrorCode::InvalidArgument, "band width must be positive");
    const std::size_t w = model.size();
    Structure s = structure_of(model);
    std::vector<std::pair<NodeId, double>> targets;
    for (const auto& [k, value] : ctx.observed) targets.emplace_back(k, value.to_double());

    SampleBatch out;
    out.seed = seed;
    out.n = n;
    out.width = w;
    out.dist = dist.name();
    out.z.assign(n * w, 0.0);
    out.x.assign(n * w, 0.0);
    out.galaxies.reserve(n);
    std::vector<double> z(w), x(w);
    std::vector<NodeId> source(w);
    std::size_t accepted = 0;
    for (std::uint64_t stream = 0; accepted < n; ++stream) {
        Rng rng(mix_seed(seed, stream));
        for (std::size_t t = 0; t < kChunk && accepted < n; ++t) {
            ++out.attempts;
            for (NodeId v = 0; v < w; ++v) z[v] = dist.sample(rng);
            if (!run_recursion(s, z.data(), x.data(), source)) continue;
            bool inside = std::all_of(targets.begin(), targets.end(), [&](const auto& kv) {
                return std::abs(x[kv.first] - kv.second) <= opts.eps * kv.second;
            });
            if (!inside) continue;
            std::copy(z.begin(), z.end(), out.z.begin() + static_cast<std::ptrdiff_t>(accepted * w));
            std::copy(x.begin(), x.end(), out.x.begin() + static_cast<std::ptrdiff_t>(accepted * w));
            out.galaxies.push_back(galaxy_from_sources(source));
            ++accepted;
        }
        const double rate = static_cast<double>(accepted) / static_cast<double>(out.attempts);
        if (accepted < n && ((out.attempts >= opts.warmup && rate < opts.acceptance_floor) || out.attempts >= opts.max_attempts))
            fail(ErrorCode::Timeout, "rejection sampler: acceptance rate " + std::to_string(rate) + " after " +
                                         std::to_string(out.attempts) + " draws");
    }
    out.acceptance_rate = static_cast<double>(n) / static_cast<double>(out.attempts);
    return out;
}

namespace {

std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = rank;
        i = j + 1;
    }
    return r;
}

// Row sums a_i = sum_j |v_i - v_j|.
std::vector<double> abs_row_sums(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    std::vector<double> out(n);
    double below = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double x = v[idx[t]];
        const double above = total - below - x;
        out[idx[t]] = x * static_cast<double>(t) - below + above - x * static_cast<double>(n - 1 - t);
        below += x;
    }
    return out;
}

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : t_(n + 1, 0.0) {}
    void add(std::size_t i, double v) {
        for (++i; i < t_.size(); i += i & -i) t_[i] += v;
    }
    double prefix(std::size_t i) const {  // sum over [0, i)
        double s = 0;
        for (; i > 0; i -= i & -i) s += t_[i];
        return s;
    }

private:
    std::vector<double> t_;
};

// sum_{i,j} |x_i - x_j| |y_i - y_j|, with x visited in order `x_order` and y given by dense ranks.
double cross_term(const std::vector<double>& x, const std::vector<double>& y, const std::vector<std::size_t>& x_order,
                  const std::vector<std::size_t>& y_rank, std::size_t y_levels) {
    Fenwick cnt(y_levels), sx(y_levels), sy(y_levels), sxy(y_levels);
    double tot_cnt = 0, tot_x = 0, tot_y = 0, tot_xy = 0;
    double acc = 0;
    for (std::size_t i : x_order) {
        const std::size_t r = y_rank[i];
        const double xi = x[i], yi = y[i];
        // Earlier points have x_j <= x_i. Split by y_j < y_i and y_j >= y_i.
        const double c_lo = cnt.prefix(r), x_lo = sx.prefix(r), y_lo = sy.prefix(r), xy_lo = sxy.prefix(r);
        const double c_hi = tot_cnt - c_lo, x_hi = tot_x - x_lo, y_hi = tot_y - y_lo, xy_hi = tot_xy - xy_lo;
        const double lo = c_lo * xi * yi - xi * y_lo - yi * x_lo + xy_lo;
        const double hi = c_hi * xi * yi - xi * y_hi - yi * x_hi + xy_hi;
        acc += lo - hi;
        cnt.add(r, 1);
        sx.add(r, xi);
        sy.add(r, yi);
        sxy.add(r, xi * yi);
        tot_cnt += 1;
        tot_x += xi;
        tot_y += yi;
        tot_xy += xi * yi;
    }
    return 2 * acc;
}

struct DcovPrep {
    std::size_t n;
    std::vector<double> x, y;
    std::vector<std::size_t> x_order;
    std::vector<double> a, b;
    std::vector<std::size_t> y_rank;
    std::size_t y_levels = 0;
    double s2;
};

DcovPrep prepare(const std::vector<double>& xs, const std::vector<double>& ys) {
    DcovPrep p;
    p.n = xs.size();
    p.x = xs;
    p.y = ys;
    p.x_order.resize(p.n);
    std::iota(p.x_order.begin(), p.x_order.end(), 0);
    std::stable_sort(p.x_order.begin(), p.x_order.end(), [&](std::size_t a, std::size_t b) { return p.x[a] < p.x[b]; });
    p.a = abs_row_sums(p.x);
    p.b = abs_row_sums(p.y);
    std::vector<double> levels(p.y);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    p.y_levels = levels.size();
    p.y_rank.resize(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
        p.y_rank[i] = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), p.y[i]) - levels.begin());
    const double nn = static_cast<double>(p.n) * static_cast<double>(p.n);
    p.s2 = std::accumulate(p.a.begin(), p.a.end(), 0.0) / nn * std::accumulate(p.b.begin(), p.b.end(), 0.0) / nn;
    return p;
}

double dcov_with(const DcovPrep& p, const std::vector<std::size_t>& perm) {
    // y_perm[i] = y[perm[i]].
    const std::size_t n = p.n;
    std::vector<double> y(n), b(n);
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = p.y[perm[i]];
        b[i] = p.b[perm[i]];
        rank[i] = p.y_rank[perm[i]];
    }
    const double nd = static_cast<double>(n);
    const double s1 = cross_term(p.x, y, p.x_order, rank, p.y_levels) / (nd * nd);
    double s3 = 0;
    for (std::size_t i = 0; i < n; ++i) s3 += p.a[i] * b[i];
    s3 /= nd * nd * nd;
    return s1 + p.s2 - 2 * s3;
}

}  // namespace

double distance_covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty()) fail(ErrorCode::DimensionMismatch, "distance_covariance: length mismatch");
    DcovPrep p = prepare(xs, ys);
    std::vector<std::size_t> id(xs.size());
    std::iota(id.begin(), id.end(), 0);
    return dcov_with(p, id);
}

double independence_test(const std::vector<double>& xs, const std::vector<double>& ys, std::uint64_t seed,
                         std::size_t permutations) {
    if (xs.size() != ys.size()) fail(ErrorCode::DimensionMismatch, "independence_test: length mismatch");
    if (xs.size() < 200) fail(ErrorCode::InvalidArgument, "independence_test needs at least 200 pairs");
    if (permutations < 200) fail(ErrorCode::InvalidArgument, "independence_test needs at least 200 permutations");
    DcovPrep p = prepare(midranks(xs), midranks(ys));
    const std::size_t n = xs.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const double observed = dcov_with(p, perm);
    Rng rng(mix_seed(seed, 0));
    std::size_t as_large = 0;
    for (std::size_t r = 0; r < permutations; ++r) {
        for (std::size_t i = n - 1; i > 0; --i) {
            // Unbiased index in [0, i] by rejection.
            const std::uint64_t range = i + 1;
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
            std::uint64_t u;
            do u = rng.next();
            while (u >= limit);
            std::swap(perm[i], perm[u % range]);
        }
        if (dcov_with(p, perm) >= observed * (1 - 1e-12)) ++as_large;
    }
    return static_cast<double>(1 + as_large) / static_cast<double>(1 + permutations);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) { return ks_statistic_shifted(std::move(a), std::move(b), 0.0); }

double ks_statistic_shifted(std::vector<double> a, std::vector<double> b, double rel) {
    if (a.empty() || b.empty()) fail(ErrorCode::InvalidArgument, "ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    auto ecdf = [](const std::vector<double>& s, double t) {
        return static_cast<double>(std::upper_bound(s.begin(), s.end(), t) - s.begin()) / static_cast<double>(s.size());
    };
    // The sup of a right-continuous step difference is attained at a sample point.
    auto one_side = [&](const std::vector<double>& p, const std::vector<double>& q) {
        double d = 0;
        for (double t : p) {
            const double shifted = t >= 0 ? t * (1 + rel) : t * (1 - rel);
            d = std::max(d, ecdf(p, t) - ecdf(q, shifted));
        }
        return d;
    };
    return std::max(one_side(a, b), one_side(b, a));
}

std::vector<bool> holm_reject(const std::vector<double>& p_values, double alpha) {
    const std::size_t m = p_values.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<bool> reject(m, false);
    for (std::size_t t = 0; t < m; ++t) {
        if (p_values[idx[t]] > alpha / static_cast<double>(m - t)) break;
        reject[idx[t]] = true;
    }
    return reject;
}

}  // namespace maxlin::oracle
