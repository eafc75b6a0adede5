#include "maxlin/trop.hpp"

#include "maxlin/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace maxlin {

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

TropMatrix::TropMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

TropMatrix TropMatrix::identity(std::size_t n) {
    TropMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

TropMatrix TropMatrix::column(const RatVec& v) {
    TropMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

RatVec TropMatrix::column_vector(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

TropMatrix TropMatrix::submatrix(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const {
    TropMatrix m(row_ids.size(), col_ids.size());
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        for (std::size_t j = 0; j < col_ids.size(); ++j) m(i, j) = (*this)(row_ids[i], col_ids[j]);
    return m;
}

TropMatrix trop_mul(const TropMatrix& a, const TropMatrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorCode::DimensionMismatch, "trop_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                               " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    TropMatrix out(a.rows(), b.cols());
    Rational prod;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Rational& ail = a(i, l);
            if (ail.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Rational& blj = b(l, j);
                if (blj.is_zero()) continue;
                prod = ail * blj;
                if (out(i, j) < prod) out(i, j) = prod;
            }
        }
    return out;
}

RatVec trop_mul(const TropMatrix& a, const RatVec& x) {
    if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "trop_mul: vector length mismatch");
    RatVec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero() || x[j].is_zero()) continue;
            Rational p = a(i, j) * x[j];
            if (out[i] < p) out[i] = p;
        }
    return out;
}

TropMatrix trop_max(const TropMatrix& a, const TropMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::DimensionMismatch, "trop_max: shape mismatch");
    TropMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (out(i, j) < b(i, j)) out(i, j) = b(i, j);
    return out;
}

namespace {

void require_square(const TropMatrix& a, const char* op) {
    if (!a.square()) fail(ErrorCode::DimensionMismatch, std::string(op) + ": matrix is not square");
}

}  // namespace

TropMatrix weak_closure(const TropMatrix& c) {
    require_square(c, "weak_closure");
    const std::size_t n = c.rows();
    if (n <= 1) return TropMatrix(n);
    TropMatrix power = c;
    TropMatrix gamma = c;
    for (std::size_t k = 2; k < n; ++k) {
        power = trop_mul(power, c);
        gamma = trop_max(gamma, power);
    }
    return gamma;
}

bool support_acyclic(const TropMatrix& a) {
    require_square(a, "support_acyclic");
    const std::size_t n = a.rows();
    // Kahn's algorithm on the digraph with edge j -> i whenever a(i, j) > 0.
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) ++indegree[i];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t j = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t i = 0; i < n; ++i)
            if (!a(i, j).is_zero() && --indegree[i] == 0) ready.push_back(i);
    }
    return seen == n;
}

TropMatrix kleene_star(const TropMatrix& c) {
    require_square(c, "kleene_star");
    if (!support_acyclic(c)) fail(ErrorCode::CyclicSupport, "kleene_star: support has a directed cycle");
    return trop_max(TropMatrix::identity(c.rows()), weak_closure(c));
}

TropMatrix bounded_closure(const TropMatrix& a) {
    require_square(a, "bounded_closure");
    if (cycle_compare_one(a).order == Ordering::GT)
        fail(ErrorCode::InvalidArgument, "bounded_closure: a cycle product exceeds 1");
    return trop_max(TropMatrix::identity(a.rows()), weak_closure(a));
}

const char* ordering_name(Ordering o) {
    switch (o) {
        case Ordering::LT: return "LT";
        case Ordering::EQ: return "EQ";
        case Ordering::GT: return "GT";
    }
    return "?";
}

CycleComparison cycle_compare_one(const TropMatrix& a) {
    require_square(a, "cycle_compare_one");
    const std::size_t n = a.rows();
    CycleComparison result;
    if (n == 0) return result;

    // powers[k](i, j) is the heaviest walk of length k from j to i.
    std::vector<TropMatrix> powers;
    powers.reserve(n + 1);
    powers.push_back(TropMatrix::identity(n));
    powers.push_back(a);
    for (std::size_t k = 2; k <= n; ++k) powers.push_back(trop_mul(a, powers.back()));

    const Rational one(1);
    std::size_t best_k = 0, best_i = 0;
    Rational best;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (best < powers[k](i, i)) {
                best = powers[k](i, i);
                best_k = k;
                best_i = i;
            }
    if (best < one) return result;
    result.order = best == one ? Ordering::EQ : Ordering::GT;

    // Rebuild one heaviest closed walk through best_i, ending edge first.
    std::vector<std::size_t> walk;  // walk[t] -> walk[t+1] in forward order after reversal
    std::size_t cur = best_i;
    walk.push_back(cur);
    for (std::size_t step = best_k; step >= 1; --step) {
        const Rational& target = powers[step](cur, best_i);
        std::size_t pick = n;
        for (std::size_t l = 0; l < n && pick == n; ++l) {
            if (a(cur, l).is_zero() || powers[step - 1](l, best_i).is_zero()) continue;
            if (a(cur, l) * powers[step - 1](l, best_i) == target) pick = l;
        }
        cur = pick;
        walk.push_back(cur);
    }
    // walk holds best_i <- ... <- best_i; reverse to forward order.
    std::vector<std::size_t> forward(walk.rbegin(), walk.rend());

    // Split the closed walk into simple cycles; keep the heaviest.
    std::vector<std::size_t> stack;
    std::vector<long> pos(n, -1);
    for (std::size_t t = 0; t < forward.size(); ++t) {
        std::size_t v = forward[t];
        if (pos[v] >= 0) {
            std::vector<std::size_t> cycle(stack.begin() + pos[v], stack.end());
            Rational prod(1);
            for (std::size_t s = 0; s < cycle.size(); ++s) {
                std::size_t from = cycle[s];
                std::size_t to = (s + 1 < cycle.size()) ? cycle[s + 1] : cycle[0];
                prod *= a(to, from);
            }
            if (result.witness.empty() || result.witness_product < prod) {
                result.witness = cycle;
                result.witness_product = prod;
            }
            for (std::size_t s = static_cast<std::size_t>(pos[v]) + 1; s < stack.size(); ++s) pos[stack[s]] = -1;
            stack.resize(static_cast<std::size_t>(pos[v]) + 1);
        } else {
            pos[v] = static_cast<long>(stack.size());
            stack.push_back(v);
        }
    }
    return result;
}

double max_cycle_mean_float(const TropMatrix& a) {
    require_square(a, "max_cycle_mean_float");
    const std::size_t n = a.rows();
    if (n == 0) return 0.0;
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> logw(n, std::vector<double>(n, ninf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) logw[i][j] = std::log(a(i, j).to_double());

    // d[k][v]: heaviest walk of exactly k edges ending at v, from any start.
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(n, ninf));
    for (std::size_t v = 0; v < n; ++v) d[0][v] = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u = 0; u < n; ++u)
                if (logw[v][u] != ninf && d[k - 1][u] != ninf) d[k][v] = std::max(d[k][v], d[k - 1][u] + logw[v][u]);

    double best = ninf;
    for (std::size_t v = 0; v < n; ++v) {
        if (d[n][v] == ninf) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k)
            if (d[k][v] != ninf)
                worst = std::min(worst, (d[n][v] - d[k][v]) / static_cast<double>(n - k));
        best = std::max(best, worst);
    }
    return best == ninf ? 0.0 : std::exp(best);
}

bool subeigen_check(const TropMatrix& a, const RatVec& x, bool strict) {
    if (!a.square() || a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "subeigen_check: shape mismatch");
    for (const auto& v : x)
        if (!v.is_positive()) fail(ErrorCode::NonPositive, "subeigen_check: x must be strictly positive");
    RatVec ax = trop_mul(a, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (strict ? !(ax[i] < x[i]) : (x[i] < ax[i])) return false;
    }
    return true;
}

}  // namespace maxlin
