#pragma once

// Max-times semiring linear algebra over exact rationals.
// Entry (i, j) of a matrix is the weight of the edge j -> i.

#include "maxlin/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace maxlin {

using RatVec = std::vector<Rational>;

class TropMatrix {
public:
    TropMatrix() = default;
    TropMatrix(std::size_t rows, std::size_t cols);
    explicit TropMatrix(std::size_t n) : TropMatrix(n, n) {}
    TropMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static TropMatrix identity(std::size_t n);
    static TropMatrix column(const RatVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVec column_vector(std::size_t j) const;
    TropMatrix submatrix(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const;

    friend bool operator==(const TropMatrix&, const TropMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

TropMatrix trop_mul(const TropMatrix& a, const TropMatrix& b);
RatVec trop_mul(const TropMatrix& a, const RatVec& x);
/// Entrywise maximum.
TropMatrix trop_max(const TropMatrix& a, const TropMatrix& b);

/// Gamma = C v C^2 v ... v C^(n-1).
TropMatrix weak_closure(const TropMatrix& c);

/// C* = I v Gamma(C). Throws CyclicSupport unless the support of C is acyclic.
TropMatrix kleene_star(const TropMatrix& c);

/// I v Gamma(A) for a matrix whose cycles all have product at most 1.
/// Throws InvalidArgument when some cycle product exceeds 1.
TropMatrix bounded_closure(const TropMatrix& a);

bool support_acyclic(const TropMatrix& a);

enum class Ordering { LT, EQ, GT };
const char* ordering_name(Ordering o);

struct CycleComparison {
    Ordering order = Ordering::LT;
    /// Simple cycle v0 -> v1 -> ... -> v0 with product >= 1 when order is EQ or GT.
    std::vector<std::size_t> witness;
    Rational witness_product;
};

/// Compares the maximum cycle mean of A with 1 through exact cycle products.
CycleComparison cycle_compare_one(const TropMatrix& a);

/// Karp's algorithm on log weights; 0.0 for an acyclic support.
double max_cycle_mean_float(const TropMatrix& a);

bool subeigen_check(const TropMatrix& a, const RatVec& x, bool strict);

}  // namespace maxlin
