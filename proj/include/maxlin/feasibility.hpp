#pragma once

// Exact feasibility of ratio constraints z_u / z_v <= w (or < w) over positive reals.
// In log coordinates these are difference constraints; the system is infeasible
// iff some cycle has product below 1, or product exactly 1 with a strict edge.

#include "maxlin/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace maxlin {

class RatioSystem {
public:
    /// Variable 0 is the fixed origin z_0 = 1; variables 1..n are free.
    explicit RatioSystem(std::size_t free_vars);

    std::size_t size() const { return n_; }
    static constexpr std::size_t origin = 0;

    /// z_u / z_v <= w, or < w when strict.
    void upper(std::size_t u, std::size_t v, const Rational& w, bool strict);
    /// z_u = value (against the origin).
    void pin(std::size_t u, const Rational& value);

    bool feasible() const;

private:
    struct Bound {
        Rational w;
        bool strict = false;
    };
    static bool tighter(const Bound& a, const Bound& b);

    std::size_t n_;
    // bound_[v][u] bounds z_u / z_v.
    std::vector<std::vector<std::optional<Bound>>> bound_;
};

}  // namespace maxlin
