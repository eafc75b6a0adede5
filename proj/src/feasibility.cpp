#include "maxlin/feasibility.hpp"

#include "maxlin/errors.hpp"

namespace maxlin {

RatioSystem::RatioSystem(std::size_t free_vars) : n_(free_vars + 1), bound_(n_, std::vector<std::optional<Bound>>(n_)) {}

bool RatioSystem::tighter(const Bound& a, const Bound& b) {
    if (a.w != b.w) return a.w < b.w;
    return a.strict && !b.strict;
}

void RatioSystem::upper(std::size_t u, std::size_t v, const Rational& w, bool strict) {
    if (u >= n_ || v >= n_) fail(ErrorCode::InvalidArgument, "RatioSystem: variable out of range");
    if (!w.is_positive()) fail(ErrorCode::NonPositive, "RatioSystem: bound must be positive");
    Bound b{w, strict};
    auto& slot = bound_[v][u];
    if (!slot || tighter(b, *slot)) slot = b;
}

void RatioSystem::pin(std::size_t u, const Rational& value) {
    upper(u, origin, value, false);
    upper(origin, u, value.inverse(), false);
}

bool RatioSystem::feasible() const {
    auto d = bound_;
    const Bound unit{Rational(1), false};
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!d[i][k]) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!d[k][j]) continue;
                Bound via{d[i][k]->w * d[k][j]->w, d[i][k]->strict || d[k][j]->strict};
                if (!d[i][j] || tighter(via, *d[i][j])) d[i][j] = via;
            }
            if (d[i][i] && tighter(*d[i][i], unit)) return false;
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
        if (d[i][i] && tighter(*d[i][i], unit)) return false;
    return true;
}

}  // namespace maxlin
