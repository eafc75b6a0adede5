#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace maxlin {

/// Exact nonnegative-or-signed rational in canonical (reduced) form.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& v);

    /// Accepts "p/q", integers, and finite decimals such as "0.125" or "1.5e-3".
    static Rational parse(std::string_view text);
    /// Exact value of a finite double.
    static Rational from_double(double d);

    const mpq_class& raw() const { return v_; }
    double to_double() const { return v_.get_d(); }
    std::string str() const;  // "p/q" or "p"

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_positive() const { return sgn(v_) > 0; }
    int sign() const { return sgn(v_); }

    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

private:
    mpq_class v_{0};
};

/// Tropical addition.
inline const Rational& tmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace maxlin

template <>
struct std::hash<maxlin::Rational> {
    std::size_t operator()(const maxlin::Rational& r) const { return r.hash(); }
};
