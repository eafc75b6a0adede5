#include "maxlin/rational.hpp"

#include "maxlin/errors.hpp"

#include <cctype>
#include <cmath>

namespace maxlin {

Rational::Rational(long num, long den) {
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

[[noreturn]] void bad(std::string_view text) {
    fail(ErrorCode::Parse, "not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad(text);

    mpq_class value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d{std::string(den)};
        if (d == 0) fail(ErrorCode::Parse, "zero denominator in \"" + std::string(text) + "\"");
        value = mpq_class(mpz_class(std::string(num)), d);
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_part = s.substr(e + 1);
            bool exp_neg = false;
            if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
                exp_neg = exp_part.front() == '-';
                exp_part.remove_prefix(1);
            }
            if (!all_digits(exp_part) || exp_part.size() > 6) bad(text);
            exponent = std::stol(std::string(exp_part));
            if (exp_neg) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            auto int_part = s.substr(0, dot);
            auto frac_part = s.substr(dot + 1);
            if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
                (!frac_part.empty() && !all_digits(frac_part)))
                bad(text);
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(s)) bad(text);
            digits = std::string(s);
        }
        mpz_class mant(digits);
        if (exponent >= 0)
            value = mpq_class(mpz_class(mant * pow10(static_cast<unsigned long>(exponent))));
        else
            value = mpq_class(mant, pow10(static_cast<unsigned long>(-exponent)));
    }
    value.canonicalize();
    if (negative) value = -value;
    return Rational(value);
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) fail(ErrorCode::InvalidArgument, "non-finite value");
    return Rational(mpq_class(d));
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::inverse() const {
    if (is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
    return Rational(mpq_class(1 / v_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

std::size_t Rational::hash() const {
    std::size_t h = std::hash<std::string>{}(v_.get_num().get_str(16));
    return h ^ (std::hash<std::string>{}(v_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::CyclicSupport: return "CyclicSupport";
        case ErrorCode::TieDetected: return "TieDetected";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ImpossibleContext: return "ImpossibleContext";
        case ErrorCode::EdgeNotCritical: return "EdgeNotCritical";
        case ErrorCode::DegenerateBlock: return "DegenerateBlock";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::OverlappingSets: return "OverlappingSets";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::Validation: return "Validation";
    }
    return "Unknown";
}

}  // namespace maxlin
