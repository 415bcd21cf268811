#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace wcheb {

/// Exact rational backed by GMP. Always normalized, denominator positive.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

template <class S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

enum class ArithmeticMode { Float64, ExactRational };

ArithmeticMode parse_mode(std::string_view text);
std::string_view to_string(ArithmeticMode mode) noexcept;

/// Parses "-12.5", "3e-2", "7" or "2/3" exactly. Throws Error(ParseError).
Rational parse_decimal(std::string_view text);

/// Terminating decimal expansion when one exists, otherwise "p/q".
std::string to_decimal_string(const Rational& value);

/// Shortest round-trip representation.
std::string to_decimal_string(double value);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <Scalar S>
S abs_of(const S& x) {
    if constexpr (is_exact_v<S>) {
        return boost::multiprecision::abs(x);
    } else {
        return std::abs(x);
    }
}

template <Scalar S>
S from_int(long long v) {
    return S(v);
}

/// Comparison band for the float engine: relative 1e-9, absolute floor 1e-12.
struct Tolerance {
    double rel = 1e-9;
    double abs_floor = 1e-12;

    [[nodiscard]] double band(double scale) const { return std::max(rel * scale, abs_floor); }
};

/// x <= y, widened by the tolerance band in float mode; exact otherwise.
template <Scalar S>
bool weakly_leq(const S& x, const S& y, double scale, const Tolerance& tol) {
    if constexpr (is_exact_v<S>) {
        return x <= y;
    } else {
        return x <= y + tol.band(scale);
    }
}

template <Scalar S>
bool nearly_equal(const S& x, const S& y, double scale, const Tolerance& tol) {
    if constexpr (is_exact_v<S>) {
        return x == y;
    } else {
        return std::abs(x - y) <= tol.band(scale);
    }
}

}  // namespace wcheb
