#include "wcheb/scalar.hpp"

#include "wcheb/error.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace wcheb {

namespace {

using boost::multiprecision::mpz_int;

constexpr long kMaxExponent = 4000;

[[noreturn]] void bad_number(std::string_view text, const char* why) {
    throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' " + why);
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_int pow10(long e) {
    mpz_int r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

// GMP reads a leading 0 as an octal prefix, so strip leading zeros first.
mpz_int decimal_integer(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return mpz_int(0);
    return mpz_int(std::string(digits.substr(first)));
}

Rational parse_fraction(std::string_view text, std::size_t slash) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        negative = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) bad_number(text, "is not a valid fraction");
    mpz_int d = decimal_integer(den);
    if (d == 0) bad_number(text, "has a zero denominator");
    Rational r(decimal_integer(num), d);
    return negative ? Rational(-r) : r;
}

}  // namespace

ArithmeticMode parse_mode(std::string_view text) {
    if (text == "float" || text == "float64") return ArithmeticMode::Float64;
    if (text == "exact" || text == "rational") return ArithmeticMode::ExactRational;
    throw Error(ErrorKind::ParseError, "unknown mode '" + std::string(text) + "' (expected float|exact)");
}

std::string_view to_string(ArithmeticMode mode) noexcept {
    return mode == ArithmeticMode::Float64 ? "float" : "exact";
}

Rational parse_decimal(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) bad_number(text, "is empty");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return parse_fraction(text, slash);
    }

    std::string_view rest = text;
    bool negative = false;
    if (rest.front() == '-' || rest.front() == '+') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = rest.substr(e + 1);
        rest = rest.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 5) bad_number(text, "has a malformed exponent");
        std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (exp_negative) exponent = -exponent;
        if (exponent > kMaxExponent || exponent < -kMaxExponent) bad_number(text, "exponent out of range");
    }

    std::string digits;
    std::string_view int_part = rest;
    std::string_view frac_part;
    if (auto dot = rest.find('.'); dot != std::string_view::npos) {
        int_part = rest.substr(0, dot);
        frac_part = rest.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(text, "has no digits");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
        bad_number(text, "is not a finite decimal");
    }
    digits.append(int_part);
    digits.append(frac_part);

    exponent -= static_cast<long>(frac_part.size());
    mpz_int mantissa = decimal_integer(digits);
    Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
    return negative ? Rational(-r) : r;
}

std::string to_decimal_string(const Rational& value) {
    mpz_int num = boost::multiprecision::numerator(value);
    mpz_int den = boost::multiprecision::denominator(value);
    long twos = 0;
    long fives = 0;
    mpz_int rest = den;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) {
        return num.str() + "/" + den.str();
    }
    long places = std::max(twos, fives);
    mpz_int scaled = num * (pow10(places) / den);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.str();
    if (places > 0) {
        if (static_cast<long>(digits.size()) <= places) {
            digits.insert(0, static_cast<std::size_t>(places - static_cast<long>(digits.size()) + 1), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    return negative ? "-" + digits : digits;
}

std::string to_decimal_string(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

}  // namespace wcheb
