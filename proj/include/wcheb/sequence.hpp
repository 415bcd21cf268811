#pragma once

#include "wcheb/error.hpp"
#include "wcheb/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace wcheb {

/// Finite ordered tuple of at least two finite entries.
template <Scalar S>
class Seq {
public:
    explicit Seq(std::vector<S> values);
    Seq(std::initializer_list<S> values) : Seq(std::vector<S>(values)) {}

    static Seq constant(std::size_t n, const S& k);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const S> values() const noexcept { return values_; }
    [[nodiscard]] const S& operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] S max_abs() const;

    /// Entrywise |s|.
    [[nodiscard]] Seq abs() const;
    /// s ∨ k and s ∧ k.
    [[nodiscard]] Seq max_with(const S& k) const;
    [[nodiscard]] Seq min_with(const S& k) const;
    [[nodiscard]] Seq positive_part() const { return max_with(S(0)); }
    [[nodiscard]] Seq negative_part() const { return min_with(S(0)); }

    [[nodiscard]] Seq operator+(const Seq& other) const;
    [[nodiscard]] Seq operator-(const Seq& other) const;
    [[nodiscard]] Seq operator-() const;
    [[nodiscard]] Seq scaled(const S& factor) const;
    [[nodiscard]] Seq shifted(const S& offset) const;
    [[nodiscard]] Seq reversed() const;

    /// Δs_i = s_{i+1} - s_i, length n - 1.
    [[nodiscard]] std::vector<S> forward_difference() const;

    bool operator==(const Seq&) const = default;

private:
    std::vector<S> values_;
};

using RealSeq = Seq<double>;
using RationalSeq = Seq<Rational>;

/// Sign/partial-sum regime of a weight tuple, checked in this priority order.
enum class WeightRegime { AllPositive, NonnegativePositiveTotal, PartialSumBounded, GeneralReal };

std::string_view to_string(WeightRegime regime) noexcept;
WeightRegime parse_regime(std::string_view text);

template <Scalar S>
class WeightSeq {
public:
    explicit WeightSeq(std::vector<S> values);
    WeightSeq(std::initializer_list<S> values) : WeightSeq(std::vector<S>(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const S> values() const noexcept { return values_; }
    [[nodiscard]] const S& operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] WeightRegime regime() const noexcept { return regime_; }
    [[nodiscard]] const S& total() const noexcept { return total_; }

    [[nodiscard]] bool nonnegative() const noexcept {
        return regime_ == WeightRegime::AllPositive ||
               regime_ == WeightRegime::NonnegativePositiveTotal;
    }

    /// Zero test for a weight sum: exact in rational mode; in float mode
    /// |v| < 1e-12 * max|p_i| * n.
    [[nodiscard]] bool negligible(const S& v) const;

    /// Prefix sums P_1..P_n.
    [[nodiscard]] std::vector<S> prefix_sums() const;

    bool operator==(const WeightSeq& other) const { return values_ == other.values_; }

private:
    std::vector<S> values_;
    S total_;
    double zero_floor_ = 0.0;
    WeightRegime regime_;
};

template <class First, class... Rest>
void require_same_length(const First& first, const Rest&... rest) {
    if (((rest.size() != first.size()) || ...)) {
        throw Error(ErrorKind::LengthMismatch, "sequences must have equal length");
    }
}

extern template class Seq<double>;
extern template class Seq<Rational>;
extern template class WeightSeq<double>;
extern template class WeightSeq<Rational>;

}  // namespace wcheb
