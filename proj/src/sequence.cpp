#include "wcheb/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace wcheb {

namespace {

template <Scalar S>
void check_entries(const std::vector<S>& values, const char* what) {
    if (values.size() < 2) {
        throw Error(ErrorKind::TooShort, std::string(what) + " needs at least two entries");
    }
    if constexpr (!is_exact_v<S>) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) {
                throw Error(ErrorKind::NonFiniteInput, std::string(what) + " entry is not finite", i + 1);
            }
        }
    }
}

}  // namespace

template <Scalar S>
Seq<S>::Seq(std::vector<S> values) : values_(std::move(values)) {
    check_entries(values_, "sequence");
}

template <Scalar S>
Seq<S> Seq<S>::constant(std::size_t n, const S& k) {
    return Seq(std::vector<S>(n, k));
}

template <Scalar S>
S Seq<S>::max_abs() const {
    S m(0);
    for (const S& v : values_) m = std::max(m, abs_of(v));
    return m;
}

template <Scalar S>
Seq<S> Seq<S>::abs() const {
    std::vector<S> out;
    out.reserve(values_.size());
    for (const S& v : values_) out.push_back(abs_of(v));
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::max_with(const S& k) const {
    std::vector<S> out;
    out.reserve(values_.size());
    for (const S& v : values_) out.push_back(v < k ? k : v);
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::min_with(const S& k) const {
    std::vector<S> out;
    out.reserve(values_.size());
    for (const S& v : values_) out.push_back(k < v ? k : v);
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::operator+(const Seq& other) const {
    require_same_length(*this, other);
    std::vector<S> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::operator-(const Seq& other) const {
    require_same_length(*this, other);
    std::vector<S> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] - other.values_[i];
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::operator-() const {
    return scaled(S(-1));
}

template <Scalar S>
Seq<S> Seq<S>::scaled(const S& factor) const {
    std::vector<S> out(values_);
    for (S& v : out) v *= factor;
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::shifted(const S& offset) const {
    std::vector<S> out(values_);
    for (S& v : out) v += offset;
    return Seq(std::move(out));
}

template <Scalar S>
Seq<S> Seq<S>::reversed() const {
    return Seq(std::vector<S>(values_.rbegin(), values_.rend()));
}

template <Scalar S>
std::vector<S> Seq<S>::forward_difference() const {
    std::vector<S> out(values_.size() - 1);
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) out[i] = values_[i + 1] - values_[i];
    return out;
}

std::string_view to_string(WeightRegime regime) noexcept {
    switch (regime) {
        case WeightRegime::AllPositive: return "AllPositive";
        case WeightRegime::NonnegativePositiveTotal: return "NonnegativePositiveTotal";
        case WeightRegime::PartialSumBounded: return "PartialSumBounded";
        case WeightRegime::GeneralReal: return "GeneralReal";
    }
    return "GeneralReal";
}

WeightRegime parse_regime(std::string_view text) {
    for (auto r : {WeightRegime::AllPositive, WeightRegime::NonnegativePositiveTotal,
                   WeightRegime::PartialSumBounded, WeightRegime::GeneralReal}) {
        if (text == to_string(r)) return r;
    }
    throw Error(ErrorKind::ParseError, "unknown weight regime '" + std::string(text) + "'");
}

template <Scalar S>
WeightSeq<S>::WeightSeq(std::vector<S> values) : values_(std::move(values)), total_(0) {
    check_entries(values_, "weight sequence");
    S max_abs(0);
    bool positive = true;
    bool nonnegative = true;
    for (const S& v : values_) {
        total_ += v;
        max_abs = std::max(max_abs, abs_of(v));
        positive = positive && v > 0;
        nonnegative = nonnegative && v >= 0;
    }
    if constexpr (!is_exact_v<S>) {
        zero_floor_ = 1e-12 * max_abs * static_cast<double>(values_.size());
    }

    bool bounded = true;
    S running(0);
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        running += values_[i];
        bounded = bounded && running >= 0 && running <= total_;
    }

    if (positive) {
        regime_ = WeightRegime::AllPositive;
    } else if (nonnegative && total_ > 0) {
        regime_ = WeightRegime::NonnegativePositiveTotal;
    } else if (bounded) {
        regime_ = WeightRegime::PartialSumBounded;
    } else {
        regime_ = WeightRegime::GeneralReal;
    }
}

template <Scalar S>
bool WeightSeq<S>::negligible(const S& v) const {
    if constexpr (is_exact_v<S>) {
        return v == 0;
    } else {
        return std::abs(v) < zero_floor_ || v == 0.0;
    }
}

template <Scalar S>
std::vector<S> WeightSeq<S>::prefix_sums() const {
    std::vector<S> out(values_.size());
    S running(0);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        running += values_[i];
        out[i] = running;
    }
    return out;
}

template class Seq<double>;
template class Seq<Rational>;
template class WeightSeq<double>;
template class WeightSeq<Rational>;

}  // namespace wcheb
