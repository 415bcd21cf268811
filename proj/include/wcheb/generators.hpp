#pragma once

// Seeded generation of sequences and weights inside each hypothesis class.
//
// The PRNG is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not, so every draw below goes
// through Rng's own integer mapping. Values live on a decimal grid: an entry
// is an integer count of 10^-places units, which makes every generated case
// load exactly into the rational engine.

#include "wcheb/case_file.hpp"
#include "wcheb/classifiers.hpp"
#include "wcheb/scalar.hpp"
#include "wcheb/sequence.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wcheb::gen {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent per-case seed: the (index + 1)-th SplitMix64 output from `master`.
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound), rejection-free of modulo bias. bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi], inclusive. lo ≤ hi.
    long long between(long long lo, long long hi);
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t n_min = 2;
    std::size_t n_max = 50;
    double value_lo = -10.0;
    double value_hi = 10.0;
    double weight_lo = 0.01;  ///< smallest positive weight drawn
    double weight_hi = 10.0;
    std::uint64_t max_rejections = 10'000;
    int places = 6;

    /// Throws BadRange on an empty or inverted range.
    void validate() const;
};

/// Entries as integer multiples of 10^-places.
struct DecimalSeq {
    std::vector<long long> units;
    int places = 6;

    [[nodiscard]] std::size_t size() const noexcept { return units.size(); }
    [[nodiscard]] Rational exact(std::size_t i) const;
    [[nodiscard]] std::vector<std::string> strings() const;
    [[nodiscard]] RealSeq to_real() const;
    [[nodiscard]] RationalSeq to_exact() const;
    [[nodiscard]] WeightSeq<double> to_real_weights() const;
    [[nodiscard]] WeightSeq<Rational> to_exact_weights() const;
    [[nodiscard]] DecimalSeq negated() const;
    [[nodiscard]] DecimalSeq reversed() const;
};

class Generator {
public:
    Generator(const GenConfig& cfg, std::uint64_t seed);

    [[nodiscard]] const GenConfig& config() const noexcept { return cfg_; }
    Rng& rng() noexcept { return rng_; }

    /// Uniform in [n_min, n_max].
    std::size_t length();
    /// One value-range draw, in units.
    long long value();
    DecimalSeq uniform(std::size_t n);

    /// Sorted i.i.d. draws; Nonincreasing gives the same draws reversed.
    DecimalSeq monotone(std::size_t n, Direction dir);

    /// a_i = f(t_i), b_i = g(t_i) for a common latent t and random
    /// nondecreasing step maps f, g.
    std::pair<DecimalSeq, DecimalSeq> synchronous_pair(std::size_t n);

    /// Prefix means monotone in `dir`, built entry by entry against the
    /// running mean. Needs every P_k > 0; negative p_k flip the side.
    DecimalSeq monotone_in_mean(const DecimalSeq& p, Direction dir);

    /// Rejection sampling of i.i.d. draws. Throws RejectionBudgetExhausted.
    DecimalSeq last_max_in_mean(const DecimalSeq& p);

    /// Nondecreasing first differences prefix-summed from a random base;
    /// stays inside the value range.
    DecimalSeq convex(std::size_t n);

    DecimalSeq weights(std::size_t n, WeightRegime regime);
    /// Real weights with every prefix sum P_i positive.
    DecimalSeq positive_prefix_weights(std::size_t n);
    /// Real weights with 0 < P_i < P_n for i < n.
    DecimalSeq interior_prefix_weights(std::size_t n);

    /// a_{i+1} ≤ A_n/P_n for i < n (upper) or ≥ (lower): a_2..a_n drawn
    /// freely, a_1 then chosen to move the mean past them. Positive p.
    DecimalSeq upper_mean(const DecimalSeq& p);
    DecimalSeq lower_mean(const DecimalSeq& p);

    /// A_i/P_i ≥ A_{i+1}/P̄_{i+1} for i ≤ n-2 (Nonincreasing) or ≤, built
    /// sequentially; P_i > 0 and P̄_{i+1} > 0 are needed where used, else
    /// entries are drawn freely.
    DecimalSeq literal_mean_condition(const DecimalSeq& p, Direction dir);

    /// P_i A_n - P_n A_i ≥ 0 for i < n: a_1..a_{n-1} free, a_n solved for
    /// when p_n ≠ 0 and P_i > 0 for i < n; otherwise rejection sampling.
    DecimalSeq det_condition(const DecimalSeq& p);

    /// x with (a + x, b) and (a - x, b) synchronous: λa plus shrinking noise,
    /// falling back to the zero tuple once the budget is spent.
    DecimalSeq sbar_member(const DecimalSeq& a, const DecimalSeq& b);

    /// Number of rejections spent by the last rejection-sampling call.
    [[nodiscard]] std::uint64_t last_rejections() const noexcept { return rejections_; }
    /// Rejections over the generator's lifetime.
    [[nodiscard]] std::uint64_t total_rejections() const noexcept { return total_rejections_; }

private:
    long long lo_units() const;
    long long hi_units() const;
    long long at_least(const Rational& bound);
    long long at_most(const Rational& bound);

    GenConfig cfg_;
    Rng rng_;
    long long scale_;
    std::uint64_t rejections_ = 0;
    std::uint64_t total_rejections_ = 0;
};

/// a_k = (P_k m_k - P_{k-1} m_{k-1}) / p_k for target prefix means m.
RationalSeq invert_prefix_means(const WeightSeq<Rational>& p, const std::vector<Rational>& means);

/// Assembles a case file from generated parts.
CaseFile make_case(const DecimalSeq& p, const DecimalSeq& a, const DecimalSeq& b,
                   const std::optional<long long>& k_units = std::nullopt,
                   const std::optional<DecimalSeq>& x = std::nullopt);

}  // namespace wcheb::gen
