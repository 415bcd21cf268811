#pragma once

// Hypothesis predicates. All inequalities are weak; the float engine accepts
// an inequality that holds up to the tolerance band, the rational engine
// decides exactly. Predicates whose own preconditions fail throw; the
// profile records them as not applicable.

#include "wcheb/scalar.hpp"
#include "wcheb/sequence.hpp"

#include <string_view>

namespace wcheb {

enum class Direction { Nondecreasing, Nonincreasing };

std::string_view to_string(Direction dir) noexcept;
[[nodiscard]] constexpr Direction opposite(Direction dir) noexcept {
    return dir == Direction::Nondecreasing ? Direction::Nonincreasing : Direction::Nondecreasing;
}

/// Three-valued predicate outcome.
enum class Tri { False, True, NotApplicable };
std::string_view to_string(Tri t) noexcept;
[[nodiscard]] constexpr bool holds(Tri t) noexcept { return t == Tri::True; }
[[nodiscard]] constexpr Tri tri(bool b) noexcept { return b ? Tri::True : Tri::False; }

template <Scalar S>
bool is_monotone(const Seq<S>& s, Direction dir, const Tolerance& tol = {});

/// (a_i - a_j)(b_i - b_j) ≥ 0 for every pair, checked pairwise.
template <Scalar S>
bool is_synchronous(const Seq<S>& a, const Seq<S>& b, const Tolerance& tol = {});

template <Scalar S>
bool is_asynchronous(const Seq<S>& a, const Seq<S>& b, const Tolerance& tol = {});

/// Prefix weighted means A_k/P_k monotone in `dir` for k = 1..n. Needs P_k ≠ 0.
template <Scalar S>
bool is_monotone_in_mean(const WeightSeq<S>& p, const Seq<S>& s, Direction dir, const Tolerance& tol = {});

/// A_n/P_n ≥ A_i/P_i for i < n.
template <Scalar S>
bool is_last_max_in_mean(const WeightSeq<S>& p, const Seq<S>& s, const Tolerance& tol = {});

/// A_n/P_n ≤ A_i/P_i for i < n.
template <Scalar S>
bool is_first_max_in_mean(const WeightSeq<S>& p, const Seq<S>& s, const Tolerance& tol = {});

/// Nonnegative second differences; vacuous for n = 2.
template <Scalar S>
bool is_convex(const Seq<S>& s, const Tolerance& tol = {});

template <Scalar S>
bool is_concave(const Seq<S>& s, const Tolerance& tol = {});

/// 0 ≤ P_i ≤ P_n for i < n.
template <Scalar S>
bool partial_sums_bounded(const WeightSeq<S>& p, const Tolerance& tol = {});

/// P_i A_n - P_n A_i ≥ 0 for i < n. Any real weights.
template <Scalar S>
bool det_condition_nonneg(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol = {});

/// Ā_i/P̄_i ≥ A_i/P_i for i < n. With `literal` the left denominator is P_i
/// instead (the literal form of the third sign clause).
template <Scalar S>
bool tail_mean_dominates(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol = {},
                         bool literal = false);

/// a_{i+1} ≤ A_n/P_n for i < n.
template <Scalar S>
bool upper_mean_condition(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol = {});

/// a_{i+1} ≥ A_n/P_n for i < n.
template <Scalar S>
bool lower_mean_condition(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol = {});

/// Prefix means A_i/P_i monotone in `dir` over i = 1..n, requiring every
/// P_i > 0. With `literal` the comparison is A_i/P_i against A_{i+1}/P̄_{i+1}
/// for the indices where P̄_{i+1} is defined and nonzero (i ≤ n-2), and the
/// Nonincreasing direction means A_i/P_i ≥ A_{i+1}/P̄_{i+1}.
template <Scalar S>
bool mean_monotone_34(const WeightSeq<S>& p, const Seq<S>& a, Direction dir, const Tolerance& tol = {},
                      bool literal = false);

/// x ∈ S̄(a,b): both (a + x, b) and (a - x, b) synchronous.
template <Scalar S>
bool in_sbar(const Seq<S>& x, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol = {});

struct ConditionProfile {
    WeightRegime regime = WeightRegime::GeneralReal;
    Tri a_nondecreasing = Tri::NotApplicable;
    Tri a_nonincreasing = Tri::NotApplicable;
    Tri b_nondecreasing = Tri::NotApplicable;
    Tri b_nonincreasing = Tri::NotApplicable;
    Tri synchronous = Tri::NotApplicable;
    Tri asynchronous = Tri::NotApplicable;
    Tri a_incr_in_mean = Tri::NotApplicable;
    Tri a_decr_in_mean = Tri::NotApplicable;
    Tri b_incr_in_mean = Tri::NotApplicable;
    Tri b_decr_in_mean = Tri::NotApplicable;
    Tri a_last_max_in_mean = Tri::NotApplicable;
    Tri a_first_max_in_mean = Tri::NotApplicable;
    Tri b_convex = Tri::NotApplicable;
    Tri b_concave = Tri::NotApplicable;
    Tri weights_partial_sum_bounded = Tri::NotApplicable;
    Tri det_condition_nonneg = Tri::NotApplicable;
    Tri tail_mean_dominates = Tri::NotApplicable;
    Tri upper_mean_condition = Tri::NotApplicable;
    Tri lower_mean_condition = Tri::NotApplicable;
    Tri mean_monotone_34_decreasing = Tri::NotApplicable;
    Tri mean_monotone_34_increasing = Tri::NotApplicable;

    /// (name, value) pairs in declaration order, for reporting.
    template <class F>
    void for_each(F&& f) const {
        f("a_nondecreasing", a_nondecreasing);
        f("a_nonincreasing", a_nonincreasing);
        f("b_nondecreasing", b_nondecreasing);
        f("b_nonincreasing", b_nonincreasing);
        f("synchronous", synchronous);
        f("asynchronous", asynchronous);
        f("a_incr_in_mean", a_incr_in_mean);
        f("a_decr_in_mean", a_decr_in_mean);
        f("b_incr_in_mean", b_incr_in_mean);
        f("b_decr_in_mean", b_decr_in_mean);
        f("a_last_max_in_mean", a_last_max_in_mean);
        f("a_first_max_in_mean", a_first_max_in_mean);
        f("b_convex", b_convex);
        f("b_concave", b_concave);
        f("weights_partial_sum_bounded", weights_partial_sum_bounded);
        f("det_condition_nonneg", det_condition_nonneg);
        f("tail_mean_dominates", tail_mean_dominates);
        f("upper_mean_condition", upper_mean_condition);
        f("lower_mean_condition", lower_mean_condition);
        f("mean_monotone_34_decreasing", mean_monotone_34_decreasing);
        f("mean_monotone_34_increasing", mean_monotone_34_increasing);
    }
};

template <Scalar S>
ConditionProfile condition_profile(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                   const Tolerance& tol = {}, bool strict_literal = false);

}  // namespace wcheb
