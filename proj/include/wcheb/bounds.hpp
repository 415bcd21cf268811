#pragma once

// Refinements and lower bounds for the weighted Čebyšev functional, together
// with the hypothesis checks that license each of them.

#include "wcheb/classifiers.hpp"
#include "wcheb/functional.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace wcheb {

enum class BoundName {
    DP_A6,
    KSplit_A8,
    PMSplit_A9,
    Chain_A10,
    Thm21_2_1e,
    MP_A11_sign,
    Thm23_sign,
    Thm31_3_2a,
    Thm32_3_5,
    Sbar_A7_member,
};

std::string_view to_string(BoundName name) noexcept;

struct BoundOptions {
    /// Evaluate theorem bounds even when the hypotheses fail (non-asserting).
    bool force = false;
    /// Literal readings where they differ from the corrected ones: D_n
    /// weighting, sign clause iii, and the prefix-mean condition of the
    /// convex-b bound.
    bool strict_literal = false;
    Tolerance tol{};
};

enum class Sign { NonNegative, NonPositive, Unknown };
std::string_view to_string(Sign sign) noexcept;

struct SignClaim {
    Sign sign = Sign::Unknown;
    std::string clause;  ///< hypothesis clause that fired, empty for Unknown
};

/// max{|T(p;|a|,b)|, |T(p;a,|b|)|, |T(p;|a|,|b|)|}. Nonnegative weights.
template <Scalar S>
S dp_refinement(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// max{|T(a∨k,b)| + |T(a∧k,b)|, |T(a,b∨k)| + |T(a,b∧k)|}. Nonnegative weights.
template <Scalar S>
S k_split_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const S& k);

template <Scalar S>
S pm_split_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

template <Scalar S>
struct Chain {
    S t;    ///< T(p;a,b)
    S mid;  ///< |T(p;a₊,b)| + |T(p;a₋,b)|
    S low;  ///< |T(p;|a|,b)|
};

/// Throws HypothesisNotMet unless (a,b) is synchronous or opts.force.
template <Scalar S>
Chain<S> refinement_chain(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts = {});

/// (1/P_n) Σ_{i<n} |A_i| Δb_i - (|A_n|/P_n)(1/P_n) Σ_{i<n} P_i Δb_i
template <Scalar S>
S thm21_A(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// (1/P_n²) Σ_{i<n} (P_i |Ā_i| - P̄_i |A_i|) Δb_i, the absolute-value analogue
/// of the tail identity. With `literal`, the second sum is weighted by P_i as
/// printed; that form is not a lower bound in general.
template <Scalar S>
S thm21_D(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, bool literal = false);

template <Scalar S>
struct Thm21Terms {
    /// |A(a,b)|, |A(a,|b|)|, |T(a,|b|)|, |D(a,b)|, |D(a,|b|)|
    std::array<S, 5> terms;
    S max;
};

template <Scalar S>
Thm21Terms<S> thm21_terms(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, bool literal = false);

/// Five-element max; throws HypothesisNotMet naming the failed clause.
template <Scalar S>
S thm21_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts = {});

/// (1/(n-1)) (b_n - b_1) (1/P_n) Σ_{i<n} (n-i) p_i [A_n/P_n - a_i]
template <Scalar S>
S thm31_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts = {});

/// (1/Σ_{i<n}(n-i)p_i) Σ_{i<n} (n-i) p_i [A_n/P_n - a_i] · [b_n - B_n/P_n]
template <Scalar S>
S thm32_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts = {});

/// Sign of T for weights with 0 ≤ P_i ≤ P_n and monotone a, b.
template <Scalar S>
SignClaim mp_sign(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol = {});

/// Which of the three sign-theorem clauses on (p, a) hold: i det condition,
/// ii positive prefix sums with a last-max in mean, iii strictly interior
/// prefix sums with tail means dominating. Requires P_n ≠ 0, else all false.
template <Scalar S>
std::array<bool, 3> thm23_clauses(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol = {},
                                  bool literal = false);

/// Sign of T for real weights and monotone b under clause i, ii or iii.
template <Scalar S>
SignClaim thm23_sign(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol = {},
                     bool literal = false);

// Hypotheses. Each returns the name of the satisfied clause, or nothing.

template <Scalar S>
std::optional<std::string> synchronous_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                                  const Tolerance& tol = {});
template <Scalar S>
std::optional<std::string> thm21_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol = {});
template <Scalar S>
std::optional<std::string> thm31_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol = {});
template <Scalar S>
std::optional<std::string> thm32_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol = {}, bool literal = false);

template <Scalar S>
struct BoundReport {
    BoundName name = BoundName::DP_A6;
    S functional_value{};
    std::optional<S> bound_value;  ///< empty when hypotheses fail and not forced
    std::optional<S> slack;        ///< functional - bound (lower bounds), signed T for sign claims
    bool applicable = false;       ///< hypotheses hold
    bool asserting = false;        ///< the inequality is claimed for this case
    std::string clause;
    std::string note;
    ConditionProfile hypothesis_profile;
};

/// |T(p;x,b)| ≤ T(p;a,b) for x ∈ S̄(a,b). Throws NotAMember or HypothesisNotMet.
template <Scalar S>
BoundReport<S> sbar_check(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Seq<S>& x,
                          const BoundOptions& opts = {});

/// Evaluates one named bound with hypothesis gating. `k` is used by KSplit_A8,
/// `x` by Sbar_A7_member.
template <Scalar S>
BoundReport<S> assess(BoundName name, const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                      const BoundOptions& opts = {}, const std::optional<S>& k = std::nullopt,
                      const std::optional<Seq<S>>& x = std::nullopt);

}  // namespace wcheb
