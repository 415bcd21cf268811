#pragma once

// Weighted Čebyšev functional
//
//   T_n(p; a, b) = (1/P_n) Σ p_i a_i b_i - (1/P_n) Σ p_i a_i · (1/P_n) Σ p_i b_i
//
// evaluated directly and through the three summation-by-parts identities
// (determinant, prefix-mean and prefix/tail-mean forms). In float mode every
// route first shifts a and b by one of their own entries; the functional is
// invariant under that shift and the identities lose far less to cancellation.

#include "wcheb/scalar.hpp"
#include "wcheb/sequence.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wcheb {

/// All prefix and tail aggregates for one triple (0-based storage, entry i
/// holds the 1-indexed aggregate i + 1).
template <Scalar S>
struct PrefixTable {
    std::vector<S> P;     ///< P_i = Σ_{k≤i} p_k
    std::vector<S> Pbar;  ///< P_n - P_i
    std::vector<S> A;     ///< A_i(p) = Σ_{k≤i} p_k a_k
    std::vector<S> Abar;  ///< A_n(p) - A_i(p)
    std::vector<S> B;     ///< Σ_{k≤i} p_k b_k

    [[nodiscard]] std::size_t size() const noexcept { return P.size(); }
};

template <Scalar S>
PrefixTable<S> prefix_table(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// s - median(s) in float mode, s itself in rational mode. The functional and
/// every shift-invariant bound are unchanged; float cancellation is not.
template <Scalar S>
Seq<S> conditioned(const Seq<S>& s) {
    if constexpr (is_exact_v<S>) {
        return s;
    } else {
        std::vector<double> sorted(s.values().begin(), s.values().end());
        auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
        std::nth_element(sorted.begin(), mid, sorted.end());
        return s.shifted(-*mid);
    }
}

template <Scalar S>
S cheb_direct(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// (1/P_n²) Σ_{i<n} (P_i A_n - P_n A_i) Δb_i
template <Scalar S>
S cheb_via_det_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// (1/P_n) Σ_{i<n} P_i [A_n/P_n - A_i/P_i] Δb_i; needs P_i ≠ 0 for i < n.
template <Scalar S>
S cheb_via_mean_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

/// (1/P_n²) Σ_{i<n} P_i P̄_i [Ā_i/P̄_i - A_i/P_i] Δb_i; needs P_i, P̄_i ≠ 0 for i < n.
template <Scalar S>
S cheb_via_tail_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

template <Scalar S>
struct AbelSides {
    S lhs;
    S rhs;
};

/// Both sides of Σ_{l=from}^{to-1} d_l Δv_l = d_l v_l |_from^to - Σ_{l=from}^{to-1} v_{l+1} Δd_l.
/// `from` and `to` are 1-based and inclusive, 1 ≤ from < to ≤ n.
template <Scalar S>
AbelSides<S> abel_sum(const Seq<S>& d, const Seq<S>& v, std::size_t from, std::size_t to);

/// Largest magnitude among the partial terms of the direct and determinant
/// routes, floored at 1. Used as the scale of relative comparisons.
template <Scalar S>
double partial_term_scale(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

enum class Route { Direct, Determinant, Mean, Tail };
std::string_view to_string(Route route) noexcept;

template <Scalar S>
struct RouteEvaluation {
    S direct;
    S det;
    std::optional<S> mean;  ///< empty when a prefix sum vanishes
    std::optional<S> tail;  ///< empty when a prefix or tail sum vanishes
    std::string mean_unavailable;
    std::string tail_unavailable;
    double scale = 1.0;

    /// Largest |route - direct| over the available routes.
    [[nodiscard]] S max_discrepancy() const;
    [[nodiscard]] bool agree(const Tolerance& tol) const;
};

/// Evaluates every route; ZeroTotalWeight propagates, per-route precondition
/// failures are recorded instead.
template <Scalar S>
RouteEvaluation<S> evaluate_routes(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b);

}  // namespace wcheb
