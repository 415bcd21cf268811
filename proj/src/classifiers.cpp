#include "wcheb/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wcheb {

std::string_view to_string(Direction dir) noexcept {
    return dir == Direction::Nondecreasing ? "nondecreasing" : "nonincreasing";
}

std::string_view to_string(Tri t) noexcept {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::NotApplicable: return "n/a";
    }
    return "n/a";
}

namespace {

template <Scalar S>
double magnitude(std::span<const S> values) {
    double m = 1.0;
    for (const S& v : values) m = std::max(m, std::abs(to_double(v)));
    return m;
}

template <Scalar S>
struct Means {
    std::vector<S> P;
    std::vector<S> A;
    std::vector<S> mean;  // A_i / P_i, filled where P_i ≠ 0
    double scale = 1.0;
};

// Prefix sums plus prefix means; requires P_i ≠ 0 for i < upto.
template <Scalar S>
Means<S> prefix_means(const WeightSeq<S>& p, const Seq<S>& s, std::size_t upto) {
    require_same_length(p, s);
    const std::size_t n = p.size();
    Means<S> m{std::vector<S>(n), std::vector<S>(n), std::vector<S>(n), 1.0};
    S P(0);
    S A(0);
    for (std::size_t i = 0; i < n; ++i) {
        P += p[i];
        A += p[i] * s[i];
        m.P[i] = P;
        m.A[i] = A;
    }
    for (std::size_t i = 0; i < upto; ++i) {
        if (p.negligible(m.P[i])) {
            throw Error(i + 1 == n ? ErrorKind::ZeroTotalWeight : ErrorKind::ZeroPrefixSum, "P_i = 0", i + 1);
        }
        m.mean[i] = m.A[i] / m.P[i];
    }
    m.scale = std::max(magnitude(s.values()), magnitude(std::span<const S>(m.mean.data(), upto)));
    return m;
}

template <Scalar S>
bool ordered(const S& lhs, const S& rhs, Direction dir, double scale, const Tolerance& tol) {
    return dir == Direction::Nondecreasing ? weakly_leq(lhs, rhs, scale, tol) : weakly_leq(rhs, lhs, scale, tol);
}

template <Scalar S>
bool pairwise_sign(const Seq<S>& a, const Seq<S>& b, int sign, const Tolerance& tol) {
    require_same_length(a, b);
    const double scale = magnitude(a.values()) * magnitude(b.values());
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            S prod = (a[i] - a[j]) * (b[i] - b[j]);
            if (sign < 0) prod = -prod;
            if (!weakly_leq(S(0), prod, scale, tol)) return false;
        }
    }
    return true;
}

}  // namespace

template <Scalar S>
bool is_monotone(const Seq<S>& s, Direction dir, const Tolerance& tol) {
    const double scale = magnitude(s.values());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (!ordered(s[i], s[i + 1], dir, scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool is_synchronous(const Seq<S>& a, const Seq<S>& b, const Tolerance& tol) {
    return pairwise_sign(a, b, +1, tol);
}

template <Scalar S>
bool is_asynchronous(const Seq<S>& a, const Seq<S>& b, const Tolerance& tol) {
    return pairwise_sign(a, b, -1, tol);
}

template <Scalar S>
bool is_monotone_in_mean(const WeightSeq<S>& p, const Seq<S>& s, Direction dir, const Tolerance& tol) {
    Means<S> m = prefix_means(p, s, p.size());
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        if (!ordered(m.mean[k], m.mean[k + 1], dir, m.scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool is_last_max_in_mean(const WeightSeq<S>& p, const Seq<S>& s, const Tolerance& tol) {
    Means<S> m = prefix_means(p, s, p.size());
    const S& last = m.mean.back();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (!weakly_leq(m.mean[i], last, m.scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool is_first_max_in_mean(const WeightSeq<S>& p, const Seq<S>& s, const Tolerance& tol) {
    Means<S> m = prefix_means(p, s, p.size());
    const S& last = m.mean.back();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (!weakly_leq(last, m.mean[i], m.scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool is_convex(const Seq<S>& s, const Tolerance& tol) {
    const double scale = magnitude(s.values());
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        if (!weakly_leq(S(2) * s[i + 1], s[i + 2] + s[i], scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool is_concave(const Seq<S>& s, const Tolerance& tol) {
    const double scale = magnitude(s.values());
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        if (!weakly_leq(s[i + 2] + s[i], S(2) * s[i + 1], scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool partial_sums_bounded(const WeightSeq<S>& p, const Tolerance& tol) {
    double scale = 1.0;
    for (const S& v : p.values()) scale += std::abs(to_double(v));
    S P(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        P += p[i];
        if (!weakly_leq(S(0), P, scale, tol) || !weakly_leq(P, p.total(), scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool det_condition_nonneg(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol) {
    require_same_length(p, a);
    S A(0);
    for (std::size_t i = 0; i < p.size(); ++i) A += p[i] * a[i];
    const S An = A;
    const S& Pn = p.total();
    S P(0);
    A = S(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        P += p[i];
        A += p[i] * a[i];
        S lhs = P * An;
        S rhs = Pn * A;
        const double scale = std::max({1.0, std::abs(to_double(lhs)), std::abs(to_double(rhs))});
        if (!weakly_leq(rhs, lhs, scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool tail_mean_dominates(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol, bool literal) {
    Means<S> m = prefix_means(p, a, p.size() - 1);
    const S& Pn = p.total();
    const S& An = m.A.back();
    std::vector<S> tail_mean(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        S Pbar = Pn - m.P[i];
        if (!literal && p.negligible(Pbar)) throw Error(ErrorKind::ZeroTailSum, "P̄_i = 0", i + 1);
        tail_mean[i] = (An - m.A[i]) / (literal ? m.P[i] : Pbar);
    }
    const double scale = std::max(m.scale, magnitude(std::span<const S>(tail_mean)));
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (!weakly_leq(m.mean[i], tail_mean[i], scale, tol)) return false;
    }
    return true;
}

namespace {

template <Scalar S>
bool later_entries_vs_mean(const WeightSeq<S>& p, const Seq<S>& a, bool upper, const Tolerance& tol) {
    require_same_length(p, a);
    if (p.negligible(p.total())) throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
    S A(0);
    for (std::size_t i = 0; i < p.size(); ++i) A += p[i] * a[i];
    const S mean = A / p.total();
    const double scale = std::max(magnitude(a.values()), std::abs(to_double(mean)));
    for (std::size_t i = 1; i < a.size(); ++i) {
        bool ok = upper ? weakly_leq(a[i], mean, scale, tol) : weakly_leq(mean, a[i], scale, tol);
        if (!ok) return false;
    }
    return true;
}

}  // namespace

template <Scalar S>
bool upper_mean_condition(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol) {
    return later_entries_vs_mean(p, a, true, tol);
}

template <Scalar S>
bool lower_mean_condition(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol) {
    return later_entries_vs_mean(p, a, false, tol);
}

template <Scalar S>
bool mean_monotone_34(const WeightSeq<S>& p, const Seq<S>& a, Direction dir, const Tolerance& tol,
                      bool literal) {
    require_same_length(p, a);
    S P(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        P += p[i];
        if (!(P > 0) || p.negligible(P)) {
            throw Error(ErrorKind::NonPositivePrefixSum, "P_i must be positive", i + 1);
        }
    }
    Means<S> m = prefix_means(p, a, p.size());
    if (!literal) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            if (!ordered(m.mean[i], m.mean[i + 1], dir, m.scale, tol)) return false;
        }
        return true;
    }
    const S& Pn = p.total();
    for (std::size_t i = 0; i + 2 < p.size(); ++i) {
        S Pbar_next = Pn - m.P[i + 1];
        if (p.negligible(Pbar_next)) throw Error(ErrorKind::ZeroTailSum, "P̄_{i+1} = 0", i + 2);
        S rhs = m.A[i + 1] / Pbar_next;
        const double scale = std::max(m.scale, std::abs(to_double(rhs)));
        if (!ordered(m.mean[i], rhs, dir, scale, tol)) return false;
    }
    return true;
}

template <Scalar S>
bool in_sbar(const Seq<S>& x, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol) {
    require_same_length(x, a, b);
    return is_synchronous(a + x, b, tol) && is_synchronous(a - x, b, tol);
}

namespace {

template <class F>
Tri guarded(F&& f) {
    try {
        return tri(f());
    } catch (const Error&) {
        return Tri::NotApplicable;
    }
}

}  // namespace

template <Scalar S>
ConditionProfile condition_profile(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                   const Tolerance& tol, bool strict_literal) {
    require_same_length(p, a, b);
    ConditionProfile c;
    c.regime = p.regime();
    c.a_nondecreasing = tri(is_monotone(a, Direction::Nondecreasing, tol));
    c.a_nonincreasing = tri(is_monotone(a, Direction::Nonincreasing, tol));
    c.b_nondecreasing = tri(is_monotone(b, Direction::Nondecreasing, tol));
    c.b_nonincreasing = tri(is_monotone(b, Direction::Nonincreasing, tol));
    c.synchronous = tri(is_synchronous(a, b, tol));
    c.asynchronous = tri(is_asynchronous(a, b, tol));
    c.a_incr_in_mean = guarded([&] { return is_monotone_in_mean(p, a, Direction::Nondecreasing, tol); });
    c.a_decr_in_mean = guarded([&] { return is_monotone_in_mean(p, a, Direction::Nonincreasing, tol); });
    c.b_incr_in_mean = guarded([&] { return is_monotone_in_mean(p, b, Direction::Nondecreasing, tol); });
    c.b_decr_in_mean = guarded([&] { return is_monotone_in_mean(p, b, Direction::Nonincreasing, tol); });
    c.a_last_max_in_mean = guarded([&] { return is_last_max_in_mean(p, a, tol); });
    c.a_first_max_in_mean = guarded([&] { return is_first_max_in_mean(p, a, tol); });
    c.b_convex = tri(is_convex(b, tol));
    c.b_concave = tri(is_concave(b, tol));
    c.weights_partial_sum_bounded = tri(partial_sums_bounded(p, tol));
    c.det_condition_nonneg = tri(det_condition_nonneg(p, a, tol));
    c.tail_mean_dominates = guarded([&] { return tail_mean_dominates(p, a, tol, strict_literal); });
    c.upper_mean_condition = guarded([&] { return upper_mean_condition(p, a, tol); });
    c.lower_mean_condition = guarded([&] { return lower_mean_condition(p, a, tol); });
    c.mean_monotone_34_decreasing =
        guarded([&] { return mean_monotone_34(p, a, Direction::Nonincreasing, tol, strict_literal); });
    c.mean_monotone_34_increasing =
        guarded([&] { return mean_monotone_34(p, a, Direction::Nondecreasing, tol, strict_literal); });
    return c;
}

#define WCHEB_INSTANTIATE(S)                                                                               \
    template bool is_monotone(const Seq<S>&, Direction, const Tolerance&);                                 \
    template bool is_synchronous(const Seq<S>&, const Seq<S>&, const Tolerance&);                          \
    template bool is_asynchronous(const Seq<S>&, const Seq<S>&, const Tolerance&);                         \
    template bool is_monotone_in_mean(const WeightSeq<S>&, const Seq<S>&, Direction, const Tolerance&);   \
    template bool is_last_max_in_mean(const WeightSeq<S>&, const Seq<S>&, const Tolerance&);              \
    template bool is_first_max_in_mean(const WeightSeq<S>&, const Seq<S>&, const Tolerance&);             \
    template bool is_convex(const Seq<S>&, const Tolerance&);                                              \
    template bool is_concave(const Seq<S>&, const Tolerance&);                                             \
    template bool partial_sums_bounded(const WeightSeq<S>&, const Tolerance&);                            \
    template bool det_condition_nonneg(const WeightSeq<S>&, const Seq<S>&, const Tolerance&);             \
    template bool tail_mean_dominates(const WeightSeq<S>&, const Seq<S>&, const Tolerance&, bool);        \
    template bool upper_mean_condition(const WeightSeq<S>&, const Seq<S>&, const Tolerance&);             \
    template bool lower_mean_condition(const WeightSeq<S>&, const Seq<S>&, const Tolerance&);             \
    template bool mean_monotone_34(const WeightSeq<S>&, const Seq<S>&, Direction, const Tolerance&, bool); \
    template bool in_sbar(const Seq<S>&, const Seq<S>&, const Seq<S>&, const Tolerance&);                  \
    template ConditionProfile condition_profile(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&,        \
                                                const Tolerance&, bool);

WCHEB_INSTANTIATE(double)
WCHEB_INSTANTIATE(Rational)

#undef WCHEB_INSTANTIATE

}  // namespace wcheb
