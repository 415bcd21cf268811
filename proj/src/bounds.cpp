#include "wcheb/bounds.hpp"

#include <algorithm>

namespace wcheb {

std::string_view to_string(BoundName name) noexcept {
    switch (name) {
        case BoundName::DP_A6: return "DP_A6";
        case BoundName::KSplit_A8: return "KSplit_A8";
        case BoundName::PMSplit_A9: return "PMSplit_A9";
        case BoundName::Chain_A10: return "Chain_A10";
        case BoundName::Thm21_2_1e: return "Thm21_2_1e";
        case BoundName::MP_A11_sign: return "MP_A11_sign";
        case BoundName::Thm23_sign: return "Thm23_sign";
        case BoundName::Thm31_3_2a: return "Thm31_3_2a";
        case BoundName::Thm32_3_5: return "Thm32_3_5";
        case BoundName::Sbar_A7_member: return "Sbar_A7_member";
    }
    return "DP_A6";
}

std::string_view to_string(Sign sign) noexcept {
    switch (sign) {
        case Sign::NonNegative: return "NonNegative";
        case Sign::NonPositive: return "NonPositive";
        case Sign::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

template <Scalar S>
void require_nonnegative(const WeightSeq<S>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw Error(ErrorKind::NegativeWeight, "weights must be nonnegative", i + 1);
    }
    if (p.negligible(p.total())) throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
}

template <Scalar S>
void require_prefix_nonzero(const WeightSeq<S>& p) {
    S P(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        P += p[i];
        if (p.negligible(P)) throw Error(ErrorKind::ZeroPrefixSum, "P_i = 0", i + 1);
    }
}

template <Scalar S>
S abs_T(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    return abs_of(cheb_direct(p, a, b));
}

template <Scalar S>
bool all_prefix_positive(const WeightSeq<S>& p) {
    S P(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        P += p[i];
        if (!(P > 0) || p.negligible(P)) return false;
    }
    return true;
}

template <class F>
bool safely(F&& f) {
    try {
        return f();
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

template <Scalar S>
S dp_refinement(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_nonnegative(p);
    const Seq<S> abs_a = a.abs();
    const Seq<S> abs_b = b.abs();
    return std::max({abs_T(p, abs_a, b), abs_T(p, a, abs_b), abs_T(p, abs_a, abs_b)});
}

template <Scalar S>
S k_split_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const S& k) {
    require_same_length(p, a, b);
    require_nonnegative(p);
    S split_a = abs_T(p, a.max_with(k), b) + abs_T(p, a.min_with(k), b);
    S split_b = abs_T(p, a, b.max_with(k)) + abs_T(p, a, b.min_with(k));
    return std::max(split_a, split_b);
}

template <Scalar S>
S pm_split_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    return k_split_bound(p, a, b, S(0));
}

template <Scalar S>
std::optional<std::string> synchronous_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                                  const Tolerance& tol) {
    require_same_length(p, a, b);
    if (!p.nonnegative()) return std::nullopt;
    if (!is_synchronous(a, b, tol)) return std::nullopt;
    return "synchronous";
}

template <Scalar S>
Chain<S> refinement_chain(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts) {
    require_same_length(p, a, b);
    require_nonnegative(p);
    if (!opts.force && !is_synchronous(a, b, opts.tol)) {
        throw Error(ErrorKind::HypothesisNotMet, "(a,b) is not synchronous");
    }
    return {cheb_direct(p, a, b), abs_T(p, a.positive_part(), b) + abs_T(p, a.negative_part(), b),
            abs_T(p, a.abs(), b)};
}

template <Scalar S>
S thm21_A(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_nonnegative(p);
    require_prefix_nonzero(p);
    const std::size_t n = p.size();
    const S& Pn = p.total();
    S An(0);
    for (std::size_t i = 0; i < n; ++i) An += p[i] * a[i];
    S first(0);
    S second(0);
    S P(0);
    S A(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        P += p[i];
        A += p[i] * a[i];
        const S db = b[i + 1] - b[i];
        first += abs_of(A) * db;
        second += P * db;
    }
    return first / Pn - (abs_of(An) / Pn) * (second / Pn);
}

template <Scalar S>
S thm21_D(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, bool literal) {
    require_same_length(p, a, b);
    require_nonnegative(p);
    require_prefix_nonzero(p);
    const std::size_t n = p.size();
    const S& Pn = p.total();
    S An(0);
    for (std::size_t i = 0; i < n; ++i) An += p[i] * a[i];
    S acc(0);
    S P(0);
    S A(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        P += p[i];
        A += p[i] * a[i];
        const S weight = literal ? P : S(Pn - P);
        acc += (P * abs_of(S(An - A)) - weight * abs_of(A)) * (b[i + 1] - b[i]);
    }
    return acc / (Pn * Pn);
}

template <Scalar S>
Thm21Terms<S> thm21_terms(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, bool literal) {
    const Seq<S> abs_b = b.abs();
    Thm21Terms<S> out{{abs_of(thm21_A(p, a, b)), abs_of(thm21_A(p, a, abs_b)), abs_T(p, a, abs_b),
                       abs_of(thm21_D(p, a, b, literal)), abs_of(thm21_D(p, a, abs_b, literal))},
                      S(0)};
    out.max = *std::max_element(out.terms.begin(), out.terms.end());
    return out;
}

template <Scalar S>
std::optional<std::string> thm21_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol) {
    require_same_length(p, a, b);
    if (!p.nonnegative() || p[0] <= 0 || p.negligible(p[0])) return std::nullopt;
    if (is_monotone(b, Direction::Nondecreasing, tol) && safely([&] { return is_last_max_in_mean(p, a, tol); })) {
        return "i";
    }
    if (is_monotone(b, Direction::Nonincreasing, tol) && safely([&] { return is_first_max_in_mean(p, a, tol); })) {
        return "ii";
    }
    return std::nullopt;
}

template <Scalar S>
S thm21_bound(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const BoundOptions& opts) {
    if (!opts.force && !thm21_hypothesis(p, a, b, opts.tol)) {
        std::string why;
        if (!p.nonnegative()) {
            why = "weights must be nonnegative with P_i > 0";
        } else if (is_monotone(b, Direction::Nondecreasing, opts.tol)) {
            why = "clause i: b nondecreasing but a is not last-max in mean";
        } else if (is_monotone(b, Direction::Nonincreasing, opts.tol)) {
            why = "clause ii: b nonincreasing but a is not first-max in mean";
        } else {
            why = "clauses i and ii: b is not monotone";
        }
        throw Error(ErrorKind::HypothesisNotMet, why);
    }
    return thm21_terms(p, a, b, opts.strict_literal).max;
}

template <Scalar S>
std::optional<std::string> thm31_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol) {
    require_same_length(p, a, b);
    if (p.regime() != WeightRegime::AllPositive) return std::nullopt;
    if (is_convex(b, tol) && upper_mean_condition(p, a, tol)) return "convex";
    if (is_concave(b, tol) && lower_mean_condition(p, a, tol)) return "concave";
    return std::nullopt;
}

template <Scalar S>
S thm31_bound(const WeightSeq<S>& p, const Seq<S>& a_in, const Seq<S>& b, const BoundOptions& opts) {
    require_same_length(p, a_in, b);
    if (p.negligible(p.total())) throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
    if (!opts.force && !thm31_hypothesis(p, a_in, b, opts.tol)) {
        throw Error(ErrorKind::HypothesisNotMet,
                    "needs positive p with (b convex, a_{i+1} <= A_n/P_n) or (b concave, a_{i+1} >= A_n/P_n)");
    }
    const Seq<S> a = conditioned(a_in);
    const std::size_t n = p.size();
    const S& Pn = p.total();
    S An(0);
    for (std::size_t i = 0; i < n; ++i) An += p[i] * a[i];
    const S mean = An / Pn;
    S acc(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        acc += S(static_cast<long long>(n - 1 - i)) * p[i] * (mean - a[i]);
    }
    return (b[n - 1] - b[0]) / S(static_cast<long long>(n - 1)) * (acc / Pn);
}

template <Scalar S>
std::optional<std::string> thm32_hypothesis(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                                            const Tolerance& tol, bool literal) {
    require_same_length(p, a, b);
    if (!all_prefix_positive(p)) return std::nullopt;
    if (is_convex(b, tol) &&
        safely([&] { return mean_monotone_34(p, a, Direction::Nonincreasing, tol, literal); })) {
        return "convex";
    }
    if (is_concave(b, tol) &&
        safely([&] { return mean_monotone_34(p, a, Direction::Nondecreasing, tol, literal); })) {
        return "concave";
    }
    return std::nullopt;
}

template <Scalar S>
S thm32_bound(const WeightSeq<S>& p, const Seq<S>& a_in, const Seq<S>& b_in, const BoundOptions& opts) {
    require_same_length(p, a_in, b_in);
    if (p.negligible(p.total())) throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
    if (!opts.force && !thm32_hypothesis(p, a_in, b_in, opts.tol, opts.strict_literal)) {
        throw Error(ErrorKind::HypothesisNotMet,
                    "needs P_i > 0 with (b convex, prefix means nonincreasing) or (b concave, prefix means "
                    "nondecreasing)");
    }
    const Seq<S> a = conditioned(a_in);
    const Seq<S> b = conditioned(b_in);
    const std::size_t n = p.size();
    const S& Pn = p.total();
    S An(0);
    S Bn(0);
    for (std::size_t i = 0; i < n; ++i) {
        An += p[i] * a[i];
        Bn += p[i] * b[i];
    }
    const S mean = An / Pn;
    S norm(0);
    S acc(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const S w = S(static_cast<long long>(n - 1 - i)) * p[i];
        norm += w;
        acc += w * (mean - a[i]);
    }
    if (p.negligible(norm)) throw Error(ErrorKind::ZeroPrefixSum, "sum of P_i over i < n vanishes");
    return acc / norm * (b[n - 1] - Bn / Pn);
}

template <Scalar S>
SignClaim mp_sign(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol) {
    require_same_length(p, a, b);
    if (!(p.total() > 0) || p.negligible(p.total()) || !partial_sums_bounded(p, tol)) return {};
    const bool a_up = is_monotone(a, Direction::Nondecreasing, tol);
    const bool a_down = is_monotone(a, Direction::Nonincreasing, tol);
    const bool b_up = is_monotone(b, Direction::Nondecreasing, tol);
    const bool b_down = is_monotone(b, Direction::Nonincreasing, tol);
    if ((a_up && b_up) || (a_down && b_down)) return {Sign::NonNegative, "same-sense"};
    if ((a_up && b_down) || (a_down && b_up)) return {Sign::NonPositive, "opposite-sense"};
    return {};
}

template <Scalar S>
std::array<bool, 3> thm23_clauses(const WeightSeq<S>& p, const Seq<S>& a, const Tolerance& tol, bool literal) {
    require_same_length(p, a);
    std::array<bool, 3> out{false, false, false};
    if (p.negligible(p.total())) return out;
    out[0] = det_condition_nonneg(p, a, tol);
    out[1] = all_prefix_positive(p) && safely([&] { return is_last_max_in_mean(p, a, tol); });
    bool strictly_inside = true;
    S P(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        P += p[i];
        strictly_inside = strictly_inside && P > 0 && P < p.total() && !p.negligible(P) &&
                          !p.negligible(S(p.total() - P));
    }
    out[2] = strictly_inside && safely([&] { return tail_mean_dominates(p, a, tol, literal); });
    return out;
}

template <Scalar S>
SignClaim thm23_sign(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Tolerance& tol,
                     bool literal) {
    require_same_length(p, a, b);
    static constexpr std::array<const char*, 3> names{"i", "ii", "iii"};
    const std::array<bool, 3> clauses = thm23_clauses(p, a, tol, literal);
    auto first = std::find(clauses.begin(), clauses.end(), true);
    if (first == clauses.end()) return {};
    std::string clause = names[static_cast<std::size_t>(first - clauses.begin())];
    if (is_monotone(b, Direction::Nondecreasing, tol)) return {Sign::NonNegative, clause};
    if (is_monotone(b, Direction::Nonincreasing, tol)) return {Sign::NonPositive, clause};
    return {};
}

template <Scalar S>
BoundReport<S> sbar_check(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b, const Seq<S>& x,
                          const BoundOptions& opts) {
    require_same_length(p, a, b, x);
    require_nonnegative(p);
    BoundReport<S> r;
    r.name = BoundName::Sbar_A7_member;
    r.hypothesis_profile = condition_profile(p, a, b, opts.tol, opts.strict_literal);
    const bool sync = is_synchronous(a, b, opts.tol);
    const bool member = in_sbar(x, a, b, opts.tol);
    if (!opts.force) {
        if (!sync) throw Error(ErrorKind::HypothesisNotMet, "(a,b) is not synchronous");
        if (!member) throw Error(ErrorKind::NotAMember, "x is not in S̄(a,b)");
    }
    r.functional_value = cheb_direct(p, a, b);
    r.bound_value = abs_T(p, x, b);
    r.slack = r.functional_value - *r.bound_value;
    r.applicable = sync && member;
    r.asserting = r.applicable;
    r.clause = "member";
    return r;
}

template <Scalar S>
BoundReport<S> assess(BoundName name, const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b,
                      const BoundOptions& opts, const std::optional<S>& k, const std::optional<Seq<S>>& x) {
    require_same_length(p, a, b);
    if (name == BoundName::Sbar_A7_member) {
        if (!x) throw Error(ErrorKind::HypothesisNotMet, "S̄ check needs x");
        try {
            return sbar_check(p, a, b, *x, opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::HypothesisNotMet && e.kind() != ErrorKind::NotAMember) throw;
            BoundReport<S> r;
            r.name = name;
            r.functional_value = cheb_direct(p, a, b);
            r.hypothesis_profile = condition_profile(p, a, b, opts.tol, opts.strict_literal);
            r.note = e.what();
            return r;
        }
    }

    BoundReport<S> r;
    r.name = name;
    r.functional_value = cheb_direct(p, a, b);
    r.hypothesis_profile = condition_profile(p, a, b, opts.tol, opts.strict_literal);
    const S& t = r.functional_value;

    auto emit_lower = [&](std::optional<std::string> clause, auto&& compute) {
        r.applicable = clause.has_value();
        r.asserting = r.applicable;
        if (clause) r.clause = *clause;
        if (!r.applicable && !opts.force) {
            r.note = "hypothesis not met";
            return;
        }
        try {
            r.bound_value = compute();
            r.slack = t - *r.bound_value;
        } catch (const Error& e) {
            r.applicable = false;
            r.asserting = false;
            r.note = e.what();
        }
    };
    auto emit_sign = [&](SignClaim claim) {
        r.applicable = claim.sign != Sign::Unknown;
        r.asserting = r.applicable;
        r.clause = claim.clause;
        r.bound_value = S(0);
        if (claim.sign == Sign::NonPositive) {
            r.slack = -t;
        } else if (claim.sign == Sign::NonNegative) {
            r.slack = t;
        } else {
            r.note = "no clause applies";
            if (!opts.force) r.bound_value.reset();
        }
    };

    BoundOptions forced = opts;
    forced.force = true;
    switch (name) {
        case BoundName::DP_A6:
            emit_lower(synchronous_hypothesis(p, a, b, opts.tol), [&] { return dp_refinement(p, a, b); });
            break;
        case BoundName::KSplit_A8:
            emit_lower(synchronous_hypothesis(p, a, b, opts.tol),
                       [&] { return k_split_bound(p, a, b, k.value_or(S(0))); });
            break;
        case BoundName::PMSplit_A9:
            emit_lower(synchronous_hypothesis(p, a, b, opts.tol), [&] { return pm_split_bound(p, a, b); });
            break;
        case BoundName::Chain_A10:
            emit_lower(synchronous_hypothesis(p, a, b, opts.tol),
                       [&] { return refinement_chain(p, a, b, forced).mid; });
            break;
        case BoundName::Thm21_2_1e:
            emit_lower(thm21_hypothesis(p, a, b, opts.tol), [&] { return thm21_bound(p, a, b, forced); });
            break;
        case BoundName::Thm31_3_2a:
            emit_lower(thm31_hypothesis(p, a, b, opts.tol), [&] { return thm31_bound(p, a, b, forced); });
            break;
        case BoundName::Thm32_3_5:
            emit_lower(thm32_hypothesis(p, a, b, opts.tol, opts.strict_literal),
                       [&] { return thm32_bound(p, a, b, forced); });
            break;
        case BoundName::MP_A11_sign:
            emit_sign(mp_sign(p, a, b, opts.tol));
            break;
        case BoundName::Thm23_sign:
            emit_sign(thm23_sign(p, a, b, opts.tol, opts.strict_literal));
            break;
        case BoundName::Sbar_A7_member:
            break;
    }
    return r;
}

#define WCHEB_INSTANTIATE(S)                                                                                   \
    template S dp_refinement(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);                               \
    template S k_split_bound(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const S&);                     \
    template S pm_split_bound(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);                              \
    template Chain<S> refinement_chain(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const BoundOptions&); \
    template S thm21_A(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);                                     \
    template S thm21_D(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, bool);                               \
    template Thm21Terms<S> thm21_terms(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, bool);               \
    template S thm21_bound(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const BoundOptions&);            \
    template S thm31_bound(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const BoundOptions&);            \
    template S thm32_bound(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const BoundOptions&);            \
    template SignClaim mp_sign(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const Tolerance&);           \
    template std::array<bool, 3> thm23_clauses(const WeightSeq<S>&, const Seq<S>&, const Tolerance&, bool);    \
    template SignClaim thm23_sign(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const Tolerance&, bool);  \
    template std::optional<std::string> synchronous_hypothesis(const WeightSeq<S>&, const Seq<S>&,             \
                                                               const Seq<S>&, const Tolerance&);               \
    template std::optional<std::string> thm21_hypothesis(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&,    \
                                                         const Tolerance&);                                    \
    template std::optional<std::string> thm31_hypothesis(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&,    \
                                                         const Tolerance&);                                    \
    template std::optional<std::string> thm32_hypothesis(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&,    \
                                                         const Tolerance&, bool);                              \
    template BoundReport<S> sbar_check(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&, const Seq<S>&,       \
                                       const BoundOptions&);                                                   \
    template BoundReport<S> assess(BoundName, const WeightSeq<S>&, const Seq<S>&, const Seq<S>&,               \
                                   const BoundOptions&, const std::optional<S>&, const std::optional<Seq<S>>&);

WCHEB_INSTANTIATE(double)
WCHEB_INSTANTIATE(Rational)

#undef WCHEB_INSTANTIATE

}  // namespace wcheb
