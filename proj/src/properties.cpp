#include "wcheb/properties.hpp"

#include "wcheb/bounds.hpp"
#include "wcheb/classifiers.hpp"
#include "wcheb/functional.hpp"

#include <array>
#include <limits>

namespace wcheb {

namespace {

constexpr std::array<PropertyId, 13> kAll{
    PropertyId::A2,  PropertyId::Biernacki, PropertyId::A6,  PropertyId::A8,   PropertyId::A9,
    PropertyId::A10, PropertyId::A11,       PropertyId::T21, PropertyId::T23,  PropertyId::T31,
    PropertyId::T35, PropertyId::Sbar,      PropertyId::IdentityEquiv,
};

template <Scalar S>
class Checker {
public:
    Checker(double scale, const Tolerance& tol) : scale_(scale), tol_(tol) {}

    /// Records lhs <= rhs.
    void leq(const S& lhs, const S& rhs) {
        v.hit = true;
        v.slack = std::min(v.slack, to_double(S(rhs - lhs)));
        if (!weakly_leq(lhs, rhs, scale_, tol_)) v.pass = false;
    }

    Verdict v{false, true, std::numeric_limits<double>::infinity(), {}};

private:
    double scale_;
    Tolerance tol_;
};

template <Scalar S>
Verdict miss(std::string why) {
    return Verdict{false, true, 0.0, std::move(why)};
}

template <Scalar S>
bool prefix_positive(const WeightSeq<S>& p) {
    S P(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        P += p[i];
        if (!(P > 0) || p.negligible(P)) return false;
    }
    return true;
}

template <Scalar S>
std::optional<Direction> mean_direction(const WeightSeq<S>& p, const Seq<S>& s, const Tolerance& tol, bool& both) {
    const bool up = is_monotone_in_mean(p, s, Direction::Nondecreasing, tol);
    const bool down = is_monotone_in_mean(p, s, Direction::Nonincreasing, tol);
    both = up && down;
    if (up) return Direction::Nondecreasing;
    if (down) return Direction::Nonincreasing;
    return std::nullopt;
}

template <Scalar S>
void check_sign(Checker<S>& ck, const S& t, bool same, bool opposite) {
    if (same) ck.leq(S(0), t);
    if (opposite) ck.leq(t, S(0));
}

template <Scalar S>
Verdict check_impl(PropertyId id, const Case<S>& c, const Tolerance& tol, bool literal) {
    const WeightSeq<S>& p = c.p;
    const Seq<S>& a = c.a;
    const Seq<S>& b = c.b;
    require_same_length(p, a, b);
    if (p.negligible(p.total())) return miss<S>("P_n = 0");

    double scale = partial_term_scale(p, a, b);
    Checker<S> ck(scale, tol);

    switch (id) {
        case PropertyId::A2: {
            if (!p.nonnegative()) return miss<S>("weights not nonnegative");
            const bool au = is_monotone(a, Direction::Nondecreasing, tol);
            const bool ad = is_monotone(a, Direction::Nonincreasing, tol);
            const bool bu = is_monotone(b, Direction::Nondecreasing, tol);
            const bool bd = is_monotone(b, Direction::Nonincreasing, tol);
            const bool same = (au && bu) || (ad && bd);
            const bool opp = (au && bd) || (ad && bu);
            if (!same && !opp) return miss<S>("a or b not monotone");
            check_sign(ck, cheb_direct(p, a, b), same, opp);
            ck.v.detail = same ? (opp ? "both" : "same-sense") : "opposite-sense";
            break;
        }
        case PropertyId::Biernacki: {
            if (!p.nonnegative() || !prefix_positive(p)) return miss<S>("needs p >= 0 with every P_k > 0");
            bool a_both = false;
            bool b_both = false;
            auto da = mean_direction(p, a, tol, a_both);
            auto db = mean_direction(p, b, tol, b_both);
            if (!da || !db) return miss<S>("a or b not monotone in mean");
            const bool same = a_both || b_both || *da == *db;
            const bool opp = a_both || b_both || *da != *db;
            check_sign(ck, cheb_direct(p, a, b), same, opp);
            ck.v.detail = same ? (opp ? "both" : "same-sense") : "opposite-sense";
            break;
        }
        case PropertyId::A6: {
            if (!synchronous_hypothesis(p, a, b, tol)) return miss<S>("not synchronous with p >= 0");
            const S dp = dp_refinement(p, a, b);
            ck.leq(dp, cheb_direct(p, a, b));
            ck.leq(S(0), dp);
            break;
        }
        case PropertyId::A8:
        case PropertyId::A9: {
            if (!synchronous_hypothesis(p, a, b, tol)) return miss<S>("not synchronous with p >= 0");
            const S k = id == PropertyId::A8 ? c.k.value_or(S(0)) : S(0);
            const S bound = k_split_bound(p, a, b, k);
            ck.leq(bound, cheb_direct(p, a, b));
            ck.leq(S(0), bound);
            break;
        }
        case PropertyId::A10: {
            if (!synchronous_hypothesis(p, a, b, tol)) return miss<S>("not synchronous with p >= 0");
            const Chain<S> ch = refinement_chain(p, a, b, BoundOptions{false, false, tol});
            ck.leq(ch.mid, ch.t);
            ck.leq(ch.low, ch.mid);
            ck.leq(S(0), ch.low);
            break;
        }
        case PropertyId::A11: {
            if (!(p.total() > 0) || !partial_sums_bounded(p, tol)) return miss<S>("needs 0 <= P_i <= P_n");
            const bool au = is_monotone(a, Direction::Nondecreasing, tol);
            const bool ad = is_monotone(a, Direction::Nonincreasing, tol);
            const bool bu = is_monotone(b, Direction::Nondecreasing, tol);
            const bool bd = is_monotone(b, Direction::Nonincreasing, tol);
            const bool same = (au && bu) || (ad && bd);
            const bool opp = (au && bd) || (ad && bu);
            if (!same && !opp) return miss<S>("a or b not monotone");
            check_sign(ck, cheb_direct(p, a, b), same, opp);
            ck.v.detail = same ? (opp ? "both" : "same-sense") : "opposite-sense";
            break;
        }
        case PropertyId::T21: {
            auto clause = thm21_hypothesis(p, a, b, tol);
            if (!clause) return miss<S>("neither clause i nor ii holds");
            const Thm21Terms<S> terms = thm21_terms(p, a, b, literal);
            ck.leq(terms.max, cheb_direct(p, a, b));
            ck.v.detail = *clause;
            break;
        }
        case PropertyId::T23: {
            const std::array<bool, 3> clauses = thm23_clauses(p, a, tol, literal);
            const bool bu = is_monotone(b, Direction::Nondecreasing, tol);
            const bool bd = is_monotone(b, Direction::Nonincreasing, tol);
            if (!(clauses[0] || clauses[1] || clauses[2]) || !(bu || bd)) {
                return miss<S>("no clause applies or b not monotone");
            }
            const S t = cheb_direct(p, a, b);
            static constexpr std::array<const char*, 3> names{"i", "ii", "iii"};
            std::string fired;
            for (std::size_t i = 0; i < 3; ++i) {
                if (!clauses[i]) continue;
                check_sign(ck, t, bu, bd);
                fired += fired.empty() ? names[i] : std::string(",") + names[i];
            }
            ck.v.detail = fired;
            break;
        }
        case PropertyId::T31: {
            auto clause = thm31_hypothesis(p, a, b, tol);
            if (!clause) return miss<S>("hypothesis of the convex bound not met");
            ck.leq(thm31_bound(p, a, b, BoundOptions{true, false, tol}), cheb_direct(p, a, b));
            ck.v.detail = *clause;
            break;
        }
        case PropertyId::T35: {
            auto clause = thm32_hypothesis(p, a, b, tol, literal);
            if (!clause) return miss<S>("hypothesis of the prefix-mean bound not met");
            ck.leq(thm32_bound(p, a, b, BoundOptions{true, literal, tol}), cheb_direct(p, a, b));
            ck.v.detail = *clause;
            break;
        }
        case PropertyId::Sbar: {
            if (!c.x) return miss<S>("case has no x");
            if (!synchronous_hypothesis(p, a, b, tol)) return miss<S>("not synchronous with p >= 0");
            if (!in_sbar(*c.x, a, b, tol)) return miss<S>("x not in S̄(a,b)");
            Checker<S> wide(std::max(scale, partial_term_scale(p, *c.x, b)), tol);
            wide.leq(abs_of(cheb_direct(p, *c.x, b)), cheb_direct(p, a, b));
            return wide.v;
        }
        case PropertyId::IdentityEquiv: {
            const RouteEvaluation<S> r = evaluate_routes(p, a, b);
            Checker<S> routes(r.scale, tol);
            routes.leq(r.max_discrepancy(), S(0));
            routes.v.detail = std::string("det") + (r.mean ? ",mean" : "") + (r.tail ? ",tail" : "");
            return routes.v;
        }
    }
    return ck.v;
}

}  // namespace

std::string_view to_string(PropertyId id) noexcept {
    switch (id) {
        case PropertyId::A2: return "a2";
        case PropertyId::Biernacki: return "biernacki";
        case PropertyId::A6: return "a6";
        case PropertyId::A8: return "a8";
        case PropertyId::A9: return "a9";
        case PropertyId::A10: return "a10";
        case PropertyId::A11: return "a11";
        case PropertyId::T21: return "t21";
        case PropertyId::T23: return "t23";
        case PropertyId::T31: return "t31";
        case PropertyId::T35: return "t35";
        case PropertyId::Sbar: return "sbar";
        case PropertyId::IdentityEquiv: return "identity-equiv";
    }
    return "a2";
}

PropertyId parse_property(std::string_view text) {
    for (PropertyId id : kAll) {
        if (text == to_string(id)) return id;
    }
    throw Error(ErrorKind::UnknownProperty, "unknown property '" + std::string(text) + "'");
}

std::span<const PropertyId> all_properties() noexcept {
    return kAll;
}

bool has_literal_reading(PropertyId id) noexcept {
    return id == PropertyId::T21 || id == PropertyId::T23 || id == PropertyId::T35;
}

template <Scalar S>
Verdict check_case(PropertyId id, const Case<S>& c, const Tolerance& tol, bool literal) {
    try {
        return check_impl(id, c, tol, literal);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::LengthMismatch) throw;
        return miss<S>(e.what());
    }
}

template Verdict check_case(PropertyId, const Case<double>&, const Tolerance&, bool);
template Verdict check_case(PropertyId, const Case<Rational>&, const Tolerance&, bool);

}  // namespace wcheb
