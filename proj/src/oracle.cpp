#include "wcheb/oracle.hpp"

#include "wcheb/error.hpp"
#include "wcheb/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace wcheb::oracle {

namespace {

using Q = Rational;

Q qabs(const Q& v) { return v < 0 ? Q(-v) : v; }

// 1-based prefix sums straight from the definition.
Q P(const Vec& p, std::size_t i) {
    Q s(0);
    for (std::size_t k = 0; k < i; ++k) s += p[k];
    return s;
}

Q A(const Vec& p, const Vec& a, std::size_t i) {
    Q s(0);
    for (std::size_t k = 0; k < i; ++k) s += p[k] * a[k];
    return s;
}

Q total(const Vec& p) { return P(p, p.size()); }

Q delta(const Vec& b, std::size_t i) { return b[i] - b[i - 1]; }  // Δb_i, 1-based

void check_lengths(const Vec& p, const Vec& a, const Vec& b) {
    if (p.size() < 2) throw Error(ErrorKind::TooShort, "need n >= 2");
    if (a.size() != p.size() || b.size() != p.size()) throw Error(ErrorKind::LengthMismatch, "lengths differ");
}

Q nonzero_total(const Vec& p) {
    Q Pn = total(p);
    if (Pn == 0) throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
    return Pn;
}

Vec map_abs(const Vec& v) {
    Vec out(v);
    for (auto& e : out) e = qabs(e);
    return out;
}

Vec clamp_below(const Vec& v, const Q& k) {  // v ∨ k
    Vec out(v);
    for (auto& e : out) e = std::max(e, k);
    return out;
}

Vec clamp_above(const Vec& v, const Q& k) {  // v ∧ k
    Vec out(v);
    for (auto& e : out) e = std::min(e, k);
    return out;
}

Vec add(const Vec& x, const Vec& y, int sign) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = sign > 0 ? Q(x[i] + y[i]) : Q(x[i] - y[i]);
    return out;
}

bool nonnegative(const Vec& p) {
    return std::all_of(p.begin(), p.end(), [](const Q& v) { return v >= 0; });
}

bool all_prefix_positive(const Vec& p) {
    for (std::size_t i = 1; i <= p.size(); ++i) {
        if (P(p, i) <= 0) return false;
    }
    return true;
}

Q absT(const Vec& p, const Vec& a, const Vec& b) { return qabs(exact_eval(p, a, b)); }

Q dp(const Vec& p, const Vec& a, const Vec& b) {
    const Vec aa = map_abs(a);
    const Vec ab = map_abs(b);
    return std::max({absT(p, aa, b), absT(p, a, ab), absT(p, aa, ab)});
}

Q ksplit(const Vec& p, const Vec& a, const Vec& b, const Q& k) {
    return std::max(absT(p, clamp_below(a, k), b) + absT(p, clamp_above(a, k), b),
                    absT(p, a, clamp_below(b, k)) + absT(p, a, clamp_above(b, k)));
}

Q chain_mid(const Vec& p, const Vec& a, const Vec& b) {
    return absT(p, clamp_below(a, Q(0)), b) + absT(p, clamp_above(a, Q(0)), b);
}

Q five_A(const Vec& p, const Vec& a, const Vec& b) {
    const std::size_t n = p.size();
    const Q Pn = nonzero_total(p);
    Q first(0);
    Q second(0);
    for (std::size_t i = 1; i < n; ++i) {
        first += qabs(A(p, a, i)) * delta(b, i);
        second += P(p, i) * delta(b, i);
    }
    return first / Pn - qabs(A(p, a, n)) / Pn * (second / Pn);
}

Q five_D(const Vec& p, const Vec& a, const Vec& b, bool literal) {
    const std::size_t n = p.size();
    const Q Pn = nonzero_total(p);
    const Q An = A(p, a, n);
    Q acc(0);
    for (std::size_t i = 1; i < n; ++i) {
        const Q Pi = P(p, i);
        const Q Ai = A(p, a, i);
        const Q lead = Pi * qabs(Q(An - Ai));
        acc += (literal ? Q(lead - Pi * qabs(Ai)) : Q(lead - (Pn - Pi) * qabs(Ai))) * delta(b, i);
    }
    return acc / (Pn * Pn);
}

Q five_max(const Vec& p, const Vec& a, const Vec& b, bool literal) {
    const Vec ab = map_abs(b);
    return std::max({qabs(five_A(p, a, b)), qabs(five_A(p, a, ab)), absT(p, a, ab), qabs(five_D(p, a, b, literal)),
                     qabs(five_D(p, a, ab, literal))});
}

Q convex_bound(const Vec& p, const Vec& a, const Vec& b) {
    const std::size_t n = p.size();
    const Q Pn = nonzero_total(p);
    const Q mean = A(p, a, n) / Pn;
    Q acc(0);
    for (std::size_t i = 1; i < n; ++i) acc += Q(static_cast<long long>(n - i)) * p[i - 1] * (mean - a[i - 1]);
    return (b[n - 1] - b[0]) / Q(static_cast<long long>(n - 1)) * acc / Pn;
}

Q prefix_mean_bound(const Vec& p, const Vec& a, const Vec& b) {
    const std::size_t n = p.size();
    const Q Pn = nonzero_total(p);
    const Q mean_a = A(p, a, n) / Pn;
    const Q mean_b = A(p, b, n) / Pn;
    Q norm(0);
    Q acc(0);
    for (std::size_t i = 1; i < n; ++i) {
        const Q w = Q(static_cast<long long>(n - i)) * p[i - 1];
        norm += w;
        acc += w * (mean_a - a[i - 1]);
    }
    if (norm == 0) throw Error(ErrorKind::ZeroPrefixSum, "sum of P_i over i < n vanishes");
    return acc / norm * (b[n - 1] - mean_b);
}

struct Flags {
    bool same = false;
    bool opposite = false;
};

Flags sense(bool au, bool ad, bool bu, bool bd) {
    return {(au && bu) || (ad && bd), (au && bd) || (ad && bu)};
}

Flags monotone_sense(const Vec& a, const Vec& b) {
    return sense(monotone(a, true), monotone(a, false), monotone(b, true), monotone(b, false));
}

class Recorder {
public:
    void leq(const Q& lhs, const Q& rhs) {
        v.hit = true;
        const Q margin = rhs - lhs;
        if (!v.slack || margin < *v.slack) v.slack = margin;
        if (margin < 0) v.pass = false;
    }
    void sign(const Q& t, Flags f) {
        if (f.same) leq(Q(0), t);
        if (f.opposite) leq(t, Q(0));
    }

    OracleVerdict v;
};

OracleVerdict miss(std::string why) {
    OracleVerdict v;
    v.detail = std::move(why);
    return v;
}

std::string sense_name(Flags f) {
    return f.same ? (f.opposite ? "both" : "same-sense") : "opposite-sense";
}

bool strictly_interior(const Vec& p) {
    const Q Pn = total(p);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Q Pi = P(p, i);
        if (Pi <= 0 || Pi >= Pn) return false;
    }
    return true;
}

}  // namespace

Triple from_case(const CaseFile& c) {
    auto parse_all = [](const std::vector<std::string>& v) {
        Vec out;
        out.reserve(v.size());
        for (const auto& s : v) out.push_back(parse_decimal(s));
        return out;
    };
    Triple t{parse_all(c.p), parse_all(c.a), parse_all(c.b), std::nullopt, std::nullopt};
    if (c.k) t.k = parse_decimal(*c.k);
    if (c.x) t.x = parse_all(*c.x);
    check_lengths(t.p, t.a, t.b);
    if (t.x && t.x->size() != t.p.size()) throw Error(ErrorKind::LengthMismatch, "x length differs");
    return t;
}

CaseFile to_case(const Triple& t, std::optional<std::string> label) {
    auto strs = [](const Vec& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const auto& e : v) out.push_back(to_decimal_string(e));
        return out;
    };
    CaseFile c;
    c.label = std::move(label);
    c.p = strs(t.p);
    c.a = strs(t.a);
    c.b = strs(t.b);
    if (t.k) c.k = to_decimal_string(*t.k);
    if (t.x) c.x = strs(*t.x);
    return c;
}

Rational exact_eval(const Vec& p, const Vec& a, const Vec& b) {
    check_lengths(p, a, b);
    const Q Pn = nonzero_total(p);
    Q sab(0);
    Q sa(0);
    Q sb(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        sab += p[i] * a[i] * b[i];
        sa += p[i] * a[i];
        sb += p[i] * b[i];
    }
    return sab / Pn - (sa / Pn) * (sb / Pn);
}

Rational exact_eval_pairwise(const Vec& p, const Vec& a, const Vec& b) {
    check_lengths(p, a, b);
    const Q Pn = nonzero_total(p);
    Q acc(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) acc += p[i] * p[j] * (a[i] - a[j]) * (b[i] - b[j]);
    }
    return acc / (Q(2) * Pn * Pn);
}

bool ExactRoutes::identical() const {
    return det == direct && (!mean || *mean == direct) && (!tail || *tail == direct);
}

ExactRoutes exact_routes(const Vec& p, const Vec& a, const Vec& b) {
    check_lengths(p, a, b);
    const std::size_t n = p.size();
    const Q Pn = nonzero_total(p);
    const Q An = A(p, a, n);
    ExactRoutes r{exact_eval(p, a, b), Q(0), std::nullopt, std::nullopt};

    Q det(0);
    for (std::size_t i = 1; i < n; ++i) det += (P(p, i) * An - Pn * A(p, a, i)) * delta(b, i);
    r.det = det / (Pn * Pn);

    bool prefix_ok = true;
    bool tail_ok = true;
    for (std::size_t i = 1; i < n; ++i) {
        prefix_ok = prefix_ok && P(p, i) != 0;
        tail_ok = tail_ok && Pn - P(p, i) != 0;
    }
    if (prefix_ok) {
        Q acc(0);
        for (std::size_t i = 1; i < n; ++i) {
            const Q Pi = P(p, i);
            acc += Pi * (An / Pn - A(p, a, i) / Pi) * delta(b, i);
        }
        r.mean = acc / Pn;
    }
    if (prefix_ok && tail_ok) {
        Q acc(0);
        for (std::size_t i = 1; i < n; ++i) {
            const Q Pi = P(p, i);
            const Q Pbar = Pn - Pi;
            const Q Ai = A(p, a, i);
            acc += Pi * Pbar * ((An - Ai) / Pbar - Ai / Pi) * delta(b, i);
        }
        r.tail = acc / (Pn * Pn);
    }
    return r;
}

bool monotone(const Vec& s, bool nondecreasing) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (nondecreasing ? s[i] < s[i - 1] : s[i] > s[i - 1]) return false;
    }
    return true;
}

bool synchronous(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if ((a[i] - a[j]) * (b[i] - b[j]) < 0) return false;
        }
    }
    return true;
}

std::optional<bool> monotone_in_mean(const Vec& p, const Vec& s, bool nondecreasing) {
    Vec means;
    for (std::size_t k = 1; k <= p.size(); ++k) {
        const Q Pk = P(p, k);
        if (Pk == 0) return std::nullopt;
        means.push_back(A(p, s, k) / Pk);
    }
    return monotone(means, nondecreasing);
}

std::optional<bool> last_max_in_mean(const Vec& p, const Vec& s) {
    const std::size_t n = p.size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (P(p, i) == 0) return std::nullopt;
    }
    const Q full = A(p, s, n) / P(p, n);
    for (std::size_t i = 1; i < n; ++i) {
        if (full < A(p, s, i) / P(p, i)) return false;
    }
    return true;
}

std::optional<bool> first_max_in_mean(const Vec& p, const Vec& s) {
    const std::size_t n = p.size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (P(p, i) == 0) return std::nullopt;
    }
    const Q full = A(p, s, n) / P(p, n);
    for (std::size_t i = 1; i < n; ++i) {
        if (full > A(p, s, i) / P(p, i)) return false;
    }
    return true;
}

bool convex(const Vec& s) {
    for (std::size_t i = 2; i < s.size(); ++i) {
        if (s[i] - 2 * s[i - 1] + s[i - 2] < 0) return false;
    }
    return true;
}

bool concave(const Vec& s) {
    for (std::size_t i = 2; i < s.size(); ++i) {
        if (s[i] - 2 * s[i - 1] + s[i - 2] > 0) return false;
    }
    return true;
}

bool partial_sums_bounded(const Vec& p) {
    const Q Pn = total(p);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Q Pi = P(p, i);
        if (Pi < 0 || Pi > Pn) return false;
    }
    return true;
}

bool det_condition(const Vec& p, const Vec& a) {
    const std::size_t n = p.size();
    const Q Pn = total(p);
    const Q An = A(p, a, n);
    for (std::size_t i = 1; i < n; ++i) {
        if (P(p, i) * An - Pn * A(p, a, i) < 0) return false;
    }
    return true;
}

std::optional<bool> tail_mean_dominates(const Vec& p, const Vec& a, bool literal) {
    const std::size_t n = p.size();
    const Q Pn = total(p);
    const Q An = A(p, a, n);
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) {
        const Q Pi = P(p, i);
        const Q Pbar = Pn - Pi;
        if (Pi == 0 || (!literal && Pbar == 0)) return std::nullopt;
        const Q Ai = A(p, a, i);
        const Q tail = (An - Ai) / (literal ? Pi : Pbar);
        ok = ok && tail >= Ai / Pi;
    }
    return ok;
}

std::optional<bool> upper_mean(const Vec& p, const Vec& a) {
    const Q Pn = total(p);
    if (Pn == 0) return std::nullopt;
    const Q mean = A(p, a, p.size()) / Pn;
    return std::all_of(a.begin() + 1, a.end(), [&](const Q& v) { return v <= mean; });
}

std::optional<bool> lower_mean(const Vec& p, const Vec& a) {
    const Q Pn = total(p);
    if (Pn == 0) return std::nullopt;
    const Q mean = A(p, a, p.size()) / Pn;
    return std::all_of(a.begin() + 1, a.end(), [&](const Q& v) { return v >= mean; });
}

std::optional<bool> mean_monotone(const Vec& p, const Vec& a, bool nondecreasing, bool literal) {
    const std::size_t n = p.size();
    if (!all_prefix_positive(p)) return std::nullopt;
    if (!literal) return monotone_in_mean(p, a, nondecreasing);
    // A_i/P_i against A_{i+1}/P̄_{i+1}, i = 1..n-2
    const Q Pn = total(p);
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        const Q Pbar_next = Pn - P(p, i + 1);
        if (Pbar_next == 0) return std::nullopt;
    }
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        const Q lhs = A(p, a, i) / P(p, i);
        const Q rhs = A(p, a, i + 1) / (Pn - P(p, i + 1));
        if (nondecreasing ? lhs > rhs : lhs < rhs) return false;
    }
    return true;
}

bool in_sbar(const Vec& x, const Vec& a, const Vec& b) {
    return synchronous(add(a, x, 1), b) && synchronous(add(a, x, -1), b);
}

std::optional<Rational> exact_bound_forced(BoundName name, const Triple& t, bool literal) {
    const Vec& p = t.p;
    const Vec& a = t.a;
    const Vec& b = t.b;
    check_lengths(p, a, b);
    if (total(p) == 0) return std::nullopt;
    switch (name) {
        case BoundName::DP_A6:
            if (!nonnegative(p)) return std::nullopt;
            return dp(p, a, b);
        case BoundName::KSplit_A8:
            if (!nonnegative(p)) return std::nullopt;
            return ksplit(p, a, b, t.k.value_or(Q(0)));
        case BoundName::PMSplit_A9:
            if (!nonnegative(p)) return std::nullopt;
            return ksplit(p, a, b, Q(0));
        case BoundName::Chain_A10:
            if (!nonnegative(p)) return std::nullopt;
            return chain_mid(p, a, b);
        case BoundName::Thm21_2_1e:
            if (!nonnegative(p) || p[0] <= 0) return std::nullopt;
            return five_max(p, a, b, literal);
        case BoundName::Thm31_3_2a:
            return convex_bound(p, a, b);
        case BoundName::Thm32_3_5: {
            Q norm(0);
            for (std::size_t i = 1; i < p.size(); ++i) norm += P(p, i);
            if (norm == 0) return std::nullopt;
            return prefix_mean_bound(p, a, b);
        }
        case BoundName::MP_A11_sign:
        case BoundName::Thm23_sign:
            return Q(0);
        case BoundName::Sbar_A7_member:
            if (!t.x) return std::nullopt;
            return absT(p, *t.x, b);
    }
    return std::nullopt;
}

Rational exact_bound(BoundName name, const Triple& t, bool literal) {
    const Vec& p = t.p;
    const Vec& a = t.a;
    const Vec& b = t.b;
    check_lengths(p, a, b);
    nonzero_total(p);
    auto require = [](bool ok, const char* why) {
        if (!ok) throw Error(ErrorKind::HypothesisNotMet, why);
    };
    switch (name) {
        case BoundName::DP_A6:
        case BoundName::KSplit_A8:
        case BoundName::PMSplit_A9:
        case BoundName::Chain_A10:
            require(nonnegative(p) && synchronous(a, b), "needs p >= 0 and (a,b) synchronous");
            break;
        case BoundName::Thm21_2_1e: {
            require(nonnegative(p) && p[0] > 0, "needs p >= 0 with p_1 > 0");
            const bool i = monotone(b, true) && last_max_in_mean(p, a).value_or(false);
            const bool ii = monotone(b, false) && first_max_in_mean(p, a).value_or(false);
            require(i || ii, "neither clause i nor ii holds");
            break;
        }
        case BoundName::Thm31_3_2a: {
            require(std::all_of(p.begin(), p.end(), [](const Q& v) { return v > 0; }), "needs positive weights");
            const bool up = convex(b) && upper_mean(p, a).value_or(false);
            const bool down = concave(b) && lower_mean(p, a).value_or(false);
            require(up || down, "needs b convex with the upper mean condition or b concave with the lower one");
            break;
        }
        case BoundName::Thm32_3_5: {
            require(all_prefix_positive(p), "needs every P_i > 0");
            const bool up = convex(b) && mean_monotone(p, a, false, literal).value_or(false);
            const bool down = concave(b) && mean_monotone(p, a, true, literal).value_or(false);
            require(up || down, "needs b convex with nonincreasing prefix means or b concave with nondecreasing");
            break;
        }
        case BoundName::MP_A11_sign: {
            const Flags f = monotone_sense(a, b);
            require(total(p) > 0 && partial_sums_bounded(p) && (f.same || f.opposite),
                    "needs 0 <= P_i <= P_n and monotone a, b");
            break;
        }
        case BoundName::Thm23_sign: {
            const bool any = det_condition(p, a) ||
                             (all_prefix_positive(p) && last_max_in_mean(p, a).value_or(false)) ||
                             (strictly_interior(p) && tail_mean_dominates(p, a, literal).value_or(false));
            require(any && (monotone(b, true) || monotone(b, false)), "no clause holds or b not monotone");
            break;
        }
        case BoundName::Sbar_A7_member:
            require(t.x.has_value(), "needs x");
            require(nonnegative(p) && synchronous(a, b), "needs p >= 0 and (a,b) synchronous");
            if (!in_sbar(*t.x, a, b)) throw Error(ErrorKind::NotAMember, "x is not in S̄(a,b)");
            break;
    }
    return *exact_bound_forced(name, t, literal);
}

OracleVerdict check(PropertyId id, const Triple& t, bool literal) {
    const Vec& p = t.p;
    const Vec& a = t.a;
    const Vec& b = t.b;
    check_lengths(p, a, b);
    const Q Pn = total(p);
    if (Pn == 0) return miss("P_n = 0");

    Recorder r;
    switch (id) {
        case PropertyId::A2: {
            if (!nonnegative(p)) return miss("weights not nonnegative");
            const Flags f = monotone_sense(a, b);
            if (!f.same && !f.opposite) return miss("a or b not monotone");
            r.sign(exact_eval(p, a, b), f);
            r.v.detail = sense_name(f);
            break;
        }
        case PropertyId::Biernacki: {
            if (!nonnegative(p) || !all_prefix_positive(p)) return miss("needs p >= 0 with every P_k > 0");
            const Flags f = sense(monotone_in_mean(p, a, true).value_or(false),
                                  monotone_in_mean(p, a, false).value_or(false),
                                  monotone_in_mean(p, b, true).value_or(false),
                                  monotone_in_mean(p, b, false).value_or(false));
            if (!f.same && !f.opposite) return miss("a or b not monotone in mean");
            r.sign(exact_eval(p, a, b), f);
            r.v.detail = sense_name(f);
            break;
        }
        case PropertyId::A6:
        case PropertyId::A8:
        case PropertyId::A9: {
            if (!nonnegative(p) || !synchronous(a, b)) return miss("not synchronous with p >= 0");
            const Q k = id == PropertyId::A8 ? t.k.value_or(Q(0)) : Q(0);
            const Q bound = id == PropertyId::A6 ? dp(p, a, b) : ksplit(p, a, b, k);
            r.leq(bound, exact_eval(p, a, b));
            r.leq(Q(0), bound);
            break;
        }
        case PropertyId::A10: {
            if (!nonnegative(p) || !synchronous(a, b)) return miss("not synchronous with p >= 0");
            const Q mid = chain_mid(p, a, b);
            const Q low = absT(p, map_abs(a), b);
            r.leq(mid, exact_eval(p, a, b));
            r.leq(low, mid);
            r.leq(Q(0), low);
            break;
        }
        case PropertyId::A11: {
            if (!(Pn > 0) || !partial_sums_bounded(p)) return miss("needs 0 <= P_i <= P_n");
            const Flags f = monotone_sense(a, b);
            if (!f.same && !f.opposite) return miss("a or b not monotone");
            r.sign(exact_eval(p, a, b), f);
            r.v.detail = sense_name(f);
            break;
        }
        case PropertyId::T21: {
            if (!nonnegative(p) || p[0] <= 0) return miss("needs p >= 0 with p_1 > 0");
            const bool i = monotone(b, true) && last_max_in_mean(p, a).value_or(false);
            const bool ii = !i && monotone(b, false) && first_max_in_mean(p, a).value_or(false);
            if (!i && !ii) return miss("neither clause i nor ii holds");
            r.leq(five_max(p, a, b, literal), exact_eval(p, a, b));
            r.v.detail = i ? "i" : "ii";
            break;
        }
        case PropertyId::T23: {
            const bool c1 = det_condition(p, a);
            const bool c2 = all_prefix_positive(p) && last_max_in_mean(p, a).value_or(false);
            const bool c3 = strictly_interior(p) && tail_mean_dominates(p, a, literal).value_or(false);
            const bool bu = monotone(b, true);
            const bool bd = monotone(b, false);
            if (!(c1 || c2 || c3) || !(bu || bd)) return miss("no clause applies or b not monotone");
            const Q T = exact_eval(p, a, b);
            std::string fired;
            const std::array<std::pair<bool, const char*>, 3> clauses{{{c1, "i"}, {c2, "ii"}, {c3, "iii"}}};
            for (const auto& [on, name] : clauses) {
                if (!on) continue;
                r.sign(T, {bu, bd});
                fired += fired.empty() ? std::string(name) : std::string(",") + name;
            }
            r.v.detail = fired;
            break;
        }
        case PropertyId::T31: {
            if (!std::all_of(p.begin(), p.end(), [](const Q& v) { return v > 0; })) return miss("needs p > 0");
            const bool up = convex(b) && upper_mean(p, a).value_or(false);
            const bool down = !up && concave(b) && lower_mean(p, a).value_or(false);
            if (!up && !down) return miss("hypothesis of the convex bound not met");
            r.leq(convex_bound(p, a, b), exact_eval(p, a, b));
            r.v.detail = up ? "convex" : "concave";
            break;
        }
        case PropertyId::T35: {
            if (!all_prefix_positive(p)) return miss("needs every P_i > 0");
            const bool up = convex(b) && mean_monotone(p, a, false, literal).value_or(false);
            const bool down = !up && concave(b) && mean_monotone(p, a, true, literal).value_or(false);
            if (!up && !down) return miss("hypothesis of the prefix-mean bound not met");
            r.leq(prefix_mean_bound(p, a, b), exact_eval(p, a, b));
            r.v.detail = up ? "convex" : "concave";
            break;
        }
        case PropertyId::Sbar: {
            if (!t.x) return miss("case has no x");
            if (!nonnegative(p) || !synchronous(a, b)) return miss("not synchronous with p >= 0");
            if (!in_sbar(*t.x, a, b)) return miss("x not in S̄(a,b)");
            r.leq(absT(p, *t.x, b), exact_eval(p, a, b));
            break;
        }
        case PropertyId::IdentityEquiv: {
            const ExactRoutes routes = exact_routes(p, a, b);
            r.v.hit = true;
            r.v.pass = routes.identical();
            Q worst(0);
            for (const auto& v : {std::optional<Q>(routes.det), routes.mean, routes.tail}) {
                if (v) worst = std::max(worst, qabs(Q(*v - routes.direct)));
            }
            r.v.slack = -worst;
            r.v.detail = std::string("det") + (routes.mean ? ",mean" : "") + (routes.tail ? ",tail" : "");
            break;
        }
    }
    return r.v;
}

FidelityRecord float_vs_exact(const CaseFile& c, double tol) {
    FidelityRecord rec;
    Triple t;
    std::optional<Case<double>> fc;
    try {
        t = from_case(c);
        fc = materialize<double>(c);
    } catch (const Error&) {
        return rec;
    }
    const auto& p = fc->p;
    const auto& a = fc->a;
    const auto& b = fc->b;

    auto record = [&](std::string name, const std::optional<Q>& exact, auto&& engine) {
        if (!exact) return;
        double value = 0.0;
        try {
            value = engine();
        } catch (const Error&) {
            return;
        }
        const double e = exact->convert_to<double>();
        const double rel = std::abs(value - e) / std::max(1.0, std::abs(e));
        rec.worst = std::max(rec.worst, rel);
        if (!(rel <= tol)) rec.within = false;
        rec.items.push_back({std::move(name), *exact, value, rel});
    };
    auto guarded = [](auto&& f) -> std::optional<Q> {
        try {
            return f();
        } catch (const Error&) {
            return std::nullopt;
        }
    };

    if (total(t.p) == 0) return rec;
    const ExactRoutes routes = exact_routes(t.p, t.a, t.b);
    record("T", routes.direct, [&] { return cheb_direct(p, a, b); });
    record("T_det", routes.det, [&] { return cheb_via_det_identity(p, a, b); });
    record("T_mean", routes.mean, [&] { return cheb_via_mean_identity(p, a, b); });
    record("T_tail", routes.tail, [&] { return cheb_via_tail_identity(p, a, b); });

    const BoundOptions forced{true, false, Tolerance{}};
    const double kf = fc->k.value_or(0.0);
    record("dp_refinement", exact_bound_forced(BoundName::DP_A6, t), [&] { return dp_refinement(p, a, b); });
    record("k_split_bound", exact_bound_forced(BoundName::KSplit_A8, t), [&] { return k_split_bound(p, a, b, kf); });
    record("pm_split_bound", exact_bound_forced(BoundName::PMSplit_A9, t), [&] { return pm_split_bound(p, a, b); });
    record("chain_mid", exact_bound_forced(BoundName::Chain_A10, t),
           [&] { return refinement_chain(p, a, b, forced).mid; });
    record("chain_low", nonnegative(t.p) ? std::optional<Q>(absT(t.p, map_abs(t.a), t.b)) : std::nullopt,
           [&] { return refinement_chain(p, a, b, forced).low; });
    record("thm21_bound", guarded([&] { return exact_bound_forced(BoundName::Thm21_2_1e, t); }),
           [&] { return thm21_bound(p, a, b, forced); });
    record("thm31_bound", guarded([&] { return exact_bound_forced(BoundName::Thm31_3_2a, t); }),
           [&] { return thm31_bound(p, a, b, forced); });
    record("thm32_bound", guarded([&] { return exact_bound_forced(BoundName::Thm32_3_5, t); }),
           [&] { return thm32_bound(p, a, b, forced); });
    if (t.x) {
        record("T_x", exact_eval(t.p, *t.x, t.b), [&] { return cheb_direct(p, *fc->x, b); });
    }
    return rec;
}

GridSpec default_grid(PropertyId id, std::size_t n) {
    GridSpec g;
    g.n = n;
    for (int v = -2; v <= 2; ++v) g.values.emplace_back(v);
    if (id == PropertyId::A11 || id == PropertyId::T23) {
        g.weights = {Q(-1), Q(1), Q(2)};
    } else {
        g.weights = {Q(1), Q(2), Q(3)};
    }
    return g;
}

namespace {

std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) {
    if (x != 0 && y > std::numeric_limits<std::uint64_t>::max() / x) return std::numeric_limits<std::uint64_t>::max();
    return x * y;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) out = sat_mul(out, base);
    return out;
}

// Every length-n tuple over `set`, lexicographic in set order.
std::vector<Vec> tuples(const Vec& set, std::size_t n) {
    std::vector<Vec> out;
    Vec cur(n, set.front());
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) cur[i] = set[idx[i]];
        out.push_back(cur);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < set.size()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

}  // namespace

std::uint64_t grid_size(const GridSpec& g, PropertyId id) {
    std::uint64_t size = sat_mul(sat_pow(g.weights.size(), g.n), sat_pow(g.values.size(), 2 * g.n));
    if (id == PropertyId::A8) size = sat_mul(size, g.values.size());
    if (id == PropertyId::Sbar) size = sat_mul(size, sat_pow(g.values.size(), g.n));
    return size;
}

std::string EnumerationSummary::status() const {
    if (violations > 0) return "fail";
    if (hits == 0) return "vacuous";
    return "pass";
}

EnumerationSummary enumerate_and_verify(const GridSpec& g, PropertyId id, const EnumerateOptions& opts) {
    if (g.n < 2) throw Error(ErrorKind::TooShort, "grid n must be at least 2");
    if (g.values.empty() || g.weights.empty()) throw Error(ErrorKind::BadRange, "grid sets must be nonempty");
    const std::uint64_t size = grid_size(g, id);
    if (size > opts.cap) {
        throw Error(ErrorKind::CapExceeded,
                    "grid expands to " + std::to_string(size) + " cases, cap is " + std::to_string(opts.cap));
    }

    const std::vector<Vec> weights = tuples(g.weights, g.n);
    const std::vector<Vec> seqs = tuples(g.values, g.n);
    std::vector<std::optional<Q>> ks{std::nullopt};
    std::vector<std::optional<Vec>> xs{std::nullopt};
    if (id == PropertyId::A8) ks.assign(g.values.begin(), g.values.end());
    if (id == PropertyId::Sbar) xs.assign(seqs.begin(), seqs.end());
    const std::uint64_t per_weight = static_cast<std::uint64_t>(seqs.size()) * seqs.size() * ks.size() * xs.size();

    std::vector<EnumerationSummary> parts(weights.size());
    auto run = [&](std::size_t w) {
        EnumerationSummary& s = parts[w];
        std::uint64_t index = w * per_weight;
        Triple t{weights[w], {}, {}, std::nullopt, std::nullopt};
        for (const Vec& a : seqs) {
            t.a = a;
            for (const Vec& b : seqs) {
                t.b = b;
                for (const auto& k : ks) {
                    t.k = k;
                    for (const auto& x : xs) {
                        t.x = x;
                        ++s.enumerated;
                        const OracleVerdict v = check(id, t, opts.literal);
                        if (v.hit) {
                            ++s.hits;
                            if (v.slack && (!s.worst_slack || *v.slack < *s.worst_slack)) s.worst_slack = v.slack;
                            if (v.pass) {
                                ++s.passes;
                            } else {
                                ++s.violations;
                                if (s.violation_list.size() < opts.keep_violations) {
                                    s.violation_list.push_back({index, to_case(t), v.detail});
                                }
                            }
                        }
                        ++index;
                    }
                }
            }
        }
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, weights.size()));
    if (threads <= 1) {
        for (std::size_t w = 0; w < weights.size(); ++w) run(w);
    } else {
        std::vector<std::thread> pool;
        for (unsigned tid = 0; tid < threads; ++tid) {
            pool.emplace_back([&, tid] {
                for (std::size_t w = tid; w < weights.size(); w += threads) run(w);
            });
        }
        for (auto& th : pool) th.join();
    }

    EnumerationSummary out;
    for (const EnumerationSummary& s : parts) {
        out.enumerated += s.enumerated;
        out.hits += s.hits;
        out.passes += s.passes;
        out.violations += s.violations;
        if (s.worst_slack && (!out.worst_slack || *s.worst_slack < *out.worst_slack)) out.worst_slack = s.worst_slack;
        for (const auto& v : s.violation_list) {
            if (out.violation_list.size() < opts.keep_violations) out.violation_list.push_back(v);
        }
    }
    return out;
}

}  // namespace wcheb::oracle
