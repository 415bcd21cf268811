#include "wcheb/functional.hpp"

#include <algorithm>
#include <cmath>

namespace wcheb {

namespace {

template <Scalar S>
void require_total(const WeightSeq<S>& p) {
    if (p.negligible(p.total())) {
        throw Error(ErrorKind::ZeroTotalWeight, "P_n = 0");
    }
}

template <Scalar S>
struct Sums {
    std::vector<S> P;
    std::vector<S> A;
    S Pn;
    S An;
};

template <Scalar S>
Sums<S> sums(const WeightSeq<S>& p, const Seq<S>& a) {
    Sums<S> out{std::vector<S>(p.size()), std::vector<S>(p.size()), S(0), S(0)};
    S P(0);
    S A(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        P += p[i];
        A += p[i] * a[i];
        out.P[i] = P;
        out.A[i] = A;
    }
    out.Pn = p.total();
    out.An = A;
    return out;
}

template <Scalar S>
S direct_raw(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    S ab(0);
    S sa(0);
    S sb(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        ab += p[i] * a[i] * b[i];
        sa += p[i] * a[i];
        sb += p[i] * b[i];
    }
    const S& Pn = p.total();
    return ab / Pn - (sa / Pn) * (sb / Pn);
}

template <Scalar S>
S det_raw(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    Sums<S> s = sums(p, a);
    S acc(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += (s.P[i] * s.An - s.Pn * s.A[i]) * (b[i + 1] - b[i]);
    }
    return acc / (s.Pn * s.Pn);
}

template <Scalar S>
S mean_raw(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    Sums<S> s = sums(p, a);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p.negligible(s.P[i])) throw Error(ErrorKind::ZeroPrefixSum, "P_i = 0", i + 1);
    }
    S mean_n = s.An / s.Pn;
    S acc(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += s.P[i] * (mean_n - s.A[i] / s.P[i]) * (b[i + 1] - b[i]);
    }
    return acc / s.Pn;
}

template <Scalar S>
S tail_raw(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    Sums<S> s = sums(p, a);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p.negligible(s.P[i])) throw Error(ErrorKind::ZeroPrefixSum, "P_i = 0", i + 1);
        if (p.negligible(s.Pn - s.P[i])) throw Error(ErrorKind::ZeroTailSum, "P̄_i = 0", i + 1);
    }
    S acc(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        S Pbar = s.Pn - s.P[i];
        S Abar = s.An - s.A[i];
        acc += s.P[i] * Pbar * (Abar / Pbar - s.A[i] / s.P[i]) * (b[i + 1] - b[i]);
    }
    return acc / (s.Pn * s.Pn);
}

}  // namespace

template <Scalar S>
PrefixTable<S> prefix_table(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    const std::size_t n = p.size();
    PrefixTable<S> t{std::vector<S>(n), std::vector<S>(n), std::vector<S>(n), std::vector<S>(n),
                     std::vector<S>(n)};
    S P(0);
    S A(0);
    S B(0);
    for (std::size_t i = 0; i < n; ++i) {
        P += p[i];
        A += p[i] * a[i];
        B += p[i] * b[i];
        t.P[i] = P;
        t.A[i] = A;
        t.B[i] = B;
    }
    for (std::size_t i = 0; i < n; ++i) {
        t.Pbar[i] = P - t.P[i];
        t.Abar[i] = A - t.A[i];
    }
    return t;
}

template <Scalar S>
S cheb_direct(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_total(p);
    return direct_raw(p, conditioned(a), conditioned(b));
}

template <Scalar S>
S cheb_via_det_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_total(p);
    return det_raw(p, conditioned(a), b);
}

template <Scalar S>
S cheb_via_mean_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_total(p);
    return mean_raw(p, conditioned(a), b);
}

template <Scalar S>
S cheb_via_tail_identity(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_total(p);
    return tail_raw(p, conditioned(a), b);
}

template <Scalar S>
AbelSides<S> abel_sum(const Seq<S>& d, const Seq<S>& v, std::size_t from, std::size_t to) {
    require_same_length(d, v);
    if (from < 1 || from >= to || to > d.size()) {
        throw Error(ErrorKind::BadRange,
                    "need 1 <= from < to <= " + std::to_string(d.size()) + ", got " +
                        std::to_string(from) + ".." + std::to_string(to));
    }
    const std::size_t lo = from - 1;
    const std::size_t hi = to - 1;
    S lhs(0);
    S tail(0);
    for (std::size_t l = lo; l < hi; ++l) {
        lhs += d[l] * (v[l + 1] - v[l]);
        tail += v[l + 1] * (d[l + 1] - d[l]);
    }
    S rhs = d[hi] * v[hi] - d[lo] * v[lo] - tail;
    return {lhs, rhs};
}

template <Scalar S>
double partial_term_scale(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    if (p.negligible(p.total())) return 1.0;
    const double Pn = std::abs(to_double(p.total()));
    double scale = 1.0;
    auto bump = [&](double v) { scale = std::max(scale, std::abs(v)); };

    double ab = 0.0;
    double sa = 0.0;
    double sb = 0.0;
    double P = 0.0;
    std::vector<double> Ai(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = to_double(p[i]);
        const double ai = to_double(a[i]);
        const double bi = to_double(b[i]);
        ab += pi * ai * bi;
        sa += pi * ai;
        sb += pi * bi;
        Ai[i] = sa;
        bump(pi * ai * bi / Pn);
    }
    bump(ab / Pn);
    bump((sa / Pn) * (sb / Pn));
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        P += to_double(p[i]);
        const double db = to_double(b[i + 1]) - to_double(b[i]);
        bump(P * sa * db / (Pn * Pn));
        bump(Ai[i] * db / Pn);
    }
    return std::isfinite(scale) ? scale : 1.0;
}

std::string_view to_string(Route route) noexcept {
    switch (route) {
        case Route::Direct: return "direct";
        case Route::Determinant: return "determinant";
        case Route::Mean: return "mean";
        case Route::Tail: return "tail";
    }
    return "direct";
}

template <Scalar S>
S RouteEvaluation<S>::max_discrepancy() const {
    S worst = abs_of(S(det - direct));
    if (mean) worst = std::max(worst, abs_of(S(*mean - direct)));
    if (tail) worst = std::max(worst, abs_of(S(*tail - direct)));
    return worst;
}

template <Scalar S>
bool RouteEvaluation<S>::agree(const Tolerance& tol) const {
    return nearly_equal(max_discrepancy(), S(0), scale, tol);
}

template <Scalar S>
RouteEvaluation<S> evaluate_routes(const WeightSeq<S>& p, const Seq<S>& a, const Seq<S>& b) {
    require_same_length(p, a, b);
    require_total(p);
    const Seq<S> ca = conditioned(a);
    const Seq<S> cb = conditioned(b);
    RouteEvaluation<S> out{direct_raw(p, ca, cb), det_raw(p, ca, cb), std::nullopt, std::nullopt, {}, {},
                           partial_term_scale(p, ca, cb)};
    try {
        out.mean = mean_raw(p, ca, cb);
    } catch (const Error& e) {
        out.mean_unavailable = e.what();
    }
    try {
        out.tail = tail_raw(p, ca, cb);
    } catch (const Error& e) {
        out.tail_unavailable = e.what();
    }
    return out;
}

#define WCHEB_INSTANTIATE(S)                                                                  \
    template PrefixTable<S> prefix_table(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);  \
    template S cheb_direct(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);                \
    template S cheb_via_det_identity(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);      \
    template S cheb_via_mean_identity(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);     \
    template S cheb_via_tail_identity(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);     \
    template AbelSides<S> abel_sum(const Seq<S>&, const Seq<S>&, std::size_t, std::size_t);   \
    template double partial_term_scale(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);    \
    template struct RouteEvaluation<S>;                                                       \
    template RouteEvaluation<S> evaluate_routes(const WeightSeq<S>&, const Seq<S>&, const Seq<S>&);

WCHEB_INSTANTIATE(double)
WCHEB_INSTANTIATE(Rational)

#undef WCHEB_INSTANTIATE

}  // namespace wcheb
