#include "wcheb/generators.hpp"

#include "wcheb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wcheb::gen {

namespace {

using boost::multiprecision::mpz_int;

long long pow10(int places) {
    long long s = 1;
    for (int i = 0; i < places; ++i) s *= 10;
    return s;
}

long long floor_of(const Rational& r) {
    mpz_int num = boost::multiprecision::numerator(r);
    const mpz_int den = boost::multiprecision::denominator(r);
    mpz_int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q.convert_to<long long>();
}

long long ceil_of(const Rational& r) {
    return -floor_of(Rational(-r));
}

long long to_units(double v, long long scale) {
    return std::llround(v * static_cast<double>(scale));
}

int sign_of(long long v) { return (v > 0) - (v < 0); }

// (a_i - a_j)(b_i - b_j) ≥ 0 on integer units, compared by sign only.
bool synchronous_units(const std::vector<long long>& a, const std::vector<long long>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (sign_of(a[i] - a[j]) * sign_of(b[i] - b[j]) < 0) return false;
        }
    }
    return true;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % bound;
}

long long Rng::between(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<long long>(next());
    return static_cast<long long>(static_cast<std::uint64_t>(lo) + below(span + 1));
}

void GenConfig::validate() const {
    if (n_min < 2) throw Error(ErrorKind::BadRange, "n_min must be at least 2");
    if (n_max < n_min) throw Error(ErrorKind::BadRange, "n_max below n_min");
    if (!(value_lo < value_hi) || !std::isfinite(value_lo) || !std::isfinite(value_hi)) {
        throw Error(ErrorKind::BadRange, "value range must be a nonempty finite interval");
    }
    if (!(weight_lo > 0) || !(weight_lo <= weight_hi)) {
        throw Error(ErrorKind::BadRange, "weight range must satisfy 0 < weight_lo <= weight_hi");
    }
    if (places < 0 || places > 12) throw Error(ErrorKind::BadRange, "places must lie in 0..12");
}

Rational DecimalSeq::exact(std::size_t i) const {
    return Rational(units[i]) / Rational(pow10(places));
}

std::vector<std::string> DecimalSeq::strings() const {
    std::vector<std::string> out;
    out.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) out.push_back(to_decimal_string(exact(i)));
    return out;
}

RealSeq DecimalSeq::to_real() const {
    std::vector<double> v;
    v.reserve(units.size());
    const double s = static_cast<double>(pow10(places));
    for (long long u : units) v.push_back(static_cast<double>(u) / s);
    return RealSeq(std::move(v));
}

RationalSeq DecimalSeq::to_exact() const {
    std::vector<Rational> v;
    v.reserve(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) v.push_back(exact(i));
    return RationalSeq(std::move(v));
}

WeightSeq<double> DecimalSeq::to_real_weights() const {
    auto s = to_real();
    return WeightSeq<double>(std::vector<double>(s.values().begin(), s.values().end()));
}

WeightSeq<Rational> DecimalSeq::to_exact_weights() const {
    auto s = to_exact();
    return WeightSeq<Rational>(std::vector<Rational>(s.values().begin(), s.values().end()));
}

DecimalSeq DecimalSeq::negated() const {
    DecimalSeq out = *this;
    for (auto& u : out.units) u = -u;
    return out;
}

DecimalSeq DecimalSeq::reversed() const {
    DecimalSeq out = *this;
    std::reverse(out.units.begin(), out.units.end());
    return out;
}

Generator::Generator(const GenConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed), scale_(0) {
    cfg_.validate();
    scale_ = pow10(cfg_.places);
}

long long Generator::lo_units() const { return to_units(cfg_.value_lo, scale_); }
long long Generator::hi_units() const { return to_units(cfg_.value_hi, scale_); }

std::size_t Generator::length() {
    return static_cast<std::size_t>(
        rng_.between(static_cast<long long>(cfg_.n_min), static_cast<long long>(cfg_.n_max)));
}

long long Generator::value() { return rng_.between(lo_units(), hi_units()); }

DecimalSeq Generator::uniform(std::size_t n) {
    DecimalSeq s{{}, cfg_.places};
    for (std::size_t i = 0; i < n; ++i) s.units.push_back(value());
    return s;
}

long long Generator::at_least(const Rational& bound) {
    const long long c = ceil_of(bound);
    const long long hi = hi_units();
    if (c <= hi) return rng_.between(c, hi);
    return c + rng_.between(0, (hi - lo_units()) / 10);
}

long long Generator::at_most(const Rational& bound) {
    const long long f = floor_of(bound);
    const long long lo = lo_units();
    if (f >= lo) return rng_.between(lo, f);
    return f - rng_.between(0, (hi_units() - lo) / 10);
}

DecimalSeq Generator::monotone(std::size_t n, Direction dir) {
    DecimalSeq s = uniform(n);
    std::sort(s.units.begin(), s.units.end());
    return dir == Direction::Nondecreasing ? s : s.reversed();
}

std::pair<DecimalSeq, DecimalSeq> Generator::synchronous_pair(std::size_t n) {
    const long long levels = rng_.between(1, static_cast<long long>(n) + 1);
    auto step_map = [&] {
        std::vector<long long> f(static_cast<std::size_t>(levels));
        if (rng_.chance(1, 10)) {
            std::fill(f.begin(), f.end(), value());
        } else {
            for (auto& v : f) v = value();
            std::sort(f.begin(), f.end());
        }
        return f;
    };
    const std::vector<long long> f = step_map();
    const std::vector<long long> g = step_map();
    DecimalSeq a{{}, cfg_.places};
    DecimalSeq b{{}, cfg_.places};
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<std::size_t>(rng_.between(0, levels - 1));
        a.units.push_back(f[t]);
        b.units.push_back(g[t]);
    }
    return {a, b};
}

DecimalSeq Generator::monotone_in_mean(const DecimalSeq& p, Direction dir) {
    DecimalSeq a{{}, cfg_.places};
    Rational P(0);
    Rational A(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        const long long w = p.units[k];
        if (P + w <= 0) throw Error(ErrorKind::NonPositivePrefixSum, "P_k must be positive", k + 1);
        long long v = 0;
        if (k == 0 || w == 0) {
            v = value();
        } else {
            const Rational mean = A / P;
            const bool up = (dir == Direction::Nondecreasing) == (w > 0);
            v = up ? at_least(mean) : at_most(mean);
        }
        a.units.push_back(v);
        P += w;
        A += Rational(w) * v;
    }
    return a;
}

DecimalSeq Generator::last_max_in_mean(const DecimalSeq& p) {
    const std::size_t n = p.size();
    std::vector<Rational> P(n);
    Rational run(0);
    for (std::size_t i = 0; i < n; ++i) {
        run += p.units[i];
        if (run <= 0) throw Error(ErrorKind::NonPositivePrefixSum, "P_i must be positive", i + 1);
        P[i] = run;
    }
    for (rejections_ = 0; rejections_ <= cfg_.max_rejections; ++rejections_) {
        DecimalSeq a = uniform(n);
        std::vector<Rational> A(n);
        Rational acc(0);
        for (std::size_t i = 0; i < n; ++i) {
            acc += Rational(p.units[i]) * a.units[i];
            A[i] = acc;
        }
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < n; ++i) ok = A[n - 1] * P[i] >= A[i] * P[n - 1];
        if (ok) {
            total_rejections_ += rejections_;
            return a;
        }
    }
    total_rejections_ += cfg_.max_rejections;
    throw Error(ErrorKind::RejectionBudgetExhausted,
                "no last-max-in-mean draw within " + std::to_string(cfg_.max_rejections) + " rejections");
}

DecimalSeq Generator::convex(std::size_t n) {
    const long long width = hi_units() - lo_units();
    const long long step = n > 1 ? width / (4 * static_cast<long long>(n - 1)) : 0;
    std::vector<long long> diffs(n - 1);
    for (auto& d : diffs) d = rng_.between(-step, step);
    std::sort(diffs.begin(), diffs.end());
    DecimalSeq s{{rng_.between(lo_units() + width / 4, hi_units() - width / 4)}, cfg_.places};
    for (long long d : diffs) s.units.push_back(s.units.back() + d);
    return s;
}

DecimalSeq Generator::weights(std::size_t n, WeightRegime regime) {
    const long long wlo = std::max(1LL, to_units(cfg_.weight_lo, scale_));
    const long long whi = std::max(wlo, to_units(cfg_.weight_hi, scale_));
    DecimalSeq p{{}, cfg_.places};
    switch (regime) {
        case WeightRegime::AllPositive:
            for (std::size_t i = 0; i < n; ++i) p.units.push_back(rng_.between(wlo, whi));
            break;
        case WeightRegime::NonnegativePositiveTotal: {
            for (std::size_t i = 0; i < n; ++i) p.units.push_back(rng_.chance(1, 4) ? 0 : rng_.between(wlo, whi));
            if (std::all_of(p.units.begin(), p.units.end(), [](long long u) { return u == 0; })) {
                p.units[static_cast<std::size_t>(rng_.between(0, static_cast<long long>(n) - 1))] =
                    rng_.between(wlo, whi);
            }
            break;
        }
        case WeightRegime::PartialSumBounded: {
            const long long total = rng_.between(std::max(wlo, scale_), std::max(whi, scale_));
            long long prev = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const long long Pi = rng_.between(0, total);
                p.units.push_back(Pi - prev);
                prev = Pi;
            }
            p.units.push_back(total - prev);
            break;
        }
        case WeightRegime::GeneralReal: {
            long long total = 0;
            for (std::size_t i = 0; i < n; ++i) {
                p.units.push_back(rng_.between(-whi, whi));
                total += p.units.back();
            }
            if (total == 0) p.units.back() += rng_.chance(1, 2) ? wlo : -wlo;
            break;
        }
    }
    return p;
}

DecimalSeq Generator::positive_prefix_weights(std::size_t n) {
    const long long wlo = std::max(1LL, to_units(cfg_.weight_lo, scale_));
    const long long whi = std::max(wlo, to_units(cfg_.weight_hi, scale_));
    DecimalSeq p{{}, cfg_.places};
    long long prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long long Pi = rng_.between(wlo, whi);
        p.units.push_back(Pi - prev);
        prev = Pi;
    }
    return p;
}

DecimalSeq Generator::interior_prefix_weights(std::size_t n) {
    const long long wlo = std::max(1LL, to_units(cfg_.weight_lo, scale_));
    const long long whi = std::max(wlo + 2, to_units(cfg_.weight_hi, scale_));
    const long long total = rng_.between(std::max(wlo, 2LL), whi);
    DecimalSeq p{{}, cfg_.places};
    long long prev = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const long long Pi = rng_.between(1, total - 1);
        p.units.push_back(Pi - prev);
        prev = Pi;
    }
    p.units.push_back(total - prev);
    return p;
}

DecimalSeq Generator::upper_mean(const DecimalSeq& p) {
    DecimalSeq a = uniform(p.size());
    Rational rest(0);
    Rational total(p.units[0]);
    long long peak = std::numeric_limits<long long>::min();
    for (std::size_t i = 1; i < p.size(); ++i) {
        rest += Rational(p.units[i]) * a.units[i];
        total += p.units[i];
        peak = std::max(peak, a.units[i]);
    }
    if (p.units[0] <= 0) throw Error(ErrorKind::NegativeWeight, "p_1 must be positive");
    a.units[0] = at_least((Rational(peak) * total - rest) / Rational(p.units[0]));
    return a;
}

DecimalSeq Generator::lower_mean(const DecimalSeq& p) {
    DecimalSeq a = uniform(p.size());
    Rational rest(0);
    Rational total(p.units[0]);
    long long floor_v = std::numeric_limits<long long>::max();
    for (std::size_t i = 1; i < p.size(); ++i) {
        rest += Rational(p.units[i]) * a.units[i];
        total += p.units[i];
        floor_v = std::min(floor_v, a.units[i]);
    }
    if (p.units[0] <= 0) throw Error(ErrorKind::NegativeWeight, "p_1 must be positive");
    a.units[0] = at_most((Rational(floor_v) * total - rest) / Rational(p.units[0]));
    return a;
}

DecimalSeq Generator::literal_mean_condition(const DecimalSeq& p, Direction dir) {
    const std::size_t n = p.size();
    Rational Pn(0);
    for (long long w : p.units) Pn += w;
    DecimalSeq a{{value()}, cfg_.places};
    Rational P(p.units[0]);
    Rational A(Rational(p.units[0]) * a.units[0]);
    for (std::size_t i = 1; i < n; ++i) {
        // entry i + 1 (1-based) is constrained by A_i/P_i against A_{i+1}/P̄_{i+1}
        const long long w = p.units[i];
        const Rational Pnext = P + w;
        const Rational Q = Pn - Pnext;
        long long v = 0;
        if (i + 1 < n && P != 0 && Q != 0 && w != 0) {
            const Rational mean = A / P;
            const Rational c = Rational(w) / Q;
            const Rational bound = (mean - A / Q) / c;
            // Nonincreasing needs c·a ≤ mean - A/Q, Nondecreasing c·a ≥ it.
            const bool below = (dir == Direction::Nonincreasing) == (c > 0);
            v = below ? at_most(bound) : at_least(bound);
        } else {
            v = value();
        }
        a.units.push_back(v);
        P = Pnext;
        A += Rational(w) * v;
    }
    return a;
}

DecimalSeq Generator::det_condition(const DecimalSeq& p) {
    const std::size_t n = p.size();
    Rational Pn(0);
    for (long long w : p.units) Pn += w;
    const Rational pn(p.units[n - 1]);
    for (rejections_ = 0; rejections_ <= cfg_.max_rejections; ++rejections_) {
        DecimalSeq a = uniform(n - 1);
        a.places = cfg_.places;
        // det_i = c_i a_n + d_i with c_i = p_n P_i, d_i = P_i A_{n-1} - P_n A_i
        Rational Aprev(0);
        for (std::size_t i = 0; i + 1 < n; ++i) Aprev += Rational(p.units[i]) * a.units[i];
        std::optional<Rational> lower;
        std::optional<Rational> upper;
        bool feasible = true;
        Rational P(0);
        Rational A(0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            P += p.units[i];
            A += Rational(p.units[i]) * a.units[i];
            const Rational c = pn * P;
            const Rational d = P * Aprev - Pn * A;
            if (c > 0) {
                const Rational r = -d / c;
                if (!lower || r > *lower) lower = r;
            } else if (c < 0) {
                const Rational r = -d / c;
                if (!upper || r < *upper) upper = r;
            } else if (d < 0) {
                feasible = false;
            }
        }
        if (!feasible) continue;
        long long v = 0;
        if (lower && upper) {
            const long long lo = ceil_of(*lower);
            const long long hi = floor_of(*upper);
            if (lo > hi) continue;
            v = rng_.between(lo, hi);
        } else if (lower) {
            v = at_least(*lower);
        } else if (upper) {
            v = at_most(*upper);
        } else {
            v = value();
        }
        a.units.push_back(v);
        total_rejections_ += rejections_;
        return a;
    }
    total_rejections_ += cfg_.max_rejections;
    throw Error(ErrorKind::RejectionBudgetExhausted,
                "no det-condition draw within " + std::to_string(cfg_.max_rejections) + " rejections");
}

DecimalSeq Generator::sbar_member(const DecimalSeq& a, const DecimalSeq& b) {
    const std::size_t n = a.size();
    const auto [mn, mx] = std::minmax_element(a.units.begin(), a.units.end());
    const long long spread = std::max(*mx - *mn, 1LL);
    std::vector<long long> plus(n);
    std::vector<long long> minus(n);
    for (rejections_ = 0; rejections_ < cfg_.max_rejections; ++rejections_) {
        const unsigned shift = static_cast<unsigned>(std::min<std::uint64_t>(rejections_ / 8, 62));
        const long long noise = (spread / 4) >> shift;
        const long long lambda = rng_.between(-500, 500);
        DecimalSeq x{{}, cfg_.places};
        for (std::size_t i = 0; i < n; ++i) {
            const long long base = lambda * a.units[i] / 1000;
            x.units.push_back(base + (noise > 0 ? rng_.between(-noise, noise) : 0));
            plus[i] = a.units[i] + x.units[i];
            minus[i] = a.units[i] - x.units[i];
        }
        if (synchronous_units(plus, b.units) && synchronous_units(minus, b.units)) {
            total_rejections_ += rejections_;
            return x;
        }
    }
    total_rejections_ += rejections_;
    return DecimalSeq{std::vector<long long>(n, 0), cfg_.places};
}

RationalSeq invert_prefix_means(const WeightSeq<Rational>& p, const std::vector<Rational>& means) {
    require_same_length(p, means);
    std::vector<Rational> a;
    a.reserve(p.size());
    Rational prev_P(0);
    Rational prev_m(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) throw Error(ErrorKind::ZeroPrefixSum, "p_k must be nonzero to invert", k + 1);
        const Rational Pk = prev_P + p[k];
        a.push_back((Pk * means[k] - prev_P * prev_m) / p[k]);
        prev_P = Pk;
        prev_m = means[k];
    }
    return RationalSeq(std::move(a));
}

CaseFile make_case(const DecimalSeq& p, const DecimalSeq& a, const DecimalSeq& b,
                   const std::optional<long long>& k_units, const std::optional<DecimalSeq>& x) {
    CaseFile c;
    c.p = p.strings();
    c.a = a.strings();
    c.b = b.strings();
    if (k_units) c.k = to_decimal_string(Rational(*k_units) / Rational(pow10(p.places)));
    if (x) c.x = x->strings();
    return c;
}

}  // namespace wcheb::gen
