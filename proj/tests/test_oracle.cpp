#include "wcheb/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wcheb;
using oracle::Vec;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num) / Rational(den); }

Vec vec(std::initializer_list<long long> xs) {
    Vec out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

oracle::Triple triple(Vec p, Vec a, Vec b) { return {std::move(p), std::move(a), std::move(b), {}, {}}; }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ParseError;
}

oracle::GridSpec grid(std::size_t n, Vec values, Vec weights) { return {n, std::move(values), std::move(weights)}; }

}  // namespace

TEST_CASE("exact functional") {
    CHECK(oracle::exact_eval(vec({1, 1}), vec({1, 2}), vec({1, 2})) == q(1, 4));
    CHECK(oracle::exact_eval(vec({2, 1, 5}), vec({3, 3, 3}), vec({-1, 7, 2})) == 0);
    CHECK(oracle::exact_eval({q(1), q(-1, 2), q(1)}, vec({1, 2, 3}), vec({1, 2, 3})) == q(4, 3));
    CHECK(kind_of([] { (void)oracle::exact_eval(vec({1, -1}), vec({1, 2}), vec({1, 2})); }) ==
          ErrorKind::ZeroTotalWeight);
}

TEST_CASE("pairwise form and all identities agree exactly") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<int> len(2, 9);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = len(rng);
        Vec p, a, b;
        for (int i = 0; i < n; ++i) {
            p.push_back(q(num(rng), den(rng)));
            a.push_back(q(num(rng), den(rng)));
            b.push_back(q(num(rng), den(rng)));
        }
        Rational total = 0;
        for (const auto& w : p) total += w;
        if (total == 0) continue;
        const auto routes = oracle::exact_routes(p, a, b);
        CHECK(routes.identical());
        CHECK(routes.direct == oracle::exact_eval_pairwise(p, a, b));
    }
}

TEST_CASE("exact bounds on the worked cases") {
    const auto worked = triple(vec({1, 1, 1}), vec({3, 1, 1}), vec({1, 1, 2}));
    CHECK(oracle::exact_eval(worked.p, worked.a, worked.b) == q(-2, 9));
    CHECK(oracle::exact_bound(BoundName::Thm31_3_2a, worked) == q(-1, 3));
    CHECK(oracle::exact_bound(BoundName::Thm32_3_5, worked) == q(-4, 9));

    const auto sign_change = triple(vec({1, 1}), vec({-1, 2}), vec({-1, 2}));
    CHECK(oracle::exact_bound(BoundName::DP_A6, sign_change) == q(3, 4));
    CHECK(oracle::exact_bound(BoundName::PMSplit_A9, sign_change) == q(9, 4));
    CHECK(oracle::exact_bound(BoundName::Chain_A10, sign_change) == q(9, 4));

    const auto tight = triple(vec({1, 1}), vec({1, 2}), vec({1, 2}));
    CHECK(oracle::exact_bound(BoundName::Thm21_2_1e, tight) == q(1, 4));

    CHECK(kind_of([] {
              (void)oracle::exact_bound(BoundName::Thm31_3_2a, triple(vec({1, 1, 1}), vec({1, 2, 3}), vec({1, 1, 2})));
          }) == ErrorKind::HypothesisNotMet);
    CHECK(oracle::exact_bound_forced(BoundName::Thm31_3_2a, triple(vec({1, 1, 1}), vec({1, 2, 3}), vec({1, 1, 2})))
              .has_value());
}

TEST_CASE("oracle predicates") {
    CHECK(*oracle::last_max_in_mean(vec({1, 1, 1}), vec({1, 3, 2})));
    CHECK_FALSE(*oracle::last_max_in_mean(vec({1, 1}), vec({2, 1})));
    CHECK_FALSE(oracle::last_max_in_mean(vec({1, -1, 1}), vec({1, 2, 3})).has_value());
    CHECK(*oracle::monotone_in_mean(vec({1, 1, 1}), vec({3, 1, 1}), false));
    CHECK(oracle::convex(vec({1, 1, 2})));
    CHECK(oracle::concave(vec({1, 3, 4})));
    CHECK(oracle::partial_sums_bounded({q(1), q(-1, 2), q(1)}));
    CHECK_FALSE(oracle::partial_sums_bounded(vec({-1, 2})));
    CHECK(oracle::det_condition({q(1), q(-1, 2), q(1)}, vec({1, 2, 3})));
    CHECK(oracle::in_sbar({q(1, 10), q(2, 10)}, vec({1, 2}), vec({1, 2})));
    CHECK_FALSE(oracle::in_sbar(vec({10, -10}), vec({1, 2}), vec({1, 2})));
    CHECK(*oracle::upper_mean(vec({1, 1, 1}), vec({3, 1, 1})));
    CHECK(*oracle::mean_monotone(vec({1, 1, 1}), vec({3, 1, 1}), false, false));
}

TEST_CASE("property verdicts") {
    const auto tight = triple(vec({1, 1}), vec({1, 2}), vec({1, 2}));
    const auto v = oracle::check(PropertyId::T21, tight);
    CHECK(v.hit);
    CHECK(v.pass);
    CHECK(*v.slack == 0);

    const auto miss = oracle::check(PropertyId::A2, triple(vec({1, 1, 1}), vec({1, 3, 2}), vec({1, 2, 3})));
    CHECK_FALSE(miss.hit);

    const auto worked = oracle::check(PropertyId::T35, triple(vec({1, 1, 1}), vec({3, 1, 1}), vec({1, 1, 2})));
    CHECK(worked.hit);
    CHECK(worked.pass);
    CHECK(*worked.slack == q(2, 9));
}

TEST_CASE("float engine stays within 1e-9 of the oracle") {
    CaseFile small;
    small.p = {"1", "2", "3"};
    small.a = {"1", "-2", "4"};
    small.b = {"0", "5", "-1"};
    const auto rec = oracle::float_vs_exact(small);
    CHECK(rec.within);
    CHECK(rec.worst <= 1e-15);
    CHECK_FALSE(rec.items.empty());

    CaseFile stress;
    stress.p = {"1", "2", "3", "1.5"};
    stress.a = {"100000000", "100000001", "100000003", "100000002"};
    stress.b = {"100000000", "100000002", "100000001", "100000004"};
    const auto srec = oracle::float_vs_exact(stress);
    CHECK(srec.within);
    CHECK(srec.worst <= 1e-9);

    CaseFile flat = small;
    flat.a = {"4", "4", "4"};
    for (const auto& item : oracle::float_vs_exact(flat).items) {
        if (item.quantity == "T") {
            CHECK(item.exact == 0);
            CHECK(item.engine == 0.0);
        }
    }
}

TEST_CASE("exhaustive enumeration") {
    const auto a2 = oracle::enumerate_and_verify(grid(3, vec({-1, 0, 1, 2}), vec({1, 2})), PropertyId::A2);
    CHECK(a2.enumerated == 8u * 4096u);
    CHECK(a2.hits > 0);
    CHECK(a2.violations == 0);
    CHECK(a2.status() == "pass");

    const auto t21 = oracle::enumerate_and_verify(grid(2, vec({-2, -1, 0, 1, 2}), vec({1, 2, 3})), PropertyId::T21);
    CHECK(t21.hits > 0);
    CHECK(t21.violations == 0);

    const auto none = oracle::enumerate_and_verify(grid(3, vec({0, 1}), vec({-1})), PropertyId::T31);
    CHECK(none.hits == 0);
    CHECK(none.status() == "vacuous");

    CHECK(kind_of([] {
              (void)oracle::enumerate_and_verify(grid(5, vec({-2, -1, 0, 1, 2}), vec({1, 2, 3})), PropertyId::A2);
          }) == ErrorKind::CapExceeded);
    CHECK(oracle::grid_size(grid(3, vec({-2, -1, 0, 1, 2}), vec({1, 2, 3})), PropertyId::A8) ==
          27u * 15625u * 5u);
}

TEST_CASE("enumeration is deterministic across thread counts") {
    const auto g = oracle::default_grid(PropertyId::T23);
    oracle::EnumerateOptions one;
    one.threads = 1;
    one.literal = true;
    oracle::EnumerateOptions many = one;
    many.threads = 4;
    const auto x = oracle::enumerate_and_verify(g, PropertyId::T23, one);
    const auto y = oracle::enumerate_and_verify(g, PropertyId::T23, many);
    CHECK(x.violations == y.violations);
    REQUIRE(x.violation_list.size() == y.violation_list.size());
    for (std::size_t i = 0; i < x.violation_list.size(); ++i) {
        CHECK(x.violation_list[i].index == y.violation_list[i].index);
    }
}

TEST_CASE("literal readings on the default grids") {
    oracle::EnumerateOptions literal;
    literal.literal = true;
    literal.keep_violations = 3;
    const auto t21 = oracle::enumerate_and_verify(oracle::default_grid(PropertyId::T21), PropertyId::T21, literal);
    const auto t23 = oracle::enumerate_and_verify(oracle::default_grid(PropertyId::T23), PropertyId::T23, literal);
    const auto t35 = oracle::enumerate_and_verify(oracle::default_grid(PropertyId::T35), PropertyId::T35, literal);
    CHECK(t21.violations == 21240u);
    CHECK(t23.violations == 1520u);
    CHECK(t35.violations == 42000u);
    CHECK(t21.violation_list.size() == 3u);

    for (PropertyId id : {PropertyId::T21, PropertyId::T23, PropertyId::T35}) {
        const auto corrected = oracle::enumerate_and_verify(oracle::default_grid(id), id);
        INFO(to_string(id));
        CHECK(corrected.hits > 0);
        CHECK(corrected.violations == 0);
    }
}
