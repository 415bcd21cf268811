#include "wcheb/campaign.hpp"
#include "wcheb/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace wcheb;

namespace {

// Grid cases straddle hypothesis boundaries far more often than random ones.
CaseFile grid_case(std::mt19937_64& rng, std::size_t n, bool real_weights) {
    std::uniform_int_distribution<int> value(-2, 2);
    std::uniform_int_distribution<int> weight(0, 2);
    static const char* positive[] = {"1", "2", "3"};
    static const char* mixed[] = {"-1", "1", "2"};
    CaseFile c;
    for (std::size_t i = 0; i < n; ++i) {
        c.p.emplace_back(real_weights ? mixed[weight(rng)] : positive[weight(rng)]);
        c.a.push_back(std::to_string(value(rng)));
        c.b.push_back(std::to_string(value(rng)));
    }
    c.k = std::to_string(value(rng));
    return c;
}

void compare(PropertyId id, const CaseFile& c, bool literal) {
    const auto truth = oracle::check(id, oracle::from_case(c), literal);
    Verdict exact;
    try {
        exact = check_case(id, materialize<Rational>(c), Tolerance{}, literal);
    } catch (const Error& e) {
        exact.hit = false;
    }
    INFO(to_string(id) << " literal=" << literal << " " << serialize(c));
    CHECK(exact.hit == truth.hit);
    if (truth.hit) CHECK(exact.pass == truth.pass);
}

}  // namespace

TEST_CASE("engine and oracle agree on generated campaign cases") {
    const gen::GenConfig cfg{.seed = 0, .n_min = 2, .n_max = 12};
    for (PropertyId id : all_properties()) {
        if (id == PropertyId::IdentityEquiv) continue;
        for (std::uint64_t i = 0; i < 60; ++i) {
            const CaseFile c = generate_case(id, cfg, 99, i);
            const auto truth = oracle::check(id, oracle::from_case(c));
            INFO(to_string(id) << " case " << i << " " << serialize(c));
            CHECK(truth.hit);
            CHECK(truth.pass);
            compare(id, c, false);

            const auto fv = check_case(id, materialize<double>(c));
            CHECK(fv.hit == truth.hit);
            CHECK(fv.pass);
        }
    }
}

TEST_CASE("engine and oracle classify grid cases identically") {
    std::mt19937_64 rng(17);
    for (PropertyId id : all_properties()) {
        if (id == PropertyId::IdentityEquiv || id == PropertyId::Sbar) continue;
        const bool real = id == PropertyId::A11 || id == PropertyId::T23;
        for (int trial = 0; trial < 400; ++trial) {
            const CaseFile c = grid_case(rng, 2 + static_cast<std::size_t>(trial % 3), real);
            compare(id, c, false);
            if (has_literal_reading(id)) compare(id, c, true);
        }
    }
}

TEST_CASE("exact engine routes equal the oracle functional") {
    const gen::GenConfig cfg{.seed = 0, .n_min = 2, .n_max = 30};
    for (std::uint64_t i = 0; i < 200; ++i) {
        const CaseFile c = generate_case(PropertyId::IdentityEquiv, cfg, 5, i);
        const auto t = oracle::from_case(c);
        const auto e = materialize<Rational>(c);
        const auto routes = evaluate_routes(e.p, e.a, e.b);
        const Rational truth = oracle::exact_eval(t.p, t.a, t.b);
        CHECK(routes.direct == truth);
        CHECK(routes.det == truth);
        if (routes.mean) CHECK(*routes.mean == truth);
        if (routes.tail) CHECK(*routes.tail == truth);
        CHECK(oracle::float_vs_exact(c).within);
    }
}

TEST_CASE("engine bounds equal oracle bounds exactly") {
    std::mt19937_64 rng(3);
    const BoundOptions forced{true, false, {}};
    for (int trial = 0; trial < 500; ++trial) {
        const CaseFile c = grid_case(rng, 2 + static_cast<std::size_t>(trial % 4), false);
        const auto t = oracle::from_case(c);
        const auto e = materialize<Rational>(c);
        INFO(serialize(c));
        CHECK(*oracle::exact_bound_forced(BoundName::DP_A6, t) == dp_refinement(e.p, e.a, e.b));
        CHECK(*oracle::exact_bound_forced(BoundName::KSplit_A8, t) == k_split_bound(e.p, e.a, e.b, *e.k));
        CHECK(*oracle::exact_bound_forced(BoundName::PMSplit_A9, t) == pm_split_bound(e.p, e.a, e.b));
        CHECK(*oracle::exact_bound_forced(BoundName::Chain_A10, t) == refinement_chain(e.p, e.a, e.b, forced).mid);
        CHECK(*oracle::exact_bound_forced(BoundName::Thm21_2_1e, t) == thm21_bound(e.p, e.a, e.b, forced));
        CHECK(*oracle::exact_bound_forced(BoundName::Thm31_3_2a, t) == thm31_bound(e.p, e.a, e.b, forced));
        const auto t32 = oracle::exact_bound_forced(BoundName::Thm32_3_5, t);
        if (t32) CHECK(*t32 == thm32_bound(e.p, e.a, e.b, forced));
    }
}
