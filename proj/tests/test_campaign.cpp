#include "wcheb/campaign.hpp"

#include <catch_amalgamated.hpp>

using namespace wcheb;

namespace {

CampaignConfig config(PropertyId id, std::uint64_t cases, std::uint64_t seed = 1) {
    CampaignConfig cfg;
    cfg.property = id;
    cfg.cases = cases;
    cfg.seed = seed;
    cfg.gen.n_max = 20;
    return cfg;
}

nlohmann::ordered_json without_runtime(const CampaignReport& r) {
    auto j = r.to_json();
    j.erase("runtime_seconds");
    return j;
}

}  // namespace

TEST_CASE("every property campaign passes in both arithmetics") {
    for (PropertyId id : all_properties()) {
        for (ArithmeticMode mode : {ArithmeticMode::Float64, ArithmeticMode::ExactRational}) {
            auto cfg = config(id, 200);
            cfg.mode = mode;
            const auto r = run_verify(cfg);
            INFO(to_string(id) << " " << to_string(mode));
            CHECK(r.status() == "pass");
            CHECK(r.failures == 0);
            CHECK(r.hypothesis_hits > 0);
            CHECK(r.passes + r.failures == r.hypothesis_hits);
            CHECK(r.hypothesis_hits + r.skipped <= r.cases_run);
            CHECK(r.cases_run == 200u);
        }
    }
}

TEST_CASE("reports are reproducible and thread-count independent") {
    auto one = config(PropertyId::A6, 500, 42);
    one.threads = 1;
    auto many = one;
    many.threads = 3;
    CHECK(without_runtime(run_verify(one)) == without_runtime(run_verify(many)));
    CHECK(without_runtime(run_verify(one)) == without_runtime(run_verify(one)));
    auto other = one;
    other.seed = 43;
    CHECK(without_runtime(run_verify(one)) != without_runtime(run_verify(other)));
}

TEST_CASE("case generation depends only on seed and index") {
    const gen::GenConfig g;
    for (PropertyId id : all_properties()) {
        CHECK(generate_case(id, g, 11, 5) == generate_case(id, g, 11, 5));
        CHECK(generate_case(id, g, 11, 5) != generate_case(id, g, 11, 6));
    }
}

TEST_CASE("literal readings are reported separately") {
    auto cfg = config(PropertyId::T35, 2000, 7);
    cfg.strict_literal = true;
    const auto r = run_verify(cfg);
    CHECK(r.status() == "pass");
    REQUIRE(r.literal.has_value());
    CHECK(r.literal->cases_run == 2000u);
    CHECK(r.literal->hypothesis_hits > 0);
    CHECK(r.literal->violations > 0);
    CHECK_FALSE(r.literal->examples.empty());
    CHECK(r.literal->examples.size() <= 5u);
    for (const CaseFile& c : r.literal->examples) {
        const auto reloaded = parse_case(serialize(c));
        const auto v = oracle::check(PropertyId::T35, oracle::from_case(reloaded), true);
        CHECK(v.hit);
        CHECK_FALSE(v.pass);
        CHECK(oracle::check(PropertyId::T35, oracle::from_case(reloaded)).pass);
    }
    const auto j = r.to_json();
    CHECK(j.contains("literal"));
    CHECK(j["literal"]["violations"].get<std::uint64_t>() == r.literal->violations);

    cfg.strict_literal = false;
    CHECK_FALSE(run_verify(cfg).literal.has_value());
}

TEST_CASE("report fields") {
    const auto j = run_verify(config(PropertyId::A2, 50)).to_json();
    for (const char* key : {"property_id", "seed", "mode", "tolerance", "cases_run", "hypothesis_hits", "passes",
                            "failures", "skipped", "rejections", "tolerance_incidents", "worst_slack", "status",
                            "failure_cases", "runtime_seconds"}) {
        INFO(key);
        CHECK(j.contains(key));
    }
    CHECK(j["property_id"] == "a2");
    CHECK(j["status"] == "pass");
}

TEST_CASE("enumeration summaries serialize") {
    const auto g = oracle::default_grid(PropertyId::A2);
    const auto s = oracle::enumerate_and_verify(g, PropertyId::A2);
    const auto j = to_json(s, PropertyId::A2, g, false);
    CHECK(j["cases_run"].get<std::uint64_t>() == s.enumerated);
    CHECK(j["hypothesis_hits"].get<std::uint64_t>() == s.hits);
    CHECK(j["failures"].get<std::uint64_t>() == 0);
    CHECK(j["status"] == "pass");
}
