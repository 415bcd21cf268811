#include "wcheb/campaign.hpp"

#include "wcheb/error.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <thread>

namespace wcheb {

namespace {

using gen::DecimalSeq;
using gen::Generator;

constexpr std::size_t kLiteralExamples = 5;

Direction any_direction(Generator& g) {
    return g.rng().chance(1, 2) ? Direction::Nondecreasing : Direction::Nonincreasing;
}

DecimalSeq nonnegative_weights(Generator& g, std::size_t n) {
    return g.weights(n, g.rng().chance(1, 2) ? WeightRegime::AllPositive : WeightRegime::NonnegativePositiveTotal);
}

struct CaseResult {
    bool skipped = false;
    std::uint64_t rejections = 0;
    bool hit = false;
    bool pass = true;
    bool tolerance_incident = false;
    double slack = 0.0;
    CaseFile file;
};

template <Scalar S>
Verdict evaluate(PropertyId id, const CaseFile& file, const Tolerance& tol, bool literal) {
    return check_case<S>(id, materialize<S>(file), tol, literal);
}

CaseResult run_one(PropertyId id, const CampaignConfig& cfg, std::uint64_t index, bool literal) {
    CaseResult r;
    try {
        r.file = literal ? generate_literal_case(id, cfg.gen, cfg.seed, index, &r.rejections)
                         : generate_case(id, cfg.gen, cfg.seed, index, &r.rejections);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::RejectionBudgetExhausted) throw;
        r.skipped = true;
        r.rejections = cfg.gen.max_rejections;
        return r;
    }
    const Verdict v = cfg.mode == ArithmeticMode::Float64 ? evaluate<double>(id, r.file, cfg.tol, literal)
                                                            : evaluate<Rational>(id, r.file, cfg.tol, literal);
    r.hit = v.hit;
    r.pass = v.pass;
    r.slack = v.slack;
    if (r.hit && !r.pass && cfg.mode == ArithmeticMode::Float64) {
        const oracle::OracleVerdict exact = oracle::check(id, oracle::from_case(r.file), literal);
        if (!exact.hit || exact.pass) {
            r.pass = true;
            r.tolerance_incident = true;
        }
    }
    return r;
}

std::vector<CaseResult> run_all(PropertyId id, const CampaignConfig& cfg, bool literal) {
    std::vector<CaseResult> results(cfg.cases);
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(cfg.cases, 1)));
    auto work = [&](std::uint64_t start, std::uint64_t stride) {
        for (std::uint64_t i = start; i < cfg.cases; i += stride) results[i] = run_one(id, cfg, i, literal);
    };
    if (threads <= 1) {
        work(0, 1);
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                work(t, threads);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

void keep_min(std::optional<double>& slot, double v) {
    if (!slot || v < *slot) slot = v;
}

nlohmann::ordered_json slack_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return to_decimal_string(*v);
}

CaseFile targeted_case(PropertyId id, Generator& g, std::uint64_t index) {
    const std::size_t n = g.length();
    const std::uint64_t branch = index % 2;
    switch (id) {
        case PropertyId::A2: {
            DecimalSeq p = nonnegative_weights(g, n);
            DecimalSeq a = g.monotone(n, any_direction(g));
            DecimalSeq b = g.monotone(n, any_direction(g));
            return gen::make_case(p, a, b);
        }
        case PropertyId::Biernacki: {
            DecimalSeq p = g.weights(n, WeightRegime::AllPositive);
            DecimalSeq a = g.monotone_in_mean(p, any_direction(g));
            DecimalSeq b = g.monotone_in_mean(p, any_direction(g));
            return gen::make_case(p, a, b);
        }
        case PropertyId::A6:
        case PropertyId::A8:
        case PropertyId::A9:
        case PropertyId::A10:
        case PropertyId::Sbar: {
            DecimalSeq p = nonnegative_weights(g, n);
            auto [a, b] = g.synchronous_pair(n);
            if (id == PropertyId::A8) return gen::make_case(p, a, b, g.value());
            if (id == PropertyId::Sbar) return gen::make_case(p, a, b, std::nullopt, g.sbar_member(a, b));
            return gen::make_case(p, a, b);
        }
        case PropertyId::A11: {
            DecimalSeq p = g.weights(n, WeightRegime::PartialSumBounded);
            DecimalSeq a = g.monotone(n, any_direction(g));
            DecimalSeq b = g.monotone(n, any_direction(g));
            return gen::make_case(p, a, b);
        }
        case PropertyId::T21: {
            DecimalSeq p = g.weights(n, WeightRegime::AllPositive);
            if (branch == 0) {
                DecimalSeq b = g.monotone(n, Direction::Nondecreasing);
                return gen::make_case(p, g.last_max_in_mean(p), b);
            }
            DecimalSeq b = g.monotone(n, Direction::Nonincreasing);
            return gen::make_case(p, g.last_max_in_mean(p).negated(), b);
        }
        case PropertyId::T23: {
            DecimalSeq b = g.monotone(n, any_direction(g));
            switch (index % 3) {
                case 0: {
                    DecimalSeq p = g.weights(n, WeightRegime::GeneralReal);
                    return gen::make_case(p, g.det_condition(p), b);
                }
                case 1: {
                    DecimalSeq p = g.positive_prefix_weights(n);
                    return gen::make_case(p, g.last_max_in_mean(p), b);
                }
                default: {
                    DecimalSeq p = g.interior_prefix_weights(n);
                    return gen::make_case(p, g.det_condition(p), b);
                }
            }
        }
        case PropertyId::T31: {
            DecimalSeq p = g.weights(n, WeightRegime::AllPositive);
            DecimalSeq a = branch == 0 ? g.upper_mean(p) : g.lower_mean(p);
            DecimalSeq b = branch == 0 ? g.convex(n) : g.convex(n).negated();
            return gen::make_case(p, a, b);
        }
        case PropertyId::T35: {
            DecimalSeq p = g.rng().chance(1, 2) ? g.weights(n, WeightRegime::AllPositive) : g.positive_prefix_weights(n);
            DecimalSeq a = g.monotone_in_mean(p, branch == 0 ? Direction::Nonincreasing : Direction::Nondecreasing);
            DecimalSeq b = branch == 0 ? g.convex(n) : g.convex(n).negated();
            return gen::make_case(p, a, b);
        }
        case PropertyId::IdentityEquiv: {
            DecimalSeq p = g.weights(n, WeightRegime::AllPositive);
            DecimalSeq a = g.uniform(n);
            DecimalSeq b = g.uniform(n);
            return gen::make_case(p, a, b);
        }
    }
    throw Error(ErrorKind::UnknownProperty, "no generator for property");
}

CaseFile literal_case(PropertyId id, Generator& g, std::uint64_t index) {
    if (id != PropertyId::T35) return targeted_case(id, g, index);
    const std::size_t n = g.length();
    DecimalSeq p = g.rng().chance(1, 2) ? g.weights(n, WeightRegime::AllPositive) : g.positive_prefix_weights(n);
    const bool convex = index % 2 == 0;
    DecimalSeq a = g.literal_mean_condition(p, convex ? Direction::Nonincreasing : Direction::Nondecreasing);
    DecimalSeq b = convex ? g.convex(n) : g.convex(n).negated();
    return gen::make_case(p, a, b);
}

}  // namespace

CaseFile generate_case(PropertyId id, const gen::GenConfig& cfg, std::uint64_t seed, std::uint64_t index,
                       std::uint64_t* rejections) {
    Generator g(cfg, gen::sub_seed(seed, index));
    CaseFile c = targeted_case(id, g, index);
    if (rejections) *rejections = g.total_rejections();
    return c;
}

CaseFile generate_literal_case(PropertyId id, const gen::GenConfig& cfg, std::uint64_t seed, std::uint64_t index,
                               std::uint64_t* rejections) {
    Generator g(cfg, gen::sub_seed(seed, index));
    CaseFile c = literal_case(id, g, index);
    if (rejections) *rejections = g.total_rejections();
    return c;
}

std::string CampaignReport::status() const {
    if (failures > 0) return "fail";
    if (hypothesis_hits == 0) return "vacuous";
    return "pass";
}

nlohmann::ordered_json CampaignReport::to_json() const {
    nlohmann::ordered_json j;
    j["property_id"] = property_id;
    j["seed"] = seed;
    j["mode"] = mode;
    j["tolerance"] = tolerance;
    j["cases_run"] = cases_run;
    j["hypothesis_hits"] = hypothesis_hits;
    j["passes"] = passes;
    j["failures"] = failures;
    j["skipped"] = skipped;
    j["rejections"] = rejections;
    j["tolerance_incidents"] = tolerance_incidents;
    j["worst_slack"] = slack_json(worst_slack);
    j["status"] = status();
    j["failure_cases"] = failure_cases;
    if (literal) {
        nlohmann::ordered_json l;
        l["cases_run"] = literal->cases_run;
        l["hypothesis_hits"] = literal->hypothesis_hits;
        l["passes"] = literal->passes;
        l["violations"] = literal->violations;
        l["skipped"] = literal->skipped;
        l["worst_slack"] = slack_json(literal->worst_slack);
        l["examples"] = nlohmann::ordered_json::array();
        for (const auto& c : literal->examples) l["examples"].push_back(wcheb::to_json(c));
        j["literal"] = std::move(l);
    }
    j["runtime_seconds"] = runtime_seconds;
    return j;
}

CampaignReport run_verify(const CampaignConfig& cfg) {
    cfg.gen.validate();
    const auto start = std::chrono::steady_clock::now();
    CampaignReport rep;
    rep.property_id = std::string(to_string(cfg.property));
    rep.seed = cfg.seed;
    rep.mode = cfg.mode == ArithmeticMode::Float64 ? "float" : "exact";
    rep.tolerance = cfg.mode == ArithmeticMode::Float64 ? cfg.tol.rel : 0.0;

    const std::vector<CaseResult> results = run_all(cfg.property, cfg, false);
    for (std::uint64_t i = 0; i < results.size(); ++i) {
        const CaseResult& r = results[i];
        ++rep.cases_run;
        rep.rejections += r.rejections;
        if (r.skipped) {
            ++rep.skipped;
            continue;
        }
        if (!r.hit) continue;
        ++rep.hypothesis_hits;
        keep_min(rep.worst_slack, r.slack);
        if (r.tolerance_incident) ++rep.tolerance_incidents;
        if (r.pass) {
            ++rep.passes;
            continue;
        }
        ++rep.failures;
        const std::string stem = std::to_string(cfg.seed) + "-" + std::to_string(i);
        if (cfg.corpus) {
            CaseFile labeled = r.file;
            labeled.label = rep.property_id + " " + stem;
            const auto path = persist_case(labeled, *cfg.corpus / rep.property_id, stem);
            rep.failure_cases.push_back(path.generic_string());
        } else {
            rep.failure_cases.push_back(stem);
        }
    }

    if (cfg.strict_literal && has_literal_reading(cfg.property)) {
        LiteralSection lit;
        const std::vector<CaseResult> lres = run_all(cfg.property, cfg, true);
        for (const CaseResult& r : lres) {
            ++lit.cases_run;
            if (r.skipped) {
                ++lit.skipped;
                continue;
            }
            if (!r.hit) continue;
            ++lit.hypothesis_hits;
            keep_min(lit.worst_slack, r.slack);
            if (r.pass) {
                ++lit.passes;
            } else {
                ++lit.violations;
                if (lit.examples.size() < kLiteralExamples) lit.examples.push_back(r.file);
            }
        }
        rep.literal = std::move(lit);
    }

    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

nlohmann::ordered_json to_json(const oracle::EnumerationSummary& s, PropertyId id, const oracle::GridSpec& g,
                               bool literal) {
    nlohmann::ordered_json j;
    j["property_id"] = std::string(to_string(id));
    j["mode"] = "exact";
    j["literal"] = literal;
    nlohmann::ordered_json grid;
    grid["n"] = g.n;
    auto strs = [](const oracle::Vec& v) {
        std::vector<std::string> out;
        for (const auto& e : v) out.push_back(to_decimal_string(e));
        return out;
    };
    grid["values"] = strs(g.values);
    grid["weights"] = strs(g.weights);
    j["grid"] = std::move(grid);
    j["grid_size"] = oracle::grid_size(g, id);
    j["cases_run"] = s.enumerated;
    j["hypothesis_hits"] = s.hits;
    j["passes"] = s.passes;
    j["failures"] = s.violations;
    j["worst_slack"] = s.worst_slack ? nlohmann::ordered_json(to_decimal_string(*s.worst_slack)) : nullptr;
    j["status"] = s.status();
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : s.violation_list) {
        nlohmann::ordered_json e;
        e["index"] = v.index;
        e["detail"] = v.detail;
        e["case"] = wcheb::to_json(v.c);
        j["violations"].push_back(std::move(e));
    }
    return j;
}

}  // namespace wcheb
