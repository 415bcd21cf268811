#pragma once

// Verification campaigns: generate cases aimed at a property's hypothesis
// class, evaluate them in parallel, recheck float failures exactly, persist
// genuine failures, and summarize deterministically by case index.

#include "wcheb/case_file.hpp"
#include "wcheb/generators.hpp"
#include "wcheb/oracle.hpp"
#include "wcheb/properties.hpp"
#include "wcheb/scalar.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wcheb {

struct CampaignConfig {
    PropertyId property = PropertyId::A2;
    std::uint64_t seed = 0;
    std::uint64_t cases = 1000;
    ArithmeticMode mode = ArithmeticMode::Float64;
    Tolerance tol{};
    bool strict_literal = false;
    std::optional<std::filesystem::path> corpus;  ///< failures are written here when set
    gen::GenConfig gen{};
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Case `index` of a campaign for `id`. Branches (convex/concave, clause i/ii,
/// ...) alternate with the index. Throws RejectionBudgetExhausted. Rejections
/// spent are stored through `rejections` when given.
CaseFile generate_case(PropertyId id, const gen::GenConfig& cfg, std::uint64_t seed, std::uint64_t index,
                       std::uint64_t* rejections = nullptr);

/// Case aimed at the literal reading of a property's hypothesis; differs from
/// generate_case only where the literal hypothesis is a different class.
CaseFile generate_literal_case(PropertyId id, const gen::GenConfig& cfg, std::uint64_t seed, std::uint64_t index,
                               std::uint64_t* rejections = nullptr);

struct LiteralSection {
    std::uint64_t cases_run = 0;
    std::uint64_t hypothesis_hits = 0;
    std::uint64_t passes = 0;
    std::uint64_t violations = 0;
    std::uint64_t skipped = 0;
    std::optional<double> worst_slack;
    std::vector<CaseFile> examples;  ///< first few violations, inline
};

struct CampaignReport {
    std::string property_id;
    std::uint64_t seed = 0;
    std::string mode;
    double tolerance = 0.0;
    std::uint64_t cases_run = 0;
    std::uint64_t hypothesis_hits = 0;
    std::uint64_t passes = 0;
    std::uint64_t failures = 0;
    std::uint64_t skipped = 0;
    std::uint64_t rejections = 0;  ///< rejection-sampling draws discarded while generating
    std::uint64_t tolerance_incidents = 0;
    std::optional<double> worst_slack;
    std::vector<std::string> failure_cases;  ///< corpus paths, or inline labels when no corpus
    std::optional<LiteralSection> literal;
    double runtime_seconds = 0.0;

    /// "pass", "fail", or "vacuous" when no case met the hypothesis.
    [[nodiscard]] std::string status() const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

CampaignReport run_verify(const CampaignConfig& cfg);

nlohmann::ordered_json to_json(const oracle::EnumerationSummary& s, PropertyId id, const oracle::GridSpec& g,
                               bool literal);

}  // namespace wcheb
