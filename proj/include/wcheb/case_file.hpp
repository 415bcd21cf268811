#pragma once

// Case files: one triple (p, a, b) plus optional truncation level k and
// perturbation x, stored as decimal strings so they load exactly into the
// rational engine.
//
//   {"label": "...", "p": ["1", "0.5"], "a": ["-1", "2"], "b": ["1", "2"],
//    "k": "0", "x": ["0.1", "0.2"]}

#include "wcheb/scalar.hpp"
#include "wcheb/sequence.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wcheb {

struct CaseFile {
    std::optional<std::string> label;
    std::vector<std::string> p;
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::optional<std::string> k;
    std::optional<std::vector<std::string>> x;

    bool operator==(const CaseFile&) const = default;
};

template <Scalar S>
struct Case {
    WeightSeq<S> p;
    Seq<S> a;
    Seq<S> b;
    std::optional<S> k;
    std::optional<Seq<S>> x;
};

/// Validates and converts; errors name the offending field.
template <Scalar S>
Case<S> materialize(const CaseFile& file);

CaseFile case_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const CaseFile& c);

CaseFile load_case(const std::filesystem::path& path);
CaseFile parse_case(const std::string& text);
std::string serialize(const CaseFile& c);

/// Writes `c` to dir/<stem>.json. An existing file with identical content is
/// reused; a different one is never overwritten and a content hash suffix is
/// appended instead. Returns the path written or reused.
std::filesystem::path persist_case(const CaseFile& c, const std::filesystem::path& dir, const std::string& stem);

/// Every *.json below `root`, sorted.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& root);

}  // namespace wcheb
