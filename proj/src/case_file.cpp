#include "wcheb/case_file.hpp"

#include "wcheb/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wcheb {

namespace {

template <Scalar S>
S convert(const std::string& text, const std::string& field) {
    Rational r;
    try {
        r = parse_decimal(text);
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, "field '" + field + "': " + e.what());
    }
    if constexpr (is_exact_v<S>) {
        return r;
    } else {
        double d = to_double(r);
        if (!std::isfinite(d)) throw Error(ErrorKind::NonFiniteInput, "field '" + field + "' overflows a double");
        return d;
    }
}

template <Scalar S>
std::vector<S> convert_all(const std::vector<std::string>& texts, const std::string& field) {
    std::vector<S> out;
    out.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        out.push_back(convert<S>(texts[i], field + "[" + std::to_string(i + 1) + "]"));
    }
    return out;
}

std::vector<std::string> string_array(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) throw Error(ErrorKind::ParseError, std::string("missing field '") + field + "'");
    const auto& arr = j.at(field);
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, std::string("field '") + field + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (v.is_string()) {
            out.push_back(v.get<std::string>());
        } else if (v.is_number_integer()) {
            out.push_back(v.dump());
        } else if (v.is_number()) {
            // Binary floats are accepted for convenience; their shortest
            // decimal form is what gets read.
            out.push_back(to_decimal_string(v.get<double>()));
        } else {
            throw Error(ErrorKind::ParseError, std::string("field '") + field + "' must hold decimal strings");
        }
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

template <Scalar S>
Case<S> materialize(const CaseFile& file) {
    auto check_len = [&](std::size_t len, const char* field) {
        if (len != file.p.size()) {
            throw Error(ErrorKind::LengthMismatch, std::string("field '") + field + "' length " + std::to_string(len) +
                                                       " differs from p length " + std::to_string(file.p.size()));
        }
    };
    if (file.p.size() < 2) throw Error(ErrorKind::TooShort, "field 'p' needs at least two entries");
    check_len(file.a.size(), "a");
    check_len(file.b.size(), "b");
    if (file.x) check_len(file.x->size(), "x");

    Case<S> c{WeightSeq<S>(convert_all<S>(file.p, "p")), Seq<S>(convert_all<S>(file.a, "a")),
              Seq<S>(convert_all<S>(file.b, "b")), std::nullopt, std::nullopt};
    if (file.k) c.k = convert<S>(*file.k, "k");
    if (file.x) c.x = Seq<S>(convert_all<S>(*file.x, "x"));
    return c;
}

template Case<double> materialize(const CaseFile&);
template Case<Rational> materialize(const CaseFile&);

CaseFile case_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "case must be a JSON object");
    CaseFile c;
    if (j.contains("label") && j.at("label").is_string()) c.label = j.at("label").get<std::string>();
    c.p = string_array(j, "p");
    c.a = string_array(j, "a");
    c.b = string_array(j, "b");
    if (j.contains("k") && !j.at("k").is_null()) {
        const auto& k = j.at("k");
        if (k.is_string()) {
            c.k = k.get<std::string>();
        } else if (k.is_number()) {
            c.k = k.is_number_integer() ? k.dump() : to_decimal_string(k.get<double>());
        } else {
            throw Error(ErrorKind::ParseError, "field 'k' must be a decimal string");
        }
    }
    if (j.contains("x") && !j.at("x").is_null()) c.x = string_array(j, "x");
    return c;
}

nlohmann::ordered_json to_json(const CaseFile& c) {
    nlohmann::ordered_json j;
    if (c.label) j["label"] = *c.label;
    j["p"] = c.p;
    j["a"] = c.a;
    j["b"] = c.b;
    if (c.k) j["k"] = *c.k;
    if (c.x) j["x"] = *c.x;
    return j;
}

CaseFile parse_case(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return case_from_json(j);
}

CaseFile load_case(const std::filesystem::path& path) {
    return parse_case(read_file(path));
}

std::string serialize(const CaseFile& c) {
    return to_json(c).dump(2) + "\n";
}

std::filesystem::path persist_case(const CaseFile& c, const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    const std::string content = serialize(c);
    std::filesystem::path target = dir / (stem + ".json");
    if (std::filesystem::exists(target)) {
        if (read_file(target) == content) return target;
        char suffix[17];
        std::snprintf(suffix, sizeof suffix, "%016llx", static_cast<unsigned long long>(fnv1a(content)));
        target = dir / (stem + "-" + std::string(suffix, 8) + ".json");
        if (std::filesystem::exists(target)) return target;
    }
    std::ofstream out(target, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + target.string());
    return target;
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::exists(root)) return out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wcheb
