#include "wcheb/cli.hpp"

#include "wcheb/bounds.hpp"
#include "wcheb/campaign.hpp"
#include "wcheb/case_file.hpp"
#include "wcheb/classifiers.hpp"
#include "wcheb/error.hpp"
#include "wcheb/functional.hpp"
#include "wcheb/oracle.hpp"
#include "wcheb/properties.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <iterator>
#include <sstream>

namespace wcheb::cli {

namespace {

using nlohmann::ordered_json;

struct Shared {
    std::string mode = "float";
    std::uint64_t seed = 0;
    std::uint64_t cases = 1000;
    double tol = 1e-9;
    std::string corpus = "corpus";
    bool strict_literal = false;
    bool force = false;
    std::string case_path;
    unsigned threads = 0;
};

struct Outcome {
    int code = kExitOk;
};

template <Scalar S>
std::string fmt(const S& v) {
    return to_decimal_string(v);
}

CaseFile read_case(const Shared& sh, std::istream& in) {
    if (!sh.case_path.empty()) return load_case(sh.case_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw Error(ErrorKind::ParseError, "no case given: pass --case <path> or a case on stdin");
    }
    return parse_case(text);
}

Tolerance tolerance_of(const Shared& sh) {
    if (!(sh.tol > 0)) throw Error(ErrorKind::BadRange, "--tol must be positive");
    Tolerance t;
    t.rel = sh.tol;
    return t;
}

template <Scalar S>
std::vector<std::string> fmt_all(const std::vector<S>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(fmt(e));
    return out;
}

template <Scalar S>
std::string unavailable_note(const WeightSeq<S>& p, bool tail) {
    const std::vector<S> P = p.prefix_sums();
    for (std::size_t i = 0; i + 1 < P.size(); ++i) {
        if (p.negligible(P[i])) return "n/a (P_" + std::to_string(i + 1) + " = 0)";
    }
    if (tail) {
        for (std::size_t i = 0; i + 1 < P.size(); ++i) {
            if (p.negligible(S(p.total() - P[i]))) return "n/a (P̄_" + std::to_string(i + 1) + " = 0)";
        }
    }
    return "n/a";
}

template <Scalar S>
int cmd_eval(const CaseFile& file, const Shared& sh, std::ostream& out, std::ostream& err) {
    const Case<S> c = materialize<S>(file);
    const Tolerance tol = tolerance_of(sh);
    const RouteEvaluation<S> r = evaluate_routes(c.p, c.a, c.b);
    const PrefixTable<S> t = prefix_table(c.p, c.a, c.b);

    ordered_json j;
    j["mode"] = sh.mode;
    j["n"] = c.p.size();
    ordered_json routes;
    routes["direct"] = fmt(r.direct);
    routes["determinant"] = fmt(r.det);
    routes["mean"] = r.mean ? fmt(*r.mean) : unavailable_note(c.p, false);
    routes["tail"] = r.tail ? fmt(*r.tail) : unavailable_note(c.p, true);
    j["routes"] = routes;
    ordered_json disc;
    disc["determinant"] = fmt(abs_of(S(r.det - r.direct)));
    disc["mean"] = r.mean ? ordered_json(fmt(abs_of(S(*r.mean - r.direct)))) : ordered_json(nullptr);
    disc["tail"] = r.tail ? ordered_json(fmt(abs_of(S(*r.tail - r.direct)))) : ordered_json(nullptr);
    j["discrepancies"] = disc;
    j["max_discrepancy"] = fmt(r.max_discrepancy());
    j["scale"] = r.scale;
    const bool agree = r.agree(tol);
    j["agree"] = agree;
    ordered_json table;
    table["P"] = fmt_all(t.P);
    table["Pbar"] = fmt_all(t.Pbar);
    table["A"] = fmt_all(t.A);
    table["Abar"] = fmt_all(t.Abar);
    table["B"] = fmt_all(t.B);
    j["prefix_table"] = table;
    out << j.dump(2) << "\n";
    err << "T = " << fmt(r.direct) << (agree ? " (all routes agree)" : " (routes disagree)") << "\n";
    return agree ? kExitOk : kExitDiscrepancy;
}

std::string sign_text(Sign s) { return std::string(to_string(s)); }

template <Scalar S>
int cmd_classify(const CaseFile& file, const Shared& sh, std::ostream& out, std::ostream& err) {
    const Case<S> c = materialize<S>(file);
    BoundOptions opts{sh.force, sh.strict_literal, tolerance_of(sh)};
    const ConditionProfile prof = condition_profile(c.p, c.a, c.b, opts.tol, opts.strict_literal);

    ordered_json j;
    j["mode"] = sh.mode;
    j["regime"] = std::string(to_string(prof.regime));
    ordered_json preds;
    prof.for_each([&](const char* name, Tri v) { preds[name] = std::string(to_string(v)); });
    j["predicates"] = preds;

    std::vector<BoundName> names{BoundName::DP_A6,      BoundName::KSplit_A8,   BoundName::PMSplit_A9,
                                 BoundName::Chain_A10,  BoundName::Thm21_2_1e,  BoundName::MP_A11_sign,
                                 BoundName::Thm23_sign, BoundName::Thm31_3_2a, BoundName::Thm32_3_5};
    if (c.x) names.push_back(BoundName::Sbar_A7_member);
    ordered_json claims = ordered_json::array();
    for (BoundName name : names) {
        ordered_json e;
        e["name"] = std::string(to_string(name));
        try {
            const BoundReport<S> r = assess(name, c.p, c.a, c.b, opts, c.k, c.x);
            e["applicable"] = r.applicable;
            e["asserting"] = r.asserting;
            e["clause"] = r.clause;
            e["functional"] = fmt(r.functional_value);
            e["bound"] = r.bound_value ? ordered_json(fmt(*r.bound_value)) : ordered_json(nullptr);
            e["slack"] = r.slack ? ordered_json(fmt(*r.slack)) : ordered_json(nullptr);
            if (name == BoundName::MP_A11_sign) e["sign"] = sign_text(mp_sign(c.p, c.a, c.b, opts.tol).sign);
            if (name == BoundName::Thm23_sign) {
                e["sign"] = sign_text(thm23_sign(c.p, c.a, c.b, opts.tol, opts.strict_literal).sign);
            }
            e["note"] = r.note;
        } catch (const Error& ex) {
            if (ex.kind() == ErrorKind::LengthMismatch) throw;
            e["applicable"] = false;
            e["asserting"] = false;
            e["note"] = ex.what();
        }
        if (e["applicable"].get<bool>()) err << to_string(name) << ": applicable" << "\n";
        claims.push_back(std::move(e));
    }
    j["claims"] = claims;
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct SweepSpec {
    std::string field;
    std::size_t index = 0;  // 1-based, unused for k
    Rational from;
    Rational to;
    std::size_t steps = 0;
};

SweepSpec parse_sweep(const std::string& vary, const std::string& from, const std::string& to, std::size_t steps,
                      const CaseFile& file) {
    SweepSpec s;
    const auto colon = vary.find(':');
    s.field = vary.substr(0, colon);
    if (s.field != "a" && s.field != "b" && s.field != "p" && s.field != "k") {
        throw Error(ErrorKind::BadRange, "--vary field must be one of a, b, p, k");
    }
    if (s.field != "k") {
        if (colon == std::string::npos) throw Error(ErrorKind::BadRange, "--vary " + s.field + " needs an index");
        const std::string idx = vary.substr(colon + 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
            throw Error(ErrorKind::BadRange, "--vary index must be a positive integer");
        }
        s.index = std::stoul(idx);
        if (s.index < 1 || s.index > file.p.size()) {
            throw Error(ErrorKind::BadRange, "--vary index " + idx + " outside 1.." + std::to_string(file.p.size()));
        }
    } else if (colon != std::string::npos) {
        throw Error(ErrorKind::BadRange, "--vary k takes no index");
    }
    if (steps == 0) throw Error(ErrorKind::BadRange, "--steps must be at least 1");
    s.from = parse_decimal(from);
    s.to = parse_decimal(to);
    s.steps = steps;
    return s;
}

template <Scalar S>
int cmd_sweep(const CaseFile& file, const SweepSpec& spec, const Shared& sh, std::ostream& out) {
    BoundOptions opts{sh.force, sh.strict_literal, tolerance_of(sh)};
    const std::vector<std::pair<const char*, BoundName>> cols{
        {"dp_refinement", BoundName::DP_A6},    {"k_split_bound", BoundName::KSplit_A8},
        {"pm_split_bound", BoundName::PMSplit_A9}, {"chain_mid", BoundName::Chain_A10},
        {"thm21_bound", BoundName::Thm21_2_1e}, {"thm31_bound", BoundName::Thm31_3_2a},
        {"thm32_bound", BoundName::Thm32_3_5}};
    out << "param,T";
    for (const auto& col : cols) out << "," << col.first;
    out << ",slack_min\n";

    for (std::size_t i = 0; i < spec.steps; ++i) {
        Rational param = spec.from;
        if (spec.steps > 1) {
            param += (spec.to - spec.from) * Rational(static_cast<long long>(i)) /
                     Rational(static_cast<long long>(spec.steps - 1));
        }
        CaseFile row = file;
        const std::string text = to_decimal_string(param);
        if (spec.field == "k") {
            row.k = text;
        } else {
            auto& vec = spec.field == "a" ? row.a : spec.field == "b" ? row.b : row.p;
            vec[spec.index - 1] = text;
        }
        const Case<S> c = materialize<S>(row);
        out << text;
        std::optional<S> t;
        try {
            t = cheb_direct(c.p, c.a, c.b);
        } catch (const Error&) {
        }
        out << "," << (t ? fmt(*t) : "");
        std::optional<S> slack_min;
        for (const auto& col : cols) {
            out << ",";
            if (!t) continue;
            try {
                const BoundReport<S> r = assess(col.second, c.p, c.a, c.b, opts, c.k, c.x);
                if (!r.bound_value || !(r.applicable || opts.force)) continue;
                out << fmt(*r.bound_value);
                const S slack = *t - *r.bound_value;
                if (!slack_min || slack < *slack_min) slack_min = slack;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::LengthMismatch) throw;
            }
        }
        out << "," << (slack_min ? fmt(*slack_min) : "") << "\n";
    }
    return kExitOk;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::UnknownProperty: return kExitUnknownProperty;
        case ErrorKind::CapExceeded: return kExitCapExceeded;
        default: return kExitValidation;
    }
}

oracle::Vec parse_list(const std::vector<std::string>& items, const char* what) {
    oracle::Vec out;
    for (const auto& s : items) {
        try {
            out.push_back(parse_decimal(s));
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted Čebyšev functional: evaluation, hypothesis checks and inequality verification"};
    app.require_subcommand(1);
    app.fallthrough();
    Shared sh;
    app.add_option("--mode", sh.mode, "Arithmetic: float or exact")->check(CLI::IsMember({"float", "exact"}));
    app.add_option("--seed", sh.seed, "Master seed");
    app.add_option("--cases", sh.cases, "Number of generated cases");
    app.add_option("--tol", sh.tol, "Relative tolerance for float comparisons");
    app.add_option("--corpus", sh.corpus, "Directory for failure cases");
    app.add_flag("--strict-literal", sh.strict_literal, "Literal readings of ambiguous hypotheses (verify reports them separately)");
    app.add_flag("--force", sh.force, "Evaluate bounds even when hypotheses fail");
    app.add_option("--case", sh.case_path, "Case file (default: stdin)");
    app.add_option("--threads", sh.threads, "Worker threads (0: all cores)");

    auto* eval = app.add_subcommand("eval", "Evaluate T by all four routes");
    auto* classify = app.add_subcommand("classify", "Report hypothesis predicates and claims");

    auto* verify = app.add_subcommand("verify", "Run a generated verification campaign");
    std::string property;
    gen::GenConfig gcfg;
    verify->add_option("property", property, "Property id")->required();
    verify->add_option("--n-min", gcfg.n_min, "Smallest length");
    verify->add_option("--n-max", gcfg.n_max, "Largest length");
    verify->add_option("--value-lo", gcfg.value_lo, "Lower end of the value range");
    verify->add_option("--value-hi", gcfg.value_hi, "Upper end of the value range");
    verify->add_option("--max-rejections", gcfg.max_rejections, "Rejection budget per case");

    auto* enumerate = app.add_subcommand("enumerate", "Exhaustive exact check on a small grid");
    std::string enum_property;
    std::size_t grid_n = 3;
    std::vector<std::string> values;
    std::vector<std::string> weights;
    std::uint64_t cap = 10'000'000;
    enumerate->add_option("property", enum_property, "Property id")->required();
    enumerate->add_option("--n", grid_n, "Sequence length (2..5)");
    enumerate->add_option("--values", values, "Entry values, comma separated")->delimiter(',');
    enumerate->add_option("--weights", weights, "Weight values, comma separated")->delimiter(',');
    enumerate->add_option("--cap", cap, "Largest grid to enumerate");

    auto* sweep = app.add_subcommand("sweep", "Tabulate T and bounds along one parameter");
    std::string vary;
    std::string from;
    std::string to;
    std::size_t steps = 0;
    sweep->add_option("--vary", vary, "field[:index], field in a, b, p, k")->required();
    sweep->add_option("--from", from, "Start value")->required();
    sweep->add_option("--to", to, "End value")->required();
    sweep->add_option("--steps", steps, "Number of rows")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        const bool exact = sh.mode == "exact";
        if (eval->parsed()) {
            const CaseFile file = read_case(sh, in);
            return exact ? cmd_eval<Rational>(file, sh, out, err) : cmd_eval<double>(file, sh, out, err);
        }
        if (classify->parsed()) {
            const CaseFile file = read_case(sh, in);
            return exact ? cmd_classify<Rational>(file, sh, out, err) : cmd_classify<double>(file, sh, out, err);
        }
        if (sweep->parsed()) {
            const CaseFile file = read_case(sh, in);
            const SweepSpec spec = parse_sweep(vary, from, to, steps, file);
            return exact ? cmd_sweep<Rational>(file, spec, sh, out) : cmd_sweep<double>(file, spec, sh, out);
        }
        if (verify->parsed()) {
            CampaignConfig cfg;
            cfg.property = parse_property(property);
            cfg.seed = sh.seed;
            cfg.cases = sh.cases;
            cfg.mode = parse_mode(sh.mode);
            cfg.tol = tolerance_of(sh);
            cfg.strict_literal = sh.strict_literal;
            if (!sh.corpus.empty()) cfg.corpus = sh.corpus;
            cfg.gen = gcfg;
            cfg.gen.seed = sh.seed;
            cfg.threads = sh.threads;
            if (sh.strict_literal && !has_literal_reading(cfg.property)) {
                err << "note: " << property << " has no separate literal reading\n";
            }
            const CampaignReport rep = run_verify(cfg);
            out << rep.to_json().dump(2) << "\n";
            err << rep.property_id << ": " << rep.status() << ", " << rep.hypothesis_hits << " hits, "
                << rep.failures << " failures, " << rep.skipped << " skipped\n";
            if (rep.literal) {
                err << rep.property_id << " literal reading: " << rep.literal->violations << " violations in "
                    << rep.literal->hypothesis_hits << " hits\n";
            }
            return rep.failures == 0 ? kExitOk : kExitDiscrepancy;
        }
        if (enumerate->parsed()) {
            const PropertyId id = parse_property(enum_property);
            if (grid_n < 2 || grid_n > 5) throw Error(ErrorKind::BadRange, "--n must lie in 2..5");
            oracle::GridSpec g = oracle::default_grid(id, grid_n);
            if (!values.empty()) g.values = parse_list(values, "--values");
            if (!weights.empty()) g.weights = parse_list(weights, "--weights");
            err << "grid size: " << oracle::grid_size(g, id) << " cases\n";
            oracle::EnumerateOptions opts;
            opts.cap = cap;
            opts.literal = sh.strict_literal;
            opts.threads = sh.threads;
            const oracle::EnumerationSummary s = oracle::enumerate_and_verify(g, id, opts);
            out << to_json(s, id, g, sh.strict_literal).dump(2) << "\n";
            err << enum_property << ": " << s.status() << ", " << s.hits << " hits, " << s.violations
                << " violations\n";
            return s.violations == 0 ? kExitOk : kExitDiscrepancy;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitDiscrepancy;
    }
    return kExitValidation;
}

}  // namespace wcheb::cli
