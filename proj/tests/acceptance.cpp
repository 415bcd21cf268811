// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   wcheb_acceptance [path/to/wcheb]

#include "wcheb/campaign.hpp"
#include "wcheb/oracle.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace wcheb;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Rational q(long long num, long long den = 1) { return Rational(num) / Rational(den); }

oracle::Vec vec(std::initializer_list<long long> xs) {
    oracle::Vec out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator<<(const T& v) {
        s_ << v;
        return *this;
    }
    std::string str() const { return s_.str(); }

private:
    std::ostringstream s_;
};

CampaignReport campaign(PropertyId id, std::uint64_t cases, std::uint64_t seed,
                        ArithmeticMode mode = ArithmeticMode::Float64, bool literal = false) {
    CampaignConfig cfg;
    cfg.property = id;
    cfg.cases = cases;
    cfg.seed = seed;
    cfg.mode = mode;
    cfg.strict_literal = literal;
    return run_verify(cfg);
}

bool clean(const CampaignReport& r) { return r.failures == 0 && r.status() == "pass"; }

Outcome identity_equiv() {
    Outcome o;
    Detail d;
    for (ArithmeticMode mode : {ArithmeticMode::Float64, ArithmeticMode::ExactRational}) {
        const auto start = Clock::now();
        const auto r = campaign(PropertyId::IdentityEquiv, 10'000, 1, mode);
        const double t = seconds_since(start);
        const bool ok = clean(r) && r.hypothesis_hits == 10'000 && t < 10.0 &&
                        (mode == ArithmeticMode::Float64 || r.worst_slack == 0.0);
        o.pass = o.pass && ok;
        d << to_string(mode) << ": " << r.passes << "/" << r.hypothesis_hits << " agree, " << r.failures
          << " failures, " << t << " s; ";
    }
    o.detail = d.str();
    return o;
}

Outcome exhaustive_sign() {
    Outcome o;
    Detail d;
    const auto start = Clock::now();
    for (PropertyId id : {PropertyId::A2, PropertyId::Biernacki}) {
        const auto s = oracle::enumerate_and_verify(oracle::default_grid(id), id);
        o.pass = o.pass && s.violations == 0 && s.hits > 0;
        d << to_string(id) << ": " << s.enumerated << " triples, " << s.hits << " hits, " << s.violations
          << " violations; ";
    }
    const double t = seconds_since(start);
    o.pass = o.pass && t < 60.0;
    d << t << " s";
    o.detail = d.str();
    return o;
}

Outcome refinement_chain_criterion() {
    const auto r = campaign(PropertyId::A10, 10'000, 3);
    const WeightSeq<Rational> p{q(1), q(1)};
    const RationalSeq a{q(-1), q(2)};
    const auto chain = refinement_chain(p, a, a);
    const oracle::Triple t{vec({1, 1}), vec({-1, 2}), vec({-1, 2}), {}, {}};
    const bool example = chain.t == q(9, 4) && chain.mid == q(9, 4) && chain.low == q(3, 4) &&
                         oracle::exact_eval(t.p, t.a, t.b) == q(9, 4) &&
                         oracle::exact_bound(BoundName::Chain_A10, t) == q(9, 4) &&
                         oracle::exact_bound(BoundName::DP_A6, t) == q(3, 4);
    Detail d;
    d << r.hypothesis_hits << " synchronous pairs, " << r.failures << " violations, " << r.tolerance_incidents
      << " tolerance incidents; p=(1,1), a=b=(-1,2) -> (" << to_decimal_string(chain.t) << ", "
      << to_decimal_string(chain.mid) << ", " << to_decimal_string(chain.low) << ")";
    return {clean(r) && r.hypothesis_hits == 10'000 && example, d.str()};
}

// Clause (i) only: b nondecreasing, a drawn by rejection until last-max in mean.
Outcome thm21_criterion() {
    gen::GenConfig cfg;
    std::uint64_t hits = 0, violations = 0, rechecked = 0, skipped = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        gen::Generator g(cfg, gen::sub_seed(21, i));
        const std::size_t n = g.length();
        const auto p = g.weights(n, WeightRegime::AllPositive);
        const auto b = g.monotone(n, Direction::Nondecreasing);
        gen::DecimalSeq a;
        try {
            a = g.last_max_in_mean(p);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
        const CaseFile c = gen::make_case(p, a, b);
        const Verdict v = check_case(PropertyId::T21, materialize<double>(c));
        if (!v.hit) continue;
        ++hits;
        if (!v.pass) {
            ++rechecked;
            if (!oracle::check(PropertyId::T21, oracle::from_case(c)).pass) ++violations;
        }
    }
    const WeightSeq<Rational> p{q(1), q(1)};
    const RationalSeq a{q(1), q(2)};
    const Rational bound = thm21_bound(p, a, a);
    const Rational t = cheb_direct(p, a, a);
    const oracle::Triple tt{vec({1, 1}), vec({1, 2}), vec({1, 2}), {}, {}};
    const bool tight = bound == q(1, 4) && t == q(1, 4) && oracle::exact_bound(BoundName::Thm21_2_1e, tt) == q(1, 4);
    Detail d;
    d << hits << " clause-(i) cases, " << violations << " violations (" << rechecked << " float flags rechecked, "
      << skipped << " skipped); tight case bound = " << to_decimal_string(bound) << ", T = " << to_decimal_string(t);
    return {violations == 0 && hits + skipped == 10'000 && hits > 0 && tight, d.str()};
}

// Direct exhaustive loop so each clause and each direction is counted on its own.
Outcome thm23_a11_criterion() {
    const auto g = oracle::default_grid(PropertyId::T23);
    const std::size_t n = g.n;
    const std::size_t nw = g.weights.size(), nv = g.values.size();
    std::array<std::uint64_t, 3> hits{}, bad{};
    std::array<std::uint64_t, 2> mp_hits{}, mp_bad{};

    std::size_t wcount = 1, vcount = 1;
    for (std::size_t i = 0; i < n; ++i) {
        wcount *= nw;
        vcount *= nv;
    }
    auto digits = [n](std::size_t code, std::size_t base, const oracle::Vec& alphabet) {
        oracle::Vec out(n);
        for (std::size_t i = n; i-- > 0;) {
            out[i] = alphabet[code % base];
            code /= base;
        }
        return out;
    };

    for (std::size_t wi = 0; wi < wcount; ++wi) {
        const oracle::Vec p = digits(wi, nw, g.weights);
        std::vector<Rational> P(n);
        Rational run = 0;
        for (std::size_t i = 0; i < n; ++i) P[i] = run += p[i];
        const Rational& Pn = P[n - 1];
        if (Pn == 0) continue;
        bool positive_prefix = true, interior = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            positive_prefix = positive_prefix && P[i] > 0;
            interior = interior && P[i] > 0 && P[i] < Pn;
        }
        positive_prefix = positive_prefix && Pn > 0;
        const bool bounded = oracle::partial_sums_bounded(p);

        for (std::size_t ai = 0; ai < vcount; ++ai) {
            const oracle::Vec a = digits(ai, nv, g.values);
            std::array<bool, 3> clause{};
            clause[0] = oracle::det_condition(p, a);
            clause[1] = positive_prefix && oracle::last_max_in_mean(p, a).value_or(false);
            clause[2] = interior && oracle::tail_mean_dominates(p, a, false).value_or(false);
            const bool a_up = oracle::monotone(a, true), a_down = oracle::monotone(a, false);

            for (std::size_t bi = 0; bi < vcount; ++bi) {
                const oracle::Vec b = digits(bi, nv, g.values);
                const bool b_up = oracle::monotone(b, true), b_down = oracle::monotone(b, false);
                if (!b_up && !b_down && !bounded) continue;
                const Rational t = oracle::exact_eval(p, a, b);
                for (std::size_t c = 0; c < 3; ++c) {
                    if (!clause[c]) continue;
                    if (b_up) {
                        ++hits[c];
                        bad[c] += t < 0;
                    }
                    if (b_down) {
                        ++hits[c];
                        bad[c] += t > 0;
                    }
                }
                if (bounded) {
                    if ((a_up && b_up) || (a_down && b_down)) {
                        ++mp_hits[0];
                        mp_bad[0] += t < 0;
                    }
                    if ((a_up && b_down) || (a_down && b_up)) {
                        ++mp_hits[1];
                        mp_bad[1] += t > 0;
                    }
                }
            }
        }
    }
    bool ok = true;
    Detail d;
    const char* names[] = {"(i)", "(ii)", "(iii)"};
    for (std::size_t c = 0; c < 3; ++c) {
        ok = ok && hits[c] > 0 && bad[c] == 0;
        d << "clause " << names[c] << ": " << hits[c] << " hits, " << bad[c] << " violations; ";
    }
    ok = ok && mp_hits[0] > 0 && mp_hits[1] > 0 && mp_bad[0] == 0 && mp_bad[1] == 0;
    d << "a11 same sense: " << mp_hits[0] << " hits, " << mp_bad[0] << " violations; opposite sense: " << mp_hits[1]
      << " hits, " << mp_bad[1] << " violations";
    return {ok, d.str()};
}

Outcome convex_criterion() {
    const auto r31 = campaign(PropertyId::T31, 10'000, 31);
    const auto r35 = campaign(PropertyId::T35, 10'000, 35);

    const oracle::Triple t{vec({1, 1, 1}), vec({3, 1, 1}), vec({1, 1, 2}), {}, {}};
    const WeightSeq<Rational> p{q(1), q(1), q(1)};
    const RationalSeq a{q(3), q(1), q(1)};
    const RationalSeq b{q(1), q(1), q(2)};
    const bool worked = oracle::exact_eval(t.p, t.a, t.b) == q(-2, 9) &&
                        oracle::exact_bound(BoundName::Thm31_3_2a, t) == q(-1, 3) &&
                        oracle::exact_bound(BoundName::Thm32_3_5, t) == q(-4, 9) && cheb_direct(p, a, b) == q(-2, 9) &&
                        thm31_bound(p, a, b) == q(-1, 3) && thm32_bound(p, a, b) == q(-4, 9);

    const auto literal = campaign(PropertyId::T35, 10'000, 35, ArithmeticMode::Float64, true);
    const bool literal_ran = literal.literal.has_value() && literal.literal->cases_run == 10'000;

    Detail d;
    d << "t31: " << r31.hypothesis_hits << " hits, " << r31.failures << " violations; t35: " << r35.hypothesis_hits
      << " hits, " << r35.failures << " violations; worked triple " << (worked ? "exact" : "MISMATCH");
    if (literal_ran) {
        d << "; literal reading: " << literal.literal->violations << " violations in "
          << literal.literal->hypothesis_hits << " hits";
    } else {
        d << "; literal run did not report";
    }
    return {clean(r31) && clean(r35) && r31.hypothesis_hits > 0 && r35.hypothesis_hits > 0 && worked && literal_ran,
            d.str()};
}

Outcome float_fidelity(const fs::path& scratch) {
    fs::remove_all(scratch);
    std::vector<CaseFile> written;
    const gen::GenConfig cfg;
    for (PropertyId id : all_properties()) {
        for (std::uint64_t i = 0; i < 40; ++i) {
            CaseFile c;
            try {
                c = generate_case(id, cfg, 77, i);
            } catch (const Error&) {
                continue;
            }
            persist_case(c, scratch / std::string(to_string(id)), "77-" + std::to_string(i));
            written.push_back(c);
        }
    }

    std::vector<fs::path> files = list_corpus(fs::path(WCHEB_SOURCE_DIR) / "corpus");
    const auto generated = list_corpus(scratch);
    files.insert(files.end(), generated.begin(), generated.end());

    std::size_t checked = 0, over = 0, unreadable = 0;
    double worst = 0.0;
    std::string worst_where;
    for (const auto& f : files) {
        CaseFile c;
        try {
            c = load_case(f);
        } catch (const Error&) {
            ++unreadable;
            continue;
        }
        const auto rec = oracle::float_vs_exact(c, 1e-9);
        ++checked;
        if (!rec.within) ++over;
        if (rec.worst > worst) {
            worst = rec.worst;
            worst_where = f.filename().string();
        }
    }
    Detail d;
    d << checked << " corpus cases (" << generated.size() << " persisted this run), " << over
      << " over 1e-9, worst " << worst;
    if (!worst_where.empty()) d << " (" << worst_where << ")";
    const bool ok = over == 0 && unreadable == 0 && generated.size() == written.size() && checked > 0;
    return {ok, d.str()};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    pclose(pipe);
    return out;
}

Outcome reproducibility(const std::string& binary) {
    const std::string cmd = "'" + binary + "' verify a6 --cases 1000 --seed 42 2>/dev/null";
    const std::regex runtime(R"("runtime_seconds"\s*:\s*[-+0-9.eE]+)");
    const std::string first = capture(cmd);
    const std::string second = capture(cmd);
    const std::string a = std::regex_replace(first, runtime, "\"runtime_seconds\": _");
    const std::string b = std::regex_replace(second, runtime, "\"runtime_seconds\": _");
    const bool ok = !first.empty() && a == b && first.find("\"property_id\": \"a6\"") != std::string::npos;
    Detail d;
    d << "two runs, " << first.size() << " and " << second.size() << " bytes, "
      << (a == b ? "identical" : "different") << " modulo runtime";
    return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : WCHEB_CLI_BINARY;
    const fs::path scratch = fs::temp_directory_path() / "wcheb_acceptance_corpus";

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"IDENTITY-EQUIV", identity_equiv},
        {"EXHAUSTIVE-SIGN", exhaustive_sign},
        {"REFINEMENT-CHAIN", refinement_chain_criterion},
        {"THM-2.1", thm21_criterion},
        {"THM-2.3/A.11", thm23_a11_criterion},
        {"THM-3.1/THM-3.2", convex_criterion},
        {"FLOAT-FIDELITY", [&] { return float_fidelity(scratch); }},
        {"REPRODUCIBILITY", [&] { return reproducibility(binary); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << " " << criteria[i].name << ": " << o.detail
                  << std::endl;
    }
    fs::remove_all(scratch);
    return failed == 0 ? 0 : 1;
}
