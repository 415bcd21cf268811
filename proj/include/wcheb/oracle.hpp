#pragma once

// Exact ground truth. Everything here is written from the definitions with
// plain rational vectors and shares no code with the engine modules, so a
// mistake in one is not silently repeated in the other.

#include "wcheb/bounds.hpp"
#include "wcheb/case_file.hpp"
#include "wcheb/properties.hpp"
#include "wcheb/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wcheb::oracle {

using Vec = std::vector<Rational>;

struct Triple {
    Vec p;
    Vec a;
    Vec b;
    std::optional<Rational> k;
    std::optional<Vec> x;
};

/// Parses a case file into exact vectors; no float round trip.
Triple from_case(const CaseFile& c);
CaseFile to_case(const Triple& t, std::optional<std::string> label = std::nullopt);

/// T_n(p;a,b) from the defining formula. Throws ZeroTotalWeight.
Rational exact_eval(const Vec& p, const Vec& a, const Vec& b);

/// (1/2P_n²) Σ_i Σ_j p_i p_j (a_i - a_j)(b_i - b_j), a second independent form.
Rational exact_eval_pairwise(const Vec& p, const Vec& a, const Vec& b);

struct ExactRoutes {
    Rational direct;
    Rational det;
    std::optional<Rational> mean;
    std::optional<Rational> tail;

    [[nodiscard]] bool identical() const;
};

ExactRoutes exact_routes(const Vec& p, const Vec& a, const Vec& b);

// Predicates. Empty when the predicate's own precondition fails.

bool monotone(const Vec& s, bool nondecreasing);
bool synchronous(const Vec& a, const Vec& b);
std::optional<bool> monotone_in_mean(const Vec& p, const Vec& s, bool nondecreasing);
std::optional<bool> last_max_in_mean(const Vec& p, const Vec& s);
std::optional<bool> first_max_in_mean(const Vec& p, const Vec& s);
bool convex(const Vec& s);
bool concave(const Vec& s);
bool partial_sums_bounded(const Vec& p);
bool det_condition(const Vec& p, const Vec& a);
std::optional<bool> tail_mean_dominates(const Vec& p, const Vec& a, bool literal);
std::optional<bool> upper_mean(const Vec& p, const Vec& a);
std::optional<bool> lower_mean(const Vec& p, const Vec& a);
/// Prefix means nonincreasing (or nondecreasing); needs every P_i > 0.
std::optional<bool> mean_monotone(const Vec& p, const Vec& a, bool nondecreasing, bool literal);
bool in_sbar(const Vec& x, const Vec& a, const Vec& b);

/// Exact bound value with hypotheses checked exactly. Throws HypothesisNotMet
/// (and the engine error kinds for degenerate sums). Sign claims return 0 as
/// the bound with T compared on the claimed side; Chain returns the middle term.
Rational exact_bound(BoundName name, const Triple& t, bool literal = false);

/// Same formulas with no hypothesis gate, for float-vs-exact comparison.
std::optional<Rational> exact_bound_forced(BoundName name, const Triple& t, bool literal = false);

struct OracleVerdict {
    bool hit = false;
    bool pass = true;
    std::optional<Rational> slack;
    std::string detail;
};

OracleVerdict check(PropertyId id, const Triple& t, bool literal = false);

struct Discrepancy {
    std::string quantity;
    Rational exact;
    double engine = 0.0;
    double relative = 0.0;  ///< |engine - exact| / max(1, |exact|)
};

struct FidelityRecord {
    std::vector<Discrepancy> items;
    double worst = 0.0;
    bool within = true;
};

/// Float engine against the exact formulas for T and every bound that can be
/// evaluated on the case, hypotheses ignored.
FidelityRecord float_vs_exact(const CaseFile& c, double tol = 1e-9);

struct GridSpec {
    std::size_t n = 3;
    Vec values;
    Vec weights;
};

/// Default desk grid for a property: values {-2..2}; weights {1,2,3}, or
/// {-1,1,2} for the real-weight sign properties.
GridSpec default_grid(PropertyId id, std::size_t n = 3);

/// Cases the grid expands to: weights^n · values^(2n), times |values| for a8
/// (k) and values^n for sbar (x). Saturates at UINT64_MAX.
std::uint64_t grid_size(const GridSpec& g, PropertyId id);

struct EnumerateOptions {
    std::uint64_t cap = 10'000'000;
    bool literal = false;
    unsigned threads = 0;  ///< 0: hardware concurrency
    std::size_t keep_violations = static_cast<std::size_t>(-1);
};

struct Violation {
    std::uint64_t index = 0;
    CaseFile c;
    std::string detail;
};

struct EnumerationSummary {
    std::uint64_t enumerated = 0;
    std::uint64_t hits = 0;
    std::uint64_t passes = 0;
    std::uint64_t violations = 0;
    std::vector<Violation> violation_list;  ///< by index, up to keep_violations
    std::optional<Rational> worst_slack;

    /// "pass", "fail", or "vacuous" when nothing satisfied the hypothesis.
    [[nodiscard]] std::string status() const;
};

/// Throws CapExceeded when grid_size exceeds the cap; nothing is evaluated.
EnumerationSummary enumerate_and_verify(const GridSpec& g, PropertyId id, const EnumerateOptions& opts = {});

}  // namespace wcheb::oracle
