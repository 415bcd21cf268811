#pragma once

// Verifiable properties: each pairs a hypothesis class with the inequality
// claimed on it. The engine-side checks here run in either arithmetic; the
// oracle carries its own independent exact versions.

#include "wcheb/case_file.hpp"
#include "wcheb/scalar.hpp"

#include <span>
#include <string>
#include <string_view>

namespace wcheb {

enum class PropertyId {
    A2,             ///< sign under same/opposite monotonicity
    Biernacki,      ///< sign under monotonicity in mean
    A6,             ///< DP refinement
    A8,             ///< k-split refinement
    A9,             ///< positive/negative-part split
    A10,            ///< refinement chain
    A11,            ///< sign for partial-sum-bounded real weights
    T21,            ///< five-element bound for last-/first-max in mean
    T23,            ///< sign clauses for real weights
    T31,            ///< convex b, mean-bounded a
    T35,            ///< convex b, monotone prefix means
    Sbar,           ///< one-sided S̄ representation
    IdentityEquiv,  ///< four evaluation routes agree
};

std::string_view to_string(PropertyId id) noexcept;
/// Throws Error(UnknownProperty).
PropertyId parse_property(std::string_view text);
std::span<const PropertyId> all_properties() noexcept;

/// Whether --strict-literal has a distinct reading for this property.
bool has_literal_reading(PropertyId id) noexcept;

struct Verdict {
    bool hit = false;   ///< hypothesis holds, the inequality was checked
    bool pass = true;   ///< inequality held (within tolerance in float mode)
    double slack = 0.0; ///< smallest margin among the checked inequalities
    std::string detail; ///< clause fired, or why the case missed
};

/// Engine-side check in arithmetic S. Float mode compares within tol·scale.
template <Scalar S>
Verdict check_case(PropertyId id, const Case<S>& c, const Tolerance& tol = {}, bool literal = false);

}  // namespace wcheb
