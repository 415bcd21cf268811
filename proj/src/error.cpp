#include "wcheb/error.hpp"

namespace wcheb {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NonFiniteInput: return "NonFiniteInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
        case ErrorKind::ZeroPrefixSum: return "ZeroPrefixSum";
        case ErrorKind::ZeroTailSum: return "ZeroTailSum";
        case ErrorKind::NonPositivePrefixSum: return "NonPositivePrefixSum";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::BadRange: return "BadRange";
        case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
        case ErrorKind::NotAMember: return "NotAMember";
        case ErrorKind::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::UnknownProperty: return "UnknownProperty";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, std::optional<std::size_t> index) {
    std::string out(to_string(kind));
    if (index) {
        out += "(" + std::to_string(*index) + ")";
    }
    if (!message.empty()) {
        out += ": " + message;
    }
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(compose(kind, message, index)), kind_(kind), index_(index) {}

}  // namespace wcheb
