#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wcheb {

enum class ErrorKind {
    TooShort,
    LengthMismatch,
    NonFiniteInput,
    ParseError,
    ZeroTotalWeight,
    ZeroPrefixSum,
    ZeroTailSum,
    NonPositivePrefixSum,
    NegativeWeight,
    BadRange,
    HypothesisNotMet,
    NotAMember,
    RejectionBudgetExhausted,
    CapExceeded,
    UnknownProperty,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Error raised by every library operation. Indices are reported 1-based.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index = std::nullopt);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> index_;
};

}  // namespace wcheb
