#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirichlet {

enum class ErrorCode {
    InvalidArgument,
    EmptySequence,
    NotStrictlyIncreasing,
    NegativeFirstTerm,
    NonPositiveWeight,
    TailRuleMismatch,
    EmptyTail,
    LengthMismatch,
    EmptySupport,
    FrequencyMismatch,
    ConditionERefuted,
    IndexOutOfRange,
    TailNotCertifiable,
    UnboundedSymbol,
    ConstantNotRepresentable,
    BudgetExhausted,
    QuadratureDiverged,
    EmptyWindow,
    DomainViolation,
    ParseError,
    UnknownCommand,
};

std::string_view to_string(ErrorCode code);

/**
 * Error: every failure raised by the library carries one of the codes above,
 * so callers (the CLI in particular) can map failures to exit statuses.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dirichlet
