#include "dirichlet/error.hpp"

namespace dirichlet {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
        case ErrorCode::NegativeFirstTerm: return "NegativeFirstTerm";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::TailRuleMismatch: return "TailRuleMismatch";
        case ErrorCode::EmptyTail: return "EmptyTail";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::FrequencyMismatch: return "FrequencyMismatch";
        case ErrorCode::ConditionERefuted: return "ConditionERefuted";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::TailNotCertifiable: return "TailNotCertifiable";
        case ErrorCode::UnboundedSymbol: return "UnboundedSymbol";
        case ErrorCode::ConstantNotRepresentable: return "ConstantNotRepresentable";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::QuadratureDiverged: return "QuadratureDiverged";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
    }
    return "Unknown";
}

}  // namespace dirichlet
