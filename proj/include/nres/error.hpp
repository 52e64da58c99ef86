#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nres {

enum class ErrorCode {
    DivisionByZero,
    AlphabetMismatch,
    UnboundParameter,
    DimMismatch,
    OddDimension,
    UnsupportedDimension,
    IndexOutOfRange,
    NonIncreasingTriple,
    NonCanonicalInput,
    NotIntegrable,
    NonAntisymmetricTorsion,
    JetOrderExceeded,
    NotElliptic,
    OddBarDimension,
    ParseError,
    ValidationError,
};

inline std::string_view to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::UnboundParameter: return "UnboundParameter";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonIncreasingTriple: return "NonIncreasingTriple";
    case ErrorCode::NonCanonicalInput: return "NonCanonicalInput";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::NonAntisymmetricTorsion: return "NonAntisymmetricTorsion";
    case ErrorCode::JetOrderExceeded: return "JetOrderExceeded";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::OddBarDimension: return "OddBarDimension";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Every failure raised by the engine carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nres
