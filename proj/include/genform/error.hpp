#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genform {

/// Failure categories raised by the library. Each validator reports the
/// offending basis indices in Error::indices().
enum class ErrorKind {
    DimensionMismatch,
    FieldMismatch,
    AlgebraMismatch,
    NotPrime,
    DivisionByZero,
    AssociativityViolation,
    UnityViolation,
    PatternNotClosed,
    PatternNotUnital,
    NotUnital,
    NotAntiMultiplicative,
    NotInvertible,
    BudgetExceeded,
    NotModule,
    NotDoubleModule,
    NotHomomorphism,
    CompatibilityViolation,
    NotRightRegular,
    NotLeftRegular,
    DescentFailure,
    AlphaNotInvolution,
    HypothesisViolated,
    HypothesisUnverified,
    NotFree,
    RankOneIdentificationFailed,
    NotInvolution,
    NotFieldCase,
    NotSemisimple,
    CenterNotSplit,
    Inconclusive,
    Unsupported,
    InternalAssertion,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::UnityViolation: return "UnityViolation";
    case ErrorKind::PatternNotClosed: return "PatternNotClosed";
    case ErrorKind::PatternNotUnital: return "PatternNotUnital";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotAntiMultiplicative: return "NotAntiMultiplicative";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotModule: return "NotModule";
    case ErrorKind::NotDoubleModule: return "NotDoubleModule";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorKind::NotRightRegular: return "NotRightRegular";
    case ErrorKind::NotLeftRegular: return "NotLeftRegular";
    case ErrorKind::DescentFailure: return "DescentFailure";
    case ErrorKind::AlphaNotInvolution: return "AlphaNotInvolution";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::HypothesisUnverified: return "HypothesisUnverified";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::RankOneIdentificationFailed: return "RankOneIdentificationFailed";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::NotFieldCase: return "NotFieldCase";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::CenterNotSplit: return "CenterNotSplit";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::vector<std::size_t> indices = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind),
          indices_(std::move(indices)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    ErrorKind kind_;
    std::vector<std::size_t> indices_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what, std::vector<std::size_t> indices = {}) {
    throw Error(kind, what, std::move(indices));
}

/// Raised for conditions that can only mean a bug in this library.
inline void ensure(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::InternalAssertion, what);
}

}  // namespace genform
