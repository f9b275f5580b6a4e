#pragma once

#include <stdexcept>
#include <string>

namespace cantorlab {

enum class Errc {
    OverlappingPartition,
    NonExpanding,
    HullMismatch,
    NonPrimitiveGraph,
    ToleranceNotMet,
    DomainMismatch,
    BranchStraddle,
    NotAffine,
    BudgetExceeded,
    FactorOutOfRange,
    HypothesisFailed,
    NoHostGap,
    TranslationTooLarge,
    TrialsExhausted,
    PipelineFailed,
    ParseError,
    DuplicateField,
    IoError,
    InvalidWord,
    DegenerateRegression,
    InvalidArgument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::OverlappingPartition: return "OverlappingPartition";
        case Errc::NonExpanding: return "NonExpanding";
        case Errc::HullMismatch: return "HullMismatch";
        case Errc::NonPrimitiveGraph: return "NonPrimitiveGraph";
        case Errc::ToleranceNotMet: return "ToleranceNotMet";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::BranchStraddle: return "BranchStraddle";
        case Errc::NotAffine: return "NotAffine";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::FactorOutOfRange: return "FactorOutOfRange";
        case Errc::HypothesisFailed: return "HypothesisFailed";
        case Errc::NoHostGap: return "NoHostGap";
        case Errc::TranslationTooLarge: return "TranslationTooLarge";
        case Errc::TrialsExhausted: return "TrialsExhausted";
        case Errc::PipelineFailed: return "PipelineFailed";
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateField: return "DuplicateField";
        case Errc::IoError: return "IoError";
        case Errc::InvalidWord: return "InvalidWord";
        case Errc::DegenerateRegression: return "DegenerateRegression";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class CantorError : public std::runtime_error {
  public:
    CantorError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw CantorError(code, what); }

}  // namespace cantorlab
