#pragma once

#include <stdexcept>
#include <string>

namespace vsep {

enum class Errc {
    ParseError,
    InvalidArgument,
    EulerViolation,
    Disconnected,
    NonPositiveWeight,
    NotSimple,
    Unreachable,
    InvalidObject,
    NotIndependent,
    FamilyTooSmall,
    ExhaustedAttempts,
    PreconditionWeight,
    BridgePresent,
    DegenerateBridgeComponent,
    MeasureAxiomViolated,
    CapExceeded,
    ZeroWeight,
    TooLarge,
    DuplicatePoints,
    NonSimplePolygon,
    EmptyObject,
    PrecisionExhausted,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace vsep
