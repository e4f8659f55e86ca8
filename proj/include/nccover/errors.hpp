#pragma once

#include <stdexcept>
#include <string>

namespace nccover {

enum class ErrorCode {
    NotHermitian,
    NotNormal,
    NotProjection,
    NotUnital,
    NotAutomorphism,
    GridTooCoarse,
    SupportWraps,
    ThetaMismatch,
    DegenerateTau,
    NotCoprime,
    ThetaIncompatible,
    WindowTooSmall,
    NotPartition,
    FrameFailed,
    EigenvalueOnCut,
    ClosureDiverged,
    NotDifferentiable,
    BeyondSeries,
    NotLogDivergent,
    ConfigInvalid,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace nccover
