#include "nccover/errors.hpp"

namespace nccover {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NotProjection: return "NotProjection";
        case ErrorCode::NotUnital: return "NotUnital";
        case ErrorCode::NotAutomorphism: return "NotAutomorphism";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::SupportWraps: return "SupportWraps";
        case ErrorCode::ThetaMismatch: return "ThetaMismatch";
        case ErrorCode::DegenerateTau: return "DegenerateTau";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::ThetaIncompatible: return "ThetaIncompatible";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::NotPartition: return "NotPartition";
        case ErrorCode::FrameFailed: return "FrameFailed";
        case ErrorCode::EigenvalueOnCut: return "EigenvalueOnCut";
        case ErrorCode::ClosureDiverged: return "ClosureDiverged";
        case ErrorCode::NotDifferentiable: return "NotDifferentiable";
        case ErrorCode::BeyondSeries: return "BeyondSeries";
        case ErrorCode::NotLogDivergent: return "NotLogDivergent";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

}  // namespace nccover
