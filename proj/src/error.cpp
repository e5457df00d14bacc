#include "wormhole/error.hpp"

namespace wormhole {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidTotative: return "invalid-totative";
        case ErrorCode::NotAValidSemiprime: return "not-a-valid-semiprime";
        case ErrorCode::InvalidAlpha: return "invalid-alpha";
        case ErrorCode::InvalidN: return "invalid-N";
        case ErrorCode::InvalidK: return "invalid-k";
        case ErrorCode::InvalidMarks: return "invalid-marks";
        case ErrorCode::UseMonteCarlo: return "use-monte-carlo";
        case ErrorCode::InvalidDt: return "invalid-dt";
        case ErrorCode::AbsorbedAll: return "absorbed-all";
        case ErrorCode::InvalidMatrix: return "invalid-matrix";
        case ErrorCode::EigensolverFailure: return "eigensolver-failure";
        case ErrorCode::NoOverlap: return "no-overlap";
        case ErrorCode::StepTooCoarse: return "step-too-coarse";
        case ErrorCode::InvalidT: return "invalid-T";
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::DimensionTooLarge: return "dimension-too-large";
        case ErrorCode::FactorNotFound: return "factor-not-found";
    }
    return "unknown";
}

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::AbsorbedAll:
        case ErrorCode::EigensolverFailure:
        case ErrorCode::NoOverlap:
        case ErrorCode::StepTooCoarse:
            return 3;
        case ErrorCode::FactorNotFound:
            return 4;
        default:
            return 2;
    }
}

}  // namespace wormhole
