#include "heatfield/errors.hpp"

namespace heatfield {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::ZeroDivisor: return "ZeroDivisor";
        case ErrorCode::NonPositiveTime: return "NonPositiveTime";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::GridTooNarrow: return "GridTooNarrow";
        case ErrorCode::InvalidFertility: return "InvalidFertility";
        case ErrorCode::StabilityViolation: return "StabilityViolation";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::PopulationExplosion: return "PopulationExplosion";
    }
    return "Unknown";
}

}  // namespace heatfield
