#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heatfield {

enum class ErrorCode {
    NonFinite,
    ZeroDivisor,
    NonPositiveTime,
    DimensionMismatch,
    InvalidArgument,
    GridTooNarrow,
    InvalidFertility,
    StabilityViolation,
    NoConvergence,
    PopulationExplosion,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. Every failure surfaced by heatfield carries one of the
/// codes above so callers (the CLI in particular) can dispatch on kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
    if (!cond) fail(code, what);
}

}  // namespace detail
}  // namespace heatfield
