#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wormhole {

enum class ErrorCode {
    InvalidTotative,
    NotAValidSemiprime,
    InvalidAlpha,
    InvalidN,
    InvalidK,
    InvalidMarks,
    UseMonteCarlo,
    InvalidDt,
    AbsorbedAll,
    InvalidMatrix,
    EigensolverFailure,
    NoOverlap,
    StepTooCoarse,
    InvalidT,
    InvalidInput,
    DimensionTooLarge,
    FactorNotFound,
};

/// Machine-readable kebab-case name, e.g. "invalid-alpha".
std::string_view to_string(ErrorCode code) noexcept;

/// CLI exit status: 2 validation, 3 numerical failure, 4 factor not found.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace wormhole
