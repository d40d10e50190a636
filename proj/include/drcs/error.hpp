// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drcs {

enum class ErrorCode {
    NonPrimeP,
    ReduciblePolynomial,
    InvalidArgument,
    DivisionByZero,
    FieldMismatch,
    NotInSubfield,
    ZeroNotFound,
    NotABijection,
    NonUnimodularInput,
    ParameterTooSmall,
    DimensionMismatch,
    LengthMismatch,
    ShapeMismatch,
    RegionOutOfRange,
    NotApplicable,
    NonPositiveBound,
    CorruptFile,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the toolkit carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace drcs
