// SPDX-License-Identifier: Apache-2.0

#include "drcs/error.hpp"

namespace drcs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrimeP: return "NonPrimeP";
        case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::NotInSubfield: return "NotInSubfield";
        case ErrorCode::ZeroNotFound: return "ZeroNotFound";
        case ErrorCode::NotABijection: return "NotABijection";
        case ErrorCode::NonUnimodularInput: return "NonUnimodularInput";
        case ErrorCode::ParameterTooSmall: return "ParameterTooSmall";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::RegionOutOfRange: return "RegionOutOfRange";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NonPositiveBound: return "NonPositiveBound";
        case ErrorCode::CorruptFile: return "CorruptFile";
    }
    return "Unknown";
}

}  // namespace drcs
