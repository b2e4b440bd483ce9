// SPDX-License-Identifier: MIT
#include "lab/error.hpp"

namespace lab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SingularHessian: return "SingularHessian";
        case ErrorKind::WrongDimension: return "WrongDimension";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::SingularRotation: return "SingularRotation";
        case ErrorKind::StripViolation: return "StripViolation";
        case ErrorKind::InverseMapDiverged: return "InverseMapDiverged";
        case ErrorKind::NotConvex: return "NotConvex";
        case ErrorKind::NoDecay: return "NoDecay";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::NonPositiveValue: return "NonPositiveValue";
        case ErrorKind::DidNotConverge: return "DidNotConverge";
        case ErrorKind::InadmissibleIterate: return "InadmissibleIterate";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::UnknownName:
        case ErrorKind::BadParams:
        case ErrorKind::ConfigError:
        case ErrorKind::WrongDimension:
            return false;
        default:
            return true;
    }
}

}  // namespace lab
