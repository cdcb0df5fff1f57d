// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

/// Classification shared by the C++ exceptions and the C status codes.
enum class ErrorKind {
    Domain = 1,
    Convergence,
    Pole,
    NearPole,
    Degenerate,
    Recovery,
    Redundancy,
    Unphysical,
    ScalingAngle,
    ContourMismatch,
    Numerical,
    Config,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define NLSE_DEFINE_ERROR(Name, Kind)                                                  \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}       \
    };

NLSE_DEFINE_ERROR(DomainError, Domain)
NLSE_DEFINE_ERROR(ConvergenceError, Convergence)
NLSE_DEFINE_ERROR(PoleError, Pole)
NLSE_DEFINE_ERROR(NearPoleError, NearPole)
NLSE_DEFINE_ERROR(DegenerateError, Degenerate)
NLSE_DEFINE_ERROR(RecoveryError, Recovery)
NLSE_DEFINE_ERROR(RedundancyError, Redundancy)
NLSE_DEFINE_ERROR(UnphysicalError, Unphysical)
NLSE_DEFINE_ERROR(ScalingAngleError, ScalingAngle)
NLSE_DEFINE_ERROR(ContourMismatchError, ContourMismatch)
NLSE_DEFINE_ERROR(NumericalError, Numerical)
NLSE_DEFINE_ERROR(ConfigError, Config)
NLSE_DEFINE_ERROR(IoError, Io)

#undef NLSE_DEFINE_ERROR

}  // namespace nlse
