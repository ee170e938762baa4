// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dcesta {

enum class ErrorKind {
  domain,
  discontinuity,
  convergence,
  bracket,
  quadrature,
  singularity,
  invalid_cycle,
  fit,
  config,
};

/// Base of every error raised by the library. The kind maps onto the C API
/// status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define DCESTA_DEFINE_ERROR(Name, Kind) \
  class Name : public Error {            \
   public:                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

DCESTA_DEFINE_ERROR(DomainError, domain)
DCESTA_DEFINE_ERROR(DiscontinuityError, discontinuity)
DCESTA_DEFINE_ERROR(ConvergenceError, convergence)
DCESTA_DEFINE_ERROR(BracketError, bracket)
DCESTA_DEFINE_ERROR(QuadratureError, quadrature)
DCESTA_DEFINE_ERROR(SingularityError, singularity)
DCESTA_DEFINE_ERROR(InvalidCycle, invalid_cycle)
DCESTA_DEFINE_ERROR(FitError, fit)
DCESTA_DEFINE_ERROR(ConfigError, config)

#undef DCESTA_DEFINE_ERROR

}  // namespace dcesta
