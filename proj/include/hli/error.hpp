// SPDX-License-Identifier: Apache-2.0
#ifndef HLI_ERROR_HPP
#define HLI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hli {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy needs more digits than max_refine_digits allows.
class PrecisionExceeded : public Error {
 public:
  using Error::Error;
};

/// A quantity could not be separated from an integer even at the maximum
/// refinement precision.
class IntegerBoundary : public Error {
 public:
  using Error::Error;
};

/// Prime counting requested above the supported cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The derivative of beta_n does not change sign on the search bracket.
class NoInteriorMax : public Error {
 public:
  using Error::Error;
};

}  // namespace hli

#endif  // HLI_ERROR_HPP
