#pragma once

#include <stdexcept>

namespace ergodiag {

/// Raised when a process or data series has no variability to work with
/// (zero variance at lag 0). Invalid inputs raise std::invalid_argument.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ergodiag
