#pragma once

#include <stdexcept>
#include <string>

namespace rashomon {

/// Raised on contract violations: bad arguments, malformed input, non-PD matrices.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rashomon
