#pragma once

#include <stdexcept>
#include <string>

namespace gorenstein {

// Raised when a computation contradicts an invariant that is supposed to be a
// theorem about the constructed objects. Reaching this path means a bug in the
// construction (or in the caller's inputs pretending to be certified data),
// never routine input validation. The CLI maps it to exit code 3.
class TheoremViolation : public std::logic_error {
  public:
    explicit TheoremViolation(const std::string& what);
    // Number of TheoremViolation objects constructed in this process.
    static long count();
};

}  // namespace gorenstein
