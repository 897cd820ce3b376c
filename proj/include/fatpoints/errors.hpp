#pragma once

#include <stdexcept>
#include <string>

namespace fatpoints {

/// Input outside the supported domain of an operation (e.g. more than nine
/// points for the planar algorithm, or a prime not exceeding the degree).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested size exceeds a configured safety cap.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A proven invariant was violated at runtime. Always a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fatpoints
