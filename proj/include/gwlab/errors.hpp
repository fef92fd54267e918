#ifndef GWLAB_ERRORS_HPP
#define GWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gwlab {

/// Malformed or structurally invalid input (bad schema, singular pairing,
/// precondition violated by the caller's data). CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested quantity cannot be determined inside the given truncation.
/// CLI exit code 3.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (an overdetermined system disagreed,
/// a triangularity assumption broke). Never expected on valid input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gwlab

#endif  // GWLAB_ERRORS_HPP
