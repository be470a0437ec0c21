#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace massart {

/// Malformed dataset, model, or experiment-config input.
class data_format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sample source ran dry mid-run; carries how many more draws the learner
/// still needed.
class insufficient_samples : public std::runtime_error {
 public:
  explicit insufficient_samples(std::int64_t still_needed)
      : std::runtime_error("sample source exhausted; " +
                           std::to_string(still_needed) +
                           " more draws needed"),
        still_needed_(still_needed) {}

  std::int64_t still_needed() const { return still_needed_; }

 private:
  std::int64_t still_needed_;
};

/// The ellipsoid update was handed a cut it cannot apply (zero direction or
/// an indefinite shape matrix).
class ellipsoid_breakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace massart
