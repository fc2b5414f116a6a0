#pragma once

#include <stdexcept>
#include <string>

namespace sharedctl {

// Invalid scenario or parameter block. Raised before any simulation step.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model was evaluated outside its domain (v_x below floor, non-finite input).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Station outside the modeled road or lane index out of range.
class ExtentError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Degenerate or inconsistent geometry (overlapping obstacles, point inside an
// obstacle, no channel between start and final region).
class GeometryError : public std::runtime_error {
 public:
  enum class Kind { Overlap, Containment, Disconnected, Degenerate };

  GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sharedctl
