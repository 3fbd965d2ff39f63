#pragma once

#include <stdexcept>
#include <string>

#include "afx/state.hpp"

namespace afx {

// Non-physical or non-finite state. Carries the offending state and, once
// known, where in the grid it was found.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : DomainError(what, ConservedState{}) {}
  DomainError(const std::string& what, const ConservedState& state, std::string location = {})
      : std::runtime_error(compose(what, state, location)),
        reason_(what),
        state_(state),
        location_(std::move(location)) {}

  [[nodiscard]] const ConservedState& state() const noexcept { return state_; }
  [[nodiscard]] const std::string& location() const noexcept { return location_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

  // Same error with more context prepended to the location.
  [[nodiscard]] DomainError with_location(const std::string& where) const {
    return {reason_, state_, location_.empty() ? where : where + ", " + location_};
  }

 private:
  static std::string compose(const std::string& what, const ConservedState& q,
                             const std::string& location);

  std::string reason_;
  ConservedState state_;
  std::string location_;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace afx
