#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acoh {

/// A parameter is outside its documented domain (negative occupation,
/// non-finite coupling, efficiency above one, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested route does not exist for this state class, e.g. a
/// closed-form P function for a Fock state.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The Fock truncation could not bring the discarded probability mass below
/// the configured bound.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, std::size_t suggested_dim, double tail_mass)
      : std::runtime_error(what), suggested_dim_(suggested_dim), tail_mass_(tail_mass) {}

  std::size_t suggested_dim() const noexcept { return suggested_dim_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  std::size_t suggested_dim_;
  double tail_mass_;
};

}  // namespace acoh
