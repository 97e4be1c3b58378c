#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brwsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a simulation would allocate more particles than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t requested, std::uint64_t budget)
      : Error("particle budget exceeded: " + std::to_string(requested) + " > " +
              std::to_string(budget)),
        requested_(requested),
        budget_(budget) {}

  [[nodiscard]] std::uint64_t requested() const noexcept { return requested_; }
  [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

class InvalidLaw : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A sum would leave the range of double before normalization.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace brwsim
