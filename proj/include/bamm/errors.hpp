#pragma once

#include <stdexcept>
#include <string>

namespace bamm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in incompatible coefficient contexts (different radicands or arities).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class TermBudgetExceeded : public Error {
 public:
  TermBudgetExceeded(std::size_t terms, std::size_t budget)
      : Error("term budget exceeded: " + std::to_string(terms) + " > " + std::to_string(budget)),
        terms(terms),
        budget(budget) {}
  std::size_t terms;
  std::size_t budget;
};

class InvalidArrangement : public Error {
 public:
  using Error::Error;
};

class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  NonConvergent(const std::string& what, double error_est) : Error(what), error_est(error_est) {}
  double error_est;
};

class GammaPole : public Error {
 public:
  explicit GammaPole(double argument)
      : Error("gamma pole at argument " + std::to_string(argument)), argument(argument) {}
  double argument;
};

class FactorizationMismatch : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace bamm
