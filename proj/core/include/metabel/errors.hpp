#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace metabel {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// An enumeration or search would visit more candidates than allowed.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(std::string what, std::uint64_t candidates, std::uint64_t budget);
  std::uint64_t candidates() const noexcept { return candidates_; }
  std::uint64_t budget() const noexcept { return budget_; }

private:
  std::uint64_t candidates_;
  std::uint64_t budget_;
};

class NotASubspace : public Error {
public:
  using Error::Error;
};

class NotAssociative : public Error {
public:
  using Error::Error;
};

class NotMetabelian : public Error {
public:
  using Error::Error;
};

class InvalidBimodule : public Error {
public:
  using Error::Error;
};

class InvalidDatum : public Error {
public:
  using Error::Error;
};

class BimoduleMismatch : public Error {
public:
  using Error::Error;
};

/// A hypothesis of a checked theorem does not hold for the given input.
class HypothesisFailed : public Error {
public:
  explicit HypothesisFailed(std::string hypothesis);
  const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
  std::string hypothesis_;
};

/// A property that the theory guarantees was observed to fail.
class InternalError : public Error {
public:
  using Error::Error;
};

class UnknownFamily : public Error {
public:
  using Error::Error;
};

class InvalidParams : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace metabel
