#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace radnorm {

/// Base class for every exception raised by the library. `kind()` is the
/// stable machine-readable tag used in CLI error documents.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A point, parameter or configuration outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// Exponents outside 1 < p, q < inf, or violating an operation's ordering.
class InvalidExponents : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_exponents"; }
};

class IndexError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "index_error"; }
};

/// A schedule whose radii would leave the representable double range.
class OverflowError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "overflow_error"; }
};

/// A norm or integral diverged while computing a derived quantity.
class DivergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "diverged"; }
};

/// Least-squares fit residuals too large for the slope to be meaningful.
class FitUnreliable : public Error {
 public:
  FitUnreliable(const std::string& what, double residual_max)
      : Error(what), residual_max_(residual_max) {}
  const char* kind() const noexcept override { return "fit_unreliable"; }
  double residual_max() const noexcept { return residual_max_; }

 private:
  double residual_max_;
};

/// DSL syntax error. `offset` is a byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);
  const char* kind() const noexcept override { return "parse_error"; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Syntactically valid DSL literal whose value is out of range.
class RangeError : public Error {
 public:
  RangeError(std::size_t offset, const std::string& what)
      : Error(what), offset_(offset) {}
  const char* kind() const noexcept override { return "range_error"; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace radnorm
