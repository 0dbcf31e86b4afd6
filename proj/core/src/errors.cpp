#include "radnorm/errors.hpp"

namespace radnorm {

namespace {

std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                     const std::string& found) {
  std::string msg = "parse error at offset " + std::to_string(offset) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error(describe(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace radnorm
