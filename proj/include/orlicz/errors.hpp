#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orlicz {

// Root of the library's exception hierarchy.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input: expression source, config files, serialized grids.
// Carries the byte offset of the first offending character and a short
// description of what would have been acceptable there.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t offset, std::string expected)
      : error(what + " at byte " + std::to_string(offset) + ", expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

// A value left the mathematical domain of an operation: division by zero,
// log of a nonpositive number, a point outside the box, a divergent tail.
class domain_error : public error {
public:
  using error::error;
};

// An iterative solver ran out of iterations before reaching its tolerance.
class convergence_error : public error {
public:
  using error::error;
};

} // namespace orlicz
