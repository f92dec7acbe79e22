#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnahm {

// Base class for every error raised by the engine.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class incompatible_denominator : public error {
public:
  using error::error;
};

class non_unit_leading_coefficient : public error {
public:
  using error::error;
};

class order_exceeded : public error {
public:
  using error::error;
};

class non_convergent_product : public error {
public:
  using error::error;
};

class not_positive_definite : public error {
public:
  using error::error;
};

class non_positive_quadratic : public error {
public:
  using error::error;
};

class negative_length : public error {
public:
  using error::error;
};

class unbounded_ct : public error {
public:
  using error::error;
};

class unknown_identity : public error {
public:
  using error::error;
};

class parse_error : public error {
public:
  parse_error(std::size_t offset, std::vector<std::string> expected)
      : error(make_message(offset, expected)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  static std::string make_message(std::size_t offset, const std::vector<std::string>& expected) {
    std::string msg = "parse error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

} // namespace qnahm
