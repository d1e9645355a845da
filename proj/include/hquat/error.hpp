#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hquat {

/// Failure categories used across the library. The CLI maps these to exit
/// codes; tests match on them.
enum class errc {
  divide_by_zero,
  zero_quaternion,
  on_real_axis,
  syntax,
  unknown_function,
  non_integer_exponent,
  eval_domain,
  not_differentiable,
  no_antiderivative,
  not_three_dimensional,
  order_too_high,
  out_of_interval,
  chain_break,
  path_not_closed,
  not_slice_planar,
  point_on_path,
  angle_accumulation,
  singular_on_path,
  non_convergent,
  pole_on_path,
  pole_outside,
  point_not_inside,
  inconclusive,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::divide_by_zero: return "divide_by_zero";
    case errc::zero_quaternion: return "zero_quaternion";
    case errc::on_real_axis: return "on_real_axis";
    case errc::syntax: return "syntax";
    case errc::unknown_function: return "unknown_function";
    case errc::non_integer_exponent: return "non_integer_exponent";
    case errc::eval_domain: return "eval_domain";
    case errc::not_differentiable: return "not_differentiable";
    case errc::no_antiderivative: return "no_antiderivative";
    case errc::not_three_dimensional: return "not_three_dimensional";
    case errc::order_too_high: return "order_too_high";
    case errc::out_of_interval: return "out_of_interval";
    case errc::chain_break: return "chain_break";
    case errc::path_not_closed: return "path_not_closed";
    case errc::not_slice_planar: return "not_slice_planar";
    case errc::point_on_path: return "point_on_path";
    case errc::angle_accumulation: return "angle_accumulation";
    case errc::singular_on_path: return "singular_on_path";
    case errc::non_convergent: return "non_convergent";
    case errc::pole_on_path: return "pole_on_path";
    case errc::pole_outside: return "pole_outside";
    case errc::point_not_inside: return "point_not_inside";
    case errc::inconclusive: return "inconclusive";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Error(errc code, const std::string& message, std::size_t offset)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                           " (at offset " + std::to_string(offset) + ")"),
        code_(code),
        offset_(offset) {}

  errc code() const noexcept { return code_; }
  bool has_offset() const noexcept { return offset_ != no_offset; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  errc code_;
  std::size_t offset_ = no_offset;
};

}  // namespace hquat
