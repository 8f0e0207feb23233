#pragma once

#include <stdexcept>
#include <string>

namespace gww {

// Every failure the library can signal deliberately.  Codes group into three
// families used for process exit codes: input problems, genericity failures
// (resampling is the caller's remedy), and internal faults.
enum class errc {
  zero_input,
  zero_denominator,
  non_prime_modulus,
  unsupported_field,
  field_mismatch,
  invalid_place,
  parse_error,
  degree_cap_exceeded,
  bad_argument,
  not_squarefree,
  zero_element,
  zero_divisor,
  unit_condition_violated,
  not_reduced,
  not_a_node,
  wrong_node_count,
  not_integral,
  degenerate_parameters,
  factorization_limit,
  not_generic,
  internal,
};

const char* errc_name(errc c);

class gw_error : public std::runtime_error {
 public:
  gw_error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Degenerate input data; the caller should resample rather than treat this as
// a hard failure.
class not_generic_error : public gw_error {
 public:
  explicit not_generic_error(const std::string& msg)
      : gw_error(errc::not_generic, msg) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) {
  if (c == errc::not_generic) throw not_generic_error(msg);
  throw gw_error(c, msg);
}

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace gww
