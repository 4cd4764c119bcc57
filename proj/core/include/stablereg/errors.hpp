#pragma once

#include <stdexcept>
#include <string>

namespace stablereg {

/// Machine-readable failure categories used across the library.
enum class Errc {
  index_out_of_range,
  empty_side,
  side_mismatch,
  zero_measure_part,
  no_splitter,
  iteration_cap_exceeded,
  invalid_epsilon,
  empty_input,
  shape_mismatch,
  part_too_large,
  invalid_spec,
  invalid_measure,
  parse_error,
  internal,
};

const char* errc_name(Errc code) noexcept;

/// Exception carrying an Errc alongside the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) [[unlikely]] raise(code, what);
}

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) [[unlikely]] raise(code, what);
}

}  // namespace stablereg
