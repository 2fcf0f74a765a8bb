#pragma once

#include <stdexcept>
#include <string>

namespace csd {

enum class ErrorCode {
  invalid_input,
  image_too_small,
  table_inconsistent,
  invalid_cutpoints,
  unification_impossible,
  corrupt_histogram,
  bins_mismatch,
  unsupported_direction,
  plan_mismatch,
  decode_error,
  parse_error,
  stale_index,
  empty_corpus,
  io_error,
};

/// All recoverable failures in this library throw Error; code() identifies
/// the failure class so callers (the CLI in particular) can map it to an
/// exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace csd
