#pragma once

#include <stdexcept>
#include <string>

namespace vnfs {

// Error taxonomy shared by the C++ core and mirrored 1:1 into the C API
// status codes. Every throwing path in the library throws vnfs::Error so the
// boundary layer can translate without a catch-all cascade.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,   // bad dimensions, null inputs, out-of-range params
  config = 2,             // malformed or inconsistent configuration
  trace = 3,              // malformed trace data
  io = 4,                 // file read/write failures
  pattern_guard = 5,      // server-pattern enumeration exceeded its budget
  scale_guard = 6,        // exhaustive oracle asked to run beyond toy sizes
  envelope = 7,           // demand exceeded the pre-planned maximum
  overload = 8,           // no feasible packing within the cluster
  unreachable_target = 9, // root-search target outside attainable range
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace vnfs
