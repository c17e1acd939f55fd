#pragma once
#include <stdexcept>
#include <string>

namespace b0lie {

// Error kinds map one-to-one onto the CLI exit codes / C API status values.
enum class ErrorKind {
  parse = 1,         // malformed input text
  precondition = 2,  // violated operation precondition (class >= p, size cap, ...)
  inconsistent = 3,  // presentation does not define the claimed object
  internal = 4,      // invariant breakage; a defect, never expected
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }
[[noreturn]] inline void throw_precondition(const std::string& msg) {
  throw Error(ErrorKind::precondition, msg);
}
[[noreturn]] inline void throw_inconsistent(const std::string& msg) {
  throw Error(ErrorKind::inconsistent, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(ErrorKind::internal, msg);
}

inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw_internal(msg);
}

}  // namespace b0lie
