#pragma once

#include <stdexcept>
#include <string>

namespace dwl {

// Failure classes. The CLI maps each one onto a process exit code.
enum class ErrorKind {
  usage,          // bad arguments, schema violations, precondition on sizes
  numerical,      // guard tripped during a computation (degenerate frame, blow-up, ...)
  invariant,      // a structural check on a constructed value failed
  integrity,      // checksum mismatch on a stored artifact
  missing_input,  // file or directory absent
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace dwl
