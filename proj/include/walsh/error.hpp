#pragma once

#include <stdexcept>
#include <string>

namespace walsh {

enum class ErrorKind {
  kResolutionMismatch,
  kResolutionExceeded,
  kShape,
  kDomain,
  kNumeric,
  kUsage,
  kIo,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace walsh
