#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rav {

// Typed domain failure carrying a stable machine-readable code. The code is
// emitted verbatim in CLI error JSON and matched by tests; the message is for
// humans only.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw DomainError(code, what);
}

inline void check(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace rav
