#pragma once

#include <stdexcept>
#include <string>

namespace skewdens {

// Error categories map onto CLI exit codes: schema -> 2, semantic -> 3, internal -> 4.
enum class ErrorKind { schema, semantic, internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::string pointer = {})
      : std::runtime_error(message), kind_(kind), pointer_(std::move(pointer)) {}

  ErrorKind kind() const noexcept { return kind_; }

  // JSON pointer of the offending input field, empty when not applicable.
  const std::string& pointer() const noexcept { return pointer_; }

private:
  ErrorKind kind_;
  std::string pointer_;
};

[[noreturn]] inline void semantic_error(const std::string& message) {
  throw Error(ErrorKind::semantic, message);
}

[[noreturn]] inline void internal_error(const std::string& message) {
  throw Error(ErrorKind::internal, message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) {
    internal_error(message);
  }
}

}  // namespace skewdens
