#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pudg {

enum class ErrorKind {
  Alphabet,
  Parse,
  DanglingEndpoint,
  DuplicateNode,
  UnknownLabel,
  Format,
  Budget,
  NoCandidate,
  Unsupported,
  Infeasible,
  Precondition,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::optional<std::size_t> pos = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  // Character offset for parse errors.
  std::optional<std::size_t> position() const noexcept { return pos_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> pos_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

}  // namespace pudg
