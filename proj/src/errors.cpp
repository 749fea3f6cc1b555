#include "pudg/errors.hpp"

namespace pudg {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Alphabet: return "alphabet";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::DanglingEndpoint: return "dangling-endpoint";
    case ErrorKind::DuplicateNode: return "duplicate-node";
    case ErrorKind::UnknownLabel: return "unknown-label";
    case ErrorKind::Format: return "format";
    case ErrorKind::Budget: return "budget-exceeded";
    case ErrorKind::NoCandidate: return "no-candidate";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Precondition: return "precondition";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& msg, std::optional<std::size_t> pos)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind), pos_(pos) {}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace pudg
