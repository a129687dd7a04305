#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkm {

/// Stable error categories. The CLI maps every category except `usage`
/// to exit status 3 and reports the name in its JSON error record.
enum class ErrorCode {
  invalid_graph,
  unknown_vertex,
  precondition,
  limit_exceeded,
  internal,
  usage,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_graph: return "invalid_graph";
    case ErrorCode::unknown_vertex: return "unknown_vertex";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::limit_exceeded: return "limit_exceeded";
    case ErrorCode::internal: return "internal";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

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

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace bkm
