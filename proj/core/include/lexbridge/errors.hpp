#pragma once

#include <stdexcept>
#include <string>

namespace lexbridge {

// Error categories, kept coarse so callers (and the CLI exit-code map)
// can dispatch on them.
enum class ErrorKind {
    io,        // missing/unreadable file
    parse,     // malformed input: bad UTF-8, format mismatch, bad header
    config,    // invalid parameters, vocabulary mismatches, OOV queries
    internal,  // should not happen
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::io, msg); }
[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }
[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::config, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::io: return "io";
        case ErrorKind::parse: return "parse";
        case ErrorKind::config: return "config";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

}  // namespace lexbridge
