#pragma once

#include <stdexcept>
#include <string>

namespace netvec {

enum class ErrorKind {
  Parse,       // malformed file content
  Validation,  // violated precondition or inconsistent data
  Io,          // file could not be opened/read/written
  Lookup,      // unknown node/graph/label id
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }
[[noreturn]] inline void throw_validation(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }
[[noreturn]] inline void throw_lookup(const std::string& msg) { throw Error(ErrorKind::Lookup, msg); }

}  // namespace netvec
