#pragma once

#include <stdexcept>
#include <string>

namespace cgmc {

/// Where in a source file a diagnostic points. line == 0 means "no location".
struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class ErrorKind {
  Lex,         // bad character, malformed token
  Syntax,      // parse error
  Resolve,     // undefined identifier, bad relabelling, circular constant
  Type,        // init out of range, non-constant range bound
  Model,       // runtime model error: out-of-range update, division by zero, no move
  Resource,    // exploration limits exceeded
  Unsupported  // requested feature not applicable (e.g. witness shape)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, SourcePos pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                           ": " + message),
        kind_(kind),
        pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_{};
};

}  // namespace cgmc
