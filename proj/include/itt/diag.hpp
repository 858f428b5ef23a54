#pragma once

#include <stdexcept>
#include <string>

namespace itt {

struct Span {
  int line = 0;  // 1-based; 0 means "no position"
  int col = 0;
  int len = 1;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  std::string file;
  Span span;

  std::string render() const {
    std::string out;
    if (!file.empty()) out += file + ":";
    if (span.line > 0) out += std::to_string(span.line) + ":" + std::to_string(span.col) + ":";
    if (!out.empty()) out += " ";
    out += severity == Severity::Error ? "error: " : "warning: ";
    out += message;
    return out;
  }
};

// Everything the kernel can complain about. `fuel` is kept distinct from
// `type` so that running out of evaluation budget is never reported as an
// ill-typed term.
enum class ErrorKind { Lex, Parse, Type, Fuel, Io, Usage };

struct Error : std::runtime_error {
  ErrorKind kind;
  Diagnostic diag;
  Error(ErrorKind k, Diagnostic d) : std::runtime_error(d.message), kind(k), diag(std::move(d)) {}
};

[[noreturn]] inline void fail(ErrorKind k, std::string msg, Span sp = {}) {
  throw Error(k, Diagnostic{Severity::Error, std::move(msg), "", sp});
}

}  // namespace itt
