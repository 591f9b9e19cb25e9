//===- source.hpp - Source locations and frontend errors --------*- C++ -*-===//

#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace viewlint {

/// 1-based position inside a named input file.
struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLocation &, const SourceLocation &) = default;
  friend std::strong_ordering operator<=>(const SourceLocation &A,
                                          const SourceLocation &B) {
    if (auto C = A.file <=> B.file; C != 0)
      return C;
    if (auto C = A.line <=> B.line; C != 0)
      return C;
    return A.column <=> B.column;
  }
};

struct SourceRange {
  SourceLocation begin;
  SourceLocation end;
};

inline std::ostream &operator<<(std::ostream &OS, const SourceLocation &L) {
  return OS << L.file << ':' << L.line << ':' << L.column;
}

enum class FrontendErrorKind { Lex, Parse, Resolve };

/// A located error from lexing, parsing or name resolution.
struct FrontendError {
  FrontendErrorKind kind;
  SourceLocation loc;
  std::string message;

  std::string str() const;
};

/// Thrown by the driver helpers when a file cannot be analyzed at all.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace viewlint
