//===- report.hpp - Bug reports and path notes ------------------*- C++ -*-===//

#pragma once

#include "viewlint/source.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace viewlint {

enum class BugCategory { UseAfterFree, StackUseAfterReturn };

std::string_view categoryName(BugCategory C);
std::optional<BugCategory> categoryFromName(std::string_view S);

struct PathNote {
  enum class Kind { Event, Control };
  Kind kind = Kind::Event;
  std::string message;
  SourceLocation loc;

  friend bool operator==(const PathNote &, const PathNote &) = default;
};

struct BugReport {
  std::string checkerId;
  BugCategory category = BugCategory::UseAfterFree;
  std::string message;
  SourceLocation loc;
  /// Execution order; the last note sits at loc.
  std::vector<PathNote> path;

  friend bool operator==(const BugReport &, const BugReport &) = default;
};

/// Orders by (file, line, column, checker).
bool reportLess(const BugReport &A, const BugReport &B);

namespace msg {
inline constexpr std::string_view UseAfterFree =
    "Inner pointer of container used after re/deallocation";
inline constexpr std::string_view ReleasedPrefix = "Inner buffer of 'std::string' deallocated by call to ";
inline constexpr std::string_view Obtained = "Pointer to inner buffer of 'std::string' obtained here";
} // namespace msg

} // namespace viewlint
