//===- method_tables.hpp - String and view member classification -*- C++ -*-=//
//
// Which std::string members invalidate pointers into the string's buffer, and
// which std::string_view members count as a use of the viewed buffer.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/ast.hpp"

#include <span>
#include <string_view>

namespace viewlint {

enum class MethodEffect {
  /// String member that keeps the buffer.
  StringNonInvalidating,
  /// String member after which pointers and views into the buffer dangle.
  StringInvalidating,
  /// View member that may be called on a dangling view.
  ViewExemptFromUse,
  /// View member that reads through the view.
  ViewUse,
};

/// How an argument position is typed.
enum class ArgKind {
  Int,
  /// String, view, pointer or literal, taken by value or const reference.
  StringLike,
  /// A view taken by value; strings convert implicitly.
  View,
  /// An lvalue string taken by non-const reference.
  StringRef,
  /// An lvalue view taken by non-const reference.
  ViewRef,
};

struct MethodInfo {
  std::string_view name;
  TypeKind receiver;
  MethodEffect effect;
  TypeKind result;
  int minArgs;
  int maxArgs;
  ArgKind args[3];

  bool isView() const { return receiver == TypeKind::StringView; }
  bool invalidates() const { return effect == MethodEffect::StringInvalidating; }
  bool isUse() const { return effect == MethodEffect::ViewUse; }
  ArgKind argKind(int I) const { return args[I < 3 ? I : 2]; }
};

const MethodInfo *lookupMethod(TypeKind Receiver, std::string_view Name);

std::span<const MethodInfo> stringMethods();
std::span<const MethodInfo> viewMethods();

/// Comparison operators and string concatenation, modeled as calls.
const MethodInfo *lookupOperator(std::string_view Op, TypeKind Operand);

} // namespace viewlint
