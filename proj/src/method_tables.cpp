//===- method_tables.cpp - String and view member classification ----------===//

#include "viewlint/method_tables.hpp"

#include <array>

namespace viewlint {

namespace {

using enum MethodEffect;
using enum ArgKind;
constexpr TypeKind S = TypeKind::String;
constexpr TypeKind V = TypeKind::StringView;
constexpr TypeKind I = TypeKind::Int;
constexpr TypeKind B = TypeKind::Bool;
constexpr TypeKind P = TypeKind::CharPtr;
constexpr TypeKind N = TypeKind::Void;

// Non-const members keep pointers valid only when they are element access or
// iterator accessors; c_str/data/size/length/empty are const.
constexpr std::array StringTable = {
    MethodInfo{"operator[]", S, StringNonInvalidating, I, 1, 1, {Int}},
    MethodInfo{"at", S, StringNonInvalidating, I, 1, 1, {Int}},
    MethodInfo{"front", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"back", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"begin", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"rbegin", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"end", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"rend", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"c_str", S, StringNonInvalidating, P, 0, 0, {}},
    MethodInfo{"data", S, StringNonInvalidating, P, 0, 0, {}},
    MethodInfo{"size", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"length", S, StringNonInvalidating, I, 0, 0, {}},
    MethodInfo{"empty", S, StringNonInvalidating, B, 0, 0, {}},
    MethodInfo{"clear", S, StringInvalidating, N, 0, 0, {}},
    MethodInfo{"append", S, StringInvalidating, N, 1, 1, {StringLike}},
    MethodInfo{"push_back", S, StringInvalidating, N, 1, 1, {Int}},
    MethodInfo{"pop_back", S, StringInvalidating, N, 0, 0, {}},
    MethodInfo{"operator+=", S, StringInvalidating, N, 1, 1, {StringLike}},
    MethodInfo{"operator=", S, StringInvalidating, N, 1, 1, {StringLike}},
    MethodInfo{"insert", S, StringInvalidating, N, 2, 2, {Int, StringLike}},
    MethodInfo{"erase", S, StringInvalidating, N, 0, 2, {Int, Int}},
    MethodInfo{"replace", S, StringInvalidating, N, 3, 3, {Int, Int, StringLike}},
    MethodInfo{"resize", S, StringInvalidating, N, 1, 1, {Int}},
    MethodInfo{"reserve", S, StringInvalidating, N, 0, 1, {Int}},
    MethodInfo{"shrink_to_fit", S, StringInvalidating, N, 0, 0, {}},
    MethodInfo{"swap", S, StringInvalidating, N, 1, 1, {StringRef}},
};

constexpr std::array ViewTable = {
    MethodInfo{"size", V, ViewExemptFromUse, I, 0, 0, {}},
    MethodInfo{"length", V, ViewExemptFromUse, I, 0, 0, {}},
    MethodInfo{"max_size", V, ViewExemptFromUse, I, 0, 0, {}},
    MethodInfo{"empty", V, ViewExemptFromUse, B, 0, 0, {}},
    MethodInfo{"operator[]", V, ViewUse, I, 1, 1, {Int}},
    MethodInfo{"at", V, ViewUse, I, 1, 1, {Int}},
    MethodInfo{"front", V, ViewUse, I, 0, 0, {}},
    MethodInfo{"back", V, ViewUse, I, 0, 0, {}},
    MethodInfo{"data", V, ViewUse, P, 0, 0, {}},
    MethodInfo{"substr", V, ViewUse, V, 0, 2, {Int, Int}},
    MethodInfo{"remove_prefix", V, ViewUse, N, 1, 1, {Int}},
    MethodInfo{"remove_suffix", V, ViewUse, N, 1, 1, {Int}},
    MethodInfo{"swap", V, ViewUse, N, 1, 1, {ViewRef}},
    MethodInfo{"compare", V, ViewUse, I, 1, 1, {View}},
    MethodInfo{"find", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"rfind", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"find_first_of", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"find_last_of", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"find_first_not_of", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"find_last_not_of", V, ViewUse, I, 1, 2, {View, Int}},
    MethodInfo{"starts_with", V, ViewUse, B, 1, 1, {View}},
    MethodInfo{"ends_with", V, ViewUse, B, 1, 1, {View}},
    MethodInfo{"begin", V, ViewUse, I, 0, 0, {}},
    MethodInfo{"end", V, ViewUse, I, 0, 0, {}},
    MethodInfo{"rbegin", V, ViewUse, I, 0, 0, {}},
    MethodInfo{"rend", V, ViewUse, I, 0, 0, {}},
};

// Free operators. Comparisons take views by value when a view is involved and
// strings by const reference otherwise.
constexpr std::array ViewOperators = {
    MethodInfo{"operator==", V, ViewUse, B, 2, 2, {View, View}},
    MethodInfo{"operator!=", V, ViewUse, B, 2, 2, {View, View}},
    MethodInfo{"operator<", V, ViewUse, B, 2, 2, {View, View}},
    MethodInfo{"operator>", V, ViewUse, B, 2, 2, {View, View}},
};

constexpr std::array StringOperators = {
    MethodInfo{"operator==", S, StringNonInvalidating, B, 2, 2, {StringLike, StringLike}},
    MethodInfo{"operator!=", S, StringNonInvalidating, B, 2, 2, {StringLike, StringLike}},
    MethodInfo{"operator<", S, StringNonInvalidating, B, 2, 2, {StringLike, StringLike}},
    MethodInfo{"operator>", S, StringNonInvalidating, B, 2, 2, {StringLike, StringLike}},
    MethodInfo{"operator+", S, StringNonInvalidating, S, 2, 2, {StringLike, StringLike}},
};

template <std::size_t Size>
const MethodInfo *find(const std::array<MethodInfo, Size> &Table,
                       std::string_view Name) {
  for (const MethodInfo &M : Table)
    if (M.name == Name)
      return &M;
  return nullptr;
}

} // namespace

const MethodInfo *lookupMethod(TypeKind Receiver, std::string_view Name) {
  if (Receiver == TypeKind::String)
    return find(StringTable, Name);
  if (Receiver == TypeKind::StringView)
    return find(ViewTable, Name);
  return nullptr;
}

std::span<const MethodInfo> stringMethods() { return StringTable; }
std::span<const MethodInfo> viewMethods() { return ViewTable; }

const MethodInfo *lookupOperator(std::string_view Op, TypeKind Operand) {
  std::string Name = "operator" + std::string(Op);
  if (Operand == TypeKind::StringView)
    return find(ViewOperators, Name);
  if (Operand == TypeKind::String)
    return find(StringOperators, Name);
  return nullptr;
}

} // namespace viewlint
