//===- sval.hpp - Symbolic values -------------------------------*- C++ -*-===//

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace viewlint {

using SymbolId = int;
using RegionId = int;
using FrameId = int;

constexpr std::int64_t IMIN = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t IMAX = std::numeric_limits<std::int64_t>::max();

enum class CmpOp { None, EQ, NE, LT, GT, LE, GE };

std::string_view cmpOpSpelling(CmpOp Op);
CmpOp negate(CmpOp Op);
/// `c op s` rewritten as `s op' c`.
CmpOp swapSides(CmpOp Op);

struct SVal {
  enum class Kind { Unknown, Uninit, Concrete, Sym, SymExpr, Region };

  Kind kind = Kind::Unknown;
  std::int64_t value = 0;
  SymbolId sym = -1;
  /// SymExpr: sym + addend, optionally compared against rhs.
  std::int64_t addend = 0;
  CmpOp op = CmpOp::None;
  std::int64_t rhs = 0;
  RegionId region = -1;

  static SVal unknown() { return {}; }
  static SVal uninit() {
    SVal V;
    V.kind = Kind::Uninit;
    return V;
  }
  static SVal concrete(std::int64_t X) {
    SVal V;
    V.kind = Kind::Concrete;
    V.value = X;
    return V;
  }
  static SVal symbol(SymbolId S) {
    SVal V;
    V.kind = Kind::Sym;
    V.sym = S;
    return V;
  }
  /// `S + Addend [Op Rhs]`; collapses to a plain symbol when possible.
  static SVal symExpr(SymbolId S, std::int64_t Addend, CmpOp Op = CmpOp::None,
                      std::int64_t Rhs = 0) {
    if (Addend == 0 && Op == CmpOp::None)
      return symbol(S);
    SVal V;
    V.kind = Kind::SymExpr;
    V.sym = S;
    V.addend = Addend;
    V.op = Op;
    V.rhs = Rhs;
    return V;
  }
  static SVal regionVal(RegionId R) {
    SVal V;
    V.kind = Kind::Region;
    V.region = R;
    return V;
  }

  bool isUnknown() const { return kind == Kind::Unknown; }
  bool isConcrete() const { return kind == Kind::Concrete; }
  bool isRegion() const { return kind == Kind::Region; }
  bool isSymbolic() const { return kind == Kind::Sym || kind == Kind::SymExpr; }
  bool isPlainSymbol() const { return kind == Kind::Sym; }
  /// Sym, or SymExpr without a comparison.
  bool isLinear() const {
    return kind == Kind::Sym || (kind == Kind::SymExpr && op == CmpOp::None);
  }
  SymbolId symbolOrNone() const { return isSymbolic() ? sym : -1; }

  friend bool operator==(const SVal &, const SVal &) = default;
  friend auto operator<=>(const SVal &, const SVal &) = default;

  std::size_t hash() const;
  /// Fig-1 style rendering: `$b+1`, `42`, `&s`, `unknown`, `undef`.
  std::string str(const std::function<std::string(SymbolId)> &SymName,
                  const std::function<std::string(RegionId)> &RegName) const;
};

} // namespace viewlint
