//===- constraints.hpp - Range-based constraint manager ---------*- C++ -*-===//
//
// Each symbol is constrained to a set of disjoint closed intervals over
// int64. Only `symbol + k <op> constant` is solved precisely; anything else is
// treated as unconstrained.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/immutable_map.hpp"
#include "viewlint/sval.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace viewlint {

class RangeSet {
public:
  struct Interval {
    std::int64_t lo;
    std::int64_t hi;
    friend bool operator==(const Interval &, const Interval &) = default;
    friend auto operator<=>(const Interval &, const Interval &) = default;
  };

  /// The empty (infeasible) set.
  RangeSet() = default;
  static RangeSet full() { return range(IMIN, IMAX); }
  static RangeSet point(std::int64_t V) { return range(V, V); }
  /// [Lo, Hi], or empty when Lo > Hi.
  static RangeSet range(std::int64_t Lo, std::int64_t Hi);
  static RangeSet fromIntervals(std::vector<Interval> I);
  /// All values v with `v Op C`.
  static RangeSet satisfying(CmpOp Op, std::int64_t C);

  bool empty() const { return I.empty(); }
  bool isFull() const { return I.size() == 1 && I[0].lo == IMIN && I[0].hi == IMAX; }
  bool contains(std::int64_t V) const;
  std::optional<std::int64_t> singleton() const;
  const std::vector<Interval> &intervals() const { return I; }

  RangeSet intersect(const RangeSet &O) const;
  RangeSet unite(const RangeSet &O) const;
  RangeSet complement() const;

  /// `[IMIN, -1] ∪ [1, IMAX]`; the empty set prints as `∅`.
  std::string str() const;

  friend bool operator==(const RangeSet &, const RangeSet &) = default;
  friend auto operator<=>(const RangeSet &, const RangeSet &) = default;

private:
  void normalize();
  std::vector<Interval> I;
};

/// symbol -> RangeSet. Absent symbols are unconstrained; full ranges are never
/// stored.
class ConstraintMap {
public:
  const RangeSet *lookup(SymbolId S) const { return M.lookup(S); }
  RangeSet rangeOf(SymbolId S) const {
    const RangeSet *R = lookup(S);
    return R ? *R : RangeSet::full();
  }
  /// Stores \p R for \p S, dropping the entry if \p R is the full range.
  [[nodiscard]] ConstraintMap set(SymbolId S, const RangeSet &R) const;
  [[nodiscard]] ConstraintMap erase(SymbolId S) const;

  std::size_t size() const { return M.size(); }
  bool empty() const { return M.empty(); }
  auto begin() const { return M.begin(); }
  auto end() const { return M.end(); }

  /// Drops full-range entries.
  [[nodiscard]] ConstraintMap normalized() const;

  std::size_t hash() const;
  std::string dump(const std::function<std::string(SymbolId)> &SymName) const;

  friend bool operator==(const ConstraintMap &, const ConstraintMap &) = default;

private:
  ImmutableMap<SymbolId, RangeSet> M;
};

/// Refines \p M by assuming \p V is true (or false). Returns nullopt when the
/// assumption contradicts \p M. Values that are not integer-like leave \p M
/// unchanged.
std::optional<ConstraintMap> assume(const ConstraintMap &M, const SVal &V, bool Assumption);

/// False iff some stored range set is empty.
bool isFeasible(const ConstraintMap &M);

enum class BinOp { Add, Sub, EQ, NE, LT, GT };

/// Folds constants and keeps `symbol + constant` forms; otherwise asks
/// \p Conjure for a fresh symbol.
SVal evalBinOp(const SVal &L, BinOp Op, const SVal &R, const std::function<SymbolId()> &Conjure);
SVal evalNot(const SVal &V, const std::function<SymbolId()> &Conjure);

/// The single concrete value \p V must have under \p M, if any.
std::optional<std::int64_t> knownValue(const ConstraintMap &M, const SVal &V);

} // namespace viewlint
