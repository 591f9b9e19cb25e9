//===- program_state.hpp - Regions, symbols and program states --*- C++ -*-===//

#pragma once

#include "viewlint/ast.hpp"
#include "viewlint/constraints.hpp"
#include "viewlint/immutable_map.hpp"
#include "viewlint/sval.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace viewlint {

//===----------------------------------------------------------------------===//
// Regions, frames and symbols
//===----------------------------------------------------------------------===//

enum class RegionKind {
  Local,
  Param,
  /// Materialized temporary, keyed by the expression that created it.
  Temp,
  /// Object behind a by-reference parameter of the top-level function.
  CallerOwned,
};

struct RegionInfo {
  RegionKind kind;
  const Node *node;
  FrameId frame;
  TypeKind type;
};

struct FrameInfo {
  FrameId parent;
  const Node *callExpr;
  const Node *function;
  int depth;
};

enum class SymbolOrigin { Conjured, BufferOf, CastOf, ParamInit };

struct SymbolInfo {
  SymbolOrigin origin;
  const Node *node;
  FrameId frame;
  RegionId region;
  int seq;
};

/// Interns regions, frames and symbols for one top-level analysis. Equal keys
/// give equal ids, so identical paths produce identical states.
class SymbolicContext {
public:
  RegionId region(RegionKind K, const Node *N, FrameId F, TypeKind T);
  std::optional<RegionId> findRegion(RegionKind K, const Node *N, FrameId F) const;
  const RegionInfo &regionInfo(RegionId R) const { return Regions[R]; }
  std::size_t numRegions() const { return Regions.size(); }

  FrameId frame(FrameId Parent, const Node *CallExpr, const Node *Function, int ParentIter);
  const FrameInfo &frameInfo(FrameId F) const { return Frames[F]; }

  SymbolId symbol(SymbolOrigin O, const Node *N, FrameId F, RegionId R, int Seq);
  const SymbolInfo &symbolInfo(SymbolId S) const { return Symbols[S]; }
  std::size_t numSymbols() const { return Symbols.size(); }

  /// `$b` for parameter symbols, `$conj3`, `$buf4`, `$cast5` otherwise.
  std::string symbolName(SymbolId S) const;
  /// Variable name, with `@<frame>` for inlined frames; `temp(<expr>)` for
  /// temporaries.
  std::string regionName(RegionId R) const;
  /// Source-level description used in messages.
  std::string regionDescription(RegionId R) const;

private:
  std::vector<RegionInfo> Regions;
  std::map<std::tuple<int, const Node *, FrameId>, RegionId> RegionIds;
  std::vector<FrameInfo> Frames;
  std::map<std::tuple<FrameId, const Node *, int>, FrameId> FrameIds;
  std::vector<SymbolInfo> Symbols;
  std::map<std::tuple<int, const Node *, FrameId, RegionId, int>, SymbolId> SymbolIds;
};

//===----------------------------------------------------------------------===//
// Checker state traits
//===----------------------------------------------------------------------===//

enum class ReleaseKind { Mutated, Destroyed, PassedToNonConstRef };

struct ReleaseInfo {
  ReleaseKind kind = ReleaseKind::Destroyed;
  /// Method or callee name; empty for destruction.
  std::string detail;
  /// Description of the string, e.g. `s`.
  std::string what;
  SourceLocation loc;

  friend bool operator==(const ReleaseInfo &, const ReleaseInfo &) = default;
};

/// Sorted, duplicate-free id list.
using IdSet = std::vector<int>;
using TraitValue = std::variant<std::int64_t, IdSet, ReleaseInfo>;
using TraitKey = std::int64_t;
using TraitMap = ImmutableMap<TraitKey, TraitValue>;

struct TraitOptions {
  /// Keys are symbols; entries die with their key.
  bool symbolKeys = false;
  /// Values are symbols kept alive by the entry.
  bool symbolValues = false;
};

struct TraitDesc {
  int id;
  std::string name;
  TraitOptions options;
};

class TraitRegistry {
public:
  /// Throws std::invalid_argument when \p Name is taken.
  int add(const std::string &Name, TraitOptions O);
  std::optional<int> find(const std::string &Name) const;
  const std::vector<TraitDesc> &all() const { return Traits; }

private:
  std::vector<TraitDesc> Traits;
};

template <typename V> struct TraitHandle {
  int id = -1;
};

template <typename V>
TraitHandle<V> registerCheckerState(TraitRegistry &R, const std::string &Name,
                                    TraitOptions O = {}) {
  return TraitHandle<V>{R.add(Name, O)};
}

//===----------------------------------------------------------------------===//
// ProgramState
//===----------------------------------------------------------------------===//

struct FrameRecord {
  FrameId id;
  /// Caller position to resume at: block and element index of the call.
  int retBlock = -1;
  int retIndex = -1;
  const Node *callExpr = nullptr;
  /// Reference parameters bound to caller regions.
  std::map<const Node *, RegionId> aliases;
  SVal retVal;
  /// Loop back edges taken in this activation; seeds fresh symbols.
  int iterations = 0;

  friend bool operator==(const FrameRecord &, const FrameRecord &) = default;
};

class ProgramState;
using ProgramStateRef = std::shared_ptr<const ProgramState>;

using EnvKey = std::pair<unsigned, FrameId>;

class ProgramState {
public:
  ImmutableMap<RegionId, SVal> store;
  ImmutableMap<EnvKey, SVal> env;
  ConstraintMap constraints;
  std::vector<FrameRecord> frames;
  ImmutableMap<std::pair<FrameId, int>, int> loopCounts;
  ImmutableMap<int, TraitMap> traits;

  static ProgramStateRef make() { return std::make_shared<const ProgramState>(); }

  const FrameRecord &top() const { return frames.back(); }
  FrameId frame() const { return frames.back().id; }

  const SVal *load(RegionId R) const { return store.lookup(R); }
  bool isLive(RegionId R) const { return store.contains(R); }
  [[nodiscard]] ProgramStateRef bind(RegionId R, SVal V) const;
  [[nodiscard]] ProgramStateRef kill(RegionId R) const;

  SVal exprValue(const Node &E, FrameId F) const;
  [[nodiscard]] ProgramStateRef bindExpr(const Node &E, FrameId F, SVal V) const;
  [[nodiscard]] ProgramStateRef clearEnv(FrameId F) const;

  [[nodiscard]] ProgramStateRef withConstraints(ConstraintMap C) const;
  [[nodiscard]] ProgramStateRef withFrames(std::vector<FrameRecord> Fs) const;
  [[nodiscard]] ProgramStateRef withLoopCount(FrameId F, int Header, int Count) const;

  const TraitMap &traitMap(int Id) const;
  [[nodiscard]] ProgramStateRef withTraitMap(int Id, TraitMap M) const;

  template <typename V> const V *get(TraitHandle<V> H, TraitKey K) const {
    const TraitValue *TV = traitMap(H.id).lookup(K);
    return TV ? std::get_if<V>(TV) : nullptr;
  }
  template <typename V> [[nodiscard]] ProgramStateRef set(TraitHandle<V> H, TraitKey K, V Val) const {
    return withTraitMap(H.id, traitMap(H.id).set(K, TraitValue(std::move(Val))));
  }
  template <typename V> [[nodiscard]] ProgramStateRef remove(TraitHandle<V> H, TraitKey K) const {
    return withTraitMap(H.id, traitMap(H.id).erase(K));
  }
  template <typename V> const TraitMap &entries(TraitHandle<V> H) const { return traitMap(H.id); }

  std::size_t hash() const;
  friend bool operator==(const ProgramState &A, const ProgramState &B);

  /// `store: b: $b, x: 42` and one `constraint:` line per symbol.
  std::string dump(const SymbolicContext &SC) const;

private:
  ProgramStateRef copyWith(const std::function<void(ProgramState &)> &Fn) const;
};

/// Region of variable \p D in the top frame of \p S, following reference
/// aliases.
RegionId regionForDecl(const ProgramState &S, SymbolicContext &SC, const Node &D);

IdSet idSetInsert(IdSet S, int V);
IdSet idSetErase(IdSet S, int V);

} // namespace viewlint
