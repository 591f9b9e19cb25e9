//===- checkers.hpp - String and view lifetime checkers ---------*- C++ -*-===//
//
// Four checkers registered in this order:
//   cplusplus.StringModeling      unique buffer symbols for c_str/data
//   cplusplus.StringViewModeling  string-view associations
//   cplusplus.InnerPointer        invalidation; released buffer pointers
//   cplusplus.StringViewChecker   uses of released views
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/checker_api.hpp"

#include <optional>
#include <string_view>
#include <utility>

namespace viewlint {

namespace checker_ids {
inline constexpr std::string_view StringModeling = "cplusplus.StringModeling";
inline constexpr std::string_view StringViewModeling = "cplusplus.StringViewModeling";
inline constexpr std::string_view InnerPointer = "cplusplus.InnerPointer";
inline constexpr std::string_view StringViewChecker = "cplusplus.StringViewChecker";
} // namespace checker_ids

struct StringTraits {
  /// string region -> associated view regions
  TraitHandle<IdSet> viewRegions;
  /// conversion symbol -> string region
  TraitHandle<std::int64_t> castSymbols;
  /// view region -> why it was released
  TraitHandle<ReleaseInfo> releasedViews;
  /// string region -> current buffer symbol
  TraitHandle<std::int64_t> bufferSymbols;
  /// buffer symbol -> why it was released
  TraitHandle<ReleaseInfo> releasedBuffers;
};

/// Registers the four checkers and their state maps.
StringTraits registerBuiltinCheckers(CheckerRegistry &R);

// Modeling ------------------------------------------------------------------

/// The buffer symbol of \p Str, created on first request. Binds it to
/// \p Call.
std::pair<ProgramStateRef, SymbolId> evalBufferAccess(const StringTraits &T, CheckerContext &C,
                                                      ProgramStateRef S, RegionId Str,
                                                      const Node &Call);

/// A fresh conversion symbol for \p Convert, remembered in CastSymbols.
std::pair<ProgramStateRef, SymbolId> evalStringToViewConvert(const StringTraits &T,
                                                             CheckerContext &C, ProgramStateRef S,
                                                             RegionId Str, const Node &Convert);

/// Updates the association of \p View after \p Bound is stored into it.
ProgramStateRef bindViewRegion(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                               RegionId View, const SVal &Bound);

/// \p Result gets the association or released status of \p Receiver.
ProgramStateRef evalSubstr(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                           RegionId Receiver, RegionId Result);

ProgramStateRef evalSwap(const StringTraits &T, CheckerContext &C, ProgramStateRef S, RegionId A,
                         RegionId B);

/// The string \p View currently refers to.
std::optional<RegionId> associatedString(const StringTraits &T, const ProgramState &S,
                                         RegionId View);

/// Removes \p View from every association.
ProgramStateRef dropAssociation(const StringTraits &T, ProgramStateRef S, RegionId View);

// Lifetime ------------------------------------------------------------------

/// Releases the buffer symbol and every view of \p Str.
ProgramStateRef invalidateString(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                                 RegionId Str, ReleaseInfo Why);

/// Current (unreleased) buffer symbol of \p Str.
std::optional<SymbolId> bufferSymbolFor(const StringTraits &T, const ProgramState &S,
                                        RegionId Str);

enum class ViewUseKind { MethodCall, ReturnValue, ByValueArg, ConstRefArg, NonConstRefArg, IndexRead };

/// Report for a use of \p View, if it is released and the use is not exempt.
std::optional<PendingReport> checkViewUse(const StringTraits &T, const ProgramState &S,
                                          RegionId View, ViewUseKind K, const MethodInfo *Method,
                                          const SourceLocation &Loc);

/// Report for returning \p V from frame \p F.
std::optional<PendingReport> checkReturn(const StringTraits &T, const ProgramState &S,
                                         const SymbolicContext &SC, const SVal &V,
                                         TypeKind ReturnType, FrameId F,
                                         const SourceLocation &Loc);

/// `v.data()`: binds the buffer symbol of the string \p View refers to.
ProgramStateRef checkDanglingDataPointer(const StringTraits &T, CheckerContext &C,
                                         ProgramStateRef S, RegionId View, const Node &Call);

/// Drops bookkeeping for views that went out of scope.
ProgramStateRef onDeadRegions(const StringTraits &T, ProgramStateRef S,
                              const std::vector<RegionId> &Dead);

std::string releaseMessage(const ReleaseInfo &R);

} // namespace viewlint
