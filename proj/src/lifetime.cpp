//===- lifetime.cpp - Invalidation and use-after-free checks --------------===//

#include "viewlint/checkers.hpp"

namespace viewlint {

std::string releaseMessage(const ReleaseInfo &R) {
  std::string M(msg::ReleasedPrefix);
  return M + (R.kind == ReleaseKind::Destroyed ? std::string("destructor") : R.detail);
}

std::optional<SymbolId> bufferSymbolFor(const StringTraits &T, const ProgramState &S,
                                        RegionId Str) {
  if (const auto *Sym = S.get(T.bufferSymbols, Str))
    return static_cast<SymbolId>(*Sym);
  return std::nullopt;
}

ProgramStateRef invalidateString(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                                 RegionId Str, ReleaseInfo Why) {
  NoteTag N{NoteTag::Kind::Release, releaseMessage(Why), Why.loc};
  if (auto Buf = bufferSymbolFor(T, *S, Str)) {
    S = S->set(T.releasedBuffers, *Buf, Why);
    S = S->remove(T.bufferSymbols, Str);
    N.sym = *Buf;
  }
  if (const IdSet *Views = S->get(T.viewRegions, Str)) {
    N.views = *Views;
    for (RegionId V : N.views)
      S = S->set(T.releasedViews, V, Why);
    S = S->remove(T.viewRegions, Str);
  }
  if (N.sym >= 0 || !N.views.empty())
    C.addNote(std::move(N));
  return S;
}

std::optional<PendingReport> checkViewUse(const StringTraits &T, const ProgramState &S,
                                          RegionId View, ViewUseKind K, const MethodInfo *Method,
                                          const SourceLocation &Loc) {
  if (!S.get(T.releasedViews, View))
    return std::nullopt;
  switch (K) {
  case ViewUseKind::MethodCall:
    if (!Method || !Method->isUse())
      return std::nullopt;
    break;
  case ViewUseKind::NonConstRefArg:
    return std::nullopt;
  default:
    break;
  }
  return PendingReport{"", BugCategory::UseAfterFree, std::string(msg::UseAfterFree), Loc,
                       {View}, {}};
}

std::optional<PendingReport> checkReturn(const StringTraits &T, const ProgramState &S,
                                         const SymbolicContext &SC, const SVal &V,
                                         TypeKind ReturnType, FrameId F,
                                         const SourceLocation &Loc) {
  if (V.isRegion() && SC.regionInfo(V.region).type == TypeKind::StringView)
    if (auto R = checkViewUse(T, S, V.region, ViewUseKind::ReturnValue, nullptr, Loc))
      return R;
  if (ReturnType != TypeKind::StringView)
    return std::nullopt;

  std::optional<RegionId> Str;
  PendingReport R{"", BugCategory::StackUseAfterReturn, "", Loc, {}, {}};
  if (V.isRegion()) {
    Str = associatedString(T, S, V.region);
    R.views.push_back(V.region);
  } else if (V.isPlainSymbol()) {
    if (const auto *Reg = S.get(T.castSymbols, V.sym))
      Str = static_cast<RegionId>(*Reg);
    R.syms.push_back(V.sym);
  }
  if (!Str)
    return std::nullopt;
  const RegionInfo &Info = SC.regionInfo(*Str);
  if (Info.frame != F || Info.kind == RegionKind::CallerOwned)
    return std::nullopt;
  if (Info.kind == RegionKind::Temp)
    R.message = "Address of stack memory associated with temporary object returned to caller";
  else
    R.message = "Address of stack memory associated with local variable '" + Info.node->name +
                "' returned to caller";
  return R;
}

ProgramStateRef checkDanglingDataPointer(const StringTraits &T, CheckerContext &C,
                                         ProgramStateRef S, RegionId View, const Node &Call) {
  auto Str = associatedString(T, *S, View);
  if (!Str)
    return S;
  return evalBufferAccess(T, C, S, *Str, Call).first;
}

namespace {

bool isView(const SymbolicContext &SC, const SVal &V) {
  return V.isRegion() && SC.regionInfo(V.region).type == TypeKind::StringView;
}

CheckerCallbacks innerPointer(StringTraits T) {
  CheckerCallbacks CB;
  auto ReleasedPointer = [T](const ProgramState &S, const SVal &V) {
    return V.isPlainSymbol() && S.get(T.releasedBuffers, V.sym) != nullptr;
  };
  CB.preCall = [T, ReleasedPointer](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    for (const CallArg &A : E.args)
      if (ReleasedPointer(*S, A.value)) {
        C.report({"", BugCategory::UseAfterFree, std::string(msg::UseAfterFree), E.expr->loc(),
                  {}, {A.value.sym}});
        return S;
      }
    return S;
  };
  CB.postCall = [T](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    if (E.kind == CallEvent::Kind::Method && !E.method->isView() && E.method->invalidates() &&
        E.receiver.isRegion()) {
      ReleaseInfo Why{ReleaseKind::Mutated, E.name,
                      C.symbols().regionDescription(E.receiver.region), E.expr->loc()};
      S = invalidateString(T, C, S, E.receiver.region, Why);
      if (E.name == "swap" && E.args.size() == 1 && E.args[0].value.isRegion()) {
        Why.what = C.symbols().regionDescription(E.args[0].value.region);
        S = invalidateString(T, C, S, E.args[0].value.region, Why);
      }
      return S;
    }
    if (E.kind == CallEvent::Kind::Function && !E.inlined) {
      for (const CallArg &A : E.args)
        if (A.param.kind == TypeKind::String && A.param.ref == RefKind::MutRef &&
            A.value.isRegion()) {
          ReleaseInfo Why{ReleaseKind::PassedToNonConstRef, E.name,
                          C.symbols().regionDescription(A.value.region), E.expr->loc()};
          S = invalidateString(T, C, S, A.value.region, Why);
        }
    }
    return S;
  };
  CB.destroyRegion = [T](CheckerContext &C, ProgramStateRef S, const DestroyEvent &E) {
    if (C.symbols().regionInfo(E.region).type != TypeKind::String)
      return S;
    ReleaseInfo Why{ReleaseKind::Destroyed, "", C.symbols().regionDescription(E.region), E.loc};
    return invalidateString(T, C, S, E.region, Why);
  };
  CB.preReturn = [T, ReleasedPointer](CheckerContext &C, ProgramStateRef S, const ReturnEvent &E) {
    if (ReleasedPointer(*S, E.value))
      C.report({"", BugCategory::UseAfterFree, std::string(msg::UseAfterFree), E.stmt->loc(), {},
                {E.value.sym}});
    return S;
  };
  return CB;
}

CheckerCallbacks stringViewChecker(StringTraits T) {
  CheckerCallbacks CB;
  CB.preCall = [T](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    const SymbolicContext &SC = C.symbols();
    const SourceLocation &Loc = E.expr->loc();
    if (E.kind == CallEvent::Kind::Method && E.method->isView() && isView(SC, E.receiver))
      if (auto R = checkViewUse(T, *S, E.receiver.region, ViewUseKind::MethodCall, E.method, Loc)) {
        C.report(std::move(*R));
        return S;
      }
    for (const CallArg &A : E.args) {
      if (!isView(SC, A.value))
        continue;
      ViewUseKind K = A.param.ref == RefKind::MutRef   ? ViewUseKind::NonConstRefArg
                      : A.param.ref == RefKind::ConstRef ? ViewUseKind::ConstRefArg
                                                         : ViewUseKind::ByValueArg;
      if (auto R = checkViewUse(T, *S, A.value.region, K, nullptr, Loc)) {
        C.report(std::move(*R));
        return S;
      }
    }
    return S;
  };
  CB.postCall = [T](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    if (E.kind == CallEvent::Kind::Method && E.method->isView() && E.name == "data" &&
        isView(C.symbols(), E.receiver))
      return checkDanglingDataPointer(T, C, S, E.receiver.region, *E.expr);
    if (E.kind == CallEvent::Kind::Function && !E.inlined)
      for (const CallArg &A : E.args)
        if (A.param.kind == TypeKind::StringView && A.param.ref == RefKind::MutRef &&
            A.value.isRegion())
          S = S->remove(T.releasedViews, A.value.region);
    return S;
  };
  CB.preReturn = [T](CheckerContext &C, ProgramStateRef S, const ReturnEvent &E) {
    if (auto R = checkReturn(T, *S, C.symbols(), E.value, E.function->type.kind, E.frame,
                             E.stmt->loc()))
      C.report(std::move(*R));
    return S;
  };
  CB.destroyRegion = [T](CheckerContext &C, ProgramStateRef S, const DestroyEvent &E) {
    if (C.symbols().regionInfo(E.region).type != TypeKind::StringView)
      return S;
    return S->remove(T.releasedViews, E.region);
  };
  return CB;
}

} // namespace

CheckerCallbacks makeStringModeling(const StringTraits &T);
CheckerCallbacks makeStringViewModeling(const StringTraits &T);

StringTraits registerBuiltinCheckers(CheckerRegistry &R) {
  TraitRegistry &TR = R.traits();
  StringTraits T;
  T.viewRegions = registerCheckerState<IdSet>(TR, "ViewRegions");
  T.castSymbols = registerCheckerState<std::int64_t>(TR, "CastSymbols", {.symbolKeys = true});
  T.releasedViews = registerCheckerState<ReleaseInfo>(TR, "ReleasedViews");
  T.bufferSymbols =
      registerCheckerState<std::int64_t>(TR, "BufferSymbols", {.symbolValues = true});
  T.releasedBuffers =
      registerCheckerState<ReleaseInfo>(TR, "ReleasedBuffers", {.symbolKeys = true});

  R.add(std::string(checker_ids::StringModeling),
        "Models inner buffer symbols of std::string", makeStringModeling(T));
  R.add(std::string(checker_ids::StringViewModeling),
        "Models which string a std::string_view refers to", makeStringViewModeling(T));
  R.add(std::string(checker_ids::InnerPointer),
        "Invalidates inner buffers; checks uses of released buffer pointers", innerPointer(T));
  R.add(std::string(checker_ids::StringViewChecker),
        "Checks uses of std::string_view objects whose string was released",
        stringViewChecker(T));
  return T;
}

//===----------------------------------------------------------------------===//
// CheckerRegistry
//===----------------------------------------------------------------------===//

void CheckerRegistry::add(std::string Id, std::string Description, CheckerCallbacks CB) {
  Entries.push_back({std::move(Id), std::move(Description), std::move(CB)});
}

bool CheckerRegistry::has(const std::string &Id) const {
  for (const Entry &E : Entries)
    if (E.id == Id)
      return true;
  return false;
}

bool CheckerRegistry::setEnabled(const std::string &Id, bool Enabled) {
  if (!has(Id))
    return false;
  if (Enabled)
    Disabled.erase(Id);
  else
    Disabled.insert(Id);
  return true;
}

} // namespace viewlint
