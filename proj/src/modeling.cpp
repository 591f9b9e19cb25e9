//===- modeling.cpp - String buffers and string-view associations ---------===//

#include "viewlint/checkers.hpp"

#include <algorithm>

namespace viewlint {

std::pair<ProgramStateRef, SymbolId> evalBufferAccess(const StringTraits &T, CheckerContext &C,
                                                      ProgramStateRef S, RegionId Str,
                                                      const Node &Call) {
  SymbolId Sym;
  if (auto Existing = bufferSymbolFor(T, *S, Str)) {
    Sym = *Existing;
  } else {
    Sym = C.symbols().symbol(SymbolOrigin::BufferOf, &Call, C.frame(), Str, C.iteration);
    S = S->set(T.bufferSymbols, Str, std::int64_t{Sym});
  }
  S = S->bindExpr(Call, C.frame(), SVal::symbol(Sym));
  NoteTag N{NoteTag::Kind::BufferObtained, std::string(msg::Obtained), Call.loc()};
  N.sym = Sym;
  C.addNote(std::move(N));
  return {S, Sym};
}

std::pair<ProgramStateRef, SymbolId> evalStringToViewConvert(const StringTraits &T,
                                                             CheckerContext &C, ProgramStateRef S,
                                                             RegionId Str, const Node &Convert) {
  SymbolId Sym = C.symbols().symbol(SymbolOrigin::CastOf, &Convert, C.frame(), Str, C.iteration);
  S = S->set(T.castSymbols, Sym, std::int64_t{Str});
  S = S->bindExpr(Convert, C.frame(), SVal::symbol(Sym));
  NoteTag N{NoteTag::Kind::CastCreated, std::string(msg::Obtained), Convert.loc()};
  N.sym = Sym;
  C.addNote(std::move(N));
  return {S, Sym};
}

std::optional<RegionId> associatedString(const StringTraits &T, const ProgramState &S,
                                         RegionId View) {
  for (const auto &[Str, V] : S.entries(T.viewRegions)) {
    const IdSet &Views = std::get<IdSet>(V);
    if (std::binary_search(Views.begin(), Views.end(), View))
      return static_cast<RegionId>(Str);
  }
  return std::nullopt;
}

ProgramStateRef dropAssociation(const StringTraits &T, ProgramStateRef S, RegionId View) {
  auto Str = associatedString(T, *S, View);
  if (!Str)
    return S;
  IdSet Views = idSetErase(*S->get(T.viewRegions, *Str), View);
  if (Views.empty())
    return S->remove(T.viewRegions, *Str);
  return S->set(T.viewRegions, *Str, std::move(Views));
}

static ProgramStateRef associate(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                                 RegionId View, RegionId Str) {
  S = dropAssociation(T, S, View);
  S = S->remove(T.releasedViews, View);
  const IdSet *Old = S->get(T.viewRegions, Str);
  S = S->set(T.viewRegions, Str, idSetInsert(Old ? *Old : IdSet{}, View));
  NoteTag N{NoteTag::Kind::Assoc, std::string(msg::Obtained), C.loc()};
  N.view = View;
  C.addNote(std::move(N));
  return S;
}

ProgramStateRef bindViewRegion(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                               RegionId View, const SVal &Bound) {
  // (a) The result of a string-to-view conversion.
  if (Bound.isPlainSymbol())
    if (const auto *Str = S->get(T.castSymbols, Bound.sym))
      return associate(T, C, S, View, static_cast<RegionId>(*Str));

  if (Bound.isRegion() && Bound.region != View) {
    // (b) A copy of an associated view.
    if (auto Str = associatedString(T, *S, Bound.region))
      return associate(T, C, S, View, *Str);
    // (c) A copy of a dangling view dangles as well.
    if (const ReleaseInfo *R = S->get(T.releasedViews, Bound.region)) {
      ReleaseInfo Copy = *R;
      S = dropAssociation(T, S, View);
      S = S->set(T.releasedViews, View, std::move(Copy));
      NoteTag N{NoteTag::Kind::ReleasedCopy, std::string(msg::Obtained), C.loc()};
      N.view = View;
      N.other = Bound.region;
      C.addNote(std::move(N));
      return S;
    }
  }
  if (Bound.isRegion() && Bound.region == View)
    return S;

  // (d) Literal-backed, empty or unknown.
  S = dropAssociation(T, S, View);
  return S->remove(T.releasedViews, View);
}

ProgramStateRef evalSubstr(const StringTraits &T, CheckerContext &C, ProgramStateRef S,
                           RegionId Receiver, RegionId Result) {
  return bindViewRegion(T, C, S, Result, SVal::regionVal(Receiver));
}

ProgramStateRef evalSwap(const StringTraits &T, CheckerContext &C, ProgramStateRef S, RegionId A,
                         RegionId B) {
  if (A == B)
    return S;
  auto StrA = associatedString(T, *S, A);
  auto StrB = associatedString(T, *S, B);
  const ReleaseInfo *RA = S->get(T.releasedViews, A);
  const ReleaseInfo *RB = S->get(T.releasedViews, B);
  std::optional<ReleaseInfo> RelA = RA ? std::optional(*RA) : std::nullopt;
  std::optional<ReleaseInfo> RelB = RB ? std::optional(*RB) : std::nullopt;
  if (!StrA && !StrB && !RelA && !RelB)
    return S;

  S = dropAssociation(T, S, A);
  S = dropAssociation(T, S, B);
  S = S->remove(T.releasedViews, A)->remove(T.releasedViews, B);
  auto Link = [&](RegionId View, std::optional<RegionId> Str) {
    if (!Str)
      return;
    const IdSet *Old = S->get(T.viewRegions, *Str);
    S = S->set(T.viewRegions, *Str, idSetInsert(Old ? *Old : IdSet{}, View));
  };
  Link(A, StrB);
  Link(B, StrA);
  if (RelB)
    S = S->set(T.releasedViews, A, *RelB);
  if (RelA)
    S = S->set(T.releasedViews, B, *RelA);

  NoteTag N{NoteTag::Kind::Swap, "", C.loc()};
  N.view = A;
  N.other = B;
  C.addNote(std::move(N));
  return S;
}

ProgramStateRef onDeadRegions(const StringTraits &T, ProgramStateRef S,
                              const std::vector<RegionId> &Dead) {
  for (RegionId R : Dead) {
    S = dropAssociation(T, S, R);
    S = S->remove(T.releasedViews, R);
  }
  return S;
}

namespace {

bool isViewRegion(const SymbolicContext &SC, RegionId R) {
  return SC.regionInfo(R).type == TypeKind::StringView;
}

CheckerCallbacks stringModeling(StringTraits T) {
  CheckerCallbacks CB;
  CB.postCall = [T](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    if (E.kind != CallEvent::Kind::Method || E.method->isView() || !E.receiver.isRegion())
      return S;
    if (E.name == "c_str" || E.name == "data")
      S = evalBufferAccess(T, C, S, E.receiver.region, *E.expr).first;
    return S;
  };
  return CB;
}

CheckerCallbacks stringViewModeling(StringTraits T) {
  CheckerCallbacks CB;
  CB.postCall = [T](CheckerContext &C, ProgramStateRef S, const CallEvent &E) {
    switch (E.kind) {
    case CallEvent::Kind::Conversion:
      if (E.receiver.isRegion())
        S = evalStringToViewConvert(T, C, S, E.receiver.region, *E.expr).first;
      return S;
    case CallEvent::Kind::Method:
      if (!E.method->isView() || !E.receiver.isRegion())
        return S;
      if (E.name == "substr" && E.result.isRegion())
        return evalSubstr(T, C, S, E.receiver.region, E.result.region);
      if (E.name == "swap" && E.args.size() == 1 && E.args[0].value.isRegion())
        return evalSwap(T, C, S, E.receiver.region, E.args[0].value.region);
      return S;
    case CallEvent::Kind::Function:
      // The callee may point a view taken by non-const reference anywhere.
      if (E.inlined)
        return S;
      for (const CallArg &A : E.args)
        if (A.param.kind == TypeKind::StringView && A.param.ref == RefKind::MutRef &&
            A.value.isRegion())
          S = dropAssociation(T, S, A.value.region);
      return S;
    default:
      return S;
    }
  };
  CB.bind = [T](CheckerContext &C, ProgramStateRef S, const BindEvent &E) {
    if (!isViewRegion(C.symbols(), E.target))
      return S;
    return bindViewRegion(T, C, S, E.target, E.value);
  };
  CB.destroyRegion = [T](CheckerContext &C, ProgramStateRef S, const DestroyEvent &E) {
    if (!isViewRegion(C.symbols(), E.region))
      return S;
    return dropAssociation(T, S, E.region);
  };
  return CB;
}

} // namespace

CheckerCallbacks makeStringModeling(const StringTraits &T) { return stringModeling(T); }
CheckerCallbacks makeStringViewModeling(const StringTraits &T) { return stringViewModeling(T); }

} // namespace viewlint
