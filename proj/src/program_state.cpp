//===- program_state.cpp - Regions, symbols and program states ------------===//

#include "viewlint/program_state.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace viewlint {

//===----------------------------------------------------------------------===//
// SymbolicContext
//===----------------------------------------------------------------------===//

RegionId SymbolicContext::region(RegionKind K, const Node *N, FrameId F, TypeKind T) {
  auto Key = std::make_tuple(static_cast<int>(K), N, F);
  if (auto It = RegionIds.find(Key); It != RegionIds.end())
    return It->second;
  RegionId Id = static_cast<RegionId>(Regions.size());
  Regions.push_back({K, N, F, T});
  RegionIds.emplace(Key, Id);
  return Id;
}

std::optional<RegionId> SymbolicContext::findRegion(RegionKind K, const Node *N, FrameId F) const {
  auto It = RegionIds.find(std::make_tuple(static_cast<int>(K), N, F));
  if (It == RegionIds.end())
    return std::nullopt;
  return It->second;
}

FrameId SymbolicContext::frame(FrameId Parent, const Node *CallExpr, const Node *Function,
                               int ParentIter) {
  auto Key = std::make_tuple(Parent, CallExpr, ParentIter);
  if (auto It = FrameIds.find(Key); It != FrameIds.end())
    return It->second;
  FrameId Id = static_cast<FrameId>(Frames.size());
  int Depth = Parent < 0 ? 1 : Frames[Parent].depth + 1;
  Frames.push_back({Parent, CallExpr, Function, Depth});
  FrameIds.emplace(Key, Id);
  return Id;
}

SymbolId SymbolicContext::symbol(SymbolOrigin O, const Node *N, FrameId F, RegionId R, int Seq) {
  auto Key = std::make_tuple(static_cast<int>(O), N, F, R, Seq);
  if (auto It = SymbolIds.find(Key); It != SymbolIds.end())
    return It->second;
  SymbolId Id = static_cast<SymbolId>(Symbols.size());
  Symbols.push_back({O, N, F, R, Seq});
  SymbolIds.emplace(Key, Id);
  return Id;
}

std::string SymbolicContext::symbolName(SymbolId S) const {
  const SymbolInfo &I = Symbols[S];
  switch (I.origin) {
  case SymbolOrigin::ParamInit:
    return "$" + regionName(I.region);
  case SymbolOrigin::Conjured:
    return "$conj" + std::to_string(S);
  case SymbolOrigin::BufferOf:
    return "$buf" + std::to_string(S);
  case SymbolOrigin::CastOf:
    return "$cast" + std::to_string(S);
  }
  return "$?";
}

std::string SymbolicContext::regionName(RegionId R) const {
  const RegionInfo &I = Regions[R];
  std::string Name =
      I.kind == RegionKind::Temp ? "temp(" + printExpr(*I.node) + ")" : I.node->name;
  if (Frames[I.frame].depth > 1)
    Name += "@" + std::to_string(I.frame);
  return Name;
}

std::string SymbolicContext::regionDescription(RegionId R) const {
  const RegionInfo &I = Regions[R];
  if (I.kind == RegionKind::Temp)
    return "temporary object";
  return "'" + I.node->name + "'";
}

//===----------------------------------------------------------------------===//
// TraitRegistry
//===----------------------------------------------------------------------===//

int TraitRegistry::add(const std::string &Name, TraitOptions O) {
  if (find(Name))
    throw std::invalid_argument("checker state '" + Name + "' is already registered");
  int Id = static_cast<int>(Traits.size());
  Traits.push_back({Id, Name, O});
  return Id;
}

std::optional<int> TraitRegistry::find(const std::string &Name) const {
  for (const TraitDesc &D : Traits)
    if (D.name == Name)
      return D.id;
  return std::nullopt;
}

IdSet idSetInsert(IdSet S, int V) {
  auto It = std::lower_bound(S.begin(), S.end(), V);
  if (It == S.end() || *It != V)
    S.insert(It, V);
  return S;
}

IdSet idSetErase(IdSet S, int V) {
  auto It = std::lower_bound(S.begin(), S.end(), V);
  if (It != S.end() && *It == V)
    S.erase(It);
  return S;
}

//===----------------------------------------------------------------------===//
// ProgramState
//===----------------------------------------------------------------------===//

ProgramStateRef ProgramState::copyWith(const std::function<void(ProgramState &)> &Fn) const {
  auto S = std::make_shared<ProgramState>(*this);
  Fn(*S);
  return S;
}

ProgramStateRef ProgramState::bind(RegionId R, SVal V) const {
  return copyWith([&](ProgramState &S) { S.store = store.set(R, V); });
}

ProgramStateRef ProgramState::kill(RegionId R) const {
  return copyWith([&](ProgramState &S) { S.store = store.erase(R); });
}

SVal ProgramState::exprValue(const Node &E, FrameId F) const {
  const SVal *V = env.lookup({E.id, F});
  return V ? *V : SVal::unknown();
}

ProgramStateRef ProgramState::bindExpr(const Node &E, FrameId F, SVal V) const {
  return copyWith([&](ProgramState &S) { S.env = env.set({E.id, F}, V); });
}

ProgramStateRef ProgramState::clearEnv(FrameId F) const {
  return copyWith([&](ProgramState &S) {
    S.env = env.eraseIf([F](const EnvKey &K, const SVal &) { return K.second == F; });
  });
}

ProgramStateRef ProgramState::withConstraints(ConstraintMap C) const {
  return copyWith([&](ProgramState &S) { S.constraints = std::move(C); });
}

ProgramStateRef ProgramState::withFrames(std::vector<FrameRecord> Fs) const {
  return copyWith([&](ProgramState &S) { S.frames = std::move(Fs); });
}

ProgramStateRef ProgramState::withLoopCount(FrameId F, int Header, int Count) const {
  return copyWith([&](ProgramState &S) { S.loopCounts = loopCounts.set({F, Header}, Count); });
}

const TraitMap &ProgramState::traitMap(int Id) const {
  static const TraitMap Empty;
  const TraitMap *M = traits.lookup(Id);
  return M ? *M : Empty;
}

ProgramStateRef ProgramState::withTraitMap(int Id, TraitMap M) const {
  return copyWith([&](ProgramState &S) {
    S.traits = M.empty() ? traits.erase(Id) : traits.set(Id, std::move(M));
  });
}

static std::size_t hashTraitValue(const TraitValue &V) {
  std::size_t H = V.index();
  if (const auto *I = std::get_if<std::int64_t>(&V))
    return hashCombine(H, std::hash<std::int64_t>()(*I));
  if (const auto *S = std::get_if<IdSet>(&V)) {
    for (int X : *S)
      H = hashCombine(H, std::hash<int>()(X));
    return H;
  }
  const auto &R = std::get<ReleaseInfo>(V);
  H = hashCombine(H, static_cast<std::size_t>(R.kind));
  H = hashCombine(H, std::hash<std::string>()(R.detail));
  H = hashCombine(H, std::hash<int>()(R.loc.line));
  return hashCombine(H, std::hash<int>()(R.loc.column));
}

std::size_t ProgramState::hash() const {
  std::size_t H = 0;
  for (const auto &[R, V] : store)
    H = hashCombine(hashCombine(H, std::hash<int>()(R)), V.hash());
  H = hashCombine(H, 0x51);
  for (const auto &[K, V] : env)
    H = hashCombine(hashCombine(hashCombine(H, K.first), std::hash<int>()(K.second)), V.hash());
  H = hashCombine(H, constraints.hash());
  for (const FrameRecord &F : frames) {
    H = hashCombine(H, std::hash<int>()(F.id));
    H = hashCombine(H, std::hash<int>()(F.iterations));
    H = hashCombine(H, F.retVal.hash());
    for (const auto &[D, R] : F.aliases)
      H = hashCombine(H, std::hash<int>()(R));
  }
  for (const auto &[K, C] : loopCounts)
    H = hashCombine(hashCombine(H, std::hash<int>()(K.second)), std::hash<int>()(C));
  for (const auto &[Id, M] : traits)
    for (const auto &[K, V] : M)
      H = hashCombine(hashCombine(hashCombine(H, Id), std::hash<std::int64_t>()(K)),
                      hashTraitValue(V));
  return H;
}

bool operator==(const ProgramState &A, const ProgramState &B) {
  return A.store == B.store && A.env == B.env && A.constraints == B.constraints &&
         A.frames == B.frames && A.loopCounts == B.loopCounts && A.traits == B.traits;
}

std::string ProgramState::dump(const SymbolicContext &SC) const {
  auto SymName = [&](SymbolId S) { return SC.symbolName(S); };
  auto RegName = [&](RegionId R) { return SC.regionName(R); };
  std::ostringstream OS;
  OS << "store:";
  bool First = true;
  for (const auto &[R, V] : store) {
    OS << (First ? " " : ", ") << SC.regionName(R) << ": " << V.str(SymName, RegName);
    First = false;
  }
  OS << '\n';
  for (const auto &[S, Rs] : constraints)
    OS << "constraint: " << SC.symbolName(S) << " : " << Rs.str() << '\n';
  return OS.str();
}

RegionId regionForDecl(const ProgramState &S, SymbolicContext &SC, const Node &D) {
  const FrameRecord &F = S.top();
  if (auto It = F.aliases.find(&D); It != F.aliases.end())
    return It->second;
  RegionKind K = D.kind == NodeKind::ParamDecl ? RegionKind::Param : RegionKind::Local;
  return SC.region(K, &D, F.id, D.type.kind);
}

} // namespace viewlint
