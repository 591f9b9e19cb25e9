//===- constraints.cpp - Range-based constraint manager -------------------===//

#include "viewlint/constraints.hpp"

#include <algorithm>
#include <sstream>

namespace viewlint {

//===----------------------------------------------------------------------===//
// SVal
//===----------------------------------------------------------------------===//

std::string_view cmpOpSpelling(CmpOp Op) {
  switch (Op) {
  case CmpOp::None:
    return "";
  case CmpOp::EQ:
    return "==";
  case CmpOp::NE:
    return "!=";
  case CmpOp::LT:
    return "<";
  case CmpOp::GT:
    return ">";
  case CmpOp::LE:
    return "<=";
  case CmpOp::GE:
    return ">=";
  }
  return "?";
}

CmpOp negate(CmpOp Op) {
  switch (Op) {
  case CmpOp::EQ:
    return CmpOp::NE;
  case CmpOp::NE:
    return CmpOp::EQ;
  case CmpOp::LT:
    return CmpOp::GE;
  case CmpOp::GE:
    return CmpOp::LT;
  case CmpOp::GT:
    return CmpOp::LE;
  case CmpOp::LE:
    return CmpOp::GT;
  case CmpOp::None:
    break;
  }
  return CmpOp::None;
}

CmpOp swapSides(CmpOp Op) {
  switch (Op) {
  case CmpOp::LT:
    return CmpOp::GT;
  case CmpOp::GT:
    return CmpOp::LT;
  case CmpOp::LE:
    return CmpOp::GE;
  case CmpOp::GE:
    return CmpOp::LE;
  default:
    return Op;
  }
}

std::size_t SVal::hash() const {
  std::size_t H = std::hash<int>()(static_cast<int>(kind));
  H = hashCombine(H, std::hash<std::int64_t>()(value));
  H = hashCombine(H, std::hash<int>()(sym));
  H = hashCombine(H, std::hash<std::int64_t>()(addend));
  H = hashCombine(H, std::hash<int>()(static_cast<int>(op)));
  H = hashCombine(H, std::hash<std::int64_t>()(rhs));
  return hashCombine(H, std::hash<int>()(region));
}

static std::string intStr(std::int64_t V) {
  if (V == IMIN)
    return "IMIN";
  if (V == IMAX)
    return "IMAX";
  return std::to_string(V);
}

std::string SVal::str(const std::function<std::string(SymbolId)> &SymName,
                      const std::function<std::string(RegionId)> &RegName) const {
  switch (kind) {
  case Kind::Unknown:
    return "unknown";
  case Kind::Uninit:
    return "undef";
  case Kind::Concrete:
    return std::to_string(value);
  case Kind::Sym:
    return SymName(sym);
  case Kind::SymExpr: {
    std::string S = SymName(sym);
    if (addend > 0)
      S += "+" + std::to_string(addend);
    else if (addend < 0)
      S += std::to_string(addend);
    if (op != CmpOp::None)
      S = "(" + S + " " + std::string(cmpOpSpelling(op)) + " " + std::to_string(rhs) + ")";
    return S;
  }
  case Kind::Region:
    return "&" + RegName(region);
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// RangeSet
//===----------------------------------------------------------------------===//

RangeSet RangeSet::range(std::int64_t Lo, std::int64_t Hi) {
  RangeSet R;
  if (Lo <= Hi)
    R.I.push_back({Lo, Hi});
  return R;
}

RangeSet RangeSet::fromIntervals(std::vector<Interval> Ivs) {
  RangeSet R;
  for (const Interval &Iv : Ivs)
    if (Iv.lo <= Iv.hi)
      R.I.push_back(Iv);
  R.normalize();
  return R;
}

void RangeSet::normalize() {
  std::sort(I.begin(), I.end());
  std::vector<Interval> Out;
  for (const Interval &Iv : I) {
    // Merge overlapping or adjacent intervals.
    if (!Out.empty() && (Out.back().hi == IMAX || Iv.lo <= Out.back().hi + 1)) {
      Out.back().hi = std::max(Out.back().hi, Iv.hi);
      continue;
    }
    Out.push_back(Iv);
  }
  I = std::move(Out);
}

RangeSet RangeSet::satisfying(CmpOp Op, std::int64_t C) {
  switch (Op) {
  case CmpOp::EQ:
    return point(C);
  case CmpOp::NE:
    return point(C).complement();
  case CmpOp::LT:
    return C == IMIN ? RangeSet() : range(IMIN, C - 1);
  case CmpOp::GT:
    return C == IMAX ? RangeSet() : range(C + 1, IMAX);
  case CmpOp::LE:
    return range(IMIN, C);
  case CmpOp::GE:
    return range(C, IMAX);
  case CmpOp::None:
    break;
  }
  return full();
}

bool RangeSet::contains(std::int64_t V) const {
  for (const Interval &Iv : I)
    if (Iv.lo <= V && V <= Iv.hi)
      return true;
  return false;
}

std::optional<std::int64_t> RangeSet::singleton() const {
  if (I.size() == 1 && I[0].lo == I[0].hi)
    return I[0].lo;
  return std::nullopt;
}

RangeSet RangeSet::intersect(const RangeSet &O) const {
  RangeSet R;
  std::size_t A = 0, B = 0;
  while (A < I.size() && B < O.I.size()) {
    std::int64_t Lo = std::max(I[A].lo, O.I[B].lo);
    std::int64_t Hi = std::min(I[A].hi, O.I[B].hi);
    if (Lo <= Hi)
      R.I.push_back({Lo, Hi});
    if (I[A].hi < O.I[B].hi)
      ++A;
    else
      ++B;
  }
  R.normalize();
  return R;
}

RangeSet RangeSet::unite(const RangeSet &O) const {
  RangeSet R;
  R.I = I;
  R.I.insert(R.I.end(), O.I.begin(), O.I.end());
  R.normalize();
  return R;
}

RangeSet RangeSet::complement() const {
  RangeSet R;
  std::int64_t Next = IMIN;
  bool Done = false;
  for (const Interval &Iv : I) {
    if (Iv.lo > Next)
      R.I.push_back({Next, Iv.lo - 1});
    if (Iv.hi == IMAX) {
      Done = true;
      break;
    }
    Next = Iv.hi + 1;
  }
  if (!Done)
    R.I.push_back({Next, IMAX});
  return R;
}

std::string RangeSet::str() const {
  if (I.empty())
    return "∅";
  std::string S;
  for (std::size_t K = 0; K < I.size(); ++K) {
    if (K)
      S += " ∪ ";
    S += "[" + intStr(I[K].lo) + ", " + intStr(I[K].hi) + "]";
  }
  return S;
}

//===----------------------------------------------------------------------===//
// ConstraintMap
//===----------------------------------------------------------------------===//

ConstraintMap ConstraintMap::set(SymbolId S, const RangeSet &R) const {
  ConstraintMap C = *this;
  C.M = R.isFull() ? M.erase(S) : M.set(S, R);
  return C;
}

ConstraintMap ConstraintMap::erase(SymbolId S) const {
  ConstraintMap C = *this;
  C.M = M.erase(S);
  return C;
}

ConstraintMap ConstraintMap::normalized() const {
  ConstraintMap C = *this;
  C.M = M.eraseIf([](SymbolId, const RangeSet &R) { return R.isFull(); });
  return C;
}

std::size_t ConstraintMap::hash() const {
  std::size_t H = 0;
  for (const auto &[S, R] : M) {
    H = hashCombine(H, std::hash<int>()(S));
    for (const auto &Iv : R.intervals()) {
      H = hashCombine(H, std::hash<std::int64_t>()(Iv.lo));
      H = hashCombine(H, std::hash<std::int64_t>()(Iv.hi));
    }
  }
  return H;
}

std::string ConstraintMap::dump(const std::function<std::string(SymbolId)> &SymName) const {
  std::ostringstream OS;
  for (const auto &[S, R] : M)
    OS << SymName(S) << " : " << R.str() << '\n';
  return OS.str();
}

bool isFeasible(const ConstraintMap &M) {
  for (const auto &[S, R] : M)
    if (R.empty())
      return false;
  return true;
}

//===----------------------------------------------------------------------===//
// assume / evalBinOp
//===----------------------------------------------------------------------===//

namespace {

/// Values of s such that `s + K Op C` holds, computed without overflow.
RangeSet solveShifted(CmpOp Op, std::int64_t K, std::int64_t C) {
  __int128 T = static_cast<__int128>(C) - K;
  if (T >= IMIN && T <= IMAX)
    return RangeSet::satisfying(Op, static_cast<std::int64_t>(T));
  bool Above = T > IMAX;
  switch (Op) {
  case CmpOp::EQ:
    return RangeSet();
  case CmpOp::NE:
    return RangeSet::full();
  case CmpOp::LT:
  case CmpOp::LE:
    return Above ? RangeSet::full() : RangeSet();
  case CmpOp::GT:
  case CmpOp::GE:
    return Above ? RangeSet() : RangeSet::full();
  case CmpOp::None:
    break;
  }
  return RangeSet::full();
}

std::optional<ConstraintMap> refine(const ConstraintMap &M, SymbolId S, const RangeSet &R) {
  RangeSet N = M.rangeOf(S).intersect(R);
  if (N.empty())
    return std::nullopt;
  return M.set(S, N);
}

std::int64_t wrapAdd(std::int64_t A, std::int64_t B) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(A) + static_cast<std::uint64_t>(B));
}
std::int64_t wrapSub(std::int64_t A, std::int64_t B) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(A) - static_cast<std::uint64_t>(B));
}

bool compare(CmpOp Op, std::int64_t A, std::int64_t B) {
  switch (Op) {
  case CmpOp::EQ:
    return A == B;
  case CmpOp::NE:
    return A != B;
  case CmpOp::LT:
    return A < B;
  case CmpOp::GT:
    return A > B;
  case CmpOp::LE:
    return A <= B;
  case CmpOp::GE:
    return A >= B;
  case CmpOp::None:
    break;
  }
  return false;
}

CmpOp toCmp(BinOp Op) {
  switch (Op) {
  case BinOp::EQ:
    return CmpOp::EQ;
  case BinOp::NE:
    return CmpOp::NE;
  case BinOp::LT:
    return CmpOp::LT;
  case BinOp::GT:
    return CmpOp::GT;
  default:
    return CmpOp::None;
  }
}

} // namespace

std::optional<ConstraintMap> assume(const ConstraintMap &M, const SVal &V, bool Assumption) {
  switch (V.kind) {
  case SVal::Kind::Concrete:
    if ((V.value != 0) == Assumption)
      return M;
    return std::nullopt;
  case SVal::Kind::Sym:
    return refine(M, V.sym, RangeSet::satisfying(Assumption ? CmpOp::NE : CmpOp::EQ, 0));
  case SVal::Kind::SymExpr: {
    CmpOp Op = V.op;
    std::int64_t C = V.rhs;
    if (Op == CmpOp::None) {
      Op = CmpOp::NE;
      C = 0;
    }
    if (!Assumption)
      Op = negate(Op);
    return refine(M, V.sym, solveShifted(Op, V.addend, C));
  }
  default:
    return M;
  }
}

SVal evalBinOp(const SVal &L, BinOp Op, const SVal &R, const std::function<SymbolId()> &Conjure) {
  CmpOp Cmp = toCmp(Op);
  if (L.isConcrete() && R.isConcrete()) {
    if (Op == BinOp::Add)
      return SVal::concrete(wrapAdd(L.value, R.value));
    if (Op == BinOp::Sub)
      return SVal::concrete(wrapSub(L.value, R.value));
    return SVal::concrete(compare(Cmp, L.value, R.value) ? 1 : 0);
  }
  if (L.kind == SVal::Kind::Uninit || R.kind == SVal::Kind::Uninit || L.isUnknown() ||
      R.isUnknown() || L.isRegion() || R.isRegion())
    return SVal::symbol(Conjure());

  if (L.isLinear() && R.isConcrete()) {
    if (Op == BinOp::Add)
      return SVal::symExpr(L.sym, wrapAdd(L.addend, R.value));
    if (Op == BinOp::Sub)
      return SVal::symExpr(L.sym, wrapSub(L.addend, R.value));
    return SVal::symExpr(L.sym, L.addend, Cmp, R.value);
  }
  if (L.isConcrete() && R.isLinear()) {
    if (Op == BinOp::Add)
      return SVal::symExpr(R.sym, wrapAdd(R.addend, L.value));
    if (Op == BinOp::Sub)
      return SVal::symbol(Conjure());
    return SVal::symExpr(R.sym, R.addend, swapSides(Cmp), L.value);
  }
  // Comparison results used in arithmetic, and symbol-symbol operations.
  return SVal::symbol(Conjure());
}

SVal evalNot(const SVal &V, const std::function<SymbolId()> &Conjure) {
  switch (V.kind) {
  case SVal::Kind::Concrete:
    return SVal::concrete(V.value == 0 ? 1 : 0);
  case SVal::Kind::Sym:
    return SVal::symExpr(V.sym, 0, CmpOp::EQ, 0);
  case SVal::Kind::SymExpr:
    if (V.op == CmpOp::None)
      return SVal::symExpr(V.sym, V.addend, CmpOp::EQ, 0);
    return SVal::symExpr(V.sym, V.addend, negate(V.op), V.rhs);
  default:
    return SVal::symbol(Conjure());
  }
}

std::optional<std::int64_t> knownValue(const ConstraintMap &M, const SVal &V) {
  if (V.isConcrete())
    return V.value;
  if (V.isLinear()) {
    if (auto S = M.rangeOf(V.sym).singleton())
      return wrapAdd(*S, V.addend);
  }
  return std::nullopt;
}

} // namespace viewlint
